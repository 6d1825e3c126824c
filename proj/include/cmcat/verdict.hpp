#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "cmcat/picture.hpp"

namespace cmcat {

struct ConditionReport {
    bool pass = false;
    int sets_checked = 0;
    std::vector<std::string> violations;
};

// Every pairwise-compatible set of rank-1 morphisms out of a common source
// must be the first-factor set of a single morphism.  Holds by construction
// of the factorization cube; the sweep is a regression guard.
inline ConditionReport check_condition_one(Cmc& ctx, const Category& c) {
    ConditionReport rep;
    for (size_t oi = 0; oi < c.objects.size(); ++oi) {
        if (!c.complete[oi]) continue;
        const Wide& w = c.objects[oi];
        for (const Cluster& s : ctx.partial_clusters(w)) {
            if (s.empty()) continue;
            ++rep.sets_checked;
            try {
                Morph f = ctx.morphism(w, s);
                FactorizationCube cube = ctx.factorizations(f);
                for (int i = 0; i < f.rank(); ++i) {
                    const Morph& fi = cube.first[1 << i];
                    if (fi.cluster != Cluster{f.cluster[i]})
                        throw InternalError("first factor mismatch");
                }
            } catch (const Error& e) {
                rep.violations.push_back(cluster_key(s) + " out of " + w.key() +
                                         ": " + e.what());
            }
        }
    }
    rep.pass = rep.violations.empty();
    return rep;
}

// Every pairwise last-factor-compatible set of rank-1 morphisms into a
// common target must be the last-factor set of a single morphism.  Each
// realized set is cross-checked against the first-factor recovery solve,
// and the whole sweep against the triple-arrangement criterion.
inline ConditionReport check_condition_two(Cmc& ctx, const Category& c) {
    ConditionReport rep;
    std::map<std::string, std::vector<const Morph*>> rank1_into;
    std::map<std::string, std::set<std::string>> pair_ok;
    std::map<std::string, std::map<std::string, const Morph*>> realized;

    auto set_key = [](std::vector<const Morph*> fs) {
        std::vector<std::string> keys;
        for (const Morph* f : fs) keys.push_back(f->key());
        std::sort(keys.begin(), keys.end());
        std::string out;
        for (const std::string& k : keys) out += k + ";";
        return out;
    };

    for (const Morph& f : c.morphisms) {
        if (!c.complete[c.obj_index.at(f.source.key())]) continue;
        std::vector<Morph> lasts = ctx.last_factors(f);
        std::vector<const Morph*> canon;
        for (const Morph& l : lasts)
            canon.push_back(&c.morphisms[c.morph_index.at(l.key())]);
        realized[f.target.key()][set_key(canon)] = &f;
        if (f.rank() == 1) rank1_into[f.target.key()].push_back(&f);
        if (f.rank() == 2)
            pair_ok[f.target.key()].insert(set_key(canon));
    }

    for (auto& [tkey, ones] : rank1_into) {
        std::sort(ones.begin(), ones.end(),
                  [](const Morph* a, const Morph* b) { return a->key() < b->key(); });
        const Wide& wprime = ones[0]->target;
        std::vector<const Morph*> cur;
        std::function<void(size_t)> rec = [&](size_t start) {
            if (!cur.empty()) {
                ++rep.sets_checked;
                auto it = realized[tkey].find(set_key(cur));
                if (it == realized[tkey].end()) {
                    std::string names;
                    for (const Morph* f : cur) names += " " + f->key();
                    rep.violations.push_back("unrealized last-factor set into " +
                                             tkey + ":" + names);
                } else if (cur.size() >= 2) {
                    std::vector<Morph> lasts;
                    for (const Morph* f : cur) lasts.push_back(*f);
                    std::multiset<std::string> got, want;
                    for (const IVec& r : ctx.recover_first_factors(lasts, wprime))
                        got.insert(ivec_str(r));
                    for (const ExcObj& o : it->second->cluster)
                        want.insert(ivec_str(o.shifted ? ivec_neg(o.root) : o.root));
                    if (got != want)
                        rep.violations.push_back(
                            "recovered first factors disagree for " +
                            it->second->key());
                }
            }
            for (size_t i = start; i < ones.size(); ++i) {
                bool ok = true;
                for (const Morph* f : cur)
                    if (!pair_ok[tkey].count(set_key({f, ones[i]}))) {
                        ok = false;
                        break;
                    }
                if (!ok) continue;
                cur.push_back(ones[i]);
                rec(i + 1);
                cur.pop_back();
            }
        };
        rec(0);
    }

    if (!c.partial) {
        StarResult star = condition_star_check(ctx.full());
        if (star.pass != rep.violations.empty())
            rep.violations.push_back(
                "sweep disagrees with the triple-arrangement criterion");
    }
    rep.pass = rep.violations.empty();
    return rep;
}

struct Verdict {
    enum class Status { CAT0, NotCAT0, Unsupported };
    Status status = Status::Unsupported;
    std::string type_name;            // finite | tame | wild
    std::string scope;                // full | truncated-slice
    std::vector<IVec> witness;        // NotCAT0 evidence triple
    std::vector<std::string> notes;
    ConditionReport cond1, cond2;
    CubicalReport cubical;
    bool faithful = false;

    int exit_code() const {
        switch (status) {
            case Status::CAT0: return 0;
            case Status::NotCAT0: return 1;
            default: return 2;
        }
    }
};

inline const char* status_name(Verdict::Status s) {
    switch (s) {
        case Verdict::Status::CAT0: return "CAT0";
        case Verdict::Status::NotCAT0: return "NotCAT0";
        default: return "Unsupported";
    }
}

namespace detail {

// Three-arc partition of a tube of rank >= 3: two mouth modules and the
// window spanning the rest.  Re-verified from scratch before use.
inline std::vector<IVec> tube_witness(const Algebra& a,
                                      const std::vector<IVec>& mouth) {
    size_t r = mouth.size();
    IVec arc = mouth[2];
    for (size_t k = 3; k < r; ++k) arc = ivec_add(arc, mouth[k]);
    std::vector<IVec> w = {mouth[0], mouth[1], arc};
    for (const IVec& x : w)
        if (!a.is_exceptional(x))
            throw InternalError("tube witness is not exceptional");
    for (size_t i = 0; i < w.size(); ++i)
        for (size_t j = 0; j < w.size(); ++j)
            if (i != j && a.hom(w[i], w[j]) != 0)
                throw InternalError("tube witness is not hom-orthogonal");
    return w;
}

}  // namespace detail

inline Verdict verdict(const Quiver& q, Int bound = 8, Int budget = 100000) {
    Algebra alg = Algebra::build(q, bound);
    Verdict v;
    if (alg.rtype.tag == QType::Wild) {
        v.type_name = "wild";
        v.status = Verdict::Status::Unsupported;
        v.notes.push_back("wild representation type is out of scope");
        return v;
    }

    Cmc ctx(alg);
    if (alg.rtype.tag == QType::Tame) {
        v.type_name = "tame";
        for (const auto& mouth : alg.tubes.mouths) {
            if (mouth.size() < 3) continue;
            v.status = Verdict::Status::NotCAT0;
            v.scope = "full";
            v.witness = detail::tube_witness(alg, mouth);
            Arrangement arr = arrange_exceptional_sequence(ctx.full(), v.witness);
            if (arr.ok || arr.cycle.size() != 3)
                throw InternalError("tube witness arranges after all");
            v.notes.push_back("witness triple admits no exceptional-sequence "
                              "order (3-cycle)");
            bool singular = false;
            try {
                std::vector<Morph> lasts;
                for (const IVec& x : v.witness) {
                    Wide wx = Wide::from_simples(alg, {x}, {x});
                    lasts.push_back(ctx.morphism(wx, {{x, false}}));
                }
                ctx.recover_first_factors(lasts, lasts[0].target);
            } catch (const DomainError&) {
                singular = true;
            }
            if (!singular)
                throw InternalError("witness first factors recovered after all");
            v.notes.push_back("first-factor recovery is singular for the "
                              "witness triple");
            StarResult star = condition_star_check(ctx.full());
            if (star.pass)
                throw InternalError("triple-arrangement sweep disagrees with "
                                    "the tube witness");
            return v;
        }
        // only small tubes: the obstruction is absent; slice sweeps corroborate
        v.status = Verdict::Status::CAT0;
        v.scope = "truncated-slice";
        StarResult star = condition_star_check(ctx.full());
        if (!star.pass)
            throw InternalError("triple-arrangement counterexample without a "
                                "big tube");
        std::string ranks = "tube ranks:";
        for (Int r : tube_ranks(alg).ranks) ranks += " " + std::to_string(r);
        v.notes.push_back(ranks);
        try {
            Category c = ctx.build_category();
            v.cubical = ctx.verify_cubical(c);
            v.cond1 = check_condition_one(ctx, c);
            v.cond2 = check_condition_two(ctx, c);
            if (!v.cubical.pass || !v.cond1.pass || !v.cond2.pass)
                throw InternalError("slice sweep failed on a small-tube algebra");
        } catch (const DomainError& e) {
            v.notes.push_back(std::string("slice sweep stopped at the root "
                                          "bound: ") + e.what());
        }
        return v;
    }

    v.type_name = "finite";
    Category c = ctx.build_category();
    v.cubical = ctx.verify_cubical(c);
    v.cond1 = check_condition_one(ctx, c);
    v.cond2 = check_condition_two(ctx, c);
    Picture pic(ctx);
    FaithReport faith = pic.faithfulness(c, budget);
    v.faithful = faith.certified;
    if (v.cubical.pass && v.cond1.pass && v.cond2.pass && v.faithful) {
        v.status = Verdict::Status::CAT0;
        v.scope = "full";
    } else {
        v.status = Verdict::Status::NotCAT0;
        v.scope = "full";
        v.notes.push_back("finite type failed a check that holds in general; investigate implementation");
        for (const std::string& s : v.cubical.violations) v.notes.push_back(s);
        for (const std::string& s : v.cond1.violations) v.notes.push_back(s);
        for (const std::string& s : v.cond2.violations) v.notes.push_back(s);
        for (const std::string& s : faith.violations) v.notes.push_back(s);
    }
    return v;
}

}  // namespace cmcat
