#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "cmcat/cluster.hpp"

namespace cmcat {

// Morphism [T]: source -> target where T is a partial cluster in the source
// and the target is the perpendicular of its roots, always derived.
struct Morph {
    Wide source;
    Cluster cluster;
    Wide target;

    int rank() const { return static_cast<int>(cluster.size()); }
    std::string key() const {
        return source.key() + "|" + cluster_key(cluster) + ">" + target.key();
    }
};

struct Category {
    std::vector<Wide> objects;  // BFS order from mod-Lambda
    std::map<std::string, int> obj_index;
    std::vector<Morph> morphisms;
    std::map<std::string, int> morph_index;
    std::vector<char> complete;  // per object: outgoing morphism list complete?
    bool partial = false;        // any truncated source present
};

struct FactorizationCube {
    Morph f;
    std::vector<Morph> first;   // indexed by subset bitmask over cluster slots
    std::vector<Morph> second;  // same index; second[m] o first[m] = f
};

struct Chain {
    std::vector<Morph> steps;
    std::vector<IVec> signed_roots;  // ambient, in factorization order
};

struct CubicalReport {
    bool pass = false;
    int morphisms_checked = 0;
    std::vector<std::string> violations;
};

// Engine with memoized perpendiculars and sigma maps.  All morphism-level
// operations go through one instance so repeated subcategories are shared.
class Cmc {
  public:
    explicit Cmc(const Algebra& a) : alg_(&a), full_(Wide::full(a)) {}

    const Algebra& algebra() const { return *alg_; }
    const Wide& full() const { return full_; }

    Wide perp(const Wide& w, std::vector<IVec> roots) {
        std::sort(roots.begin(), roots.end(), RootLess{});
        std::string key = w.key() + "|";
        for (const IVec& r : roots) key += ivec_str(r);
        auto it = perp_cache_.find(key);
        if (it != perp_cache_.end()) return it->second;
        Wide out = perpendicular(w, roots);
        perp_cache_.emplace(key, out);
        return out;
    }

    const std::vector<ExcObj>& candidates(const Wide& w) {
        auto it = cand_cache_.find(w.key());
        if (it != cand_cache_.end()) return it->second;
        return cand_cache_.emplace(w.key(), cluster_candidates(w)).first->second;
    }

    Morph morphism(const Wide& w, Cluster t) {
        canonicalize(t);
        for (const ExcObj& o : t)
            if (!object_of(w, o))
                throw DomainError("cluster object outside C_W: " + o.key());
        for (size_t i = 0; i < t.size(); ++i)
            for (size_t j = i + 1; j < t.size(); ++j)
                if (!compatible(w, t[i], t[j]))
                    throw DomainError("not a partial cluster: " + t[i].key() +
                                      " and " + t[j].key() + " are incompatible");
        Morph m;
        m.source = w;
        m.cluster = t;
        m.target = perp(w, cluster_roots(t));
        return m;
    }

    Morph identity(const Wide& w) { return morphism(w, {}); }

    // sigma_S: the unique object of C_W compatible with S whose signed
    // dimension differs from the signed dimension of t by a combination of
    // the roots of S and whose joint perpendicular matches.
    ExcObj sigma(const Wide& w, const Cluster& s, const ExcObj& t) {
        if (s.empty()) return t;
        std::string key = w.key() + "|" + cluster_key(s) + "|" + t.key();
        auto it = sigma_cache_.find(key);
        if (it != sigma_cache_.end()) return it->second;

        std::vector<IVec> sroots = cluster_roots(s);
        Wide mid = perp(w, sroots);
        if (!object_of(mid, t))
            throw DomainError("sigma argument is not an object of the target: " +
                              t.key());
        IMat span(alg_->n(), IVec(sroots.size()));
        for (size_t j = 0; j < sroots.size(); ++j)
            for (int i = 0; i < alg_->n(); ++i) span[i][j] = sroots[j][i];
        IVec tdim = t.shifted ? ivec_neg(t.root) : t.root;
        std::string want = perp(mid, {t.root}).key();

        std::vector<ExcObj> hits;
        for (const ExcObj& u : candidates(w)) {
            bool ok = true;
            for (const ExcObj& x : s)
                if (!compatible(w, x, u)) {
                    ok = false;
                    break;
                }
            if (!ok) continue;
            IVec udim = u.shifted ? ivec_neg(u.root) : u.root;
            if (!integral_solution(span, ivec_sub(udim, tdim))) continue;
            std::vector<IVec> joint = sroots;
            joint.push_back(u.root);
            if (perp(w, joint).key() != want) continue;
            hits.push_back(u);
        }
        if (hits.size() > 1)
            throw InternalError("sigma image is not unique for " + t.key());
        if (hits.empty())
            throw DomainError("no sigma image for " + t.key() +
                              " within the root bound");
        sigma_cache_.emplace(key, hits[0]);
        return hits[0];
    }

    // inverse of sigma_S on a cluster object u of C_W compatible with S
    ExcObj sigma_inv(const Wide& w, const Cluster& s, const ExcObj& u) {
        if (s.empty()) return u;
        Wide mid = perp(w, cluster_roots(s));
        for (const ExcObj& t : candidates(mid))
            if (sigma(w, s, t) == u) return t;
        throw InternalError("sigma preimage missing for " + u.key());
    }

    Morph compose(const Morph& f, const Morph& g) {
        if (f.target.key() != g.source.key())
            throw DomainError("morphisms do not compose: target " +
                              f.target.key() + " vs source " + g.source.key());
        Cluster t = f.cluster;
        for (const ExcObj& x : g.cluster) t.push_back(sigma(f.source, f.cluster, x));
        Morph m = morphism(f.source, t);
        if (m.target.key() != g.target.key())
            throw InternalError("composite target mismatch");
        if (m.rank() != f.rank() + g.rank())
            throw InternalError("composite rank is not additive");
        return m;
    }

    FactorizationCube factorizations(const Morph& f) {
        int r = f.rank();
        FactorizationCube cube;
        cube.f = f;
        std::set<std::string> middles;
        for (int mask = 0; mask < (1 << r); ++mask) {
            Cluster s;
            for (int i = 0; i < r; ++i)
                if (mask & (1 << i)) s.push_back(f.cluster[i]);
            Morph first = morphism(f.source, s);
            Cluster rest;
            for (int i = 0; i < r; ++i)
                if (!(mask & (1 << i)))
                    rest.push_back(sigma_inv(f.source, s, f.cluster[i]));
            Morph second = morphism(first.target, rest);
            if (compose(first, second).key() != f.key())
                throw InternalError("factorization does not recompose");
            middles.insert(first.target.key());
            cube.first.push_back(first);
            cube.second.push_back(second);
        }
        if (static_cast<int>(middles.size()) != (1 << r))
            throw InternalError("factorization middles collide");
        // covering edges of the subset lattice are realized between middles
        for (int mask = 0; mask < (1 << r); ++mask)
            for (int i = 0; i < r; ++i) {
                if (mask & (1 << i)) continue;
                const Morph& lo = cube.first[mask];
                ExcObj step = sigma_inv(f.source, lo.cluster, f.cluster[i]);
                Wide up = perp(lo.target, {step.root});
                if (up.key() != cube.first[mask | (1 << i)].target.key())
                    throw InternalError("subset lattice edge breaks in Fac(f)");
            }
        return cube;
    }

    std::vector<Chain> factorization_chains(const Morph& f) {
        std::vector<Chain> out;
        Chain cur;
        std::function<void(const Wide&, const Cluster&)> rec =
            [&](const Wide& w, const Cluster& t) {
                if (t.empty()) {
                    out.push_back(cur);
                    return;
                }
                for (size_t i = 0; i < t.size(); ++i) {
                    Cluster one{t[i]};
                    Morph step = morphism(w, one);
                    Cluster rest;
                    for (size_t j = 0; j < t.size(); ++j)
                        if (j != i) rest.push_back(sigma_inv(w, one, t[j]));
                    canonicalize(rest);
                    cur.steps.push_back(step);
                    cur.signed_roots.push_back(t[i].shifted ? ivec_neg(t[i].root)
                                                            : t[i].root);
                    rec(step.target, rest);
                    cur.steps.pop_back();
                    cur.signed_roots.pop_back();
                }
            };
        rec(f.source, f.cluster);
        return out;
    }

    std::vector<Morph> last_factors(const Morph& f) {
        std::vector<Morph> out;
        for (int i = 0; i < f.rank(); ++i) {
            Cluster s;
            for (int j = 0; j < f.rank(); ++j)
                if (j != i) s.push_back(f.cluster[j]);
            Morph head = morphism(f.source, s);
            ExcObj obj = sigma_inv(f.source, s, f.cluster[i]);
            Morph last = morphism(head.target, {obj});
            if (last.target.key() != f.target.key())
                throw InternalError("last factor misses the target");
            out.push_back(last);
        }
        return out;
    }

    // Solve for the signed first-factor dimensions from rank-1 last factors
    // L_i: W_i -> W'.  Unknowns live in the lattice spanned by the signed
    // last-factor dimensions and the simples of W'; equations pair against
    // the last factors and a fixed cluster of W' under the ambient form.
    std::vector<IVec> recover_first_factors(const std::vector<Morph>& lasts,
                                            const Wide& wprime) {
        int m = static_cast<int>(lasts.size());
        std::vector<IVec> basis;
        for (const Morph& l : lasts) {
            if (l.rank() != 1 || l.target.key() != wprime.key())
                throw DomainError("last factors must be rank one into the "
                                  "common target");
            const ExcObj& o = l.cluster[0];
            basis.push_back(o.shifted ? ivec_neg(o.root) : o.root);
        }
        for (const IVec& s : wprime.simples) basis.push_back(s);
        std::vector<IVec> anchor = wprime.relative_projectives();
        int dim = m + static_cast<int>(anchor.size());
        if (static_cast<int>(basis.size()) != dim)
            throw InternalError("last-factor lattice has unexpected rank");
        Matx<Rat> a(dim, Vec<Rat>(dim));
        for (int row = 0; row < m; ++row)
            for (int col = 0; col < dim; ++col)
                a[row][col] = Rat(alg_->form(basis[col], basis[row]));
        for (int k = 0; k < static_cast<int>(anchor.size()); ++k)
            for (int col = 0; col < dim; ++col)
                a[m + k][col] = Rat(alg_->form(basis[col], anchor[k]));
        std::vector<IVec> out;
        for (int i = 0; i < m; ++i) {
            Vec<Rat> rhs(dim, Rat(0));
            rhs[i] = Rat(alg_->form(basis[i], basis[i]));
            LinSolve<Rat> s = solve(a, rhs);
            if (!s.consistent || !s.unique)
                throw DomainError(
                    "singular last-factor system; first factors undetermined");
            IVec x(alg_->n(), 0);
            for (int b = 0; b < dim; ++b) {
                if (!s.x[b].is_integer())
                    throw DomainError("last-factor system has no integral solution");
                x = ivec_add(x, ivec_scale(s.x[b].num, basis[b]));
            }
            bool pos = true, neg = true;
            for (Int v : x) {
                if (v < 0) pos = false;
                if (v > 0) neg = false;
            }
            IVec root = pos ? x : ivec_neg(x);
            if ((!pos && !neg) || !alg_->is_exceptional(root))
                throw DomainError("recovered first factor " + ivec_str(x) +
                                  " is not realized by an exceptional module");
            out.push_back(x);
        }
        return out;
    }

    // All pairwise-compatible subsets of the candidate objects, every size,
    // listed by (size, key).  Complete for finite-type w, bounded otherwise.
    std::vector<Cluster> partial_clusters(const Wide& w) {
        const std::vector<ExcObj>& cand = candidates(w);
        std::vector<Cluster> out;
        Cluster cur;
        std::function<void(size_t)> rec = [&](size_t start) {
            out.push_back(cur);
            for (size_t c = start; c < cand.size(); ++c) {
                bool ok = true;
                for (const ExcObj& x : cur)
                    if (!compatible(w, x, cand[c])) {
                        ok = false;
                        break;
                    }
                if (!ok) continue;
                cur.push_back(cand[c]);
                rec(c + 1);
                cur.pop_back();
            }
        };
        rec(0);
        std::sort(out.begin(), out.end(), [](const Cluster& a, const Cluster& b) {
            if (a.size() != b.size()) return a.size() < b.size();
            return cluster_key(a) < cluster_key(b);
        });
        return out;
    }

    Category build_category() {
        Category c;
        c.objects.push_back(full_);
        c.obj_index[full_.key()] = 0;
        c.complete.push_back(!full_.truncated());
        if (full_.truncated()) c.partial = true;
        for (size_t head = 0; head < c.objects.size(); ++head) {
            Wide w = c.objects[head];
            for (const Cluster& t : partial_clusters(w)) {
                Morph m = morphism(w, t);
                std::string tkey = m.target.key();
                if (!c.obj_index.count(tkey)) {
                    c.obj_index[tkey] = static_cast<int>(c.objects.size());
                    c.objects.push_back(m.target);
                    c.complete.push_back(!m.target.truncated());
                    if (m.target.truncated()) c.partial = true;
                }
                if (!c.morph_index.count(m.key())) {
                    c.morph_index[m.key()] = static_cast<int>(c.morphisms.size());
                    c.morphisms.push_back(m);
                }
            }
        }
        return c;
    }

    CubicalReport verify_cubical(const Category& c) {
        CubicalReport rep;
        std::map<std::string, std::string> first_sets;  // source+set -> morph
        std::map<std::string, std::string> last_sets;   // target+set -> morph
        for (const Morph& f : c.morphisms) {
            ++rep.morphisms_checked;
            int drop = f.source.rank() - f.target.rank();
            if (f.rank() != drop)
                rep.violations.push_back("rank mismatch at " + f.key());
            if ((f.rank() == 0) != (f.source.key() == f.target.key()))
                rep.violations.push_back("rank-0/identity mismatch at " + f.key());
            try {
                FactorizationCube cube = factorizations(f);
                for (size_t m = 0; m < cube.first.size(); ++m) {
                    if (!c.morph_index.count(cube.first[m].key()))
                        rep.violations.push_back("factor missing from category: " +
                                                 cube.first[m].key());
                    if (!c.morph_index.count(cube.second[m].key()))
                        rep.violations.push_back("factor missing from category: " +
                                                 cube.second[m].key());
                }
            } catch (const Error& e) {
                rep.violations.push_back("Fac(" + f.key() + ") is not a cube: " +
                                         e.what());
            }
            std::set<std::string> fset;
            for (const ExcObj& o : f.cluster) fset.insert(o.key());
            std::string fkey = f.source.key() + "#";
            for (const std::string& s : fset) fkey += s;
            auto [fit, fnew] = first_sets.emplace(fkey, f.key());
            if (!fnew && fit->second != f.key())
                rep.violations.push_back("first factors fail to determine " +
                                         f.key());
            std::set<std::string> lset;
            try {
                for (const Morph& l : last_factors(f))
                    lset.insert(l.source.key() + ":" + l.cluster[0].key());
            } catch (const Error& e) {
                rep.violations.push_back("last factors of " + f.key() +
                                         " break: " + e.what());
            }
            std::string lkey = f.target.key() + "#";
            for (const std::string& s : lset) lkey += s;
            auto [lit, lnew] = last_sets.emplace(lkey, f.key());
            if (!lnew && lit->second != f.key())
                rep.violations.push_back("last factors fail to determine " +
                                         f.key());
        }
        rep.pass = rep.violations.empty();
        return rep;
    }

  private:
    const Algebra* alg_;
    Wide full_;
    std::map<std::string, Wide> perp_cache_;
    std::map<std::string, ExcObj> sigma_cache_;
    std::map<std::string, std::vector<ExcObj>> cand_cache_;
};

}  // namespace cmcat
