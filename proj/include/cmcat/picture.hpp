#pragma once

#include <deque>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "cmcat/category.hpp"

namespace cmcat {

// --- group words --------------------------------------------------------------

struct Letter {
    IVec root;
    int exp;  // +1 or -1
    friend bool operator==(const Letter& a, const Letter& b) {
        return a.exp == b.exp && a.root == b.root;
    }
};

using GroupWord = std::vector<Letter>;

inline GroupWord free_reduce(GroupWord w) {
    GroupWord out;
    for (const Letter& l : w) {
        if (!out.empty() && out.back().root == l.root && out.back().exp == -l.exp)
            out.pop_back();
        else
            out.push_back(l);
    }
    return out;
}

inline GroupWord word_mul(const GroupWord& a, const GroupWord& b) {
    GroupWord w = a;
    w.insert(w.end(), b.begin(), b.end());
    return free_reduce(w);
}

inline GroupWord word_inverse(const GroupWord& a) {
    GroupWord w;
    for (auto it = a.rbegin(); it != a.rend(); ++it) w.push_back({it->root, -it->exp});
    return w;
}

inline std::string word_str(const GroupWord& w) {
    if (w.empty()) return "e";
    std::string s;
    for (const Letter& l : w) {
        if (!s.empty()) s += " ";
        s += "x" + ivec_str(l.root);
        if (l.exp < 0) s += "^-1";
    }
    return s;
}

// --- relations ----------------------------------------------------------------

// Relation of a qualifying ordered pair (alpha, beta):
//   x_alpha x_beta = x_beta x_{gamma_1} ... x_{gamma_r} x_alpha
// with the middles gamma_k = a_k alpha + b_k beta ordered by ascending a_k/b_k.
struct Relation {
    IVec alpha, beta;
    std::vector<IVec> middles;
    GroupWord left, right;
};

inline Relation make_pair_relation(const IVec& alpha, const IVec& beta,
                                   std::vector<IVec> middles) {
    Relation r;
    r.alpha = alpha;
    r.beta = beta;
    r.middles = std::move(middles);
    r.left = {{alpha, 1}, {beta, 1}};
    r.right.push_back({beta, 1});
    for (const IVec& m : r.middles) r.right.push_back({m, 1});
    r.right.push_back({alpha, 1});
    return r;
}

inline bool relation_well_formed(const Relation& r) {
    if (r.left.size() != 2 || r.right.size() != r.middles.size() + 2) return false;
    for (const Letter& l : r.left)
        if (l.exp != 1) return false;
    for (const Letter& l : r.right)
        if (l.exp != 1) return false;
    if (r.left[0].root != r.alpha || r.left[1].root != r.beta) return false;
    if (r.alpha == r.beta) return false;
    if (r.right.front().root != r.beta || r.right.back().root != r.alpha)
        return false;
    IMat span(r.alpha.size(), IVec(2));
    for (size_t i = 0; i < r.alpha.size(); ++i) {
        span[i][0] = r.alpha[i];
        span[i][1] = r.beta[i];
    }
    Rat prev(-1);
    for (size_t k = 0; k < r.middles.size(); ++k) {
        if (r.right[k + 1].root != r.middles[k]) return false;
        auto ab = integral_solution(span, r.middles[k]);
        if (!ab || (*ab)[0] < 1 || (*ab)[1] < 1) return false;
        Rat frac((*ab)[0], (*ab)[1]);
        if (!(prev < frac)) return false;
        prev = frac;
    }
    return true;
}

struct RelationSet {
    std::vector<IVec> generators;
    std::vector<Relation> rels;
};

// Relations of the picture group of w: one per ordered hom-orthogonal
// exceptional pair (alpha, beta) with ext(alpha, beta) = 0.  The middles are
// the other exceptional roots of the rank-2 subcategory the pair generates.
inline RelationSet relations_for(const Wide& w) {
    RelationSet out;
    out.generators = w.exceptional_objects();
    const std::vector<IVec>& roots = out.generators;
    for (const IVec& a : roots)
        for (const IVec& b : roots) {
            if (a == b) continue;
            if (w.hom(a, b) != 0 || w.hom(b, a) != 0) continue;
            if (w.ext(a, b) != 0) continue;
            Int s = w.ext(b, a);
            if (s == 0) {
                if (root_less(b, a)) continue;  // emit the commutator once
                out.rels.push_back(make_pair_relation(a, b, {}));
            } else if (s == 1) {
                out.rels.push_back(make_pair_relation(a, b, {ivec_add(a, b)}));
            } else {
                throw DomainError("pair " + ivec_str(a) + ", " + ivec_str(b) +
                                  " generates infinitely many extensions; "
                                  "no finite relation set");
            }
        }
    for (const Relation& r : out.rels)
        if (!relation_well_formed(r))
            throw InternalError("emitted relation is malformed");
    return out;
}

// --- word equality ------------------------------------------------------------

struct WordEqual {
    bool equal = false;
    std::vector<std::string> trace;  // word states from u to v when equal
};

namespace detail {

inline std::string wkey(const GroupWord& w) { return word_str(w); }

inline std::vector<GroupWord> rewrites(const GroupWord& w, const RelationSet& r) {
    std::vector<GroupWord> out;
    auto apply = [&](const GroupWord& pat, const GroupWord& rep) {
        if (pat.empty() || pat.size() > w.size()) return;
        for (size_t at = 0; at + pat.size() <= w.size(); ++at) {
            bool hit = true;
            for (size_t i = 0; i < pat.size(); ++i)
                if (!(w[at + i] == pat[i])) {
                    hit = false;
                    break;
                }
            if (!hit) continue;
            GroupWord next(w.begin(), w.begin() + at);
            next.insert(next.end(), rep.begin(), rep.end());
            next.insert(next.end(), w.begin() + at + pat.size(), w.end());
            out.push_back(free_reduce(next));
        }
    };
    for (const Relation& rel : r.rels) {
        apply(rel.left, rel.right);
        apply(rel.right, rel.left);
        apply(word_inverse(rel.left), word_inverse(rel.right));
        apply(word_inverse(rel.right), word_inverse(rel.left));
    }
    return out;
}

}  // namespace detail

// Bidirectional search for equality in the presented group.  Positive
// verdicts carry a derivation trace; budget exhaustion returns Unknown,
// never inequality.
inline WordEqual word_equal(const GroupWord& u0, const GroupWord& v0,
                            const RelationSet& r, Int budget = 100000) {
    GroupWord u = free_reduce(u0), v = free_reduce(v0);
    WordEqual res;
    struct Node {
        GroupWord w;
        int parent;  // index into the same side's node list
    };
    std::vector<Node> nodes[2];
    std::map<std::string, int> seen[2];
    std::deque<int> frontier[2];
    auto trace_of = [&](int side, int id) {
        std::vector<std::string> t;
        for (int cur = id; cur != -1; cur = nodes[side][cur].parent)
            t.push_back(word_str(nodes[side][cur].w));
        return t;
    };
    auto stitch = [&](int uid, int vid) {
        std::vector<std::string> a = trace_of(0, uid);
        std::reverse(a.begin(), a.end());
        std::vector<std::string> b = trace_of(1, vid);
        if (!b.empty() && !a.empty() && a.back() == b.front()) b.erase(b.begin());
        a.insert(a.end(), b.begin(), b.end());
        res.equal = true;
        res.trace = std::move(a);
    };
    nodes[0].push_back({u, -1});
    seen[0][detail::wkey(u)] = 0;
    frontier[0].push_back(0);
    nodes[1].push_back({v, -1});
    seen[1][detail::wkey(v)] = 0;
    frontier[1].push_back(0);
    if (detail::wkey(u) == detail::wkey(v)) {
        stitch(0, 0);
        return res;
    }
    Int used = 0;
    while ((!frontier[0].empty() || !frontier[1].empty()) && used < budget) {
        int side = frontier[0].empty()                       ? 1
                   : frontier[1].empty()                     ? 0
                   : frontier[0].size() <= frontier[1].size() ? 0
                                                              : 1;
        int id = frontier[side].front();
        frontier[side].pop_front();
        for (GroupWord& nw : detail::rewrites(nodes[side][id].w, r)) {
            ++used;
            std::string key = detail::wkey(nw);
            if (seen[side].count(key)) continue;
            int nid = static_cast<int>(nodes[side].size());
            nodes[side].push_back({nw, id});
            seen[side][key] = nid;
            auto other = seen[1 - side].find(key);
            if (other != seen[1 - side].end()) {
                if (side == 0)
                    stitch(nid, other->second);
                else
                    stitch(other->second, nid);
                return res;
            }
            frontier[side].push_back(nid);
        }
    }
    return res;  // Unknown
}

// --- reports ------------------------------------------------------------------

struct PolygonReport {
    bool pass = false;
    int faces_checked = 0;
    std::vector<std::string> failures;
};

struct RetractReport {
    bool certified = false;
    int stages = 0;
    int clusters = 0;
    std::vector<std::string> violations;
};

struct FunctReport {
    bool pass = false;
    int pairs_checked = 0;
    std::vector<std::string> failures;
};

struct FaithReport {
    bool certified = false;
    int hom_sets_checked = 0;
    int pairs_distinguished = 0;
    int vacuous_hom_sets = 0;
    std::vector<std::string> violations;
};

// --- the gamma functor and its verification -----------------------------------

class Picture {
  public:
    explicit Picture(Cmc& ctx) : ctx_(&ctx) {}

    const ExchangeGraph& graph(const Wide& w) {
        auto it = graphs_.find(w.key());
        if (it != graphs_.end()) return it->second;
        if (w.truncated())
            throw DomainError("exchange graph requires a finite-type subcategory");
        return graphs_.emplace(w.key(), build_exchange_graph(w)).first->second;
    }

    const RelationSet& rels(const Wide& w) {
        auto it = rels_.find(w.key());
        if (it != rels_.end()) return it->second;
        return rels_.emplace(w.key(), relations_for(w)).first->second;
    }

    // word along the breadth-first mutation path from the all-shifted cluster
    GroupWord gamma_bar(const Wide& w, const Cluster& t) {
        const ExchangeGraph& g = graph(w);
        int id = g.id_of(t);
        GroupWord word;
        std::vector<int> path;
        for (int v = id; v != -1; v = g.parent[v]) path.push_back(v);
        std::reverse(path.begin(), path.end());
        for (size_t i = 1; i < path.size(); ++i)
            word.push_back({g.parent_wall[path[i]], g.parent_eps[path[i]]});
        return free_reduce(word);
    }

    // gamma(f) = gamma_bar of cluster(f) completed by the sigma-images of the
    // shifted relative projectives of the target
    GroupWord gamma(const Morph& f) {
        auto it = gamma_cache_.find(f.key());
        if (it != gamma_cache_.end()) return it->second;
        Cluster t = f.cluster;
        for (const ExcObj& p : initial_cluster(f.target))
            t.push_back(ctx_->sigma(f.source, f.cluster, p));
        canonicalize(t);
        if (static_cast<int>(t.size()) != f.source.rank())
            throw InternalError("gamma completion has the wrong rank");
        Morph complete = ctx_->morphism(f.source, t);
        if (complete.target.rank() != 0)
            throw InternalError("gamma completion is not a full cluster");
        GroupWord w = gamma_bar(f.source, t);
        gamma_cache_.emplace(f.key(), w);
        return w;
    }

    // Every codimension-2 face spans an exchange polygon; the two monotone
    // walks from its source vertex to its sink must be equal words.
    PolygonReport verify_polygons(const Wide& w, Int budget = 100000) {
        PolygonReport rep;
        const ExchangeGraph& g = graph(w);
        const RelationSet& r = rels(w);
        std::set<std::string> seen_faces;
        for (const Cluster& t : g.nodes) {
            int n = static_cast<int>(t.size());
            for (int i = 0; i < n; ++i)
                for (int j = i + 1; j < n; ++j) {
                    Cluster face;
                    for (int k = 0; k < n; ++k)
                        if (k != i && k != j) face.push_back(t[k]);
                    if (!seen_faces.insert(cluster_key(face)).second) continue;
                    check_polygon(w, face, r, budget, rep);
                }
        }
        rep.pass = rep.failures.empty();
        return rep;
    }

    // Mechanized induction over roots ordered by length: stage presentations
    // delete longer roots; each stage must keep deleted relations derivable
    // and split word classes at most in two, the two sides differing by the
    // new generator.  A passing report certifies that distinct clusters have
    // distinct group values.
    RetractReport verify_retraction(const Wide& w, Int budget = 100000) {
        RetractReport rep;
        const ExchangeGraph& g = graph(w);
        const RelationSet& full = rels(w);
        std::vector<IVec> roots = w.exceptional_objects();  // root order = length
        int m = static_cast<int>(roots.size());
        rep.stages = m;
        rep.clusters = static_cast<int>(g.nodes.size());
        std::vector<GroupWord> words;
        for (const Cluster& t : g.nodes) words.push_back(gamma_bar(w, t));

        auto stage_rels = [&](int k) {
            RelationSet rk;
            rk.generators.assign(roots.begin(), roots.begin() + k);
            auto in = [&](const IVec& v) {
                for (int i = 0; i < k; ++i)
                    if (roots[i] == v) return true;
                return false;
            };
            for (const Relation& rel : full.rels) {
                if (!in(rel.alpha) || !in(rel.beta)) continue;
                std::vector<IVec> mid;
                for (const IVec& v : rel.middles)
                    if (in(v)) mid.push_back(v);
                rk.rels.push_back(make_pair_relation(rel.alpha, rel.beta, mid));
            }
            return rk;
        };
        auto project = [&](const GroupWord& word, int k) {
            GroupWord out;
            for (const Letter& l : word)
                for (int i = 0; i < k; ++i)
                    if (roots[i] == l.root) {
                        out.push_back(l);
                        break;
                    }
            return free_reduce(out);
        };
        auto classify = [&](const std::vector<int>& members, int k,
                            const RelationSet& rk) {
            std::vector<std::vector<int>> classes;
            for (int c : members) {
                bool placed = false;
                for (auto& cl : classes)
                    if (word_equal(project(words[c], k), project(words[cl[0]], k),
                                   rk, budget)
                            .equal) {
                        cl.push_back(c);
                        placed = true;
                        break;
                    }
                if (!placed) classes.push_back({c});
            }
            return classes;
        };

        std::vector<std::vector<int>> classes(1);
        for (int c = 0; c < rep.clusters; ++c) classes[0].push_back(c);
        RelationSet rk = stage_rels(0);
        for (int k = 0; k < m; ++k) {
            RelationSet rnext = stage_rels(k + 1);
            // (a) deleting the new generator sends relations to derivable ones
            for (const Relation& rel : rnext.rels) {
                GroupWord dl = project(rel.left, k), dr = project(rel.right, k);
                if (!word_equal(dl, dr, rk, budget).equal)
                    rep.violations.push_back(
                        "stage " + std::to_string(k + 1) + ": deleted relation " +
                        word_str(dl) + " = " + word_str(dr) + " not derivable");
            }
            // (b) every class splits in at most two, differing by the new letter
            std::vector<std::vector<int>> next;
            for (const std::vector<int>& cl : classes) {
                std::vector<std::vector<int>> split = classify(cl, k + 1, rnext);
                if (split.size() > 2) {
                    rep.violations.push_back(
                        "stage " + std::to_string(k + 1) + ": class of " +
                        word_str(words[cl[0]]) + " splits " +
                        std::to_string(split.size()) + " ways (surrogate mismatch)");
                } else if (split.size() == 2) {
                    GroupWord wa = project(words[split[0][0]], k + 1);
                    GroupWord wb = project(words[split[1][0]], k + 1);
                    GroupWord x{{roots[k], 1}};
                    bool ok = word_equal(wa, word_mul(wb, x), rnext, budget).equal ||
                              word_equal(wb, word_mul(wa, x), rnext, budget).equal;
                    if (!ok)
                        rep.violations.push_back(
                            "stage " + std::to_string(k + 1) + ": classes " +
                            word_str(wa) + " and " + word_str(wb) +
                            " do not differ by x" + ivec_str(roots[k]));
                }
                for (auto& s : split) next.push_back(std::move(s));
            }
            classes = std::move(next);
            rk = std::move(rnext);
        }
        if (static_cast<int>(classes.size()) != rep.clusters)
            rep.violations.push_back("distinct clusters share a group value");
        rep.certified = rep.violations.empty();
        return rep;
    }

    // gamma(g o f) = gamma(f) . gamma(g), letters embedded identically
    FunctReport verify_functoriality(const Category& c, Int budget = 100000) {
        FunctReport rep;
        for (const Morph& f : c.morphisms)
            for (const Morph& g : c.morphisms) {
                if (f.target.key() != g.source.key()) continue;
                ++rep.pairs_checked;
                Morph gf = ctx_->compose(f, g);
                GroupWord lhs = gamma(gf);
                GroupWord rhs = word_mul(gamma(f), gamma(g));
                if (!word_equal(lhs, rhs, rels(f.source), budget).equal)
                    rep.failures.push_back("gamma(" + gf.key() + ") = " +
                                           word_str(lhs) + " vs " + word_str(rhs));
            }
        rep.pass = rep.failures.empty();
        return rep;
    }

    // Distinct morphisms in each hom-set have distinct gamma values: their
    // completed clusters differ and the retraction certificate makes gamma_bar
    // injective on clusters.
    FaithReport faithfulness(const Category& c, Int budget = 100000) {
        FaithReport rep;
        if (c.partial) {
            rep.violations.push_back(
                "category is a truncated slice; no certificate");
            return rep;
        }
        for (const Wide& w : c.objects) {
            RetractReport r = verify_retraction(w, budget);
            if (!r.certified) {
                rep.violations.push_back("no retraction certificate for " + w.key());
                rep.certified = false;
                return rep;
            }
        }
        std::map<std::string, std::vector<const Morph*>> homsets;
        for (const Morph& f : c.morphisms)
            homsets[f.source.key() + ">" + f.target.key()].push_back(&f);
        for (const auto& [hs, fs] : homsets) {
            ++rep.hom_sets_checked;
            if (fs.size() < 2) {
                ++rep.vacuous_hom_sets;
                continue;
            }
            std::map<std::string, std::string> completions;
            for (const Morph* f : fs) {
                Cluster t = f->cluster;
                for (const ExcObj& p : initial_cluster(f->target))
                    t.push_back(ctx_->sigma(f->source, f->cluster, p));
                canonicalize(t);
                auto [it, fresh] = completions.emplace(cluster_key(t), f->key());
                if (!fresh)
                    rep.violations.push_back("morphisms " + it->second + " and " +
                                             f->key() + " share a completion");
            }
            rep.pairs_distinguished +=
                static_cast<int>(fs.size() * (fs.size() - 1) / 2);
        }
        rep.certified = rep.violations.empty();
        return rep;
    }

  private:
    void check_polygon(const Wide& w, const Cluster& face, const RelationSet& r,
                       Int budget, PolygonReport& rep) {
        ++rep.faces_checked;
        const ExchangeGraph& g = graph(w);
        std::vector<int> poly;
        for (int id = 0; id < static_cast<int>(g.nodes.size()); ++id) {
            bool contains = true;
            for (const ExcObj& o : face)
                if (std::find(g.nodes[id].begin(), g.nodes[id].end(), o) ==
                    g.nodes[id].end()) {
                    contains = false;
                    break;
                }
            if (contains) poly.push_back(id);
        }
        auto free_slots = [&](const Cluster& t) {
            std::vector<int> out;
            for (int i = 0; i < static_cast<int>(t.size()); ++i)
                if (std::find(face.begin(), face.end(), t[i]) == face.end())
                    out.push_back(i);
            return out;
        };
        // the unique source: both free mutations cross with sign +1
        int source = -1;
        for (int id : poly) {
            std::vector<int> slots = free_slots(g.nodes[id]);
            if (slots.size() != 2) {
                rep.failures.push_back("face " + cluster_key(face) +
                                       ": vertex with wrong free rank");
                return;
            }
            Mutation m0 = mutate(w, g.nodes[id], slots[0]);
            Mutation m1 = mutate(w, g.nodes[id], slots[1]);
            if (m0.eps == 1 && m1.eps == 1) {
                if (source != -1) {
                    rep.failures.push_back("face " + cluster_key(face) +
                                           ": two polygon sources");
                    return;
                }
                source = id;
            }
        }
        if (source == -1) {
            rep.failures.push_back("face " + cluster_key(face) +
                                   ": no polygon source");
            return;
        }
        // walk both ways until the words close up at the sink
        GroupWord words[2];
        std::string at[2];
        std::vector<int> slots = free_slots(g.nodes[source]);
        for (int dir = 0; dir < 2; ++dir) {
            Cluster prev = g.nodes[source];
            Mutation m = mutate(w, prev, slots[dir]);
            words[dir].push_back({m.wall, m.eps});
            Cluster cur = m.result;
            while (true) {
                std::vector<int> fs = free_slots(cur);
                if (fs.size() != 2) {
                    rep.failures.push_back("face " + cluster_key(face) +
                                           ": walk left the polygon");
                    return;
                }
                Mutation ma = mutate(w, cur, fs[0]);
                Mutation mb = mutate(w, cur, fs[1]);
                bool a_back = cluster_key(ma.result) == cluster_key(prev);
                Mutation& step = a_back ? mb : ma;
                if (step.eps != 1) break;  // cur is the sink
                words[dir].push_back({step.wall, step.eps});
                prev = cur;
                cur = step.result;
            }
            at[dir] = cluster_key(cur);
        }
        if (at[0] != at[1]) {
            rep.failures.push_back("face " + cluster_key(face) +
                                   ": walks end at different sinks");
            return;
        }
        if (!word_equal(words[0], words[1], r, budget).equal)
            rep.failures.push_back("face " + cluster_key(face) + ": " +
                                   word_str(words[0]) + " vs " +
                                   word_str(words[1]) + " not derivably equal");
    }

    Cmc* ctx_;
    std::map<std::string, ExchangeGraph> graphs_;
    std::map<std::string, RelationSet> rels_;
    std::map<std::string, GroupWord> gamma_cache_;
};

}  // namespace cmcat
