#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "cmcat/wide.hpp"

namespace cmcat {

// Object of C_W^{+-}: an exceptional module of W, possibly shifted.  Only
// relative projectives may be shifted; signed dimension of P[1] is -dim P.
struct ExcObj {
    IVec root;
    bool shifted = false;

    friend bool operator==(const ExcObj& a, const ExcObj& b) {
        return a.shifted == b.shifted && a.root == b.root;
    }
    friend bool operator!=(const ExcObj& a, const ExcObj& b) { return !(a == b); }
    // canonical order: unshifted first, then by root order
    friend bool operator<(const ExcObj& a, const ExcObj& b) {
        if (a.shifted != b.shifted) return !a.shifted;
        return root_less(a.root, b.root);
    }
    std::string key() const { return (shifted ? "-" : "+") + ivec_str(root); }
};

using Cluster = std::vector<ExcObj>;  // kept sorted canonically

inline std::string cluster_key(const Cluster& t) {
    std::string s;
    for (const ExcObj& o : t) s += o.key();
    return s.empty() ? "()" : s;
}

inline std::vector<IVec> cluster_roots(const Cluster& t) {
    std::vector<IVec> out;
    for (const ExcObj& o : t) out.push_back(o.root);
    return out;
}

inline void canonicalize(Cluster& t) { std::sort(t.begin(), t.end()); }

inline bool object_of(const Wide& w, const ExcObj& x) {
    if (!w.is_object(x.root)) return false;
    if (!x.shifted) return true;
    for (const IVec& p : w.relative_projectives())
        if (p == x.root) return true;
    return false;
}

inline bool compatible(const Wide& w, const ExcObj& x, const ExcObj& y) {
    if (!object_of(w, x) || !object_of(w, y))
        throw DomainError("compatibility test outside C_W");
    if (x.shifted && y.shifted) return true;
    if (!x.shifted && !y.shifted) {
        if (x.root == y.root) return true;
        return w.ext(x.root, y.root) == 0 && w.ext(y.root, x.root) == 0;
    }
    const ExcObj& sh = x.shifted ? x : y;
    const ExcObj& un = x.shifted ? y : x;
    if (sh.root == un.root) return false;
    return w.hom(sh.root, un.root) == 0;
}

// All of C_W^{+-} in canonical order.
inline std::vector<ExcObj> cluster_candidates(const Wide& w) {
    std::vector<ExcObj> out;
    for (const IVec& r : w.exceptional_objects()) out.push_back({r, false});
    for (const IVec& p : w.relative_projectives()) out.push_back({p, true});
    return out;
}

inline std::vector<Cluster> enumerate_clusters(const Wide& w) {
    if (w.truncated())
        throw DomainError(
            "infinite exceptional object set; cluster enumeration needs a "
            "finite-type subcategory (use bounded exploration instead)");
    std::vector<ExcObj> cand = cluster_candidates(w);
    std::vector<Cluster> out;
    Cluster cur;
    std::function<void(size_t)> rec = [&](size_t start) {
        if (static_cast<int>(cur.size()) == w.rank()) {
            out.push_back(cur);
            return;
        }
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
    for (Cluster& t : out) canonicalize(t);
    std::sort(out.begin(), out.end(), [](const Cluster& a, const Cluster& b) {
        return cluster_key(a) < cluster_key(b);
    });
    return out;
}

struct Mutation {
    Cluster result;
    IVec wall;   // ambient root of the rank-1 perpendicular crossed
    int eps;     // +1 or -1
    ExcObj replacement;
};

inline Mutation mutate(const Wide& w, const Cluster& t, int k) {
    if (static_cast<int>(t.size()) != w.rank())
        throw DomainError("mutation requires a complete cluster");
    if (k < 0 || k >= static_cast<int>(t.size()))
        throw DomainError("mutation slot out of range");
    if (w.truncated())
        throw DomainError("mutation in a truncated subcategory is not supported");
    for (size_t i = 0; i < t.size(); ++i)
        for (size_t j = i + 1; j < t.size(); ++j)
            if (!compatible(w, t[i], t[j]))
                throw DomainError("mutation input is not a cluster: " + t[i].key() +
                                  " and " + t[j].key() + " are incompatible");
    Cluster rest;
    for (int i = 0; i < static_cast<int>(t.size()); ++i)
        if (i != k) rest.push_back(t[i]);
    std::vector<ExcObj> completions;
    for (const ExcObj& u : cluster_candidates(w)) {
        if (u == t[k]) continue;
        if (std::find(rest.begin(), rest.end(), u) != rest.end()) continue;
        bool ok = true;
        for (const ExcObj& r : rest)
            if (!compatible(w, r, u)) {
                ok = false;
                break;
            }
        if (ok) completions.push_back(u);
    }
    if (completions.size() != 1)
        throw InternalError("expected exactly one other completion, found " +
                            std::to_string(completions.size()));
    Wide line = perpendicular(w, cluster_roots(rest));
    if (line.rank() != 1) throw InternalError("exchange wall is not rank one");
    IVec beta = line.simples[0];
    const ExcObj& repl = completions[0];
    int eps = (!repl.shifted && w.hom(repl.root, beta) != 0) ? +1 : -1;
    Mutation m;
    m.result = rest;
    m.result.push_back(repl);
    canonicalize(m.result);
    m.wall = beta;
    m.eps = eps;
    m.replacement = repl;
    return m;
}

// c-vectors by the defining linear system: the signed first factors R_i and
// the c-vectors x_j are dual bases of the local Euler form.  Returned in the
// cluster's canonical object order, as signed ambient vectors.
inline std::vector<IVec> c_vectors(const Wide& w, const Cluster& t) {
    int m = w.rank();
    if (static_cast<int>(t.size()) != m)
        throw DomainError("c-vectors require a complete cluster");
    Matx<Rat> a(m, Vec<Rat>(m));
    for (int i = 0; i < m; ++i) {
        auto loc = w.to_local(t[i].root);
        if (!loc) throw InternalError("cluster object outside the subcategory");
        IVec r = t[i].shifted ? ivec_neg(*loc) : *loc;
        IVec row = mat_vec(transpose(w.local->E), r);  // row of r^T E_loc
        for (int j = 0; j < m; ++j) a[i][j] = Rat(row[j]);
    }
    std::vector<IVec> out;
    for (int j = 0; j < m; ++j) {
        Vec<Rat> e(m, Rat(0));
        e[j] = Rat(1);
        LinSolve<Rat> s = solve(a, e);
        if (!s.consistent || !s.unique)
            throw DomainError("singular c-vector system signals a non-cluster input");
        IVec x(m);
        for (int i = 0; i < m; ++i) {
            if (!s.x[i].is_integer())
                throw InternalError("c-vector is not integral");
            x[i] = s.x[i].num;
        }
        if (bilinear(w.local->E, x, x) != 1)
            throw InternalError("c-vector is not a real root");
        out.push_back(w.to_ambient(x));
    }
    return out;
}

// --- exchange graph ---------------------------------------------------------

inline Cluster initial_cluster(const Wide& w) {
    Cluster t;
    for (const IVec& p : w.relative_projectives()) t.push_back({p, true});
    canonicalize(t);
    return t;
}

struct ExchangeGraph {
    std::vector<Cluster> nodes;  // BFS order; node 0 = all shifted projectives
    std::vector<int> parent;     // BFS tree; -1 at the root
    std::vector<IVec> parent_wall;
    std::vector<int> parent_eps;  // sign along parent -> node
    std::map<std::string, int> index;

    int id_of(const Cluster& t) const {
        auto it = index.find(cluster_key(t));
        if (it == index.end()) throw InternalError("cluster missing from exchange graph");
        return it->second;
    }
};

inline ExchangeGraph build_exchange_graph(const Wide& w) {
    ExchangeGraph g;
    Cluster start = initial_cluster(w);
    g.nodes.push_back(start);
    g.parent.push_back(-1);
    g.parent_wall.push_back({});
    g.parent_eps.push_back(0);
    g.index[cluster_key(start)] = 0;
    for (size_t head = 0; head < g.nodes.size(); ++head) {
        Cluster t = g.nodes[head];
        std::vector<Mutation> muts;
        for (int k = 0; k < static_cast<int>(t.size()); ++k)
            muts.push_back(mutate(w, t, k));
        std::sort(muts.begin(), muts.end(), [](const Mutation& a, const Mutation& b) {
            if (a.wall != b.wall) return root_less(a.wall, b.wall);
            return a.eps > b.eps;
        });
        for (const Mutation& m : muts) {
            std::string key = cluster_key(m.result);
            auto it = g.index.find(key);
            if (it == g.index.end()) {
                g.index[key] = static_cast<int>(g.nodes.size());
                g.nodes.push_back(m.result);
                g.parent.push_back(static_cast<int>(head));
                g.parent_wall.push_back(m.wall);
                g.parent_eps.push_back(m.eps);
            }
        }
    }
    return g;
}

// c-vectors by mutation tracking along the exchange-graph path from the
// initial cluster; cross-validates the linear-system route.
inline std::vector<IVec> c_vectors_by_tracking(const Wide& w, const Cluster& t) {
    ExchangeGraph g = build_exchange_graph(w);
    int id = g.id_of(t);
    std::vector<int> path;
    for (int v = id; v != -1; v = g.parent[v]) path.push_back(v);
    std::reverse(path.begin(), path.end());
    // start at P[1]: the c-vector of P_i[1] is minus the i-th local simple
    std::map<std::string, IVec> c;
    Cluster cur = g.nodes[path[0]];
    for (int i = 0; i < w.rank(); ++i) {
        auto loc = w.to_local(cur[i].root);
        int pi = -1;
        for (int j = 0; j < w.rank(); ++j)
            if (w.local->proj[j] == *loc) pi = j;
        if (pi == -1) throw InternalError("initial cluster object is not projective");
        IVec unit(w.rank(), 0);
        unit[pi] = -1;
        c[cur[i].key()] = unit;
    }
    for (size_t step = 1; step < path.size(); ++step) {
        const Cluster& nxt = g.nodes[path[step]];
        // the mutated slot is the object leaving cur
        ExcObj old{};
        bool found = false;
        for (const ExcObj& o : cur)
            if (std::find(nxt.begin(), nxt.end(), o) == nxt.end()) {
                old = o;
                found = true;
            }
        ExcObj fresh{};
        for (const ExcObj& o : nxt)
            if (std::find(cur.begin(), cur.end(), o) == cur.end()) fresh = o;
        if (!found) throw InternalError("exchange path step mutates nothing");
        auto loc = w.to_local(fresh.root);
        IVec rnew = fresh.shifted ? ivec_neg(*loc) : *loc;
        IVec xk = c[old.key()];
        if (bilinear(w.local->E, rnew, xk) != -1)
            throw InternalError("exchange pairing of the new object is not -1");
        std::map<std::string, IVec> cnew;
        for (const ExcObj& o : nxt) {
            if (o == fresh) {
                cnew[o.key()] = ivec_neg(xk);
            } else {
                IVec xj = c[o.key()];
                Int f = bilinear(w.local->E, rnew, xj);
                cnew[o.key()] = ivec_add(xj, ivec_scale(f, xk));
            }
        }
        c = std::move(cnew);
        cur = nxt;
    }
    std::vector<IVec> out;
    for (const ExcObj& o : cur) out.push_back(w.to_ambient(c[o.key()]));
    return out;
}

// --- exceptional sequence arrangement ----------------------------------------

struct Arrangement {
    bool ok = false;
    std::vector<int> order;  // indices into the input list
    std::vector<int> cycle;  // certificate when not ok
};

// Topological sort under "u before v whenever hom(u,v) or ext(u,v) is
// nonzero", plus any extra forced edges; ties broken by root order.
inline Arrangement topo_arrange(const Wide& w, const std::vector<IVec>& roots,
                                const std::vector<std::pair<int, int>>& extra) {
    int n = static_cast<int>(roots.size());
    std::vector<std::vector<char>> edge(n, std::vector<char>(n, 0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            if (w.hom(roots[i], roots[j]) != 0 || w.ext(roots[i], roots[j]) != 0)
                edge[i][j] = 1;
        }
    for (auto [u, v] : extra) edge[u][v] = 1;
    std::vector<char> placed(n, 0);
    Arrangement a;
    for (int step = 0; step < n; ++step) {
        int pick = -1;
        for (int v = 0; v < n; ++v) {
            if (placed[v]) continue;
            bool free = true;
            for (int u = 0; u < n; ++u)
                if (!placed[u] && u != v && edge[u][v]) {
                    free = false;
                    break;
                }
            if (free && (pick == -1 || root_less(roots[v], roots[pick]))) pick = v;
        }
        if (pick == -1) {
            // extract a directed cycle among the remaining vertices
            int v = 0;
            while (placed[v]) ++v;
            std::vector<int> seen(n, -1);
            std::vector<int> walk;
            while (seen[v] == -1) {
                seen[v] = static_cast<int>(walk.size());
                walk.push_back(v);
                int next = -1;
                for (int u = 0; u < n; ++u)
                    if (!placed[u] && u != v && edge[u][v]) {
                        next = u;
                        break;
                    }
                if (next == -1) throw InternalError("stalled vertex with no blocker");
                v = next;
            }
            a.ok = false;
            a.cycle.assign(walk.begin() + seen[v], walk.end());
            return a;
        }
        placed[pick] = 1;
        a.order.push_back(pick);
    }
    a.ok = true;
    return a;
}

// Entry point for arranging pairwise Hom-orthogonal modules.
inline Arrangement arrange_exceptional_sequence(const Wide& w,
                                                const std::vector<IVec>& roots) {
    for (size_t i = 0; i < roots.size(); ++i)
        for (size_t j = i + 1; j < roots.size(); ++j) {
            if (w.hom(roots[i], roots[j]) != 0 || w.hom(roots[j], roots[i]) != 0)
                throw DomainError("modules are not hom-orthogonal: " +
                                  ivec_str(roots[i]) + ", " + ivec_str(roots[j]));
            if (w.ext(roots[i], roots[j]) != 0 && w.ext(roots[j], roots[i]) != 0)
                throw DomainError("pair exceptional in no order: " +
                                  ivec_str(roots[i]) + ", " + ivec_str(roots[j]));
        }
    return topo_arrange(w, roots, {});
}

struct STResult {
    bool ok = false;
    std::string diagnostic;
};

// Speyer-Thomas criterion for signed collections: same-sign parts pairwise
// Hom-orthogonal, and the modules arrange into an exceptional sequence with
// every negative module to the left of every positive one.
inline STResult speyer_thomas_check(const Wide& w,
                                    const std::vector<std::pair<IVec, int>>& xs) {
    STResult r;
    if (static_cast<int>(xs.size()) != w.rank()) {
        r.diagnostic = "collection size differs from the rank";
        return r;
    }
    for (size_t i = 0; i < xs.size(); ++i)
        for (size_t j = 0; j < xs.size(); ++j) {
            if (i == j || xs[i].second != xs[j].second) continue;
            if (xs[i].first == xs[j].first) {
                r.diagnostic = "repeated module " + ivec_str(xs[i].first);
                return r;
            }
            if (w.hom(xs[i].first, xs[j].first) != 0) {
                r.diagnostic = "same-sign pair not hom-orthogonal: " +
                               ivec_str(xs[i].first) + ", " + ivec_str(xs[j].first);
                return r;
            }
        }
    std::vector<IVec> roots;
    for (const auto& [root, sign] : xs) roots.push_back(root);
    std::vector<std::pair<int, int>> extra;
    for (size_t i = 0; i < xs.size(); ++i)
        for (size_t j = 0; j < xs.size(); ++j)
            if (xs[i].second < 0 && xs[j].second > 0)
                extra.emplace_back(static_cast<int>(i), static_cast<int>(j));
    // a repeated module across signs blocks the arrangement via its identity map
    for (size_t i = 0; i < xs.size(); ++i)
        for (size_t j = 0; j < xs.size(); ++j)
            if (i != j && xs[i].first == xs[j].first) {
                r.diagnostic = "module appears with both signs: " + ivec_str(xs[i].first);
                return r;
            }
    Arrangement a = topo_arrange(w, roots, extra);
    if (!a.ok) {
        r.diagnostic = "no exceptional arrangement with negatives left";
        return r;
    }
    r.ok = true;
    return r;
}

struct StarResult {
    bool pass = false;
    std::vector<IVec> counterexample;  // pairwise-valid collection, unarrangeable
    std::vector<IVec> cycle;           // the forced-precedence cycle inside it
};

// Condition (*): every collection of pairwise Hom-orthogonal, pairwise
// exceptional modules arranges into an exceptional sequence.  Enumerates all
// cliques of the valid-pair graph over the bounded exceptional roots and
// tests them ordered by total dimension then lexicographically, so the
// reported counterexample is the smallest one.
inline StarResult condition_star_check(const Wide& w) {
    const std::vector<IVec>& roots = w.exceptional_objects();
    int n = static_cast<int>(roots.size());
    std::vector<std::vector<char>> valid(n, std::vector<char>(n, 0));
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            bool horth = w.hom(roots[i], roots[j]) == 0 && w.hom(roots[j], roots[i]) == 0;
            bool oneway = !(w.ext(roots[i], roots[j]) != 0 && w.ext(roots[j], roots[i]) != 0);
            valid[i][j] = valid[j][i] = horth && oneway;
        }
    std::vector<std::vector<int>> cliques;
    std::vector<int> cur;
    std::function<void(int)> rec = [&](int start) {
        if (cur.size() >= 3) cliques.push_back(cur);
        if (cliques.size() > 2000000)
            throw InternalError("clique census exceeded the safety guard");
        for (int c = start; c < n; ++c) {
            bool ok = true;
            for (int i : cur)
                if (!valid[i][c]) {
                    ok = false;
                    break;
                }
            if (!ok) continue;
            cur.push_back(c);
            rec(c + 1);
            cur.pop_back();
        }
    };
    rec(0);
    auto total = [&](const std::vector<int>& cl) {
        Int s = 0;
        for (int i : cl)
            for (Int v : roots[i]) s += v;
        return s;
    };
    std::sort(cliques.begin(), cliques.end(),
              [&](const std::vector<int>& a, const std::vector<int>& b) {
                  Int ta = total(a), tb = total(b);
                  if (ta != tb) return ta < tb;
                  return a < b;  // indices follow root order
              });
    StarResult res;
    for (const std::vector<int>& cl : cliques) {
        std::vector<IVec> sel;
        for (int i : cl) sel.push_back(roots[i]);
        Arrangement a = topo_arrange(w, sel, {});
        if (!a.ok) {
            res.counterexample = sel;
            for (int i : a.cycle) res.cycle.push_back(sel[i]);
            res.pass = false;
            return res;
        }
    }
    res.pass = true;
    return res;
}

}  // namespace cmcat
