#pragma once

#include <map>
#include <unordered_map>
#include <utility>
#include <vector>

#include "cmcat/rep.hpp"

namespace cmcat {

struct TubeCoord {
    int tube = -1;
    Int pos = 0;  // index of the quasi-socle in the mouth list
    Int len = 0;  // quasi-length, 1..rank-1
};

struct TubeData {
    // mouths[t][j] with tau(mouths[t][j]) = mouths[t][j-1] (indices mod rank)
    std::vector<std::vector<IVec>> mouths;
    std::unordered_map<IVec, TubeCoord, IVecHash> window;
    std::vector<Int> reported_ranks;  // cycle graphs report {p,q}, else orbit sizes
};

// A hereditary algebra given by an acyclic quiver, with everything the
// cluster machinery asks of it: the Euler form, Coxeter transform,
// projective/injective dimension vectors, bounded root lists, tame tube
// structure, and memoized Hom/Ext oracles at the root level.
class Algebra {
  public:
    Quiver q;
    IMat E, Einv, Phi, PhiInv;
    ReprType rtype;
    Int bound = 8;
    std::vector<IVec> proj, inj;    // dim P_i, dim I_i
    std::vector<IVec> real_roots;   // positive real roots, entries <= bound if tame
    std::vector<IVec> exc_roots;    // exceptional subset of real_roots
    TubeData tubes;

    static Algebra build(const Quiver& quiver, Int bound = 8) {
        Algebra a;
        a.q = quiver;
        a.bound = bound;
        if (bound < 1) throw DomainError("root bound must be at least 1");
        a.E = a.q.euler_matrix();
        a.Einv = unimodular_inverse(a.E);
        a.Phi = coxeter_matrix(a.E);
        a.PhiInv = coxeter_matrix_inverse(a.E);
        a.rtype = classify_type(a.q);
        for (int i = 0; i < a.q.n; ++i) {
            a.proj.push_back(a.Einv[i]);
            IVec col(a.q.n);
            for (int j = 0; j < a.q.n; ++j) col[j] = a.Einv[j][i];
            a.inj.push_back(col);
            a.proj_index_[a.proj.back()] = i;
            a.inj_index_[a.inj.back()] = i;
        }
        if (a.rtype.tag == QType::Finite) {
            a.real_roots = a.finite_roots();
            a.exc_roots = a.real_roots;
        } else if (a.rtype.tag == QType::Tame) {
            a.build_tubes();
            a.real_roots = a.tame_roots();
            for (const IVec& b : a.real_roots)
                if (a.is_exceptional(b)) a.exc_roots.push_back(b);
        }
        return a;
    }

    int n() const { return q.n; }
    Int form(const IVec& x, const IVec& y) const { return bilinear(E, x, y); }
    Int tits(const IVec& x) const { return form(x, x); }
    IVec cox(const IVec& x) const { return mat_vec(Phi, x); }
    IVec cox_inv(const IVec& x) const { return mat_vec(PhiInv, x); }

    Int defect(const IVec& x) const {
        if (rtype.tag != QType::Tame)
            throw InternalError("defect only defined for tame type");
        return form(rtype.null_root, x);
    }

    bool is_real_root(const IVec& b) const {
        return !ivec_is_zero(b) && ivec_nonneg(b) && tits(b) == 1;
    }

    // Finite type: every positive root.  Tame: real roots that are
    // preprojective or preinjective (defect != 0) or regular of quasi-length
    // below the tube rank (equivalently, dominated by delta).
    bool is_exceptional(const IVec& b) const {
        if (!is_real_root(b)) return false;
        if (rtype.tag == QType::Finite) return true;
        if (rtype.tag == QType::Tame)
            return defect(b) != 0 || ivec_dominated(b, rtype.null_root);
        throw DomainError("wild type rejected");
    }

    int proj_index(const IVec& b) const {
        auto it = proj_index_.find(b);
        return it == proj_index_.end() ? -1 : it->second;
    }
    int inj_index(const IVec& b) const {
        auto it = inj_index_.find(b);
        return it == inj_index_.end() ? -1 : it->second;
    }

    // --- root-level Hom/Ext oracle (exceptional roots) ----------------------

    Int hom(const IVec& a, const IVec& b) const {
        auto key = std::make_pair(a, b);
        auto it = hom_memo_.find(key);
        if (it != hom_memo_.end()) return it->second;
        Int h;
        if (rtype.tag == QType::Finite)
            h = hom_rep(a, b);
        else if (rtype.tag == QType::Tame)
            h = ar_hom(a, b, 0);
        else
            throw DomainError("wild type rejected");
        hom_memo_.emplace(std::move(key), h);
        return h;
    }

    Int ext(const IVec& a, const IVec& b) const {
        Int e = hom(a, b) - form(a, b);
        if (e < 0)
            throw InternalError("negative Ext: form and linear algebra disagree at " +
                                ivec_str(a) + ", " + ivec_str(b));
        return e;
    }

    // Hom dimension from explicitly built representations (exact).
    Int hom_rep(const IVec& a, const IVec& b) const {
        return hom_dim(q, build_module(a), build_module(b));
    }

    // --- module construction -------------------------------------------------

    // Indecomposable with dimension vector beta, for exceptional beta:
    // Coxeter walks from an explicit projective/injective reach every
    // nonregular root, and regular windows arise as generic cokernels
    // between projectives.
    const Rep& build_module(const IVec& beta) const {
        auto it = rep_memo_.find(beta);
        if (it != rep_memo_.end()) return it->second;
        if (!is_real_root(beta))
            throw DomainError("not a positive real root: " + ivec_str(beta));
        Rep m;
        if (rtype.tag == QType::Finite || defect_class(beta) < 0)
            m = build_preprojective(beta);
        else if (defect_class(beta) > 0)
            m = build_preinjective(beta);
        else if (is_exceptional(beta))
            m = build_window(beta);
        else
            throw DomainError("non-rigid regular modules are not supported: " +
                              ivec_str(beta));
        if (m.dims != beta)
            throw InternalError("built module has wrong dimension vector");
        return rep_memo_.emplace(beta, std::move(m)).first->second;
    }

    // --- tame structure -------------------------------------------------------

    TubeCoord window_coord(const IVec& b) const {
        auto it = tubes.window.find(b);
        if (it == tubes.window.end())
            throw InternalError("regular root outside the window table: " +
                                ivec_str(b));
        return it->second;
    }

  private:
    std::unordered_map<IVec, int, IVecHash> proj_index_, inj_index_;
    mutable std::map<std::pair<IVec, IVec>, Int> hom_memo_;
    mutable std::unordered_map<IVec, Rep, IVecHash> rep_memo_;

    Int defect_class(const IVec& b) const {
        return rtype.tag == QType::Tame ? defect(b) : -1;
    }

    // Hom for tame type by Auslander-Reiten recursion on dimension vectors:
    //   hom(a,b) = <a,b> + hom(b, Phi a)        (a nonprojective)
    //   hom(a,b) = <a,b> + hom(Phi^{-1} b, a)   (b noninjective)
    // anchored at hom(P_i, X) = X_i, hom(X, I_j) = X_j, the vanishing of
    // Hom from right to left across preprojective < regular < preinjective,
    // and the interval formula inside a tube.
    Int ar_hom(const IVec& a, const IVec& b, int depth) const {
        if (depth > 4096) throw InternalError("AR recursion depth exceeded");
        int pi = proj_index(a);
        if (pi >= 0) return b[pi];
        int ij = inj_index(b);
        if (ij >= 0) return a[ij];
        Int da = defect(a), db = defect(b);
        if (da < 0) return form(a, b) + ar_hom(b, cox(a), depth + 1);
        if (db > 0) return form(a, b) + ar_hom(cox_inv(b), a, depth + 1);
        if (da > 0 || db < 0) return 0;
        TubeCoord x = window_coord(a), y = window_coord(b);
        if (x.tube != y.tube) return 0;
        Int r = static_cast<Int>(tubes.mouths[x.tube].size());
        Int off = ((y.pos - x.pos) % r + r) % r;
        return (off < x.len && x.len - off <= y.len) ? 1 : 0;
    }

    std::vector<IVec> finite_roots() const {
        IMat b = E;
        IMat et = transpose(E);
        for (int i = 0; i < q.n; ++i)
            for (int j = 0; j < q.n; ++j) b[i][j] += et[i][j];
        std::vector<IVec> all;
        std::unordered_map<IVec, char, IVecHash> seen;
        for (int i = 0; i < q.n; ++i) {
            IVec e(q.n, 0);
            e[i] = 1;
            all.push_back(e);
            seen[e] = 1;
        }
        for (size_t head = 0; head < all.size(); ++head) {
            IVec x = all[head];
            for (int i = 0; i < q.n; ++i) {
                Int pairing = 0;
                for (int j = 0; j < q.n; ++j) pairing += b[j][i] * x[j];
                IVec y = x;
                y[i] -= pairing;
                if (!seen.count(y)) {
                    seen[y] = 1;
                    all.push_back(y);
                    if (all.size() > 100000)
                        throw InternalError("reflection closure did not terminate");
                }
            }
        }
        std::vector<IVec> pos;
        for (const IVec& r : all)
            if (ivec_nonneg(r) && !ivec_is_zero(r)) {
                if (tits(r) != 1)
                    throw InternalError("reflection closure produced a non-root");
                pos.push_back(r);
            }
        std::sort(pos.begin(), pos.end(), RootLess{});
        return pos;
    }

    bool in_box(const IVec& v) const {
        for (Int x : v)
            if (x < 0 || x > bound) return false;
        return !ivec_is_zero(v);
    }

    std::vector<IVec> tame_roots() const {
        std::unordered_map<IVec, char, IVecHash> seen;
        std::vector<IVec> out;
        auto add = [&](const IVec& v) {
            if (in_box(v) && !seen.count(v)) {
                if (tits(v) != 1)
                    throw InternalError("tame enumeration produced a non-root");
                seen[v] = 1;
                out.push_back(v);
            }
        };
        // preprojective and preinjective Coxeter walks; dimension vectors
        // leave the box for good after a bounded number of steps
        int cap = static_cast<int>(4 * (bound + 2) * q.n + 64);
        for (int i = 0; i < q.n; ++i) {
            IVec x = proj[i];
            for (int k = 0; k < cap; ++k) {
                add(x);
                x = cox_inv(x);
            }
            x = inj[i];
            for (int k = 0; k < cap; ++k) {
                add(x);
                x = cox(x);
            }
        }
        // regular real roots: window + k*delta
        for (const auto& [w, coord] : tubes.window) {
            IVec x = w;
            while (in_box(x)) {
                add(x);
                x = ivec_add(x, rtype.null_root);
            }
        }
        std::sort(out.begin(), out.end(), RootLess{});
        return out;
    }

    void build_tubes() {
        const IVec& delta = rtype.null_root;
        // scan the [0, delta] box for regular windows
        std::vector<IVec> windows;
        IVec v(q.n, 0);
        while (true) {
            if (!ivec_is_zero(v) && tits(v) == 1 && defect(v) == 0)
                windows.push_back(v);
            int k = 0;
            while (k < q.n && v[k] == delta[k]) v[k++] = 0;
            if (k == q.n) break;
            ++v[k];
        }
        // mouths are the windows that do not split as a sum of two windows
        std::unordered_map<IVec, char, IVecHash> wset;
        for (const IVec& w : windows) wset[w] = 1;
        std::vector<IVec> minimal;
        for (const IVec& w : windows) {
            bool min = true;
            for (const IVec& u : windows)
                if (u != w && ivec_dominated(u, w) && wset.count(ivec_sub(w, u))) {
                    min = false;
                    break;
                }
            if (min) minimal.push_back(w);
        }
        std::sort(minimal.begin(), minimal.end(), RootLess{});
        std::unordered_map<IVec, char, IVecHash> min_set, used;
        for (const IVec& m : minimal) min_set[m] = 1;
        for (const IVec& m : minimal) {
            if (used.count(m)) continue;
            std::vector<IVec> orbit;
            IVec x = m;
            do {
                if (!min_set.count(x))
                    throw InternalError("Coxeter transform does not permute tube mouths");
                used[x] = 1;
                orbit.push_back(x);
                x = cox_inv(x);
            } while (x != m);
            if (orbit.size() < 2)
                throw InternalError("tube mouth orbit of size one");
            tubes.mouths.push_back(std::move(orbit));
        }
        // index all windows by (tube, position, quasi-length)
        for (size_t t = 0; t < tubes.mouths.size(); ++t) {
            const auto& mouth = tubes.mouths[t];
            Int r = static_cast<Int>(mouth.size());
            for (Int i = 0; i < r; ++i)
                for (Int len = 1; len < r; ++len) {
                    IVec w(q.n, 0);
                    for (Int k = 0; k < len; ++k)
                        w = ivec_add(w, mouth[(i + k) % r]);
                    TubeCoord c;
                    c.tube = static_cast<int>(t);
                    c.pos = i;
                    c.len = len;
                    if (!tubes.window.emplace(w, c).second)
                        throw InternalError("window indexed twice");
                }
        }
        if (tubes.window.size() != windows.size())
            throw InternalError("window census mismatch");
        for (const IVec& w : windows)
            if (!tubes.window.count(w))
                throw InternalError("scanned window missing from the index");
        // ranks: single-cycle graphs report the orientation counts {p,q}
        std::vector<Int> orbit_sizes;
        for (const auto& m : tubes.mouths)
            orbit_sizes.push_back(static_cast<Int>(m.size()));
        std::sort(orbit_sizes.rbegin(), orbit_sizes.rend());
        if (auto pq = q.cycle_orientation()) {
            std::vector<Int> expect;
            if (pq->first >= 2) expect.push_back(pq->first);
            if (pq->second >= 2) expect.push_back(pq->second);
            if (expect != orbit_sizes)
                throw InternalError("cycle orientation disagrees with mouth orbits");
            tubes.reported_ranks = {pq->first, pq->second};
        } else {
            tubes.reported_ranks = orbit_sizes;
        }
        Int excess = 0;
        for (Int r : tubes.reported_ranks) excess += r - 1;
        if (excess != q.n - 2)
            throw InternalError("tube ranks violate the rank-sum identity");
    }

    Rep build_preprojective(const IVec& beta) const {
        IVec x = beta;
        int k = 0;
        while (proj_index(x) < 0) {
            x = cox(x);
            ++k;
            if (!ivec_nonneg(x) || ivec_is_zero(x) || k > 4096)
                throw InternalError("Coxeter walk failed to reach a projective from " +
                                    ivec_str(beta));
        }
        Rep m = rep_projective(q, proj_index(x));
        for (int step = 0; step < k; ++step) m = coxeter_minus(q, m);
        return m;
    }

    Rep build_preinjective(const IVec& beta) const {
        IVec x = beta;
        int k = 0;
        while (inj_index(x) < 0) {
            x = cox_inv(x);
            ++k;
            if (!ivec_nonneg(x) || ivec_is_zero(x) || k > 4096)
                throw InternalError("Coxeter walk failed to reach an injective from " +
                                    ivec_str(beta));
        }
        Rep m = rep_injective(q, inj_index(x));
        for (int step = 0; step < k; ++step) m = coxeter_plus(q, m);
        return m;
    }

    // Regular window M_beta = coker(f) for a generic map between projectives
    // determined by beta = dim P0 - dim P1 in the projective basis.
    Rep build_window(const IVec& beta) const {
        IVec c = mat_vec(transpose(E), beta);
        IVec check(q.n, 0);
        for (int i = 0; i < q.n; ++i)
            if (c[i] != 0) check = ivec_add(check, ivec_scale(c[i], proj[i]));
        if (check != beta)
            throw InternalError("projective-basis coordinates are wrong");
        Rep p0 = rep_zero(q), p1 = rep_zero(q);
        bool have1 = false;
        for (int i = 0; i < q.n; ++i) {
            for (Int k = 0; k < c[i]; ++k) p0 = rep_direct_sum(q, p0, rep_projective(q, i));
            for (Int k = 0; k < -c[i]; ++k) {
                p1 = rep_direct_sum(q, p1, rep_projective(q, i));
                have1 = true;
            }
        }
        if (!have1)
            throw InternalError("regular window with no negative projective coordinate");
        auto basis = hom_basis(q, p1, p0);
        if (basis.empty())
            throw InternalError("no maps between the window's projectives");
        for (Int seed = 1; seed <= 8; ++seed) {
            std::vector<MatR> f;
            for (int v = 0; v < q.n; ++v)
                f.push_back(MatR::zero(static_cast<int>(p0.dims[v]),
                                       static_cast<int>(p1.dims[v])));
            Rat lambda(1);
            for (const auto& h : basis) {
                for (int v = 0; v < q.n; ++v)
                    for (int i = 0; i < f[v].rows; ++i)
                        for (int j = 0; j < f[v].cols; ++j)
                            f[v].a[i][j] += lambda * h[v].a[i][j];
                lambda *= Rat(seed);
            }
            bool injective = true;
            for (int v = 0; v < q.n && injective; ++v)
                injective = rank_of(f[v]) == static_cast<int>(p1.dims[v]);
            if (!injective) continue;
            Rep m = cokernel(q, p0, f);
            if (m.dims != beta) continue;
            if (end_dim(q, m) == 1) return m;
        }
        throw InternalError("no generic cokernel found for window " + ivec_str(beta));
    }
};

// Positive real roots, bounded entrywise in tame type.
inline std::vector<IVec> enumerate_positive_real_roots(const Quiver& q, Int bound) {
    Algebra a = Algebra::build(q, bound);
    if (a.rtype.tag == QType::Wild) throw DomainError("wild type rejected");
    return a.real_roots;
}

}  // namespace cmcat
