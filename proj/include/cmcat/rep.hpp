#pragma once

#include <map>
#include <optional>
#include <vector>

#include "cmcat/quiver.hpp"

namespace cmcat {

// Dense rational matrix with explicit shape (zero-dimensional sides are
// routine in reflection functors, so shapes cannot live in the data alone).
struct MatR {
    int rows = 0, cols = 0;
    Matx<Rat> a;

    static MatR zero(int r, int c) {
        MatR m;
        m.rows = r;
        m.cols = c;
        m.a.assign(r, Vec<Rat>(c, Rat(0)));
        return m;
    }
    static MatR ident(int n) {
        MatR m = zero(n, n);
        for (int i = 0; i < n; ++i) m.a[i][i] = Rat(1);
        return m;
    }
};

inline MatR mat_mul(const MatR& x, const MatR& y) {
    if (x.cols != y.rows) throw InternalError("matrix shape mismatch in product");
    MatR r = MatR::zero(x.rows, y.cols);
    for (int i = 0; i < x.rows; ++i)
        for (int k = 0; k < x.cols; ++k) {
            if (x.a[i][k].is_zero()) continue;
            for (int j = 0; j < y.cols; ++j)
                r.a[i][j] += x.a[i][k] * y.a[k][j];
        }
    return r;
}

inline int rank_of(const MatR& m) { return rank_of(m.a); }

// Columns spanning ker(m).
inline MatR kernel_cols(const MatR& m) {
    Matx<Rat> padded = m.a;
    padded.resize(m.rows, Vec<Rat>(m.cols, Rat(0)));
    if (m.cols == 0) return MatR::zero(0, 0);
    if (m.rows == 0) return MatR::ident(m.cols);
    Matx<Rat> rows = kernel_basis(padded);
    MatR k = MatR::zero(m.cols, static_cast<int>(rows.size()));
    for (size_t j = 0; j < rows.size(); ++j)
        for (int i = 0; i < m.cols; ++i) k.a[i][j] = rows[j][i];
    return k;
}

// Representation of a quiver: one matrix per arrow, maps[a] has shape
// dims[t(a)] x dims[s(a)] and acts on column vectors.
struct Rep {
    IVec dims;
    std::vector<MatR> maps;
};

inline Rep rep_zero(const Quiver& q) {
    Rep m;
    m.dims.assign(q.n, 0);
    for (auto& [s, t] : q.arrows) m.maps.push_back(MatR::zero(0, 0));
    return m;
}

inline Rep rep_simple(const Quiver& q, int i) {
    Rep m = rep_zero(q);
    m.dims[i] = 1;
    for (size_t a = 0; a < q.arrows.size(); ++a)
        m.maps[a] = MatR::zero(m.dims[q.arrows[a].second], m.dims[q.arrows[a].first]);
    return m;
}

// Projective P_i: basis at vertex j = paths i ~> j; an arrow acts by path
// concatenation.
inline Rep rep_projective(const Quiver& q, int i) {
    using Path = std::vector<int>;  // arrow indices along the path
    std::vector<std::map<Path, int>> basis(q.n);
    std::vector<std::pair<int, Path>> stack{{i, {}}};
    while (!stack.empty()) {
        auto [v, p] = stack.back();
        stack.pop_back();
        if (basis[v].count(p)) continue;
        int id = static_cast<int>(basis[v].size());
        basis[v][p] = id;
        for (size_t a = 0; a < q.arrows.size(); ++a) {
            if (q.arrows[a].first != v) continue;
            Path ext = p;
            ext.push_back(static_cast<int>(a));
            stack.emplace_back(q.arrows[a].second, std::move(ext));
        }
    }
    Rep m;
    m.dims.resize(q.n);
    for (int v = 0; v < q.n; ++v) m.dims[v] = static_cast<Int>(basis[v].size());
    for (size_t a = 0; a < q.arrows.size(); ++a) {
        auto [s, t] = q.arrows[a];
        MatR mt = MatR::zero(static_cast<int>(m.dims[t]), static_cast<int>(m.dims[s]));
        for (auto& [p, col] : basis[s]) {
            Path ext = p;
            ext.push_back(static_cast<int>(a));
            mt.a[basis[t].at(ext)][col] = Rat(1);
        }
        m.maps.push_back(std::move(mt));
    }
    return m;
}

inline Quiver opposite(const Quiver& q) {
    Quiver op;
    op.n = q.n;
    for (auto& [s, t] : q.arrows) op.arrows.emplace_back(t, s);
    return op;
}

// Injective I_i = dual of the opposite projective at i.
inline Rep rep_injective(const Quiver& q, int i) {
    Rep p = rep_projective(opposite(q), i);
    Rep m;
    m.dims = p.dims;
    for (size_t a = 0; a < q.arrows.size(); ++a) {
        const MatR& x = p.maps[a];  // shape dims[s] x dims[t] over q^op
        MatR d = MatR::zero(x.cols, x.rows);
        for (int r = 0; r < x.rows; ++r)
            for (int c = 0; c < x.cols; ++c) d.a[c][r] = x.a[r][c];
        m.maps.push_back(std::move(d));
    }
    return m;
}

inline Rep rep_direct_sum(const Quiver& q, const Rep& x, const Rep& y) {
    Rep m;
    m.dims = ivec_add(x.dims, y.dims);
    for (size_t a = 0; a < q.arrows.size(); ++a) {
        auto [s, t] = q.arrows[a];
        MatR b = MatR::zero(static_cast<int>(m.dims[t]), static_cast<int>(m.dims[s]));
        for (int r = 0; r < x.maps[a].rows; ++r)
            for (int c = 0; c < x.maps[a].cols; ++c) b.a[r][c] = x.maps[a].a[r][c];
        for (int r = 0; r < y.maps[a].rows; ++r)
            for (int c = 0; c < y.maps[a].cols; ++c)
                b.a[x.maps[a].rows + r][x.maps[a].cols + c] = y.maps[a].a[r][c];
        m.maps.push_back(std::move(b));
    }
    return m;
}

// --- Hom spaces --------------------------------------------------------------

// Constraint matrix of the intertwiner system f_t M_a = N_a f_s; unknowns
// are the stacked entries of all f_v (v-major, then row-major).
template <class K>
Matx<K> hom_system(const Quiver& q, const Rep& m, const Rep& n) {
    std::vector<int> off(q.n + 1, 0);
    for (int v = 0; v < q.n; ++v)
        off[v + 1] = off[v] + static_cast<int>(n.dims[v] * m.dims[v]);
    int unknowns = off[q.n];
    Matx<K> sys;
    auto conv = [](const Rat& x) {
        K num(x.num), den(x.den);
        if (den.is_zero())
            throw DomainError("denominator not invertible in the prime field");
        return num / den;
    };
    for (size_t a = 0; a < q.arrows.size(); ++a) {
        auto [s, t] = q.arrows[a];
        for (int i = 0; i < n.dims[t]; ++i)
            for (int j = 0; j < m.dims[s]; ++j) {
                Vec<K> row(unknowns, K(0));
                // f_t[i][k] * M_a[k][j]
                for (int k = 0; k < m.dims[t]; ++k)
                    if (!m.maps[a].a[k][j].is_zero())
                        row[off[t] + i * m.dims[t] + k] += conv(m.maps[a].a[k][j]);
                // - N_a[i][k] * f_s[k][j]
                for (int k = 0; k < n.dims[s]; ++k)
                    if (!n.maps[a].a[i][k].is_zero())
                        row[off[s] + k * m.dims[s] + j] -= conv(n.maps[a].a[i][k]);
                sys.push_back(std::move(row));
            }
    }
    if (sys.empty()) sys.push_back(Vec<K>(unknowns, K(0)));
    return sys;
}

template <class K>
Int hom_dim_over(const Quiver& q, const Rep& m, const Rep& n) {
    Int unknowns = 0;
    for (int v = 0; v < q.n; ++v) unknowns += n.dims[v] * m.dims[v];
    if (unknowns == 0) return 0;
    return unknowns - rank_of(hom_system<K>(q, m, n));
}

inline Int hom_dim(const Quiver& q, const Rep& m, const Rep& n) {
    return hom_dim_over<Rat>(q, m, n);
}

inline Int end_dim(const Quiver& q, const Rep& m) { return hom_dim(q, m, m); }

// Basis of Hom(M,N) as per-vertex matrices f_v : M_v -> N_v.
inline std::vector<std::vector<MatR>> hom_basis(const Quiver& q, const Rep& m,
                                                const Rep& n) {
    std::vector<int> off(q.n + 1, 0);
    for (int v = 0; v < q.n; ++v)
        off[v + 1] = off[v] + static_cast<int>(n.dims[v] * m.dims[v]);
    if (off[q.n] == 0) return {};
    Matx<Rat> ker = kernel_basis(hom_system<Rat>(q, m, n));
    std::vector<std::vector<MatR>> out;
    for (const auto& flat : ker) {
        std::vector<MatR> f;
        for (int v = 0; v < q.n; ++v) {
            MatR fv = MatR::zero(static_cast<int>(n.dims[v]),
                                 static_cast<int>(m.dims[v]));
            for (int i = 0; i < fv.rows; ++i)
                for (int j = 0; j < fv.cols; ++j)
                    fv.a[i][j] = flat[off[v] + i * m.dims[v] + j];
            f.push_back(std::move(fv));
        }
        out.push_back(std::move(f));
    }
    return out;
}

// --- quotients ---------------------------------------------------------------

// Quotient of K^dim by the column span of `image`: a projection to
// complement coordinates after reduction against an echelon basis.
struct Quotient {
    int dim = 0;             // dimension of the quotient
    std::vector<int> comp;   // complement coordinate indices
    Matx<Rat> echelon;       // rref rows spanning the image
    std::vector<int> pivots;

    static Quotient of(const MatR& image) {
        Quotient qt;
        Matx<Rat> rows(image.cols, Vec<Rat>(image.rows));
        for (int j = 0; j < image.cols; ++j)
            for (int i = 0; i < image.rows; ++i) rows[j][i] = image.a[i][j];
        if (image.cols == 0) rows.clear();
        qt.pivots = rref(rows);
        rows.resize(qt.pivots.size());
        qt.echelon = std::move(rows);
        std::vector<char> is_pivot(image.rows, 0);
        for (int p : qt.pivots) is_pivot[p] = 1;
        for (int i = 0; i < image.rows; ++i)
            if (!is_pivot[i]) qt.comp.push_back(i);
        qt.dim = static_cast<int>(qt.comp.size());
        return qt;
    }

    Vec<Rat> project(Vec<Rat> x) const {
        for (size_t r = 0; r < echelon.size(); ++r) {
            Rat f = x[pivots[r]];
            if (f.is_zero()) continue;
            for (size_t j = 0; j < x.size(); ++j) x[j] -= f * echelon[r][j];
        }
        Vec<Rat> y(comp.size());
        for (size_t k = 0; k < comp.size(); ++k) y[k] = x[comp[k]];
        return y;
    }
};

// Cokernel of a module map f: A -> B given by per-vertex blocks.
inline Rep cokernel(const Quiver& q, const Rep& b,
                    const std::vector<MatR>& f) {
    std::vector<Quotient> qt(q.n);
    Rep c;
    c.dims.resize(q.n);
    for (int v = 0; v < q.n; ++v) {
        qt[v] = Quotient::of(f[v]);
        c.dims[v] = qt[v].dim;
    }
    for (size_t a = 0; a < q.arrows.size(); ++a) {
        auto [s, t] = q.arrows[a];
        MatR m = MatR::zero(qt[t].dim, qt[s].dim);
        for (int j = 0; j < qt[s].dim; ++j) {
            // section: complement basis vector of B_s, then B_a, then project
            Vec<Rat> x(b.dims[t], Rat(0));
            int src = qt[s].comp[j];
            for (int i = 0; i < b.maps[a].rows; ++i) x[i] = b.maps[a].a[i][src];
            Vec<Rat> y = qt[t].project(std::move(x));
            for (int i = 0; i < qt[t].dim; ++i) m.a[i][j] = y[i];
        }
        c.maps.push_back(std::move(m));
    }
    return c;
}

// --- reflection functors -----------------------------------------------------

struct Reflected {
    Quiver q;
    Rep m;
};

// R^+ at a sink v: new M_v = ker(⊕ M_{s(a)} -> M_v); arrows at v reverse.
inline Reflected reflect_sink(const Quiver& q, const Rep& m, int v) {
    std::vector<int> in;
    for (size_t a = 0; a < q.arrows.size(); ++a) {
        if (q.arrows[a].first == v)
            throw InternalError("reflect_sink at a non-sink vertex");
        if (q.arrows[a].second == v) in.push_back(static_cast<int>(a));
    }
    int total = 0;
    for (int a : in) total += static_cast<int>(m.dims[q.arrows[a].first]);
    MatR block = MatR::zero(static_cast<int>(m.dims[v]), total);
    int col = 0;
    for (int a : in) {
        for (int i = 0; i < m.maps[a].rows; ++i)
            for (int j = 0; j < m.maps[a].cols; ++j)
                block.a[i][col + j] = m.maps[a].a[i][j];
        col += m.maps[a].cols;
    }
    MatR ker = kernel_cols(block);
    Reflected out;
    out.q = q;
    out.m = m;
    out.m.dims[v] = ker.cols;
    col = 0;
    for (int a : in) {
        auto [s, t] = q.arrows[a];
        out.q.arrows[a] = {t, s};
        MatR slice = MatR::zero(static_cast<int>(m.dims[s]), ker.cols);
        for (int i = 0; i < slice.rows; ++i)
            for (int j = 0; j < ker.cols; ++j) slice.a[i][j] = ker.a[col + i][j];
        col += slice.rows;
        out.m.maps[a] = std::move(slice);
    }
    return out;
}

// R^- at a source v: new M_v = coker(M_v -> ⊕ M_{t(a)}); arrows at v reverse.
inline Reflected reflect_source(const Quiver& q, const Rep& m, int v) {
    std::vector<int> outg;
    for (size_t a = 0; a < q.arrows.size(); ++a) {
        if (q.arrows[a].second == v)
            throw InternalError("reflect_source at a non-source vertex");
        if (q.arrows[a].first == v) outg.push_back(static_cast<int>(a));
    }
    int total = 0;
    std::vector<int> offset;
    for (int a : outg) {
        offset.push_back(total);
        total += static_cast<int>(m.dims[q.arrows[a].second]);
    }
    MatR block = MatR::zero(total, static_cast<int>(m.dims[v]));
    for (size_t k = 0; k < outg.size(); ++k) {
        const MatR& x = m.maps[outg[k]];
        for (int i = 0; i < x.rows; ++i)
            for (int j = 0; j < x.cols; ++j) block.a[offset[k] + i][j] = x.a[i][j];
    }
    Quotient qt = Quotient::of(block);
    Reflected out;
    out.q = q;
    out.m = m;
    out.m.dims[v] = qt.dim;
    for (size_t k = 0; k < outg.size(); ++k) {
        int a = outg[k];
        auto [s, t] = q.arrows[a];
        out.q.arrows[a] = {t, s};
        MatR nm = MatR::zero(qt.dim, static_cast<int>(m.dims[t]));
        for (int j = 0; j < static_cast<int>(m.dims[t]); ++j) {
            Vec<Rat> x(total, Rat(0));
            x[offset[k] + j] = Rat(1);
            Vec<Rat> y = qt.project(std::move(x));
            for (int i = 0; i < qt.dim; ++i) nm.a[i][j] = y[i];
        }
        out.m.maps[a] = std::move(nm);
    }
    return out;
}

inline bool same_arrow_multiset(const Quiver& a, const Quiver& b) {
    auto x = a.arrows, y = b.arrows;
    std::sort(x.begin(), x.end());
    std::sort(y.begin(), y.end());
    return a.n == b.n && x == y;
}

// tau^- as a full source-to-sink reflection sweep (Coxeter functor C^-).
inline Rep coxeter_minus(const Quiver& q, Rep m) {
    auto topo = q.topological_order();
    if (!topo) throw InternalError("coxeter sweep on cyclic quiver");
    Quiver cur = q;
    for (int v : *topo) {
        Reflected r = reflect_source(cur, m, v);
        cur = std::move(r.q);
        m = std::move(r.m);
    }
    if (!same_arrow_multiset(cur, q))
        throw InternalError("reflection sweep did not restore the quiver");
    return m;
}

// tau as the dual sweep (Coxeter functor C^+), sinks first.
inline Rep coxeter_plus(const Quiver& q, Rep m) {
    auto topo = q.topological_order();
    if (!topo) throw InternalError("coxeter sweep on cyclic quiver");
    Quiver cur = q;
    for (auto it = topo->rbegin(); it != topo->rend(); ++it) {
        Reflected r = reflect_sink(cur, m, *it);
        cur = std::move(r.q);
        m = std::move(r.m);
    }
    if (!same_arrow_multiset(cur, q))
        throw InternalError("reflection sweep did not restore the quiver");
    return m;
}

}  // namespace cmcat
