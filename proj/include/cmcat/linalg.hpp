#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <optional>
#include <sstream>
#include <vector>

#include "cmcat/rational.hpp"

namespace cmcat {

using IVec = std::vector<Int>;
using IMat = std::vector<IVec>;

template <class K>
using Vec = std::vector<K>;
template <class K>
using Matx = std::vector<std::vector<K>>;

inline Int checked_add(Int a, Int b) {
    return detail::narrow128(static_cast<__int128>(a) + b, "addition");
}
inline Int checked_mul(Int a, Int b) {
    return detail::narrow128(static_cast<__int128>(a) * b, "multiplication");
}

inline IMat imat_identity(int n) {
    IMat m(n, IVec(n, 0));
    for (int i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

inline IVec ivec_add(const IVec& a, const IVec& b) {
    IVec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = checked_add(a[i], b[i]);
    return r;
}

inline IVec ivec_sub(const IVec& a, const IVec& b) {
    IVec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = checked_add(a[i], -b[i]);
    return r;
}

inline IVec ivec_neg(const IVec& a) {
    IVec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = -a[i];
    return r;
}

inline IVec ivec_scale(Int c, const IVec& a) {
    IVec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = checked_mul(c, a[i]);
    return r;
}

inline bool ivec_is_zero(const IVec& v) {
    for (Int x : v)
        if (x != 0) return false;
    return true;
}

inline bool ivec_nonneg(const IVec& v) {
    for (Int x : v)
        if (x < 0) return false;
    return true;
}

inline bool ivec_positive(const IVec& v) {
    for (Int x : v)
        if (x <= 0) return false;
    return true;
}

// a <= b entrywise
inline bool ivec_dominated(const IVec& a, const IVec& b) {
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i] > b[i]) return false;
    return true;
}

inline Int ivec_sum(const IVec& v) {
    Int s = 0;
    for (Int x : v) s = checked_add(s, x);
    return s;
}

inline Int ivec_max(const IVec& v) {
    Int m = 0;
    for (Int x : v) m = std::max(m, x < 0 ? -x : x);
    return m;
}

inline Int dot(const IVec& a, const IVec& b) {
    __int128 s = 0;
    for (size_t i = 0; i < a.size(); ++i)
        s += static_cast<__int128>(a[i]) * b[i];
    return detail::narrow128(s, "dot product");
}

inline IVec mat_vec(const IMat& m, const IVec& v) {
    IVec r(m.size());
    for (size_t i = 0; i < m.size(); ++i) r[i] = dot(m[i], v);
    return r;
}

inline IMat mat_mul(const IMat& a, const IMat& b) {
    size_t n = a.size(), k = b.size(), p = b.empty() ? 0 : b[0].size();
    IMat r(n, IVec(p, 0));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < k; ++j) {
            if (a[i][j] == 0) continue;
            for (size_t l = 0; l < p; ++l)
                r[i][l] = checked_add(r[i][l], checked_mul(a[i][j], b[j][l]));
        }
    return r;
}

inline IMat transpose(const IMat& m) {
    size_t r = m.size(), c = m.empty() ? 0 : m[0].size();
    IMat t(c, IVec(r));
    for (size_t i = 0; i < r; ++i)
        for (size_t j = 0; j < c; ++j) t[j][i] = m[i][j];
    return t;
}

// x^T E y
inline Int bilinear(const IMat& e, const IVec& x, const IVec& y) {
    return dot(x, mat_vec(e, y));
}

// Canonical root order: by coordinate sum, then lexicographic.
inline bool root_less(const IVec& a, const IVec& b) {
    Int sa = ivec_sum(a), sb = ivec_sum(b);
    if (sa != sb) return sa < sb;
    return a < b;
}

struct RootLess {
    bool operator()(const IVec& a, const IVec& b) const {
        return root_less(a, b);
    }
};

struct IVecHash {
    size_t operator()(const IVec& v) const {
        size_t h = 1469598103934665603ull;
        for (Int x : v) {
            h ^= static_cast<size_t>(x) + 0x9e3779b97f4a7c15ull;
            h *= 1099511628211ull;
        }
        return h;
    }
};

inline std::string ivec_str(const IVec& v) {
    std::ostringstream os;
    os << '(';
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) os << ',';
        os << v[i];
    }
    os << ')';
    return os.str();
}

// --- dense elimination over a field ----------------------------------------

// In-place reduced row echelon form; returns pivot column indices.
template <class K>
std::vector<int> rref(Matx<K>& m) {
    std::vector<int> pivots;
    if (m.empty()) return pivots;
    size_t rows = m.size(), cols = m[0].size();
    size_t r = 0;
    for (size_t c = 0; c < cols && r < rows; ++c) {
        size_t p = r;
        while (p < rows && m[p][c].is_zero()) ++p;
        if (p == rows) continue;
        std::swap(m[p], m[r]);
        K inv = K(1) / m[r][c];
        for (size_t j = c; j < cols; ++j) m[r][j] = m[r][j] * inv;
        for (size_t i = 0; i < rows; ++i) {
            if (i == r || m[i][c].is_zero()) continue;
            K f = m[i][c];
            for (size_t j = c; j < cols; ++j)
                m[i][j] = m[i][j] - f * m[r][j];
        }
        pivots.push_back(static_cast<int>(c));
        ++r;
    }
    return pivots;
}

template <class K>
int rank_of(Matx<K> m) {
    return static_cast<int>(rref(m).size());
}

// Basis of {x : m x = 0}, one basis vector per row of the result.
template <class K>
Matx<K> kernel_basis(Matx<K> m) {
    if (m.empty()) return {};
    size_t cols = m[0].size();
    std::vector<int> pivots = rref(m);
    std::vector<char> is_pivot(cols, 0);
    for (int c : pivots) is_pivot[c] = 1;
    Matx<K> basis;
    for (size_t f = 0; f < cols; ++f) {
        if (is_pivot[f]) continue;
        Vec<K> x(cols, K(0));
        x[f] = K(1);
        for (size_t r = 0; r < pivots.size(); ++r)
            x[pivots[r]] = -m[r][f];
        basis.push_back(std::move(x));
    }
    return basis;
}

template <class K>
struct LinSolve {
    bool consistent = false;
    bool unique = false;
    Vec<K> x;  // one solution when consistent (free variables set to zero)
};

// Solve A x = b.
template <class K>
LinSolve<K> solve(Matx<K> a, const Vec<K>& b) {
    size_t rows = a.size(), cols = rows ? a[0].size() : 0;
    for (size_t i = 0; i < rows; ++i) a[i].push_back(b[i]);
    std::vector<int> pivots = rref(a);
    LinSolve<K> out;
    if (!pivots.empty() && pivots.back() == static_cast<int>(cols))
        return out;  // pivot in augmented column: inconsistent
    out.consistent = true;
    out.unique = pivots.size() == cols;
    out.x.assign(cols, K(0));
    for (size_t r = 0; r < pivots.size(); ++r) out.x[pivots[r]] = a[r][cols];
    return out;
}

inline Matx<Rat> to_rat(const IMat& m) {
    Matx<Rat> r(m.size());
    for (size_t i = 0; i < m.size(); ++i)
        r[i].assign(m[i].begin(), m[i].end());
    return r;
}

inline Vec<Rat> to_rat(const IVec& v) { return Vec<Rat>(v.begin(), v.end()); }

// --- exact integer layer ----------------------------------------------------

// Bareiss fraction-free determinant.
inline Int det(const IMat& m0) {
    size_t n = m0.size();
    if (n == 0) return 1;
    std::vector<std::vector<__int128>> m(n, std::vector<__int128>(n));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) m[i][j] = m0[i][j];
    __int128 prev = 1;
    int sign = 1;
    for (size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k] == 0) {
            size_t p = k + 1;
            while (p < n && m[p][k] == 0) ++p;
            if (p == n) return 0;
            std::swap(m[p], m[k]);
            sign = -sign;
        }
        for (size_t i = k + 1; i < n; ++i)
            for (size_t j = k + 1; j < n; ++j)
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
        prev = m[k][k];
    }
    return detail::narrow128(sign * m[n - 1][n - 1], "determinant");
}

inline IMat submatrix(const IMat& m, const std::vector<int>& idx) {
    IMat s(idx.size(), IVec(idx.size()));
    for (size_t i = 0; i < idx.size(); ++i)
        for (size_t j = 0; j < idx.size(); ++j) s[i][j] = m[idx[i]][idx[j]];
    return s;
}

inline bool leading_minors_positive(const IMat& m) {
    std::vector<int> idx;
    for (size_t k = 0; k < m.size(); ++k) {
        idx.push_back(static_cast<int>(k));
        if (det(submatrix(m, idx)) <= 0) return false;
    }
    return true;
}

inline bool all_principal_minors_nonneg(const IMat& m) {
    size_t n = m.size();
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
        std::vector<int> idx;
        for (size_t k = 0; k < n; ++k)
            if (mask & (1u << k)) idx.push_back(static_cast<int>(k));
        if (det(submatrix(m, idx)) < 0) return false;
    }
    return true;
}

inline IVec clear_denominators(const Vec<Rat>& v) {
    Int l = 1;
    for (const Rat& x : v) {
        Int g = std::gcd(l, x.den);
        l = checked_mul(l / g, x.den);
    }
    IVec r(v.size());
    for (size_t i = 0; i < v.size(); ++i)
        r[i] = checked_mul(v[i].num, l / v[i].den);
    return r;
}

// Divide by the gcd and make the first nonzero entry positive.
inline IVec primitive(IVec v) {
    Int g = 0;
    for (Int x : v) g = std::gcd(g, x < 0 ? -x : x);
    if (g > 1)
        for (Int& x : v) x /= g;
    for (Int x : v) {
        if (x == 0) continue;
        if (x < 0)
            for (Int& y : v) y = -y;
        break;
    }
    return v;
}

// Primitive integer basis of the rational kernel, one vector per row.
inline IMat integer_kernel(const IMat& m) {
    Matx<Rat> kb = kernel_basis(to_rat(m));
    IMat out;
    for (const auto& row : kb) out.push_back(primitive(clear_denominators(row)));
    return out;
}

// Exact inverse of an integer matrix with det = ±1.
inline IMat unimodular_inverse(const IMat& m) {
    size_t n = m.size();
    Matx<Rat> aug = to_rat(m);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) aug[i].push_back(Rat(i == j ? 1 : 0));
    if (rref(aug).size() != n) throw InternalError("singular matrix inverted");
    IMat inv(n, IVec(n));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
            Rat x = aug[i][n + j];
            if (!x.is_integer())
                throw InternalError("inverse of unimodular matrix not integral");
            inv[i][j] = x.num;
        }
    return inv;
}

// Solve A x = b over the rationals and report integrality of the solution.
// Requires full column rank (unique solution when consistent).
inline std::optional<IVec> integral_solution(const Matx<Rat>& a,
                                             const Vec<Rat>& b) {
    LinSolve<Rat> s = solve(a, b);
    if (!s.consistent) return std::nullopt;
    if (!s.unique)
        throw InternalError("integral_solution requires full column rank");
    IVec r(s.x.size());
    for (size_t i = 0; i < s.x.size(); ++i) {
        if (!s.x[i].is_integer()) return std::nullopt;
        r[i] = s.x[i].num;
    }
    return r;
}

inline std::optional<IVec> integral_solution(const IMat& a, const IVec& b) {
    return integral_solution(to_rat(a), to_rat(b));
}

}  // namespace cmcat
