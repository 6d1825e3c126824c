#pragma once

#include <algorithm>
#include <optional>
#include <utility>
#include <vector>

#include "cmcat/linalg.hpp"

namespace cmcat {

// Acyclic quiver on vertices 0..n-1 (1-based in all I/O).  An arrow a: i->j
// carries a linear map M_i -> M_j, and E_ij = delta_ij - #(arrows i->j);
// every sign convention downstream derives from these two facts.
struct Quiver {
    int n = 0;
    std::vector<std::pair<int, int>> arrows;  // (source, target), 0-based

    static Quiver from_arrows(int n, std::vector<std::pair<int, int>> arrows,
                              bool require_connected = true) {
        if (n < 1) throw ParseError("quiver needs at least one vertex");
        for (auto& [s, t] : arrows) {
            if (s < 0 || s >= n || t < 0 || t >= n)
                throw ParseError("arrow endpoint out of range");
            if (s == t) throw ParseError("loop detected: quiver must be acyclic");
        }
        Quiver q;
        q.n = n;
        q.arrows = std::move(arrows);
        if (!q.is_acyclic()) throw ParseError("cycle detected: quiver must be acyclic");
        if (require_connected && !q.is_connected())
            throw ParseError("disconnected quiver rejected");
        return q;
    }

    // Rebuild a quiver from a unit-diagonal Euler matrix with nonpositive
    // off-diagonal entries (the form of a hereditary algebra).
    static Quiver from_euler(const IMat& e) {
        int n = static_cast<int>(e.size());
        std::vector<std::pair<int, int>> arrows;
        for (int i = 0; i < n; ++i) {
            if (e[i][i] != 1)
                throw InternalError("Euler matrix diagonal entry differs from 1");
            for (int j = 0; j < n; ++j) {
                if (i == j) continue;
                if (e[i][j] > 0)
                    throw InternalError("Euler matrix has positive off-diagonal entry");
                for (Int k = 0; k < -e[i][j]; ++k) arrows.emplace_back(i, j);
            }
        }
        Quiver q;
        q.n = n;
        q.arrows = std::move(arrows);
        if (!q.is_acyclic())
            throw InternalError("Euler matrix encodes a cyclic quiver");
        return q;
    }

    bool is_acyclic() const { return topological_order().has_value(); }

    // Vertex order with every arrow pointing from earlier to later.
    std::optional<std::vector<int>> topological_order() const {
        std::vector<int> indeg(n, 0);
        for (auto& [s, t] : arrows) ++indeg[t];
        std::vector<int> order, queue;
        for (int v = 0; v < n; ++v)
            if (indeg[v] == 0) queue.push_back(v);
        std::sort(queue.begin(), queue.end());
        while (!queue.empty()) {
            int v = queue.front();
            queue.erase(queue.begin());
            order.push_back(v);
            for (auto& [s, t] : arrows)
                if (s == v && --indeg[t] == 0)
                    queue.insert(std::lower_bound(queue.begin(), queue.end(), t), t);
        }
        if (static_cast<int>(order.size()) != n) return std::nullopt;
        return order;
    }

    bool is_connected() const {
        if (n == 0) return true;
        std::vector<char> seen(n, 0);
        std::vector<int> stack{0};
        seen[0] = 1;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (auto& [s, t] : arrows) {
                if (s == v && !seen[t]) seen[t] = 1, stack.push_back(t);
                if (t == v && !seen[s]) seen[s] = 1, stack.push_back(s);
            }
        }
        return std::count(seen.begin(), seen.end(), 1) == n;
    }

    IMat euler_matrix() const {
        IMat e = imat_identity(n);
        for (auto& [s, t] : arrows) e[s][t] -= 1;
        return e;
    }

    // If the underlying graph is a single cycle, the numbers of arrows in
    // the two directions around it (p >= q); otherwise nothing.
    std::optional<std::pair<Int, Int>> cycle_orientation() const {
        if (n < 2 || static_cast<int>(arrows.size()) != n || !is_connected())
            return std::nullopt;
        std::vector<int> deg(n, 0);
        for (auto& [s, t] : arrows) ++deg[s], ++deg[t];
        for (int v = 0; v < n; ++v)
            if (deg[v] != 2) return std::nullopt;
        // walk the cycle counting arrows that agree with the walk direction
        std::vector<char> used(arrows.size(), 0);
        int v = 0;
        Int with = 0;
        for (int step = 0; step < n; ++step) {
            int pick = -1;
            for (size_t a = 0; a < arrows.size(); ++a) {
                if (used[a]) continue;
                if (arrows[a].first == v || arrows[a].second == v) {
                    pick = static_cast<int>(a);
                    break;
                }
            }
            if (pick < 0) return std::nullopt;
            used[pick] = 1;
            if (arrows[pick].first == v) {
                ++with;
                v = arrows[pick].second;
            } else {
                v = arrows[pick].first;
            }
        }
        if (v != 0) return std::nullopt;
        Int p = std::max(with, static_cast<Int>(n) - with);
        Int q = std::min(with, static_cast<Int>(n) - with);
        return std::make_pair(p, q);
    }
};

inline Int euler_form(const IMat& e, const IVec& x, const IVec& y) {
    if (x.size() != e.size() || y.size() != e.size())
        throw DomainError("dimension vector length mismatch");
    return bilinear(e, x, y);
}

enum class QType { Finite, Tame, Wild };

struct ReprType {
    QType tag = QType::Wild;
    IVec null_root;  // primitive delta > 0, Tame only
};

// Classification by definiteness of the symmetrized Tits form.  "Tame"
// additionally requires a one-dimensional radical spanned by a strictly
// positive primitive vector; anything else that is not definite is
// reported Wild (no machinery here applies to it).
inline ReprType classify_type(const Quiver& q) {
    IMat e = q.euler_matrix();
    IMat b = e;
    IMat et = transpose(e);
    for (int i = 0; i < q.n; ++i)
        for (int j = 0; j < q.n; ++j) b[i][j] += et[i][j];
    ReprType r;
    if (leading_minors_positive(b)) {
        r.tag = QType::Finite;
        return r;
    }
    if (all_principal_minors_nonneg(b)) {
        IMat rad = integer_kernel(b);
        if (rad.size() == 1 && ivec_positive(rad[0])) {
            r.tag = QType::Tame;
            r.null_root = rad[0];
            return r;
        }
    }
    r.tag = QType::Wild;
    return r;
}

// Coxeter matrix Phi = -E^{-1} E^T; contract: Phi (dim P_i) = -(dim I_i)
// and dim tau(M) = Phi (dim M) for nonprojective indecomposable M.
inline IMat coxeter_matrix(const IMat& e) {
    IMat einv = unimodular_inverse(e);
    IMat phi = mat_mul(einv, transpose(e));
    for (auto& row : phi)
        for (Int& x : row) x = -x;
    return phi;
}

inline IMat coxeter_matrix_inverse(const IMat& e) {
    IMat einv_t = transpose(unimodular_inverse(e));
    IMat phi_inv = mat_mul(einv_t, e);
    for (auto& row : phi_inv)
        for (Int& x : row) x = -x;
    return phi_inv;
}

}  // namespace cmcat
