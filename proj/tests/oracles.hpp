#pragma once

// Independent reference computations the tests compare the library against.
// Everything here is deliberately naive: brute-force scans and direct
// counting, no shared code paths with the machinery under test.

#include <algorithm>
#include <functional>
#include <numeric>
#include <vector>

#include "cmcat/algebra.hpp"

namespace oracle {

using cmcat::Int;
using cmcat::IVec;
using cmcat::Quiver;

// every nonzero vector in [0,bound]^n with Tits form value 1
inline std::vector<IVec> box_roots(const Quiver& q, Int bound) {
    cmcat::IMat e = q.euler_matrix();
    std::vector<IVec> out;
    IVec v(q.n, 0);
    while (true) {
        if (!cmcat::ivec_is_zero(v) && cmcat::bilinear(e, v, v) == 1) out.push_back(v);
        int k = 0;
        while (k < q.n && v[k] == bound) v[k++] = 0;
        if (k == q.n) break;
        ++v[k];
    }
    std::sort(out.begin(), out.end(), cmcat::RootLess{});
    return out;
}

// number of directed paths from i to j, counted by brute recursion
inline Int path_count(const Quiver& q, int i, int j) {
    if (i == j) return 1;
    Int total = 0;
    for (auto [s, t] : q.arrows)
        if (s == i) total += path_count(q, t, j);
    return total;
}

// all size-target subsets of candidates that are pairwise compatible,
// found by plain backtracking over whatever candidate order the caller fixed
template <class Compatible>
inline std::vector<std::vector<int>> compatible_sets_of_size(int num_candidates,
                                                             int target_size,
                                                             Compatible&& compat) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    std::function<void(int)> rec = [&](int start) {
        if (static_cast<int>(cur.size()) == target_size) {
            out.push_back(cur);
            return;
        }
        for (int c = start; c < num_candidates; ++c) {
            bool ok = true;
            for (int x : cur)
                if (!compat(x, c) || !compat(c, x)) {
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
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace oracle
