#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cmcat/algebra.hpp"

namespace cmcat {

// Wide subcategory of the ambient module category, canonically presented by
// its relative simples (ambient coordinates, sorted by root order) together
// with a local hereditary algebra on the simples basis.  All Hom/Ext inside
// the subcategory are computed through the local algebra; ambient coordinates
// are used for keys, equality, and the sigma conditions.
class Wide {
  public:
    const Algebra* amb = nullptr;
    std::vector<IVec> simples;    // ambient roots, sorted, linearly independent
    std::vector<IVec> defining;   // ambient roots whose right-perp cuts out W
    std::shared_ptr<const Algebra> local;

    static Wide full(const Algebra& ambient) {
        if (ambient.rtype.tag == QType::Wild) throw DomainError("wild type rejected");
        std::vector<IVec> units;
        for (int i = 0; i < ambient.n(); ++i) {
            IVec e(ambient.n(), 0);
            e[i] = 1;
            units.push_back(e);
        }
        return from_simples(ambient, std::move(units), {});
    }

    static Wide from_simples(const Algebra& ambient, std::vector<IVec> simples,
                             std::vector<IVec> defining) {
        std::sort(simples.begin(), simples.end(), RootLess{});
        Wide w;
        w.amb = &ambient;
        w.simples = std::move(simples);
        w.defining = std::move(defining);
        int m = w.rank();
        IMat e(m, IVec(m));
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j)
                e[i][j] = ambient.form(w.simples[i], w.simples[j]);
        w.local = std::make_shared<const Algebra>(
            Algebra::build(Quiver::from_euler(e), ambient.bound));
        if (w.local->rtype.tag == QType::Wild)
            throw InternalError("perpendicular subcategory classified as wild");
        return w;
    }

    int rank() const { return static_cast<int>(simples.size()); }

    std::string key() const {
        std::string s;
        for (const IVec& v : simples) s += ivec_str(v);
        return s.empty() ? "0" : s;
    }

    friend bool operator==(const Wide& a, const Wide& b) {
        return a.simples == b.simples;
    }
    friend bool operator!=(const Wide& a, const Wide& b) { return !(a == b); }

    IVec to_ambient(const IVec& local_v) const {
        IVec out(amb->n(), 0);
        for (int i = 0; i < rank(); ++i)
            out = ivec_add(out, ivec_scale(local_v[i], simples[i]));
        return out;
    }

    std::optional<IVec> to_local(const IVec& ambient_v) const {
        if (rank() == 0) return ivec_is_zero(ambient_v) ? std::make_optional(IVec{})
                                                        : std::nullopt;
        Matx<Rat> cols(amb->n(), Vec<Rat>(rank()));
        for (int i = 0; i < amb->n(); ++i)
            for (int j = 0; j < rank(); ++j) cols[i][j] = Rat(simples[j][i]);
        return integral_solution(cols, to_rat(ambient_v));
    }

    // Hom/Ext between ambient roots that lie in W, evaluated locally.
    Int hom(const IVec& a, const IVec& b) const {
        return local->hom(require_local(a), require_local(b));
    }
    Int ext(const IVec& a, const IVec& b) const {
        return local->ext(require_local(a), require_local(b));
    }

    // C_W as ambient roots: the local exceptional roots, translated.
    // Complete whenever the local algebra is of finite type.
    const std::vector<IVec>& exceptional_objects() const {
        if (!exc_cache_.has_value()) {
            std::vector<IVec> out;
            for (const IVec& r : local->exc_roots) out.push_back(to_ambient(r));
            std::sort(out.begin(), out.end(), RootLess{});
            exc_cache_ = std::move(out);
        }
        return *exc_cache_;
    }

    bool is_object(const IVec& ambient_root) const {
        auto loc = to_local(ambient_root);
        return loc && ivec_nonneg(*loc) && local->is_exceptional(*loc);
    }

    // Ext-projectives of W: local projective roots, translated.
    std::vector<IVec> relative_projectives() const {
        std::vector<IVec> out;
        for (const IVec& p : local->proj) out.push_back(to_ambient(p));
        std::sort(out.begin(), out.end(), RootLess{});
        return out;
    }

    bool truncated() const { return local->rtype.tag != QType::Finite; }

  private:
    mutable std::optional<std::vector<IVec>> exc_cache_;

    IVec require_local(const IVec& ambient_root) const {
        auto loc = to_local(ambient_root);
        if (!loc || !ivec_nonneg(*loc))
            throw InternalError("root does not lie in the wide subcategory: " +
                                ivec_str(ambient_root));
        return *loc;
    }
};

// v decomposes as a sum of two or more elements of pool (all vectors
// nonnegative, local coordinates).  Box dynamic program over [0, v].
inline bool monoid_decomposable(const IVec& v, const std::vector<IVec>& pool) {
    int m = static_cast<int>(v.size());
    std::vector<Int> radix(m, 1);
    Int size = 1;
    for (int i = 0; i < m; ++i) {
        radix[i] = size;
        size = checked_mul(size, v[i] + 1);
        if (size > 4000000)
            throw InternalError("decomposability box too large");
    }
    auto index = [&](const IVec& x) {
        Int idx = 0;
        for (int i = 0; i < m; ++i) idx += radix[i] * x[i];
        return idx;
    };
    // expressible[idx] = the vector is a nonempty sum of pool elements
    std::vector<char> expressible(static_cast<size_t>(size), 0);
    IVec cur(m, 0);
    while (true) {
        for (const IVec& g : pool) {
            if (ivec_is_zero(g)) continue;
            if (!ivec_dominated(g, cur)) continue;
            IVec rest = ivec_sub(cur, g);
            if (ivec_is_zero(rest) || expressible[index(rest)]) {
                expressible[index(cur)] = 1;
                break;
            }
        }
        int k = 0;
        while (k < m && cur[k] == v[k]) cur[k++] = 0;
        if (k == m) break;
        ++cur[k];
    }
    for (const IVec& g : pool) {
        if (g == v || !ivec_dominated(g, v)) continue;
        IVec rest = ivec_sub(v, g);
        if (!ivec_is_zero(rest) && expressible[index(rest)]) return true;
    }
    return false;
}

// W' = T^perp intersected with W, for T a set of distinct objects of W given
// by their underlying ambient roots.  The relative simples of W' are the
// monoid-indecomposable elements of the bounded exceptional pool.
inline Wide perpendicular(const Wide& w, const std::vector<IVec>& t_roots) {
    if (t_roots.empty()) return w;
    std::vector<IVec> t_loc;
    for (const IVec& t : t_roots) {
        auto loc = w.to_local(t);
        if (!loc || !ivec_nonneg(*loc) || !w.local->is_exceptional(*loc))
            throw DomainError("perpendicular argument is not an object of the subcategory: " +
                              ivec_str(t));
        t_loc.push_back(*loc);
    }
    for (size_t i = 0; i < t_loc.size(); ++i)
        for (size_t j = i + 1; j < t_loc.size(); ++j)
            if (t_loc[i] == t_loc[j])
                throw DomainError("perpendicular argument repeats a root");
    std::vector<IVec> pool;
    for (const IVec& x : w.local->exc_roots) {
        bool in = true;
        for (const IVec& t : t_loc)
            if (w.local->hom(t, x) != 0 || w.local->ext(t, x) != 0) {
                in = false;
                break;
            }
        if (in) pool.push_back(x);
    }
    std::vector<IVec> simples_loc;
    for (const IVec& x : pool)
        if (!monoid_decomposable(x, pool)) simples_loc.push_back(x);
    int expected = w.rank() - static_cast<int>(t_roots.size());
    if (static_cast<int>(simples_loc.size()) != expected)
        throw DomainError("perpendicular of rank " + std::to_string(expected) +
                          " resolved to " + std::to_string(simples_loc.size()) +
                          " simples; root bound too small or input not a partial cluster");
    // simples of a wide subcategory are pairwise hom-orthogonal
    for (const IVec& a : simples_loc)
        for (const IVec& b : simples_loc)
            if (a != b && w.local->hom(a, b) != 0)
                throw InternalError("relative simples fail hom-orthogonality");
    std::vector<IVec> simples_amb;
    for (const IVec& s : simples_loc) simples_amb.push_back(w.to_ambient(s));
    std::vector<IVec> defining = w.defining;
    for (const IVec& t : t_roots) defining.push_back(t);
    return Wide::from_simples(*w.amb, std::move(simples_amb), std::move(defining));
}

struct TubeReport {
    std::vector<Int> ranks;
    std::vector<std::vector<IVec>> witnesses;  // mouth orbits of the ranks >= 2
};

inline TubeReport tube_ranks(const Algebra& a) {
    TubeReport r;
    if (a.rtype.tag == QType::Finite) return r;
    if (a.rtype.tag == QType::Wild) throw DomainError("wild type rejected");
    r.ranks = a.tubes.reported_ranks;
    for (const auto& orbit : a.tubes.mouths)
        if (orbit.size() >= 2) r.witnesses.push_back(orbit);
    return r;
}

// Bounded exceptional list of a subcategory.
inline std::vector<IVec> exceptional_objects_in(const Wide& w) {
    return w.exceptional_objects();
}

}  // namespace cmcat
