#pragma once
#include <algorithm>
#include <string>
#include <vector>
#include "root_datum.hpp"
#include "torus.hpp"

namespace endo {

/** Root system of the twisted centralizer, in folded chart coordinates. */
struct FixedSystem {
    std::vector<IVec> folded;  // reduced system, deduplicated
    std::string shape;         // canonical component label, e.g. "SO(3)xSp(2)"
};

// Canonical name of a root system given by explicit vectors in an
// orthonormal chart of the given dimension; coordinates not met by any
// component contribute one Gl(1) factor each.
std::string classical_shape_name(const std::vector<IVec>& roots, long dim);

// Subsystem generated by a set of roots inside an orthonormal chart:
// closure under the reflections of its own members.
std::vector<IVec> reflection_closure(const std::vector<IVec>& gens);

namespace detail {
inline void push_unique(std::vector<IVec>& v, const IVec& x) {
    if (std::find(v.begin(), v.end(), x) == v.end()) v.push_back(x);
}
} // namespace detail

/**
 * Folded root system of the identity component of the t.theta centralizer.
 * A folded image P(alpha) survives iff the orbit sum of alpha takes the
 * value +1 at t, or -1 when half of P(alpha) is itself a folded root.
 */
template <class K>
FixedSystem fixed_system_branch_route(const TwistSetup& s, const TorusPoint<K>& t) {
    std::vector<IVec> folded_all;
    for (const IVec& a : s.G.roots) folded_all.push_back(coinvariant_project_char(s, a));
    auto is_folded = [&](const IVec& v) {
        return std::find(folded_all.begin(), folded_all.end(), v) != folded_all.end();
    };
    K one = t.x[0].one_like();
    FixedSystem out;
    for (size_t i = 0; i < s.G.roots.size(); ++i) {
        const IVec& pv = folded_all[i];
        if (ivec_is_zero(pv)) continue;
        bool divisible = true;
        IVec half(pv.size());
        for (size_t k = 0; k < pv.size(); ++k) {
            if (pv[k] % 2) { divisible = false; break; }
            half[k] = pv[k] / 2;
        }
        divisible = divisible && is_folded(half);
        K val = eval_char(t, twisted_sum(s, (long)i, false));
        bool pass = divisible ? (val + one).is_zero() : (val - one).is_zero();
        if (pass) detail::push_unique(out.folded, pv);
    }
    out.shape = classical_shape_name(out.folded, s.fold_dim());
    return out;
}

/**
 * Same system through the twisted norm of the point: folded images of the
 * roots trivial on t.theta(t), pruned to the maximal reduced subsystem.
 */
template <class K>
FixedSystem fixed_system_norm_route(const TwistSetup& s, const TorusPoint<K>& t) {
    TorusPoint<K> nt = twisted_norm_point(s, t);
    K one = t.x[0].one_like();
    std::vector<IVec> sset;
    for (const IVec& a : s.G.roots) {
        IVec pv = coinvariant_project_char(s, a);
        if (ivec_is_zero(pv)) continue;
        if ((eval_char(nt, a) - one).is_zero()) detail::push_unique(sset, pv);
    }
    FixedSystem out;
    for (const IVec& v : sset) {
        bool half_in = true;
        IVec half(v.size());
        for (size_t k = 0; k < v.size(); ++k) {
            if (v[k] % 2) { half_in = false; break; }
            half[k] = v[k] / 2;
        }
        half_in = half_in && std::find(sset.begin(), sset.end(), half) != sset.end();
        if (!half_in) out.folded.push_back(v);
    }
    out.shape = classical_shape_name(out.folded, s.fold_dim());
    return out;
}

} // namespace endo
