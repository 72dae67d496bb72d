#pragma once
#include <vector>
#include "root_datum.hpp"
#include "torus.hpp"

namespace endo {

// All elements of the Weyl group as matrices acting on ambient characters,
// generated by the simple reflections.  Guarded against blow-up; intended
// for small ranks.
std::vector<IMat> weyl_elements(const RootDatum& rd);

// Subgroup of elements commuting with the involution's character action.
std::vector<IMat> weyl_theta_fixed(const RootDatum& rd, const Involution& th);

// Orbit equality of torus points under the given Weyl matrices.  A matrix w
// acts on points through its character action: (w.t)^chi = t^(w^-1 chi);
// enumerating the whole group makes the inverse convention immaterial.
template <class K>
bool weyl_orbit_equal(const RootDatum& rd, const std::vector<IMat>& group,
                      const TorusPoint<K>& a, const TorusPoint<K>& b) {
    for (const IMat& w : group)
        if (points_equal(rd, point_pow(w, a), b)) return true;
    return false;
}

template <class K>
bool weyl_orbit_equal(const RootDatum& rd, const TorusPoint<K>& a, const TorusPoint<K>& b) {
    return weyl_orbit_equal(rd, weyl_elements(rd), a, b);
}

} // namespace endo
