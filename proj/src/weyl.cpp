#include "endoscopy/weyl.hpp"

#include <map>
#include <vector>

#include "endoscopy/errors.hpp"

namespace endo {

namespace {

std::vector<long> flatten(const IMat& m) {
    std::vector<long> out;
    out.reserve(m.a.size());
    for (const mpz_class& x : m.a) {
        if (!x.fits_slong_p()) throw ScaleError("weyl_elements: entry overflow");
        out.push_back(x.get_si());
    }
    return out;
}

} // namespace

std::vector<IMat> weyl_elements(const RootDatum& rd) {
    long N = rd.ambient_rank;
    std::vector<IMat> gens;
    for (long s : rd.simple) {
        IMat refl = IMat::identity(N);
        for (long i = 0; i < N; ++i)
            for (long j = 0; j < N; ++j)
                refl.at(i, j) -= mpz_class(rd.roots[s][i]) * rd.coroots[s][j];
        gens.push_back(refl);
    }
    std::vector<IMat> group{IMat::identity(N)};
    std::map<std::vector<long>, bool> seen;
    seen[flatten(group[0])] = true;
    for (size_t k = 0; k < group.size(); ++k) {
        for (const IMat& g : gens) {
            IMat w = g * group[k];
            auto key = flatten(w);
            if (!seen.count(key)) {
                seen[key] = true;
                group.push_back(w);
                if (group.size() > 50000) throw ScaleError("weyl_elements: group too large");
            }
        }
    }
    return group;
}

std::vector<IMat> weyl_theta_fixed(const RootDatum& rd, const Involution& th) {
    std::vector<IMat> out;
    for (const IMat& w : weyl_elements(rd))
        if (w * th.on_char == th.on_char * w) out.push_back(w);
    return out;
}

} // namespace endo
