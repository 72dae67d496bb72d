#include "endoscopy/square_class.hpp"
#include "endoscopy/factor.hpp"

namespace endo {

mpz_class SquareClassQ::canonical() const {
    mpz_class nd = rep_.num() * rep_.den();
    mpz_class out(rep_.sign());
    for (auto& [q, e] : factor_desk(nd))
        if (e % 2 != 0) out *= q;
    return out;
}

} // namespace endo
