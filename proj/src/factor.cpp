#include "endoscopy/factor.hpp"

namespace endo {

std::vector<std::pair<mpz_class, int>> factor_desk(const mpz_class& n_in, long bound) {
    if (n_in == 0) throw DomainError("factor_desk: zero");
    mpz_class n = abs(n_in);
    std::vector<std::pair<mpz_class, int>> out;
    for (long d = 2; d <= bound && mpz_class(d) * d <= n; d += (d == 2 ? 1 : 2)) {
        if (mpz_divisible_ui_p(n.get_mpz_t(), (unsigned long)d)) {
            int e = 0;
            while (mpz_divisible_ui_p(n.get_mpz_t(), (unsigned long)d)) {
                mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), (unsigned long)d);
                ++e;
            }
            out.emplace_back(mpz_class(d), e);
        }
    }
    if (n > 1) {
        if (!mpz_probab_prime_p(n.get_mpz_t(), 32))
            throw ScaleError("factor_desk: composite cofactor beyond trial bound");
        out.emplace_back(n, 1);
    }
    return out;
}

mpz_class prime_to_part(const mpz_class& n, long p) {
    if (n == 0) throw DomainError("prime_to_part: zero");
    mpz_class m = abs(n);
    while (mpz_divisible_ui_p(m.get_mpz_t(), (unsigned long)p))
        mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), (unsigned long)p);
    return m;
}

mpz_class mult_order(const mpz_class& a, const mpz_class& m,
                     const mpz_class& order_multiple) {
    mpz_class r;
    mpz_powm(r.get_mpz_t(), a.get_mpz_t(), order_multiple.get_mpz_t(), m.get_mpz_t());
    if (r != 1) throw DomainError("mult_order: given multiple is not a multiple of the order");
    mpz_class ord = order_multiple;
    for (auto& [q, e] : factor_desk(order_multiple)) {
        for (int i = 0; i < e; ++i) {
            mpz_class cand = ord / q;
            mpz_powm(r.get_mpz_t(), a.get_mpz_t(), cand.get_mpz_t(), m.get_mpz_t());
            if (r == 1) ord = cand; else break;
        }
    }
    return ord;
}

} // namespace endo
