#include "endoscopy/rational.hpp"
#include <ostream>

namespace endo {

Rat Rat::parse(const std::string& s) {
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rat(mpz_class(s));
        mpz_class n(s.substr(0, slash)), d(s.substr(slash + 1));
        return Rat(n, d);
    } catch (const std::invalid_argument&) {
        throw DomainError("Rat: cannot parse '" + s + "'");
    }
}

Rat Rat::pow(long e) const {
    if (e < 0) return inv().pow(-e);
    mpz_class n, d;
    mpz_pow_ui(n.get_mpz_t(), num().get_mpz_t(), (unsigned long)e);
    mpz_pow_ui(d.get_mpz_t(), den().get_mpz_t(), (unsigned long)e);
    return Rat(n, d);
}

std::string Rat::str() const {
    if (is_integer()) return num().get_str();
    return num().get_str() + "/" + den().get_str();
}

std::ostream& operator<<(std::ostream& os, const Rat& r) { return os << r.str(); }

long val_p(const Rat& r, long p) {
    if (r.is_zero()) return VAL_INF;
    mpz_class n = r.num(), d = r.den(), q, rem;
    long v = 0;
    for (;;) {
        mpz_fdiv_qr_ui(q.get_mpz_t(), rem.get_mpz_t(), n.get_mpz_t(), (unsigned long)p);
        if (rem != 0) break;
        n = q;
        ++v;
    }
    for (;;) {
        mpz_fdiv_qr_ui(q.get_mpz_t(), rem.get_mpz_t(), d.get_mpz_t(), (unsigned long)p);
        if (rem != 0) break;
        d = q;
        --v;
    }
    return v;
}

Rat unit_part_p(const Rat& r, long p) {
    if (r.is_zero()) throw DomainError("unit_part_p: zero");
    long v = val_p(r, p);
    return r * Rat(p).pow(-v);
}

bool is_square_q(const Rat& r) {
    if (r.sign() < 0) return false;
    return mpz_perfect_square_p(r.num().get_mpz_t()) &&
           mpz_perfect_square_p(r.den().get_mpz_t());
}

Rat sqrt_q(const Rat& r) {
    if (!is_square_q(r)) throw DomainError("sqrt_q: not a square");
    mpz_class n, d;
    mpz_sqrt(n.get_mpz_t(), r.num().get_mpz_t());
    mpz_sqrt(d.get_mpz_t(), r.den().get_mpz_t());
    return Rat(n, d);
}

} // namespace endo
