#include "endoscopy/padic.hpp"
#include <ostream>

namespace endo {

static void check_ring_params(long p, int prec) {
    if (p < 3 || p % 2 == 0) throw DomainError("Zp: p must be an odd prime");
    mpz_class pz(p);
    if (!mpz_probab_prime_p(pz.get_mpz_t(), 32)) throw DomainError("Zp: p must be prime");
    if (prec < 1) throw PrecisionError("Zp: at least one digit required");
    if (prec > 4096) throw ScaleError("Zp: precision beyond supported scale");
}

Zp::Zp(long p, int prec, const mpz_class& value) : p_(p), prec_(prec) {
    check_ring_params(p, prec);
    mpz_class m = modulus();
    mpz_fdiv_r(v_.get_mpz_t(), value.get_mpz_t(), m.get_mpz_t());
}

Zp Zp::from_rational(long p, int prec, const Rat& r) {
    if (!r.is_zero() && val_p(r, p) < 0)
        throw DomainError("Zp::from_rational: negative valuation");
    Zp num(p, prec, r.num());
    Zp den(p, prec, r.den());
    return num * den.inv();
}

mpz_class Zp::modulus() const {
    mpz_class m;
    mpz_ui_pow_ui(m.get_mpz_t(), (unsigned long)p_, (unsigned long)prec_);
    return m;
}

bool Zp::is_one() const { return v_ == 1; }

long Zp::val() const {
    if (v_ == 0) return prec_;
    mpz_class t = v_, q, rem;
    long v = 0;
    for (;;) {
        mpz_fdiv_qr_ui(q.get_mpz_t(), rem.get_mpz_t(), t.get_mpz_t(), (unsigned long)p_);
        if (rem != 0) break;
        t = q;
        ++v;
    }
    return v;
}

void Zp::require_same_ring(const Zp& o) const {
    if (p_ != o.p_) throw DomainError("Zp: mixed primes");
}

Zp Zp::operator-() const { return Zp(p_, prec_, mpz_class(-v_)); }

Zp Zp::operator+(const Zp& o) const {
    require_same_ring(o);
    return Zp(p_, std::min(prec_, o.prec_), mpz_class(v_ + o.v_));
}

Zp Zp::operator-(const Zp& o) const {
    require_same_ring(o);
    return Zp(p_, std::min(prec_, o.prec_), mpz_class(v_ - o.v_));
}

Zp Zp::operator*(const Zp& o) const {
    require_same_ring(o);
    return Zp(p_, std::min(prec_, o.prec_), mpz_class(v_ * o.v_));
}

bool Zp::operator==(const Zp& o) const {
    require_same_ring(o);
    int k = std::min(prec_, o.prec_);
    mpz_class m, a, b;
    mpz_ui_pow_ui(m.get_mpz_t(), (unsigned long)p_, (unsigned long)k);
    mpz_fdiv_r(a.get_mpz_t(), v_.get_mpz_t(), m.get_mpz_t());
    mpz_fdiv_r(b.get_mpz_t(), o.v_.get_mpz_t(), m.get_mpz_t());
    return a == b;
}

Zp Zp::inv() const {
    if (!is_unit()) throw DomainError("Zp::inv: not a unit");
    mpz_class r, m = modulus();
    if (!mpz_invert(r.get_mpz_t(), v_.get_mpz_t(), m.get_mpz_t()))
        throw DomainError("Zp::inv: not invertible");
    return Zp(p_, prec_, r);
}

Zp Zp::div_exact(const Zp& o) const {
    require_same_ring(o);
    if (o.is_zero()) throw DomainError("Zp::div_exact: division by zero");
    long vb = o.val();
    int out_prec = std::min(prec_, o.prec_) - (int)vb;
    if (out_prec < 1)
        throw PrecisionError("Zp::div_exact: no digits left after division");
    if (is_zero()) return Zp(p_, out_prec, 0L);
    if (val() < vb) throw DomainError("Zp::div_exact: not divisible");
    mpz_class pk;
    mpz_ui_pow_ui(pk.get_mpz_t(), (unsigned long)p_, (unsigned long)vb);
    mpz_class a = v_ / pk, b = o.v_ / pk;
    Zp bu(p_, out_prec, b);
    return Zp(p_, out_prec, a) * bu.inv();
}

Zp Zp::pow(const mpz_class& e) const {
    if (e < 0) return inv().pow(mpz_class(-e));
    mpz_class r, m = modulus();
    mpz_powm(r.get_mpz_t(), v_.get_mpz_t(), e.get_mpz_t(), m.get_mpz_t());
    return Zp(p_, prec_, r);
}

Zp Zp::with_prec(int k) const {
    if (k > prec_) throw PrecisionError("Zp::with_prec: cannot add digits");
    return Zp(p_, k, v_);
}

Zp Zp::unit_part() const {
    if (is_zero()) throw DomainError("Zp::unit_part: zero");
    long v = val();
    mpz_class pk;
    mpz_ui_pow_ui(pk.get_mpz_t(), (unsigned long)p_, (unsigned long)v);
    return Zp(p_, prec_ - (int)v, mpz_class(v_ / pk));
}

Zp Zp::times_p_power(long k) const {
    if (k < 0) throw DomainError("Zp::times_p_power: negative power");
    mpz_class pk;
    mpz_ui_pow_ui(pk.get_mpz_t(), (unsigned long)p_, (unsigned long)k);
    return Zp(p_, prec_, mpz_class(v_ * pk));
}

Zp Zp::teichmuller() const {
    if (is_zero()) return *this;
    if (!is_unit()) throw DomainError("Zp::teichmuller: not a unit");
    Zp x = *this;
    for (int i = 0; i <= prec_ + 1; ++i) {
        Zp y = x.pow(p_);
        if (y == x && y.v_ == x.v_) return x;
        x = y;
    }
    throw PrecisionError("Zp::teichmuller: no convergence");
}

bool Zp::is_square_unit() const {
    if (!is_unit()) throw DomainError("Zp::is_square_unit: not a unit");
    mpz_class pz(p_);
    return mpz_legendre(v_.get_mpz_t(), pz.get_mpz_t()) == 1;
}

// Square root modulo an odd prime by Tonelli-Shanks; a is a residue.
static mpz_class sqrt_mod_p(const mpz_class& a, long p) {
    mpz_class pz(p), r;
    if (mpz_fdiv_ui(a.get_mpz_t(), (unsigned long)p) == 0) return mpz_class(0);
    if (p % 4 == 3) {
        mpz_class e = (pz + 1) / 4;
        mpz_powm(r.get_mpz_t(), a.get_mpz_t(), e.get_mpz_t(), pz.get_mpz_t());
        return r;
    }
    mpz_class q = pz - 1;
    long s = 0;
    while (mpz_even_p(q.get_mpz_t())) { q /= 2; ++s; }
    mpz_class z(quadratic_nonresidue(p));
    mpz_class c, t, b, e;
    mpz_powm(c.get_mpz_t(), z.get_mpz_t(), q.get_mpz_t(), pz.get_mpz_t());
    mpz_powm(t.get_mpz_t(), a.get_mpz_t(), q.get_mpz_t(), pz.get_mpz_t());
    e = (q + 1) / 2;
    mpz_powm(r.get_mpz_t(), a.get_mpz_t(), e.get_mpz_t(), pz.get_mpz_t());
    long m = s;
    while (t != 1) {
        long i = 0;
        mpz_class tt = t;
        while (tt != 1) { tt = tt * tt % pz; ++i; }
        mpz_class bexp;
        mpz_ui_pow_ui(bexp.get_mpz_t(), 2, (unsigned long)(m - i - 1));
        mpz_powm(b.get_mpz_t(), c.get_mpz_t(), bexp.get_mpz_t(), pz.get_mpz_t());
        r = r * b % pz;
        c = b * b % pz;
        t = t * c % pz;
        m = i;
    }
    return r;
}

Zp Zp::sqrt_unit() const {
    if (!is_square_unit()) throw DomainError("Zp::sqrt_unit: not a square unit");
    mpz_class pz(p_), m = modulus();
    mpz_class r = sqrt_mod_p(v_, p_);
    // Newton lift: r <- r - (r^2 - a) / (2r), doubling correct digits.
    mpz_class mod(p_);
    int have = 1;
    while (have < prec_) {
        have = std::min(2 * have, prec_);
        mpz_ui_pow_ui(mod.get_mpz_t(), (unsigned long)p_, (unsigned long)have);
        mpz_class num = (r * r - v_) % mod;
        mpz_class den = 2 * r % mod, den_inv;
        mpz_invert(den_inv.get_mpz_t(), den.get_mpz_t(), mod.get_mpz_t());
        r = ((r - num * den_inv) % mod + mod) % mod;
    }
    Zp out(p_, prec_, r);
    if (out.residue() > (p_ - 1) / 2) out = -out;
    return out;
}

std::string Zp::str() const {
    return v_.get_str() + " mod " + std::to_string(p_) + "^" + std::to_string(prec_);
}

std::ostream& operator<<(std::ostream& os, const Zp& z) { return os << z.str(); }

long quadratic_nonresidue(long p) {
    mpz_class pz(p);
    for (long a = 2; a < p; ++a) {
        mpz_class az(a);
        if (mpz_legendre(az.get_mpz_t(), pz.get_mpz_t()) == -1) return a;
    }
    throw DomainError("quadratic_nonresidue: none found (p not an odd prime?)");
}

int legendre_rat(const Rat& u, long p) {
    if (u.is_zero() || val_p(u, p) != 0)
        throw DomainError("legendre_rat: argument is not a p-unit");
    mpz_class pz(p), n = u.num(), d = u.den();
    return mpz_legendre(n.get_mpz_t(), pz.get_mpz_t()) *
           mpz_legendre(d.get_mpz_t(), pz.get_mpz_t());
}

int hilbert_symbol(const Rat& a, const Rat& b, long p) {
    if (a.is_zero() || b.is_zero()) throw DomainError("hilbert_symbol: zero argument");
    if (p < 3 || p % 2 == 0) throw DomainError("hilbert_symbol: p must be an odd prime");
    long alpha = val_p(a, p), beta = val_p(b, p);
    Rat u = unit_part_p(a, p), v = unit_part_p(b, p);
    int out = 1;
    if (beta % 2 != 0) out *= legendre_rat(u, p);
    if (alpha % 2 != 0) out *= legendre_rat(v, p);
    long eps = ((p - 1) / 2) % 2;   // 1 iff p = 3 mod 4
    if ((alpha % 2 != 0) && (beta % 2 != 0) && eps == 1) out = -out;
    return out;
}

int hilbert_symbol_real(const Rat& a, const Rat& b) {
    if (a.is_zero() || b.is_zero()) throw DomainError("hilbert_symbol_real: zero argument");
    return (a.sign() < 0 && b.sign() < 0) ? -1 : 1;
}

} // namespace endo
