#pragma once
#include <gmpxx.h>
#include <string>
#include <iosfwd>
#include "errors.hpp"
#include "rational.hpp"

namespace endo {

/**
 * Truncated p-adic integer: a residue modulo p^prec together with the
 * number of known digits.  p is always an odd prime here; every operation
 * tracks how many digits of the result are trustworthy and refuses to
 * produce a value with fewer than one known digit.
 *
 * Precision rules: add/sub/mul keep min(prec_a, prec_b); exact division by
 * a value of valuation v costs v digits; inversion requires a unit.
 */
class Zp {
public:
    Zp() : p_(0), prec_(0), v_(0) {}   // unusable sentinel; real ctors below
    Zp(long p, int prec, const mpz_class& value);
    Zp(long p, int prec, long value) : Zp(p, prec, mpz_class(value)) {}

    // Embeds a rational with nonnegative p-valuation.
    static Zp from_rational(long p, int prec, const Rat& r);

    long p() const { return p_; }
    int prec() const { return prec_; }
    const mpz_class& residue_full() const { return v_; }
    long residue() const { return mpz_fdiv_ui(v_.get_mpz_t(), (unsigned long)p_); }
    mpz_class modulus() const;

    bool is_zero() const { return v_ == 0; }   // zero to known precision
    bool is_one() const;
    bool is_unit() const { return val() == 0; }
    // ord_p, capped at prec for (apparent) zero.
    long val() const;
    long prec_hint() const { return prec_; }

    Zp operator-() const;
    Zp operator+(const Zp& o) const;
    Zp operator-(const Zp& o) const;
    Zp operator*(const Zp& o) const;
    bool operator==(const Zp& o) const;   // equality at shared precision
    bool operator!=(const Zp& o) const { return !(*this == o); }

    Zp inv() const;
    // Exact division; throws PrecisionError if fewer than one digit remains,
    // DomainError if the divisor's valuation exceeds this value's.
    Zp div_exact(const Zp& o) const;
    Zp pow(const mpz_class& e) const;
    Zp pow(long e) const { return pow(mpz_class(e)); }

    Zp with_prec(int k) const;            // lower the precision view
    Zp unit_part() const;                 // this = p^val * unit_part
    Zp times_p_power(long k) const;       // multiply by p^k (k >= 0)

    // Hensel-stable idempotent limit x^(p^m); requires a unit or zero.
    Zp teichmuller() const;

    bool is_square_unit() const;          // unit assumed; Legendre at residue
    // Square root of a square unit; picks the root whose residue mod p lies
    // in [1, (p-1)/2].
    Zp sqrt_unit() const;

    Zp zero_like() const { return Zp(p_, prec_, 0L); }
    Zp one_like() const { return Zp(p_, prec_, 1L); }
    Zp from_int_like(long n) const { return Zp(p_, prec_, n); }

    std::string str() const;              // "v mod p^K"

private:
    long p_;
    int prec_;
    mpz_class v_;   // in [0, p^prec)
    void require_same_ring(const Zp& o) const;
};

std::ostream& operator<<(std::ostream& os, const Zp& z);

// Smallest quadratic nonresidue modulo an odd prime.
long quadratic_nonresidue(long p);

// Legendre symbol of a rational p-unit at an odd prime.
int legendre_rat(const Rat& u, long p);

// Hilbert symbol (a,b)_p for nonzero rationals at an odd prime, by the tame
// formula: with a = p^alpha u, b = p^beta v,
//   (a,b)_p = leg(u)^beta * leg(v)^alpha * (-1)^(alpha beta (p-1)/2).
int hilbert_symbol(const Rat& a, const Rat& b, long p);

// Hilbert symbol (a,b)_inf over the reals: -1 iff both arguments negative.
int hilbert_symbol_real(const Rat& a, const Rat& b);

} // namespace endo
