#pragma once
#include <gmpxx.h>
#include <string>
#include <iosfwd>
#include "errors.hpp"

namespace endo {

/**
 * Exact rational scalar backed by GMP.  Canonical form (lowest terms,
 * positive denominator) is maintained by mpq_class itself.
 */
class Rat {
public:
    Rat() : v_(0) {}
    Rat(long n) : v_(n) {}
    Rat(long n, long d) : v_(n, d) {
        if (d == 0) throw DomainError("Rat: zero denominator");
        v_.canonicalize();
    }
    explicit Rat(const mpz_class& n) : v_(n) {}
    Rat(const mpz_class& n, const mpz_class& d) : v_(n, d) {
        if (d == 0) throw DomainError("Rat: zero denominator");
        v_.canonicalize();
    }
    explicit Rat(const mpq_class& q) : v_(q) { v_.canonicalize(); }

    // Accepts "n" or "n/d" with optional sign.
    static Rat parse(const std::string& s);

    const mpq_class& raw() const { return v_; }
    mpz_class num() const { return v_.get_num(); }
    mpz_class den() const { return v_.get_den(); }
    bool is_integer() const { return v_.get_den() == 1; }

    bool is_zero() const { return sgn(v_) == 0; }
    bool is_one() const { return v_ == 1; }
    bool is_unit() const { return !is_zero(); }
    int sign() const { return sgn(v_); }

    Rat operator-() const { return Rat(mpq_class(-v_)); }
    Rat operator+(const Rat& o) const { return Rat(mpq_class(v_ + o.v_)); }
    Rat operator-(const Rat& o) const { return Rat(mpq_class(v_ - o.v_)); }
    Rat operator*(const Rat& o) const { return Rat(mpq_class(v_ * o.v_)); }
    Rat operator/(const Rat& o) const {
        if (o.is_zero()) throw DomainError("Rat: division by zero");
        return Rat(mpq_class(v_ / o.v_));
    }
    Rat& operator+=(const Rat& o) { v_ += o.v_; return *this; }
    Rat& operator-=(const Rat& o) { v_ -= o.v_; return *this; }
    Rat& operator*=(const Rat& o) { v_ *= o.v_; return *this; }

    bool operator==(const Rat& o) const { return v_ == o.v_; }
    bool operator!=(const Rat& o) const { return v_ != o.v_; }
    bool operator<(const Rat& o) const { return v_ < o.v_; }

    Rat inv() const {
        if (is_zero()) throw DomainError("Rat: inverse of zero");
        return Rat(mpq_class(1 / v_));
    }
    Rat div_exact(const Rat& o) const { return *this / o; }
    // Field valuation: 0 on units, VAL_INF on zero.
    long val() const { return is_zero() ? VAL_INF : 0; }
    // Digits of working precision (exact scalars: unbounded).
    long prec_hint() const { return VAL_INF; }

    Rat zero_like() const { return Rat(); }
    Rat one_like() const { return Rat(1); }
    Rat from_int_like(long n) const { return Rat(n); }

    Rat pow(long e) const;

    std::string str() const;

private:
    mpq_class v_;
};

std::ostream& operator<<(std::ostream& os, const Rat& r);

// p-adic valuation of a nonzero rational (negative on denominators).
long val_p(const Rat& r, long p);
// Unit part u with r = p^val * u; requires r != 0.
Rat unit_part_p(const Rat& r, long p);

// True iff r is a square in Q.
bool is_square_q(const Rat& r);
// Exact square root of a square rational, nonnegative choice.
Rat sqrt_q(const Rat& r);

} // namespace endo
