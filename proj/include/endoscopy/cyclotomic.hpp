#pragma once
#include <memory>
#include <optional>
#include <string>
#include <vector>
#include <iosfwd>
#include "rational.hpp"

namespace endo {

/**
 * Shared context for the cyclotomic field Q(zeta_m): conductor, degree
 * phi(m), and the coefficients of the m-th cyclotomic polynomial.
 * Contexts are cached per conductor and shared by all elements.
 */
class CycRing {
public:
    static std::shared_ptr<const CycRing> get(long m);

    long conductor() const { return m_; }
    long degree() const { return (long)phi_.size() - 1; }
    // Monic, integer coefficients, constant term first.
    const std::vector<mpz_class>& modulus() const { return phi_; }

private:
    CycRing(long m, std::vector<mpz_class> phi) : m_(m), phi_(std::move(phi)) {}
    long m_;
    std::vector<mpz_class> phi_;
};

/**
 * Element of a cyclotomic field, stored as a polynomial in zeta_m of degree
 * below phi(m).  Binary operations on elements of different conductors lift
 * both to the lcm conductor first, so rationals (conductor 1) mix freely
 * with any root of unity.
 */
class Cyc {
public:
    Cyc() : Cyc(Rat(0)) {}
    explicit Cyc(const Rat& r);
    Cyc(long n) : Cyc(Rat(n)) {}

    static Cyc zeta(long m);                  // primitive m-th root of unity
    static Cyc zeta_pow(long m, long k);      // zeta_m^k

    long conductor() const { return ring_->conductor(); }
    const std::vector<Rat>& coeffs() const { return c_; }

    bool is_zero() const;
    bool is_one() const;
    bool is_unit() const { return !is_zero(); }
    bool is_rational() const;
    Rat rational_part() const;                // requires is_rational()
    long val() const;
    long prec_hint() const { return VAL_INF; }

    Cyc operator-() const;
    Cyc operator+(const Cyc& o) const;
    Cyc operator-(const Cyc& o) const;
    Cyc operator*(const Cyc& o) const;
    Cyc operator/(const Cyc& o) const { return *this * o.inv(); }
    bool operator==(const Cyc& o) const;
    bool operator!=(const Cyc& o) const { return !(*this == o); }

    Cyc inv() const;
    Cyc div_exact(const Cyc& o) const { return *this / o; }
    Cyc pow(long e) const;

    // Exponent k with this == zeta_m^k in the own ring, if this is such.
    std::optional<long> root_of_unity_exponent() const;
    // Order as a root of unity (nullopt if not one of finite order).
    std::optional<long> root_of_unity_order() const;

    // Reinterpret in Q(zeta_m2); the own conductor must divide m2.
    Cyc in_ring(long m2) const;

    Cyc zero_like() const { return Cyc(Rat(0)).in_ring(conductor()); }
    Cyc one_like() const { return Cyc(Rat(1)).in_ring(conductor()); }
    Cyc from_int_like(long n) const { return Cyc(Rat(n)).in_ring(conductor()); }

    std::string str() const;

private:
    Cyc(std::shared_ptr<const CycRing> ring, std::vector<Rat> c)
        : ring_(std::move(ring)), c_(std::move(c)) {}
    static void align(Cyc& a, Cyc& b);
    std::shared_ptr<const CycRing> ring_;
    std::vector<Rat> c_;   // length = degree of the ring
};

std::ostream& operator<<(std::ostream& os, const Cyc& z);

} // namespace endo
