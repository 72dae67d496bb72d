#pragma once
#include <gmpxx.h>
#include <memory>
#include <string>
#include <vector>
#include <iosfwd>
#include "errors.hpp"
#include "padic.hpp"

namespace endo {

/**
 * Shared context for the unramified extension of degree f over Z_p,
 * truncated at p^prec: a monic modulus polynomial (any monic lift of an
 * irreducible polynomial of degree f over F_p), the lifted Frobenius, and a
 * Teichmueller generator zeta of order p^f - 1.
 */
class ZpExtRing {
public:
    static std::shared_ptr<const ZpExtRing> get(long p, int f, int prec);

    long p() const { return p_; }
    int f() const { return f_; }
    int prec() const { return prec_; }
    mpz_class pk() const;                              // p^prec
    const std::vector<mpz_class>& modulus_poly() const { return F_; }
    // Powers 1, r, r^2, ..., r^(f-1) of the Frobenius image of the generator.
    const std::vector<std::vector<mpz_class>>& frob_powers() const { return frob_pow_; }
    const std::vector<mpz_class>& zeta_coeffs() const { return zeta_; }

private:
    ZpExtRing() = default;
    long p_ = 0;
    int f_ = 0, prec_ = 0;
    std::vector<mpz_class> F_;                    // length f+1, monic
    std::vector<std::vector<mpz_class>> frob_pow_;
    std::vector<mpz_class> zeta_;                 // Teichmueller generator
};

/**
 * Element of the truncated unramified extension: a polynomial of degree
 * below f in the ring generator, each coefficient a residue mod p^prec with
 * the element-level precision tracked exactly as in Zp.
 */
class ZpE {
public:
    ZpE() : prec_(0) {}
    ZpE(std::shared_ptr<const ZpExtRing> R, int prec, std::vector<mpz_class> coeffs);
    // Constant embedding.
    ZpE(std::shared_ptr<const ZpExtRing> R, const Zp& z);

    static ZpE zero(std::shared_ptr<const ZpExtRing> R);
    static ZpE one(std::shared_ptr<const ZpExtRing> R);
    static ZpE gen(std::shared_ptr<const ZpExtRing> R);     // ring generator
    static ZpE zeta(std::shared_ptr<const ZpExtRing> R);    // order p^f - 1

    const std::shared_ptr<const ZpExtRing>& ring() const { return R_; }
    int prec() const { return prec_; }
    const std::vector<mpz_class>& coeffs() const { return c_; }

    bool is_zero() const;
    bool is_one() const;
    bool is_unit() const { return val() == 0; }
    long val() const;                      // min over coefficient valuations
    long prec_hint() const { return prec_; }

    ZpE operator-() const;
    ZpE operator+(const ZpE& o) const;
    ZpE operator-(const ZpE& o) const;
    ZpE operator*(const ZpE& o) const;
    bool operator==(const ZpE& o) const;
    bool operator!=(const ZpE& o) const { return !(*this == o); }

    ZpE inv() const;
    ZpE div_exact(const ZpE& o) const;
    ZpE pow(const mpz_class& e) const;
    ZpE pow(long e) const { return pow(mpz_class(e)); }
    ZpE with_prec(int k) const;

    ZpE frobenius() const;                 // lift of x -> x^p on the residue field
    ZpE teichmuller() const;

    bool is_constant() const;              // lies in Z_p
    Zp constant_part() const;

    ZpE zero_like() const;
    ZpE one_like() const;
    ZpE from_int_like(long n) const;

    std::string str() const;

private:
    std::shared_ptr<const ZpExtRing> R_;
    int prec_;
    std::vector<mpz_class> c_;             // length f, mod p^prec
    void normalize();
    void require_same_ring(const ZpE& o) const;
};

std::ostream& operator<<(std::ostream& os, const ZpE& z);

} // namespace endo
