#pragma once
#include <string>
#include "rational.hpp"
#include "padic.hpp"

namespace endo {

/**
 * Square class in Q^x / (Q^x)^2.  Equality never factors anything (it tests
 * whether the quotient of representatives is a square); the canonical
 * squarefree representative is computed on demand and only then requires
 * desk-scale factorization.
 */
class SquareClassQ {
public:
    explicit SquareClassQ(const Rat& r) : rep_(r) {
        if (r.is_zero()) throw DomainError("SquareClassQ: zero");
    }
    const Rat& representative() const { return rep_; }
    mpz_class canonical() const;   // squarefree integer, sign preserved
    bool operator==(const SquareClassQ& o) const {
        return is_square_q(rep_ / o.rep_);
    }
    bool operator!=(const SquareClassQ& o) const { return !(*this == o); }
    SquareClassQ operator*(const SquareClassQ& o) const {
        return SquareClassQ(rep_ * o.rep_);
    }
    bool is_trivial() const { return is_square_q(rep_); }
    std::string str() const { return canonical().get_str(); }

private:
    Rat rep_;
};

/**
 * Square class of a unit in Zp^x / (Zp^x)^2 for odd p: trivial or the class
 * of the smallest quadratic nonresidue.
 */
class SquareClassZp {
public:
    SquareClassZp(long p, bool residue) : p_(p), residue_(residue) {}
    explicit SquareClassZp(const Zp& u) : p_(u.p()), residue_(u.is_square_unit()) {}
    long p() const { return p_; }
    bool is_trivial() const { return residue_; }
    long canonical() const { return residue_ ? 1 : quadratic_nonresidue(p_); }
    bool operator==(const SquareClassZp& o) const {
        if (p_ != o.p_) throw DomainError("SquareClassZp: mixed primes");
        return residue_ == o.residue_;
    }
    bool operator!=(const SquareClassZp& o) const { return !(*this == o); }
    SquareClassZp operator*(const SquareClassZp& o) const {
        if (p_ != o.p_) throw DomainError("SquareClassZp: mixed primes");
        return SquareClassZp(p_, residue_ == o.residue_);
    }
    std::string str() const { return std::to_string(canonical()); }

private:
    long p_;
    bool residue_;
};

/**
 * Square class in Qp^x / (Qp^x)^2 for odd p: one of {1, eps, p, eps p}
 * where eps is the smallest quadratic nonresidue mod p.
 */
class SquareClassQp {
public:
    SquareClassQp(long p, bool unit_residue, bool odd_val)
        : p_(p), residue_(unit_residue), odd_val_(odd_val) {}
    SquareClassQp(const Rat& r, long p)
        : p_(p),
          residue_(legendre_rat(unit_part_p(r, p), p) == 1),
          odd_val_(val_p(r, p) % 2 != 0) {}
    long p() const { return p_; }
    bool is_trivial() const { return residue_ && !odd_val_; }
    bool has_odd_val() const { return odd_val_; }
    bool unit_is_residue() const { return residue_; }
    Rat canonical() const {
        Rat u(residue_ ? 1 : quadratic_nonresidue(p_));
        return odd_val_ ? u * Rat(p_) : u;
    }
    bool operator==(const SquareClassQp& o) const {
        if (p_ != o.p_) throw DomainError("SquareClassQp: mixed primes");
        return residue_ == o.residue_ && odd_val_ == o.odd_val_;
    }
    bool operator!=(const SquareClassQp& o) const { return !(*this == o); }
    SquareClassQp operator*(const SquareClassQp& o) const {
        if (p_ != o.p_) throw DomainError("SquareClassQp: mixed primes");
        bool ov = odd_val_ != o.odd_val_;
        bool res = (residue_ == o.residue_);
        // p odd: (-1/p) plays no role here since representatives multiply as
        // u1 p^a * u2 p^b with unit classes multiplying independently of a, b.
        return SquareClassQp(p_, res, ov);
    }
    std::string str() const { return canonical().str(); }

private:
    long p_;
    bool residue_;
    bool odd_val_;
};

} // namespace endo
