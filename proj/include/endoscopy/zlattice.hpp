#pragma once
#include <gmpxx.h>
#include <optional>
#include <vector>
#include "errors.hpp"

namespace endo {

/** Dense integer matrix; the workhorse for lattice computations. */
struct IMat {
    long r = 0, c = 0;
    std::vector<mpz_class> a;

    IMat() = default;
    IMat(long r_, long c_) : r(r_), c(c_), a(r_ * c_, mpz_class(0)) {}
    static IMat identity(long n) {
        IMat m(n, n);
        for (long i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }
    static IMat from_rows(const std::vector<std::vector<long>>& rows) {
        IMat m((long)rows.size(), rows.empty() ? 0 : (long)rows[0].size());
        for (long i = 0; i < m.r; ++i) {
            if ((long)rows[i].size() != m.c) throw DomainError("IMat: ragged rows");
            for (long j = 0; j < m.c; ++j) m.at(i, j) = rows[i][j];
        }
        return m;
    }

    mpz_class& at(long i, long j) {
        if (i < 0 || i >= r || j < 0 || j >= c) throw DomainError("IMat: index out of range");
        return a[i * c + j];
    }
    const mpz_class& at(long i, long j) const {
        if (i < 0 || i >= r || j < 0 || j >= c) throw DomainError("IMat: index out of range");
        return a[i * c + j];
    }
    bool operator==(const IMat& o) const { return r == o.r && c == o.c && a == o.a; }
    bool operator!=(const IMat& o) const { return !(*this == o); }
    bool is_zero() const {
        for (auto& x : a) if (x != 0) return false;
        return true;
    }

    IMat operator*(const IMat& o) const {
        if (c != o.r) throw DomainError("IMat: shape mismatch in product");
        IMat m(r, o.c);
        for (long i = 0; i < r; ++i)
            for (long k = 0; k < c; ++k) {
                if (at(i, k) == 0) continue;
                for (long j = 0; j < o.c; ++j) m.at(i, j) += at(i, k) * o.at(k, j);
            }
        return m;
    }
    IMat operator+(const IMat& o) const {
        if (r != o.r || c != o.c) throw DomainError("IMat: shape mismatch");
        IMat m = *this;
        for (size_t i = 0; i < a.size(); ++i) m.a[i] += o.a[i];
        return m;
    }
    IMat operator-() const {
        IMat m = *this;
        for (auto& x : m.a) x = -x;
        return m;
    }
    IMat operator-(const IMat& o) const { return *this + (-o); }
    IMat transpose() const {
        IMat m(c, r);
        for (long i = 0; i < r; ++i)
            for (long j = 0; j < c; ++j) m.at(j, i) = at(i, j);
        return m;
    }
    std::vector<mpz_class> mul_vec(const std::vector<mpz_class>& v) const {
        if ((long)v.size() != c) throw DomainError("IMat: shape mismatch");
        std::vector<mpz_class> out(r, mpz_class(0));
        for (long i = 0; i < r; ++i)
            for (long j = 0; j < c; ++j) out[i] += at(i, j) * v[j];
        return out;
    }
    IMat columns(const std::vector<long>& cols) const {
        IMat m(r, (long)cols.size());
        for (long i = 0; i < r; ++i)
            for (size_t j = 0; j < cols.size(); ++j) m.at(i, (long)j) = at(i, cols[j]);
        return m;
    }
    static IMat hstack(const IMat& a_, const IMat& b_) {
        if (a_.r != b_.r) throw DomainError("IMat::hstack: shape mismatch");
        IMat m(a_.r, a_.c + b_.c);
        for (long i = 0; i < a_.r; ++i) {
            for (long j = 0; j < a_.c; ++j) m.at(i, j) = a_.at(i, j);
            for (long j = 0; j < b_.c; ++j) m.at(i, a_.c + j) = b_.at(i, j);
        }
        return m;
    }
};

/** Smith decomposition U A V = D with unimodular transforms. */
struct Snf {
    IMat U, Ui, V, Vi;    // Ui = U^-1, Vi = V^-1
    IMat D;               // diagonal, nonnegative, divisibility chain
    long rank = 0;        // number of nonzero diagonal entries
};

Snf snf(const IMat& A);

// Columns spanning { x : A x = 0 }, a saturated sublattice basis.
IMat ikernel(const IMat& A);

// Basis of span_Q(columns of B) intersected with Z^n.
IMat isaturate(const IMat& B);

// One integral solution of A x = b, if any.
std::optional<std::vector<mpz_class>> isolve(const IMat& A, const std::vector<mpz_class>& b);

// Inverse of a unimodular matrix.
IMat iinverse(const IMat& A);

mpz_class idet(const IMat& A);

// True iff the columns of B can be extended to a basis of Z^n
// (equivalently all Smith diagonal entries are 1).
bool is_primitive_sublattice_basis(const IMat& B);

} // namespace endo
