#include "endoscopy/zlattice.hpp"

namespace endo {

namespace {

struct Work {
    IMat D, U, Ui, V, Vi;
    void row_swap(long i, long j) {
        for (long k = 0; k < D.c; ++k) std::swap(D.at(i, k), D.at(j, k));
        for (long k = 0; k < U.c; ++k) std::swap(U.at(i, k), U.at(j, k));
        for (long k = 0; k < Ui.r; ++k) std::swap(Ui.at(k, i), Ui.at(k, j));
    }
    void col_swap(long i, long j) {
        for (long k = 0; k < D.r; ++k) std::swap(D.at(k, i), D.at(k, j));
        for (long k = 0; k < V.r; ++k) std::swap(V.at(k, i), V.at(k, j));
        for (long k = 0; k < Vi.c; ++k) std::swap(Vi.at(i, k), Vi.at(j, k));
    }
    // row i -= f * row j
    void row_axpy(long i, long j, const mpz_class& f) {
        for (long k = 0; k < D.c; ++k) D.at(i, k) -= f * D.at(j, k);
        for (long k = 0; k < U.c; ++k) U.at(i, k) -= f * U.at(j, k);
        for (long k = 0; k < Ui.r; ++k) Ui.at(k, j) += f * Ui.at(k, i);
    }
    // col i -= f * col j
    void col_axpy(long i, long j, const mpz_class& f) {
        for (long k = 0; k < D.r; ++k) D.at(k, i) -= f * D.at(k, j);
        for (long k = 0; k < V.r; ++k) V.at(k, i) -= f * V.at(k, j);
        for (long k = 0; k < Vi.c; ++k) Vi.at(j, k) += f * Vi.at(i, k);
    }
    void row_negate(long i) {
        for (long k = 0; k < D.c; ++k) D.at(i, k) = -D.at(i, k);
        for (long k = 0; k < U.c; ++k) U.at(i, k) = -U.at(i, k);
        for (long k = 0; k < Ui.r; ++k) Ui.at(k, i) = -Ui.at(k, i);
    }
};

} // namespace

Snf snf(const IMat& A) {
    Work w{A, IMat::identity(A.r), IMat::identity(A.r),
           IMat::identity(A.c), IMat::identity(A.c)};
    long n = std::min(A.r, A.c);
    long t = 0;
    for (; t < n; ++t) {
        // move a nonzero entry of minimal absolute value to (t, t)
        long bi = -1, bj = -1;
        for (long i = t; i < w.D.r; ++i)
            for (long j = t; j < w.D.c; ++j) {
                if (w.D.at(i, j) == 0) continue;
                if (bi < 0 || mpz_cmpabs(w.D.at(i, j).get_mpz_t(),
                                         w.D.at(bi, bj).get_mpz_t()) < 0) { bi = i; bj = j; }
            }
        if (bi < 0) break;
        if (bi != t) w.row_swap(bi, t);
        if (bj != t) w.col_swap(bj, t);
        // chase remainders until the pivot divides its row and column
        for (bool dirty = true; dirty;) {
            dirty = false;
            for (long i = t + 1; i < w.D.r; ++i) {
                if (w.D.at(i, t) == 0) continue;
                mpz_class q = w.D.at(i, t) / w.D.at(t, t);   // truncated division
                w.row_axpy(i, t, q);
                if (w.D.at(i, t) != 0) {                      // remainder smaller: swap up
                    w.row_swap(i, t);
                    dirty = true;
                }
            }
            for (long j = t + 1; j < w.D.c; ++j) {
                if (w.D.at(t, j) == 0) continue;
                mpz_class q = w.D.at(t, j) / w.D.at(t, t);
                w.col_axpy(j, t, q);
                if (w.D.at(t, j) != 0) {
                    w.col_swap(j, t);
                    dirty = true;
                }
            }
        }
        if (w.D.at(t, t) < 0) w.row_negate(t);
    }
    // divisibility chain: fold any entry not divisible by an earlier pivot
    for (bool dirty = true; dirty;) {
        dirty = false;
        for (long i = 0; i + 1 < t; ++i)
            for (long j = i + 1; j < t; ++j) {
                if (w.D.at(j, j) % w.D.at(i, i) == 0) continue;
                // bring d_j into column i, then redo the pivot chase at i
                w.col_axpy(i, j, mpz_class(-1));   // col i += col j
                for (bool sub = true; sub;) {
                    sub = false;
                    mpz_class q = w.D.at(j, i) / w.D.at(i, i);
                    w.row_axpy(j, i, q);
                    if (w.D.at(j, i) != 0) { w.row_swap(j, i); sub = true; }
                }
                // clear the off-diagonal remnants
                mpz_class q2 = w.D.at(i, j) / w.D.at(i, i);
                w.col_axpy(j, i, q2);
                if (w.D.at(i, j) != 0) throw DomainError("snf: chain normalization failed");
                if (w.D.at(i, i) < 0) w.row_negate(i);
                if (w.D.at(j, j) < 0) w.row_negate(j);
                dirty = true;
            }
    }
    Snf out{w.U, w.Ui, w.V, w.Vi, w.D, 0};
    for (long i = 0; i < n; ++i)
        if (out.D.at(i, i) != 0) ++out.rank;
    return out;
}

IMat ikernel(const IMat& A) {
    Snf s = snf(A);
    std::vector<long> cols;
    for (long j = s.rank; j < A.c; ++j) cols.push_back(j);
    return s.V.columns(cols);
}

IMat isaturate(const IMat& B) {
    Snf s = snf(B);
    std::vector<long> cols;
    for (long j = 0; j < s.rank; ++j) cols.push_back(j);
    return s.Ui.columns(cols);
}

std::optional<std::vector<mpz_class>> isolve(const IMat& A, const std::vector<mpz_class>& b) {
    if ((long)b.size() != A.r) throw DomainError("isolve: shape mismatch");
    Snf s = snf(A);
    std::vector<mpz_class> ub = s.U.mul_vec(b);
    std::vector<mpz_class> y(A.c, mpz_class(0));
    for (long t = 0; t < s.rank; ++t) {
        if (ub[t] % s.D.at(t, t) != 0) return std::nullopt;
        y[t] = ub[t] / s.D.at(t, t);
    }
    for (long i = s.rank; i < A.r; ++i)
        if (ub[i] != 0) return std::nullopt;
    return s.V.mul_vec(y);
}

IMat iinverse(const IMat& A) {
    if (A.r != A.c) throw DomainError("iinverse: not square");
    Snf s = snf(A);
    if (s.rank < A.r) throw DomainError("iinverse: singular");
    for (long i = 0; i < A.r; ++i)
        if (s.D.at(i, i) != 1) throw DomainError("iinverse: not unimodular");
    // A = Ui D Vi with D = I, so A^-1 = V U.
    return s.V * s.U;
}

mpz_class idet(const IMat& A) {
    if (A.r != A.c) throw DomainError("idet: not square");
    // Smith transforms have determinant +-1; fix the sign by tracking
    // the permutation parity is unnecessary: compute via fraction-free
    // elimination instead.
    IMat m = A;
    mpz_class det(1), prev(1);
    long n = A.r;
    int sign = 1;
    for (long k = 0; k < n - 1; ++k) {
        if (m.at(k, k) == 0) {
            long piv = -1;
            for (long i = k + 1; i < n; ++i)
                if (m.at(i, k) != 0) { piv = i; break; }
            if (piv < 0) return mpz_class(0);
            for (long j = 0; j < n; ++j) std::swap(m.at(k, j), m.at(piv, j));
            sign = -sign;
        }
        for (long i = k + 1; i < n; ++i)
            for (long j = k + 1; j < n; ++j) {
                mpz_class num = m.at(i, j) * m.at(k, k) - m.at(i, k) * m.at(k, j);
                mpz_divexact(m.at(i, j).get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
            }
        prev = m.at(k, k);
    }
    det = m.at(n - 1, n - 1);
    return sign > 0 ? det : mpz_class(-det);
}

bool is_primitive_sublattice_basis(const IMat& B) {
    Snf s = snf(B);
    if (s.rank < B.c) return false;   // columns dependent
    for (long i = 0; i < s.rank; ++i)
        if (s.D.at(i, i) != 1) return false;
    return true;
}

} // namespace endo
