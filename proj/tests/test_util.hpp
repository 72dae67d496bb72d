#pragma once
#include <random>
#include "endoscopy/matrix.hpp"
#include "endoscopy/rational.hpp"
#include "endoscopy/padic.hpp"
#include "endoscopy/zlattice.hpp"

namespace endo::testutil {

using Rng = std::mt19937_64;

inline long rand_int(Rng& rng, long lo, long hi) {
    return std::uniform_int_distribution<long>(lo, hi)(rng);
}

inline Mat<Rat> rand_rat_mat(Rng& rng, long n, long m, long lo = -9, long hi = 9) {
    Mat<Rat> A(n, m, Rat(0));
    for (long i = 0; i < n; ++i)
        for (long j = 0; j < m; ++j) A.at(i, j) = Rat(rand_int(rng, lo, hi));
    return A;
}

inline Mat<Zp> rand_zp_mat(Rng& rng, long p, int prec, long n, long m) {
    Mat<Zp> A(n, m, Zp(p, prec, 0L));
    for (long i = 0; i < n; ++i)
        for (long j = 0; j < m; ++j) A.at(i, j) = Zp(p, prec, rand_int(rng, 0, 1L << 30));
    return A;
}

// Random element of GL_n over the truncated ring: unit determinant.
inline Mat<Zp> rand_gl_zp(Rng& rng, long p, int prec, long n) {
    for (;;) {
        Mat<Zp> A = rand_zp_mat(rng, p, prec, n, n);
        if (det(A).is_unit()) return A;
    }
}

inline IMat rand_imat(Rng& rng, long n, long m, long lo = -9, long hi = 9) {
    IMat A(n, m);
    for (long i = 0; i < n; ++i)
        for (long j = 0; j < m; ++j) A.at(i, j) = rand_int(rng, lo, hi);
    return A;
}

// Random unimodular integer matrix: product of elementary operations.
inline IMat rand_unimodular(Rng& rng, long n, int ops = 24) {
    IMat A = IMat::identity(n);
    for (int t = 0; t < ops; ++t) {
        long i = rand_int(rng, 0, n - 1), j = rand_int(rng, 0, n - 1);
        if (i == j) continue;
        mpz_class f(rand_int(rng, -2, 2));
        for (long k = 0; k < n; ++k) A.at(i, k) += f * A.at(j, k);
    }
    return A;
}

} // namespace endo::testutil
