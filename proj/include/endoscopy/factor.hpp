#pragma once
#include <gmpxx.h>
#include <vector>
#include <utility>
#include "errors.hpp"

namespace endo {

/**
 * Factorization of |n| by trial division up to the bound, with a primality
 * check on the remaining cofactor.  A composite cofactor above the bound is
 * a hard error: callers are sized for desk-scale inputs and must not get
 * silently wrong multiplicative data.
 */
std::vector<std::pair<mpz_class, int>> factor_desk(const mpz_class& n,
                                                   long bound = 1000000);

// Largest divisor of n coprime to p.
mpz_class prime_to_part(const mpz_class& n, long p);

// Multiplicative order of a modulo m (a coprime to m), by factoring a
// known multiple of the order.
mpz_class mult_order(const mpz_class& a, const mpz_class& m,
                     const mpz_class& order_multiple);

} // namespace endo
