/*
 * identities.hpp — factorial-as-difference-of-squares identities.
 *
 * For n ≥ 1, 4^{⌊n/2⌋}·(⌊n/2⌋)! equals a short product of difference-of-
 * squares factors selected by n mod 4.  check_identity evaluates both
 * sides exactly and returns the witness; n = 0 is excluded (the class-0
 * identity fails there under the empty-product convention).
 */

#pragma once

#include <gmpxx.h>

#include <vector>

namespace mlab {

struct IdentityWitness {
  long n = 0;
  int residue_class = 0;  // n mod 4
  mpz_class lhs;          // 4^{⌊n/2⌋}·(⌊n/2⌋)!
  mpz_class prefactor;    // 2, 1, 2n or n+1
  std::vector<mpz_class> factors;
  mpz_class rhs;          // prefactor · ∏ factors
  bool equal = false;
};

// Evaluate the identity for n ≥ 1 (n = 0 → std::domain_error).
IdentityWitness check_identity(long n);

struct FactorList {
  mpz_class prefactor;
  std::vector<mpz_class> factors;
};

// The ordered factor list whose product (with prefactor) is
// 4^{⌊n/2⌋}·(⌊n/2⌋)!.
FactorList factorial_square_factors(long n);

}  // namespace mlab
