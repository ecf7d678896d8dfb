/*
 * oracle.hpp — brute-force verification side.
 *
 * Expands (x^n + y^n) / (x+y)^{n mod 2} as an explicit bivariate polynomial
 * and recovers the Ψ row by triangular elimination against the basis
 * (xy)^{⌊n/2⌋-k} (x²+y²)^k.  Nothing here touches the closed forms; that
 * independence is the whole point.
 *
 * Also evaluates v_m = (1+√3)^m + (1−√3)^m, the Lucas-type sequence behind
 * the classical divisibility test (v_0 = v_1 = 2, v_m = 2v_{m-1} + 2v_{m-2}),
 * both exactly and modulo M by 2×2 matrix powering.
 */

#pragma once

#include <gmpxx.h>

#include <map>
#include <optional>
#include <utility>
#include <vector>

namespace mlab {

// Sparse exact-integer polynomial in x, y.  Key = (x-exponent, y-exponent).
struct BivariatePoly {
  std::map<std::pair<long, long>, mpz_class> terms;

  void add_term(long a, long b, const mpz_class& c);
  const mpz_class* find(long a, long b) const;
  bool is_zero() const { return terms.empty(); }
  bool is_symmetric() const;
  // Total degree of every term equals d (vacuously true when zero).
  bool is_homogeneous(long d) const;
};

// (x^n + y^n) / (x+y)^{n mod 2}; the division for odd n is performed as
// polynomial division and asserted remainder-free.
BivariatePoly expand_power_sum(long n);

// Coordinates Ψ_0..Ψ_{⌊n/2⌋} of poly in the basis (xy)^{⌊n/2⌋-k}(x²+y²)^k.
// Eliminates top-down: basis element k has the unique leading monomial
// x^{⌊n/2⌋+k} y^{⌊n/2⌋-k}.  A nonzero residual (input outside the spanned
// space) throws std::invalid_argument.
std::vector<mpz_class> basis_decompose(const BivariatePoly& poly, long n);

struct EightLevelsMismatch {
  long n = 0;
  long k = 0;
  mpz_class oracle_value;
  mpz_class closed_form_value;
};

struct EightLevelsReport {
  long n_max = 0;
  std::vector<std::pair<long, bool>> per_n;  // (n, row matched)
  std::optional<EightLevelsMismatch> first_mismatch;
  bool all_match = true;
};

// Decompose every n ≤ n_max and compare against psi_closed_form.
// Mismatches are report content, never exceptions.
EightLevelsReport verify_eight_levels(long n_max);

// One element of the v-sequence; v_m = 2v_{m-1} + 2v_{m-2}, v_0 = v_1 = 2
// (characteristic roots 1 ± √3).
struct LucasPair {
  unsigned long m = 0;
  mpz_class value;
};

// Exact v_m by the order-2 recurrence.
mpz_class lucas_value(unsigned long m);

// v_m mod modulus via [[2,2],[1,0]]^m — O(log m) steps, so exponents as
// large as 2^{p-1} are fine.  Requires modulus ≥ 2.
mpz_class lucas_value_mod(const mpz_class& m, const mpz_class& modulus);

}  // namespace mlab
