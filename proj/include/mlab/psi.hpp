/*
 * psi.hpp — the Ψ-coefficient sequence.
 *
 * Ψ_k(n) are the integer coordinates of (x^n + y^n) / (x+y)^{n mod 2} in the
 * basis (xy)^{⌊n/2⌋-k} (x²+y²)^k, for k = 0..⌊n/2⌋.  Their closed forms split
 * into eight families by n mod 8; each family is a signed product of linear
 * factors divided by 4^k·k!, and the quotient is always an exact integer.
 *
 * Four independent generators are provided:
 *   psi_closed_form    — the eight residue-class formulas
 *   psi_row_recurrence — Ψ_k(n) = Ψ_{k-1}(n-2) − Ψ_k(n-4), even base rows,
 *                        odd rows pulled down from the even row above
 *   psi_odd_from_even  — Ψ_k(n) from row n+1 for odd n
 *   psi_ratio_step     — Ψ_k(n) from Ψ_{k-2}(n) by a rational ratio
 *
 * plus two structural queries: the 8×8 sign table and the linear-factor
 * chain of the closed-form numerator for odd n.
 *
 * All divisions are asserted exact; a non-integral quotient throws
 * std::logic_error since it would contradict the defining expansion.
 */

#pragma once

#include <gmpxx.h>

#include <vector>

namespace mlab {

// Residue of n mod 8, the classifier for the closed-form families.
struct ResidueClass8 {
  int value = 0;  // in 0..7

  static ResidueClass8 of(long n);
  bool operator==(const ResidueClass8&) const = default;
};

// One full coefficient row: Ψ_0(n) .. Ψ_{⌊n/2⌋}(n).
struct PsiTable {
  long n = 0;
  std::vector<mpz_class> coefficients;

  long max_k() const { return n / 2; }
  const mpz_class& at(long k) const;
};

// Ψ_k(n) by the residue-class closed form.  k = 0 comes from the boundary
// table (the k ≥ 1 formulas are not valid there for n ≡ 3, 7 (mod 8)).
// Throws std::out_of_range unless 0 ≤ k ≤ ⌊n/2⌋.
mpz_class psi_closed_form(long n, long k);

// True when Ψ_k(n) sits in a lane that vanishes identically:
// n ≡ 0, 4 (mod 8) with k odd, or n ≡ 2, 6 (mod 8) with k even.
bool psi_lane_vanishes(long n, long k);

// Rows n = 0..n_max built only from the linear recurrence
// Ψ_k(n) = Ψ_{k-1}(n-2) − Ψ_k(n-4) over even rows (base rows 0, 2, 4, 6)
// and the odd-from-even relation for odd rows.  Independent of
// psi_closed_form by construction.
std::vector<PsiTable> psi_row_recurrence(long n_max);

// Ψ_k(n) for odd n from the even row above:
//   Ψ_k(n) = [2(k+1)·Ψ_{k+1}(n+1) + (⌊(n+1)/2⌋ − k)·Ψ_k(n+1)] / (n+1).
// The first overload reads the supplied row (which must be row n+1); the
// second builds row n+1 by the recurrence.
mpz_class psi_odd_from_even(long n, long k, const PsiTable& even_row);
mpz_class psi_odd_from_even(long n, long k);

// Ψ_k(n) from Ψ_{k-2}(n):
//   Ψ_k/Ψ_{k-2} = −([n + (−1)^{⌊n/2⌋+k} δ(n)]² − [2k−2−2δ(n−1)]²) / (16k(k−1))
// Throws std::domain_error when either index lies in a vanishing lane.
mpz_class psi_ratio_step(long n, long k, const mpz_class& psi_prev);

// Sign of Ψ_k(n) as a pure (n mod 8, k mod 8) lookup: +1, 0 or −1.
// Transcribed from the periodic sign table, not derived from the closed
// forms, so it doubles as an independent cross-check.
int psi_sign(long n, long k);

// Linear factors of the closed-form numerator of Ψ_k(n) for odd n, returned
// as offsets o (factor = n + o), sorted ascending.  |chain| = k and the
// chain at k nests inside the chain at k+1.  Even n → std::domain_error.
std::vector<long> numerator_factor_chain(long n, long k);

}  // namespace mlab
