/*
 * phi.hpp — the scaled sequence φ_k(n) = 4^k · Ψ_k(n).
 *
 * φ is the sequence whose even-k sum mod 2n−1 decides Mersenne primality.
 * Generators mirror the Ψ ones: definition, the order-4 double-index
 * recurrence φ_k(n) = 4φ_{k-1}(n-2) − φ_k(n-4), the one-row ratio step for
 * even n, and the residue-class closed forms.  The head/tail helper gives
 * the first five even-k values and the last five (k = ⌊n/2⌋ − 2j) in closed
 * form for n ≡ 0 (mod 8).
 */

#pragma once

#include <gmpxx.h>

#include <array>
#include <vector>

namespace mlab {

enum class PhiScheme { Definition, RowRecurrence, Ratio, ClosedForm };

struct PhiSequence {
  long n = 0;
  std::vector<mpz_class> values;  // index k = 0..⌊n/2⌋
  PhiScheme scheme = PhiScheme::Definition;

  long max_k() const { return n / 2; }
  const mpz_class& at(long k) const;
};

// 4^k · Ψ_k(n) straight from the definition.
mpz_class phi_from_psi(long n, long k);

// Rows m = 0..m_max by the order-4 recurrence with the φ_0/φ_1 boundary
// tables.  The walker itself needs only the two same-parity predecessor
// rows; the returned stack is for desk-scale inspection and tests.
std::vector<PhiSequence> phi_row_recurrence(long m_max);

// φ_k(n) from φ_{k-2}(n) for even n:
//   φ_k/φ_{k-2} = −(n² − (2k−4)²) / (k(k−1)).
// Odd n or a vanishing lane → std::domain_error.
mpz_class phi_ratio_step(long n, long k, const mpz_class& phi_prev);

// Residue-class closed forms (the Ψ forms with the 4^k absorbed).
mpz_class phi_closed_form(long n, long k);

struct PhiHeadTail {
  // head[i] = φ_{2i}(n) for i = 0..4:
  //   2, −n², +n²(n²−4²)/12, −n²(n²−4²)(n²−8²)/360, +n²(n²−4²)(n²−8²)(n²−12²)/20160
  std::array<mpz_class, 5> head;
  // tail[j] = φ_{⌊n/2⌋−2j}(n) for j = 0..4:
  //   2^n, −n·2^{n−5}, +n(n−6)·2^{n−11}, −n(n−8)(n−10)/3·2^{n−16},
  //   +n(n−10)(n−12)(n−14)/3·2^{n−23}
  std::array<mpz_class, 5> tail;
};

// Both closed-form strips for n ≡ 0 (mod 8), n ≥ 16.  Every value is
// asserted against phi_closed_form before being returned.
PhiHeadTail phi_head_tail(long n);

}  // namespace mlab
