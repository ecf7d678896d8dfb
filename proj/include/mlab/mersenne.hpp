/*
 * mersenne.hpp — primality and compositeness engine for M = 2^p − 1.
 *
 * All test versions work entirely mod M with word-size residues:
 *   V1          — double-index row recurrence over even rows up to n = 2^{p-1}
 *   V2          — direct alternating product-over-factorial sum
 *   V3 forward  — ratio recurrence seeded φ_0 = 2
 *   V3 backward — ratio recurrence seeded φ_{⌊n/2⌋} = 4^{⌊n/2⌋}
 *   Criterion   — sufficient compositeness sum built from (4λ)² − 4^{-1}
 * plus two independent ground-truth oracles (the classic s² − 2 iteration
 * and the (1+√3)^n + (1−√3)^n divisibility via matrix power).
 *
 * Reduction mod 2^p − 1 never divides: fold the high bits,
 * x ↦ (x mod 2^p) + ⌊x/2^p⌋, until x < 2^p, then one conditional subtract.
 *
 * Divisions by k! become modular inverses.  When an inverse fails, the gcd
 * is a nontrivial divisor of M: the run ends early with verdict Composite
 * and that divisor as witness.
 */

#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace mlab {

// Refused requests that exceed a built-in capability guard (e.g. the
// quadratic-time Version 1 beyond p = 17).
class capability_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct MersenneContext {
  unsigned p = 0;            // prime exponent, 5 ≤ p ≤ 61
  std::uint64_t modulus = 0; // M = 2^p − 1, also the fold mask
  std::uint64_t n_mod = 0;   // n = 2^{p-1} reduced mod M
  std::uint64_t n_sq = 0;    // n² mod M (= 2^{p-2}, the inverse of 4)
};

// Trial-division primality for word-size integers (p and witnesses).
bool is_small_prime(std::uint64_t v);

// Context for prime p ≥ 5.  Non-prime or p < 5 → std::invalid_argument;
// p > 61 exceeds the word-size engine → capability_error.
MersenneContext build_context(unsigned p);

// x mod M by bit folding; bit-for-bit equal to division.
std::uint64_t mersenne_reduce(unsigned __int128 x, const MersenneContext& ctx);
std::uint64_t mersenne_reduce(const mpz_class& x, const MersenneContext& ctx);

std::uint64_t mod_add(std::uint64_t a, std::uint64_t b, const MersenneContext& ctx);
std::uint64_t mod_sub(std::uint64_t a, std::uint64_t b, const MersenneContext& ctx);
std::uint64_t mod_mul(std::uint64_t a, std::uint64_t b, const MersenneContext& ctx);
std::uint64_t mod_pow(std::uint64_t base, std::uint64_t exponent, const MersenneContext& ctx);

// Extended-gcd inverse.  gcd != 1 means `value` is meaningless and gcd is a
// divisor of m shared with a.
struct InverseOutcome {
  std::uint64_t value = 0;
  std::uint64_t gcd = 0;
};
InverseOutcome mod_inverse(std::uint64_t a, std::uint64_t m);

// Symmetric representative in (−M/2, M/2], matching the signed presentation
// of residues in the trace.
std::int64_t signed_residue(std::uint64_t r, std::uint64_t modulus);

enum class Verdict { Prime, Composite, Inconclusive };
enum class TestVersion { V1, V2, V3Forward, V3Backward, Criterion, LLClassic, E0Matrix };

const char* to_string(Verdict v);
const char* to_string(TestVersion v);

struct TestReport {
  unsigned p = 0;
  TestVersion version = TestVersion::V2;
  Verdict verdict = Verdict::Inconclusive;
  std::uint64_t residue = 0;  // final accumulated sum mod M
  std::optional<std::uint64_t> factor_witness;
  std::optional<std::vector<std::uint64_t>> trace;  // canonical residues
  double elapsed_ms = 0.0;
};

// Version 1: row recurrence mod M over even rows up to n, then the even-k
// sum of the final row.  Θ(n²/4) work; refused for p > 17.
TestReport test_v1(const MersenneContext& ctx);

// Version 2: Σ_{k even} (−1)^{⌊k/2⌋} ∏_{λ<⌊k/2⌋}(n²−(4λ)²) / k!  mod M,
// each term obtained from the previous by one ratio step.
TestReport test_v2(const MersenneContext& ctx);

enum class Direction { Forward, Backward };

// Version 3: the φ ratio recurrence, seeded at either end.
TestReport test_v3(const MersenneContext& ctx, Direction direction);

// Compositeness criterion: M is composite if the sum built from factors
// (4λ)² − 4^{-1} is nonzero mod M.  Zero sum → Inconclusive (the statement
// is sufficient only).
TestReport compositeness_criterion(const MersenneContext& ctx);

// Classic iteration s_0 = 4, s_{i+1} = s_i² − 2; prime iff s_{p-2} ≡ 0.
// Accepts any prime p ≥ 3 (word-size M).
TestReport ll_classic(unsigned p);

// Divisibility M | (1+√3)^n + (1−√3)^n via lucas_value_mod.
TestReport e0_divisibility(const MersenneContext& ctx);

// 2^n mod M for n = 2^{p-1}; always 2, and anything else throws
// std::logic_error because it would break the engine's seed values.
std::uint64_t last_term_congruence(const MersenneContext& ctx);

// Ordered partial sums mod M: φ_{⌊n/2⌋}, then +φ_0, +φ_2, …, +φ_{⌊n/2⌋−2}.
// Length ⌊n/4⌋ + 1; the last entry is the full even-k sum, zero iff prime.
// Generation is the forward ratio chain; if a modular inverse fails
// (composite M) the row recurrence regenerates the values when p ≤ 17,
// otherwise the run is outside the supported range → capability_error.
std::vector<std::uint64_t> partial_sum_trace(const MersenneContext& ctx);

enum class PerfectVerdict { Perfect, NotPerfect, UnknownOdd };

struct PerfectResult {
  mpz_class n;
  PerfectVerdict verdict = PerfectVerdict::NotPerfect;
  // Populated when n = 2^{p-1}·q with q = 2^p − 1:
  std::optional<unsigned> exponent;
  std::optional<mpz_class> mersenne_part;
  std::optional<Verdict> mersenne_verdict;
};

// Even-perfect check: N is perfect iff N = 2^{p-1}(2^p − 1) with 2^p − 1
// prime.  Odd N is outside the characterization → UnknownOdd.
PerfectResult perfect_check(const mpz_class& n);

// Proper-divisor sum by trial division; test oracle for perfect_check.
mpz_class proper_divisor_sum(const mpz_class& n);

}  // namespace mlab
