#include "mlab/mersenne.hpp"

#include <chrono>
#include <numeric>
#include <stdexcept>

#include "mlab/oracle.hpp"

namespace mlab {

namespace {

class Stopwatch {
 public:
  double ms() const {
    return std::chrono::duration<double, std::milli>(
               std::chrono::steady_clock::now() - start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

MersenneContext raw_context(unsigned p) {
  MersenneContext ctx;
  ctx.p = p;
  ctx.modulus = (std::uint64_t{1} << p) - 1;
  ctx.n_mod = std::uint64_t{1} << (p - 1);
  ctx.n_sq = std::uint64_t{1} << (p - 2);  // 2^{2p-2} ≡ 2^{p-2} (mod 2^p − 1)
  return ctx;
}

std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b) { return std::gcd(a, b); }

}  // namespace

bool is_small_prime(std::uint64_t v) {
  if (v < 2) return false;
  if (v % 2 == 0) return v == 2;
  for (std::uint64_t d = 3; d * d <= v; d += 2)
    if (v % d == 0) return false;
  return true;
}

MersenneContext build_context(unsigned p) {
  if (p > 61)
    throw capability_error("build_context: p > 61 exceeds the word-size engine");
  if (p < 5 || !is_small_prime(p))
    throw std::invalid_argument("build_context: p must be a prime >= 5");
  return raw_context(p);
}

std::uint64_t mersenne_reduce(unsigned __int128 x, const MersenneContext& ctx) {
  const std::uint64_t mask = ctx.modulus;  // low p bits
  while (x >> ctx.p) x = (x & mask) + (x >> ctx.p);
  std::uint64_t r = static_cast<std::uint64_t>(x);
  return r == mask ? 0 : r;
}

std::uint64_t mersenne_reduce(const mpz_class& x, const MersenneContext& ctx) {
  if (x < 0) throw std::out_of_range("mersenne_reduce: x must be non-negative");
  mpz_class acc = x;
  mpz_class low;
  while (mpz_sizeinbase(acc.get_mpz_t(), 2) > ctx.p && acc > ctx.modulus) {
    mpz_fdiv_r_2exp(low.get_mpz_t(), acc.get_mpz_t(), ctx.p);   // acc mod 2^p
    mpz_fdiv_q_2exp(acc.get_mpz_t(), acc.get_mpz_t(), ctx.p);   // acc / 2^p
    acc += low;
  }
  std::uint64_t r = mpz_get_ui(acc.get_mpz_t());
  return r >= ctx.modulus ? r - ctx.modulus : r;
}

std::uint64_t mod_add(std::uint64_t a, std::uint64_t b, const MersenneContext& ctx) {
  std::uint64_t s = a + b;  // a, b < M < 2^61, no overflow
  return s >= ctx.modulus ? s - ctx.modulus : s;
}

std::uint64_t mod_sub(std::uint64_t a, std::uint64_t b, const MersenneContext& ctx) {
  return a >= b ? a - b : a + ctx.modulus - b;
}

std::uint64_t mod_mul(std::uint64_t a, std::uint64_t b, const MersenneContext& ctx) {
  return mersenne_reduce(static_cast<unsigned __int128>(a) * b, ctx);
}

std::uint64_t mod_pow(std::uint64_t base, std::uint64_t exponent, const MersenneContext& ctx) {
  std::uint64_t result = 1 % ctx.modulus;
  std::uint64_t y = base >= ctx.modulus ? base % ctx.modulus : base;
  while (exponent != 0) {
    if (exponent & 1) result = mod_mul(result, y, ctx);
    y = mod_mul(y, y, ctx);
    exponent >>= 1;
  }
  return result;
}

InverseOutcome mod_inverse(std::uint64_t a, std::uint64_t m) {
  // Extended Euclid; coefficients stay below m, so int64 is safe for m < 2^63.
  std::int64_t t = 0, new_t = 1;
  std::uint64_t r = m, new_r = a % m;
  while (new_r != 0) {
    std::uint64_t q = r / new_r;
    std::int64_t tmp_t = t - static_cast<std::int64_t>(q) * new_t;
    t = new_t;
    new_t = tmp_t;
    std::uint64_t tmp_r = r - q * new_r;
    r = new_r;
    new_r = tmp_r;
  }
  InverseOutcome out;
  out.gcd = r;
  if (r == 1)
    out.value = t < 0 ? static_cast<std::uint64_t>(t + static_cast<std::int64_t>(m))
                      : static_cast<std::uint64_t>(t);
  return out;
}

std::int64_t signed_residue(std::uint64_t r, std::uint64_t modulus) {
  if (r > modulus / 2)
    return static_cast<std::int64_t>(r) - static_cast<std::int64_t>(modulus);
  return static_cast<std::int64_t>(r);
}

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Prime: return "Prime";
    case Verdict::Composite: return "Composite";
    default: return "Inconclusive";
  }
}

const char* to_string(TestVersion v) {
  switch (v) {
    case TestVersion::V1: return "V1";
    case TestVersion::V2: return "V2";
    case TestVersion::V3Forward: return "V3-forward";
    case TestVersion::V3Backward: return "V3-backward";
    case TestVersion::Criterion: return "Criterion";
    case TestVersion::LLClassic: return "LL-classic";
    default: return "E0-matrix";
  }
}

namespace {

// Step multiplier numerator shared by V2 and V3: moving from term k to
// term k+2 multiplies by −(n² − (2k)²) ≡ (2k)² − n² (mod M).
std::uint64_t forward_factor(std::uint64_t k, const MersenneContext& ctx) {
  std::uint64_t c = 2 * k;  // < 2^{p-1} < M
  return mod_sub(mod_mul(c, c, ctx), ctx.n_sq, ctx);
}

// Nontrivial divisor of M from a failed inverse of v (1 < gcd(v, M) < M is
// guaranteed for 0 < v < M).
std::optional<std::uint64_t> witness_from(std::uint64_t v, const MersenneContext& ctx) {
  std::uint64_t g = gcd_u64(v, ctx.modulus);
  if (g > 1 && g < ctx.modulus) return g;
  return std::nullopt;
}

struct StepOutcome {
  bool ok = true;
  std::uint64_t witness = 0;
};

// term ← term · ((2k)² − n²) / ((k+2)(k+1)).  k, k+1, k+2 < M, so a failed
// inverse yields gcd(k+2, M) or gcd(k+1, M), both strictly inside (1, M).
StepOutcome forward_step(std::uint64_t& term, std::uint64_t k, std::uint64_t numerator,
                         const MersenneContext& ctx) {
  InverseOutcome inv_a = mod_inverse(k + 2, ctx.modulus);
  if (inv_a.gcd != 1) return {false, inv_a.gcd};
  InverseOutcome inv_b = mod_inverse(k + 1, ctx.modulus);
  if (inv_b.gcd != 1) return {false, inv_b.gcd};
  term = mod_mul(term, numerator, ctx);
  term = mod_mul(term, inv_a.value, ctx);
  term = mod_mul(term, inv_b.value, ctx);
  return {};
}

TestReport run_forward_sum(const MersenneContext& ctx, TestVersion version,
                           std::uint64_t seed, bool criterion_numerators) {
  Stopwatch timer;
  TestReport report;
  report.p = ctx.p;
  report.version = version;

  const std::uint64_t K = std::uint64_t{1} << (ctx.p - 2);  // ⌊n/2⌋
  std::uint64_t inv4 = 0;
  if (criterion_numerators) inv4 = mod_inverse(4, ctx.modulus).value;  // M odd

  std::uint64_t sum = 0;
  std::uint64_t term = seed;
  for (std::uint64_t k = 0;; k += 2) {
    sum = mod_add(sum, term, ctx);
    if (k == K) break;
    std::uint64_t numerator;
    if (criterion_numerators) {
      std::uint64_t c = 2 * k;  // 4(⌊k/2⌋+1−1)·… = 2(k+2)−4
      numerator = mod_sub(mod_mul(c, c, ctx), inv4, ctx);
    } else {
      numerator = forward_factor(k, ctx);
    }
    StepOutcome step = forward_step(term, k, numerator, ctx);
    if (!step.ok) {
      report.verdict = Verdict::Composite;
      report.factor_witness = step.witness;
      report.residue = sum;
      report.elapsed_ms = timer.ms();
      return report;
    }
  }

  report.residue = sum;
  if (criterion_numerators)
    report.verdict = sum == 0 ? Verdict::Inconclusive : Verdict::Composite;
  else
    report.verdict = sum == 0 ? Verdict::Prime : Verdict::Composite;
  report.elapsed_ms = timer.ms();
  return report;
}

// φ_k(n) mod M for k = 0..⌊n/2⌋ by the double-index row recurrence over
// even rows.  Θ(n²/4) work and two retained rows; guarded at p ≤ 17.
std::vector<std::uint64_t> phi_row_mod(const MersenneContext& ctx) {
  if (ctx.p > 17)
    throw capability_error(
        "row recurrence refused: quadratic cost guard admits p <= 17 only");
  const std::uint64_t M = ctx.modulus;
  const std::uint64_t n = std::uint64_t{1} << (ctx.p - 1);

  auto boundary0 = [M](std::uint64_t m) -> std::uint64_t {
    switch (m % 8) {
      case 0: return 2;
      case 4: return M - 2;
      default: return 0;  // m ≡ ±2
    }
  };
  auto boundary1 = [M, &ctx](std::uint64_t m) -> std::uint64_t {
    std::uint64_t two_m = mersenne_reduce(static_cast<unsigned __int128>(2) * m, ctx);
    switch (m % 8) {
      case 2: return two_m;
      case 6: return two_m == 0 ? 0 : M - two_m;
      default: return 0;  // m ≡ 0, 4
    }
  };

  std::vector<std::uint64_t> back4 = {2};                    // row m = 0
  std::vector<std::uint64_t> back2 = {0, boundary1(2)};      // row m = 2
  if (n == 0) return back4;
  std::vector<std::uint64_t> row;
  for (std::uint64_t m = 4; m <= n; m += 2) {
    row.assign(m / 2 + 1, 0);
    row[0] = boundary0(m);
    row[1] = boundary1(m);
    for (std::uint64_t k = 2; k <= m / 2; ++k) {
      std::uint64_t carried = (k <= (m - 4) / 2) ? back4[k] : 0;
      unsigned __int128 v =
          static_cast<unsigned __int128>(4) * back2[k - 1] + (M - carried);
      row[k] = mersenne_reduce(v, ctx);
    }
    back4 = std::move(back2);
    back2 = row;
  }
  return back2;
}

}  // namespace

TestReport test_v2(const MersenneContext& ctx) {
  return run_forward_sum(ctx, TestVersion::V2, 1, false);
}

TestReport compositeness_criterion(const MersenneContext& ctx) {
  return run_forward_sum(ctx, TestVersion::Criterion, 1, true);
}

TestReport test_v3(const MersenneContext& ctx, Direction direction) {
  if (direction == Direction::Forward)
    return run_forward_sum(ctx, TestVersion::V3Forward, 2, false);

  Stopwatch timer;
  TestReport report;
  report.p = ctx.p;
  report.version = TestVersion::V3Backward;

  const std::uint64_t K = std::uint64_t{1} << (ctx.p - 2);
  std::uint64_t term = mod_pow(4, K, ctx);  // φ_{⌊n/2⌋} = 4^{⌊n/2⌋}
  std::uint64_t sum = 0;
  for (std::uint64_t k = K;; k -= 2) {
    sum = mod_add(sum, term, ctx);
    if (k == 0) break;
    // φ_{k-2} = φ_k · (−k(k−1)) / (n² − (2k−4)²)
    std::uint64_t c = 2 * k - 4;
    std::uint64_t denom = mod_sub(ctx.n_sq, mod_mul(c, c, ctx), ctx);
    std::optional<std::uint64_t> witness;
    std::uint64_t inv_value = 0;
    if (denom == 0) {
      // n² ≡ (2k−4)² splits M through n ± (2k−4); neither side is ≡ 0
      // within the iteration range, so one gcd is a proper divisor.
      witness = witness_from(mod_add(ctx.n_mod, c, ctx), ctx);
      if (!witness) witness = witness_from(mod_sub(ctx.n_mod, c, ctx), ctx);
    } else {
      InverseOutcome inv = mod_inverse(denom, ctx.modulus);
      if (inv.gcd != 1)
        witness = inv.gcd;
      else
        inv_value = inv.value;
    }
    if (witness) {
      report.verdict = Verdict::Composite;
      report.factor_witness = witness;
      report.residue = sum;
      report.elapsed_ms = timer.ms();
      return report;
    }
    std::uint64_t kk = mod_mul(k % ctx.modulus, (k - 1) % ctx.modulus, ctx);
    std::uint64_t neg_kk = kk == 0 ? 0 : ctx.modulus - kk;
    term = mod_mul(term, neg_kk, ctx);
    term = mod_mul(term, inv_value, ctx);
  }

  report.residue = sum;
  report.verdict = sum == 0 ? Verdict::Prime : Verdict::Composite;
  report.elapsed_ms = timer.ms();
  return report;
}

TestReport test_v1(const MersenneContext& ctx) {
  Stopwatch timer;
  TestReport report;
  report.p = ctx.p;
  report.version = TestVersion::V1;

  std::vector<std::uint64_t> row = phi_row_mod(ctx);  // throws past the guard
  std::uint64_t sum = 0;
  for (std::size_t k = 0; k < row.size(); k += 2) sum = mod_add(sum, row[k], ctx);

  report.residue = sum;
  report.verdict = sum == 0 ? Verdict::Prime : Verdict::Composite;
  report.elapsed_ms = timer.ms();
  return report;
}

TestReport ll_classic(unsigned p) {
  if (p > 61)
    throw capability_error("ll_classic: p > 61 exceeds the word-size engine");
  if (p < 3 || !is_small_prime(p))
    throw std::invalid_argument("ll_classic: p must be a prime >= 3");
  Stopwatch timer;
  MersenneContext ctx = raw_context(p);

  std::uint64_t s = 4 % ctx.modulus;
  for (unsigned i = 0; i + 2 < p; ++i)
    s = mod_sub(mod_mul(s, s, ctx), 2, ctx);

  TestReport report;
  report.p = p;
  report.version = TestVersion::LLClassic;
  report.residue = s;
  report.verdict = s == 0 ? Verdict::Prime : Verdict::Composite;
  report.elapsed_ms = timer.ms();
  return report;
}

TestReport e0_divisibility(const MersenneContext& ctx) {
  Stopwatch timer;
  mpz_class n = mpz_class(1) << (ctx.p - 1);
  mpz_class residue = lucas_value_mod(n, mpz_class(ctx.modulus));

  TestReport report;
  report.p = ctx.p;
  report.version = TestVersion::E0Matrix;
  report.residue = mpz_get_ui(residue.get_mpz_t());
  report.verdict = residue == 0 ? Verdict::Prime : Verdict::Composite;
  report.elapsed_ms = timer.ms();
  return report;
}

std::uint64_t last_term_congruence(const MersenneContext& ctx) {
  // 2^n with n = 2^{p-1}: square 2 exactly p−1 times.
  std::uint64_t r = 2;
  for (unsigned i = 0; i + 1 < ctx.p; ++i) r = mod_mul(r, r, ctx);
  if (r != 2)
    throw std::logic_error("last_term_congruence: 2^n mod (2^p − 1) is not 2");
  return r;
}

std::vector<std::uint64_t> partial_sum_trace(const MersenneContext& ctx) {
  const std::uint64_t K = std::uint64_t{1} << (ctx.p - 2);
  std::uint64_t seed = mod_pow(4, K, ctx);

  std::vector<std::uint64_t> trace;
  trace.reserve(static_cast<std::size_t>(K / 2) + 1);
  trace.push_back(seed);

  std::uint64_t acc = seed;
  std::uint64_t term = 2;  // φ_0
  bool ratio_failed = false;
  for (std::uint64_t k = 0; k <= K - 2; k += 2) {
    acc = mod_add(acc, term, ctx);
    trace.push_back(acc);
    if (k == K - 2) break;
    StepOutcome step = forward_step(term, k, forward_factor(k, ctx), ctx);
    if (!step.ok) {
      ratio_failed = true;
      break;
    }
  }
  if (!ratio_failed) return trace;

  // Composite modulus: the ratio chain loses a term to a failed inverse.
  // The row recurrence needs no inverses, so regenerate from it while the
  // quadratic guard allows.
  std::vector<std::uint64_t> row = phi_row_mod(ctx);
  trace.assign(1, seed);
  acc = seed;
  for (std::uint64_t k = 0; k <= K - 2; k += 2) {
    acc = mod_add(acc, row[static_cast<std::size_t>(k)], ctx);
    trace.push_back(acc);
  }
  return trace;
}

mpz_class proper_divisor_sum(const mpz_class& n) {
  if (n < 1) throw std::out_of_range("proper_divisor_sum: n must be >= 1");
  mpz_class sum = 0;
  mpz_class d = 1;
  for (; d * d <= n; ++d) {
    if (n % d == 0) {
      if (d < n) sum += d;
      mpz_class q = n / d;
      if (q != d && q < n) sum += q;
    }
  }
  return sum;
}

PerfectResult perfect_check(const mpz_class& n) {
  if (n < 1) throw std::out_of_range("perfect_check: n must be >= 1");
  PerfectResult result;
  result.n = n;
  if (mpz_odd_p(n.get_mpz_t())) {
    result.verdict = PerfectVerdict::UnknownOdd;
    return result;
  }

  // n = 2^{p-1}·q with q odd; perfect iff q = 2^p − 1 and q is prime.
  mp_bitcnt_t two_adic = mpz_scan1(n.get_mpz_t(), 0);
  unsigned p = static_cast<unsigned>(two_adic) + 1;
  mpz_class odd_part = n >> two_adic;
  if (p > 61)
    throw capability_error("perfect_check: 2-adic part exceeds the word-size engine");
  mpz_class mersenne = (mpz_class(1) << p) - 1;
  if (odd_part != mersenne) {
    result.verdict = PerfectVerdict::NotPerfect;
    return result;
  }

  result.exponent = p;
  result.mersenne_part = mersenne;
  if (!is_small_prime(p)) {
    // Composite exponent forces 2^p − 1 composite.
    result.mersenne_verdict = Verdict::Composite;
    result.verdict = PerfectVerdict::NotPerfect;
    return result;
  }

  Verdict verdict;
  if (p == 2)
    verdict = Verdict::Prime;  // M = 3; the s²−2 iteration starts at p = 3
  else if (p == 3)
    verdict = ll_classic(p).verdict;
  else
    verdict = test_v2(build_context(p)).verdict;

  result.mersenne_verdict = verdict;
  result.verdict = verdict == Verdict::Prime ? PerfectVerdict::Perfect
                                             : PerfectVerdict::NotPerfect;
  return result;
}

}  // namespace mlab
