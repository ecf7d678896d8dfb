#include "mlab/oracle.hpp"

#include <stdexcept>

#include "mlab/psi.hpp"

namespace mlab {

void BivariatePoly::add_term(long a, long b, const mpz_class& c) {
  if (c == 0) return;
  auto key = std::make_pair(a, b);
  auto it = terms.find(key);
  if (it == terms.end()) {
    terms.emplace(key, c);
  } else {
    it->second += c;
    if (it->second == 0) terms.erase(it);
  }
}

const mpz_class* BivariatePoly::find(long a, long b) const {
  auto it = terms.find(std::make_pair(a, b));
  return it == terms.end() ? nullptr : &it->second;
}

bool BivariatePoly::is_symmetric() const {
  for (const auto& [key, c] : terms) {
    const mpz_class* mirror = find(key.second, key.first);
    if (mirror == nullptr || *mirror != c) return false;
  }
  return true;
}

bool BivariatePoly::is_homogeneous(long d) const {
  for (const auto& [key, c] : terms)
    if (key.first + key.second != d) return false;
  return true;
}

namespace {

// Exact division by (x+y).  Reduces against the x-leading term; the
// invariant is that the running maximum x-exponent strictly shrinks, so the
// loop terminates with the quotient once the remainder empties.
BivariatePoly divide_by_x_plus_y(BivariatePoly remainder) {
  BivariatePoly quotient;
  while (!remainder.is_zero()) {
    // map keys are ordered, so the last entry has the largest x-exponent.
    auto it = std::prev(remainder.terms.end());
    auto [a, b] = it->first;
    mpz_class c = it->second;
    if (a == 0)
      throw std::logic_error("expand_power_sum: division by (x+y) left a remainder");
    quotient.add_term(a - 1, b, c);
    remainder.add_term(a, b, -c);
    remainder.add_term(a - 1, b + 1, -c);
  }
  return quotient;
}

// (xy)^{h-k} (x²+y²)^k expanded by the binomial theorem.
BivariatePoly basis_element(long h, long k) {
  BivariatePoly poly;
  for (long i = 0; i <= k; ++i) {
    mpz_class binom;
    mpz_bin_uiui(binom.get_mpz_t(), static_cast<unsigned long>(k),
                 static_cast<unsigned long>(i));
    poly.add_term(2 * i + (h - k), 2 * (k - i) + (h - k), binom);
  }
  return poly;
}

}  // namespace

BivariatePoly expand_power_sum(long n) {
  if (n < 0) throw std::out_of_range("expand_power_sum: n must be non-negative");
  BivariatePoly poly;
  if (n == 0) {
    poly.add_term(0, 0, 2);
    return poly;
  }
  poly.add_term(n, 0, 1);
  poly.add_term(0, n, 1);
  if (n % 2 == 1) poly = divide_by_x_plus_y(std::move(poly));
  return poly;
}

std::vector<mpz_class> basis_decompose(const BivariatePoly& poly, long n) {
  if (n < 0) throw std::out_of_range("basis_decompose: n must be non-negative");
  long h = n / 2;
  if (!poly.is_homogeneous(2 * h))
    throw std::invalid_argument("basis_decompose: polynomial is not homogeneous of degree 2*floor(n/2)");

  std::vector<mpz_class> coords(static_cast<std::size_t>(h) + 1);
  BivariatePoly residual = poly;
  for (long k = h; k >= 0; --k) {
    // Leading monomial of basis element k is x^{h+k} y^{h-k}, unique per k.
    const mpz_class* c = residual.find(h + k, h - k);
    if (c == nullptr) continue;
    mpz_class coeff = *c;
    coords[static_cast<std::size_t>(k)] = coeff;
    BivariatePoly basis = basis_element(h, k);
    for (const auto& [key, bc] : basis.terms)
      residual.add_term(key.first, key.second, -coeff * bc);
  }
  if (!residual.is_zero())
    throw std::invalid_argument("basis_decompose: nonzero residual, input outside the spanned space");
  return coords;
}

EightLevelsReport verify_eight_levels(long n_max) {
  if (n_max < 0) throw std::out_of_range("verify_eight_levels: n_max must be >= 0");
  EightLevelsReport report;
  report.n_max = n_max;
  for (long n = 0; n <= n_max; ++n) {
    std::vector<mpz_class> coords = basis_decompose(expand_power_sum(n), n);
    bool row_ok = true;
    for (long k = 0; k <= n / 2; ++k) {
      mpz_class expected = psi_closed_form(n, k);
      if (coords[static_cast<std::size_t>(k)] != expected) {
        row_ok = false;
        if (!report.first_mismatch)
          report.first_mismatch =
              EightLevelsMismatch{n, k, coords[static_cast<std::size_t>(k)], expected};
      }
    }
    report.per_n.emplace_back(n, row_ok);
    if (!row_ok) report.all_match = false;
  }
  return report;
}

mpz_class lucas_value(unsigned long m) {
  mpz_class prev = 2;  // v_0
  if (m == 0) return prev;
  mpz_class cur = 2;  // v_1
  for (unsigned long i = 2; i <= m; ++i) {
    mpz_class next = 2 * (cur + prev);
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

namespace {

struct Mat2 {
  mpz_class a, b, c, d;  // [[a,b],[c,d]]
};

Mat2 mat_mul(const Mat2& x, const Mat2& y, const mpz_class& mod) {
  Mat2 r;
  r.a = (x.a * y.a + x.b * y.c) % mod;
  r.b = (x.a * y.b + x.b * y.d) % mod;
  r.c = (x.c * y.a + x.d * y.c) % mod;
  r.d = (x.c * y.b + x.d * y.d) % mod;
  return r;
}

}  // namespace

mpz_class lucas_value_mod(const mpz_class& m, const mpz_class& modulus) {
  if (m < 0) throw std::out_of_range("lucas_value_mod: m must be non-negative");
  if (modulus < 2) throw std::out_of_range("lucas_value_mod: modulus must be >= 2");

  // [v_{m+1}, v_m] = [[2,2],[1,0]]^m · [v_1, v_0], so v_m sits in the
  // bottom row of the power: v_m = 2·(pow.c + pow.d).
  Mat2 pow{1, 0, 0, 1};
  Mat2 base{2, 2, 1, 0};
  std::size_t bits = mpz_sizeinbase(m.get_mpz_t(), 2);
  if (m == 0) bits = 0;
  for (std::size_t i = bits; i-- > 0;) {
    pow = mat_mul(pow, pow, modulus);
    if (mpz_tstbit(m.get_mpz_t(), static_cast<mp_bitcnt_t>(i)))
      pow = mat_mul(pow, base, modulus);
  }
  mpz_class v = (2 * (pow.c + pow.d)) % modulus;
  return v;
}

}  // namespace mlab
