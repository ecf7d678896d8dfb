#include "mlab/psi.hpp"

#include <stdexcept>

namespace mlab {

namespace {

// Ψ_0 by n mod 8: +2, +1, 0, −1, −2, −1, 0, +1.
constexpr int kPsi0[8] = {2, 1, 0, -1, -2, -1, 0, 1};

// Sign table, rows n mod 8, columns k mod 8.  Three like signs, a zero,
// three opposite signs, a zero — phase shifted per row.
constexpr int kSigns[8][8] = {
    {+1, 0, -1, 0, +1, 0, -1, 0},    // n ≡ 0
    {+1, +1, -1, -1, +1, +1, -1, -1},// n ≡ 1
    {0, +1, 0, -1, 0, +1, 0, -1},    // n ≡ 2
    {-1, +1, +1, -1, -1, +1, +1, -1},// n ≡ 3
    {-1, 0, +1, 0, -1, 0, +1, 0},    // n ≡ 4
    {-1, -1, +1, +1, -1, -1, +1, +1},// n ≡ 5
    {0, -1, 0, +1, 0, -1, 0, +1},    // n ≡ 6
    {+1, -1, -1, +1, +1, -1, -1, +1},// n ≡ 7
};

mpz_class pow4_factorial(long k) {
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(k));
  mpz_class p4;
  mpz_ui_pow_ui(p4.get_mpz_t(), 4, static_cast<unsigned long>(k));
  return f * p4;
}

// ∏_{λ=0}^{top}(n² − (4λ)²); empty when top < 0.
mpz_class product_sq0(long n, long top) {
  mpz_class prod = 1;
  mpz_class n2 = mpz_class(n) * n;
  for (long lambda = 0; lambda <= top; ++lambda)
    prod *= n2 - mpz_class(4 * lambda) * (4 * lambda);
  return prod;
}

// ∏_{λ=1}^{top}(base² − (4λ−2)²); empty when top < 1.
mpz_class product_sq2(long base, long top) {
  mpz_class prod = 1;
  mpz_class b2 = mpz_class(base) * base;
  for (long lambda = 1; lambda <= top; ++lambda)
    prod *= b2 - mpz_class(4 * lambda - 2) * (4 * lambda - 2);
  return prod;
}

// ∏_{λ=1}^{top}(base² − (4λ)²); empty when top < 1.
mpz_class product_sq4(long base, long top) {
  mpz_class prod = 1;
  mpz_class b2 = mpz_class(base) * base;
  for (long lambda = 1; lambda <= top; ++lambda)
    prod *= b2 - mpz_class(4 * lambda) * (4 * lambda);
  return prod;
}

mpz_class exact_quotient(const mpz_class& numerator, const mpz_class& denominator,
                         const char* what) {
  if (!mpz_divisible_p(numerator.get_mpz_t(), denominator.get_mpz_t()))
    throw std::logic_error(what);
  mpz_class q;
  mpz_divexact(q.get_mpz_t(), numerator.get_mpz_t(), denominator.get_mpz_t());
  return q;
}

void check_range(long n, long k, const char* fn) {
  if (n < 0) throw std::out_of_range(std::string(fn) + ": n must be non-negative");
  if (k < 0 || k > n / 2)
    throw std::out_of_range(std::string(fn) + ": k outside 0..floor(n/2)");
}

}  // namespace

ResidueClass8 ResidueClass8::of(long n) {
  long r = n % 8;
  if (r < 0) r += 8;
  return ResidueClass8{static_cast<int>(r)};
}

const mpz_class& PsiTable::at(long k) const {
  if (k < 0 || static_cast<std::size_t>(k) >= coefficients.size())
    throw std::out_of_range("PsiTable::at: k outside stored row");
  return coefficients[static_cast<std::size_t>(k)];
}

bool psi_lane_vanishes(long n, long k) {
  int r = ResidueClass8::of(n).value;
  if (r == 0 || r == 4) return (k & 1) != 0;
  if (r == 2 || r == 6) return (k & 1) == 0;
  return false;
}

mpz_class psi_closed_form(long n, long k) {
  check_range(n, k, "psi_closed_form");
  int r = ResidueClass8::of(n).value;
  if (k == 0) return kPsi0[r];

  long hk = k / 2;              // ⌊k/2⌋
  bool k_odd = (k & 1) != 0;
  int sign;
  mpz_class numerator;

  switch (r) {
    case 0:
    case 4: {
      if (k_odd) return 0;
      sign = (hk % 2 == 0) ? 1 : -1;
      if (r == 4) sign = -sign;
      numerator = 2 * product_sq0(n, hk - 1);
      break;
    }
    case 2:
    case 6: {
      if (!k_odd) return 0;
      sign = (hk % 2 == 0) ? 1 : -1;
      if (r == 6) sign = -sign;
      numerator = 2 * mpz_class(n) * product_sq2(n, hk);
      break;
    }
    case 1:
    case 5: {
      sign = (hk % 2 == 0) ? 1 : -1;
      if (r == 5) sign = -sign;
      numerator = product_sq2(n + 1, hk);
      if (k_odd) numerator *= n + 1 - 2 * k;
      break;
    }
    default: {  // r == 3 or 7
      int shift = (r == 3) ? static_cast<int>((k - 1) & 1)  // δ(k−1)
                           : static_cast<int>(k & 1);       // δ(k)
      sign = ((hk + shift) % 2 == 0) ? 1 : -1;
      numerator = mpz_class(n + 1) * product_sq4(n + 1, (k - 1) / 2);
      if (((k - 1) & 1) != 0) numerator *= n + 1 - 2 * k;
      break;
    }
  }

  mpz_class value = exact_quotient(numerator, pow4_factorial(k),
                                   "psi_closed_form: non-integral quotient");
  return sign > 0 ? value : mpz_class(-value);
}

mpz_class psi_odd_from_even(long n, long k, const PsiTable& even_row) {
  if (n < 1 || (n & 1) == 0)
    throw std::domain_error("psi_odd_from_even: n must be odd and positive");
  if (k < 0 || k > n / 2)
    throw std::out_of_range("psi_odd_from_even: k outside 0..floor(n/2)");
  if (even_row.n != n + 1)
    throw std::invalid_argument("psi_odd_from_even: row must be for n+1");

  // Ψ_k(n)·(n+1) = 2(k+1)·Ψ_{k+1}(n+1) + (⌊(n+1)/2⌋ − k)·Ψ_k(n+1)
  mpz_class numerator = 2 * mpz_class(k + 1) * even_row.at(k + 1) +
                        mpz_class((n + 1) / 2 - k) * even_row.at(k);
  return exact_quotient(numerator, mpz_class(n + 1),
                        "psi_odd_from_even: non-integral combination");
}

namespace {

// Even rows 0..n_max_even by the linear recurrence; index m/2.
std::vector<PsiTable> even_rows_by_recurrence(long n_max_even) {
  std::vector<PsiTable> rows;
  rows.push_back({0, {mpz_class(2)}});
  if (n_max_even >= 2) rows.push_back({2, {mpz_class(0), mpz_class(1)}});
  if (n_max_even >= 4) rows.push_back({4, {mpz_class(-2), mpz_class(0), mpz_class(1)}});
  if (n_max_even >= 6)
    rows.push_back({6, {mpz_class(0), mpz_class(-3), mpz_class(0), mpz_class(1)}});
  for (long m = 8; m <= n_max_even; m += 2) {
    const PsiTable& back2 = rows[static_cast<std::size_t>((m - 2) / 2)];
    const PsiTable& back4 = rows[static_cast<std::size_t>((m - 4) / 2)];
    PsiTable row{m, {}};
    row.coefficients.reserve(static_cast<std::size_t>(m / 2 + 1));
    for (long k = 0; k <= m / 2; ++k) {
      mpz_class v = 0;
      if (k >= 1) v = back2.at(k - 1);
      if (k <= (m - 4) / 2) v -= back4.at(k);
      row.coefficients.push_back(v);
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

std::vector<PsiTable> psi_row_recurrence(long n_max) {
  if (n_max < 0) throw std::out_of_range("psi_row_recurrence: n_max must be >= 0");
  // Odd row n needs even row n+1.
  long even_top = (n_max % 2 == 0) ? n_max : n_max + 1;
  if (n_max >= 1 && even_top < 2) even_top = 2;
  std::vector<PsiTable> evens = even_rows_by_recurrence(even_top);

  std::vector<PsiTable> out(static_cast<std::size_t>(n_max) + 1);
  for (long n = 0; n <= n_max; ++n) {
    if (n % 2 == 0) {
      out[static_cast<std::size_t>(n)] = evens[static_cast<std::size_t>(n / 2)];
    } else {
      const PsiTable& above = evens[static_cast<std::size_t>((n + 1) / 2)];
      PsiTable row{n, {}};
      row.coefficients.reserve(static_cast<std::size_t>(n / 2 + 1));
      for (long k = 0; k <= n / 2; ++k)
        row.coefficients.push_back(psi_odd_from_even(n, k, above));
      out[static_cast<std::size_t>(n)] = std::move(row);
    }
  }
  return out;
}

mpz_class psi_odd_from_even(long n, long k) {
  if (n < 1 || (n & 1) == 0)
    throw std::domain_error("psi_odd_from_even: n must be odd and positive");
  std::vector<PsiTable> evens = even_rows_by_recurrence(n + 1);
  return psi_odd_from_even(n, k, evens.back());
}

mpz_class psi_ratio_step(long n, long k, const mpz_class& psi_prev) {
  if (k < 2 || k > n / 2)
    throw std::out_of_range("psi_ratio_step: k outside 2..floor(n/2)");
  if (psi_lane_vanishes(n, k) || psi_lane_vanishes(n, k - 2))
    throw std::domain_error("psi_ratio_step: identically-zero lane");

  long dn = n & 1;          // δ(n)
  long dn1 = (n - 1) & 1;   // δ(n−1)
  int flip = ((n / 2 + k) % 2 == 0) ? 1 : -1;
  mpz_class a = n + flip * dn;
  mpz_class b = 2 * k - 2 - 2 * dn1;
  mpz_class numerator = -(a * a - b * b) * psi_prev;
  mpz_class denominator = 16 * mpz_class(k) * (k - 1);
  return exact_quotient(numerator, denominator,
                        "psi_ratio_step: non-integral quotient");
}

int psi_sign(long n, long k) {
  if (n < 0 || k < 0) throw std::out_of_range("psi_sign: indices must be non-negative");
  return kSigns[n % 8][k % 8];
}

std::vector<long> numerator_factor_chain(long n, long k) {
  if (n < 1 || (n & 1) == 0)
    throw std::domain_error("numerator_factor_chain: defined for odd n only");
  if (k < 1 || k > n / 2)
    throw std::out_of_range("numerator_factor_chain: k outside 1..floor(n/2)");

  std::vector<long> offsets;
  offsets.reserve(static_cast<std::size_t>(k));
  long hk = k / 2;
  if (n % 4 == 1) {
    // Center n−1; pairs (n−1−4(λ−1))(n+3+4(λ−1)), odd k adds the next left item.
    for (long lambda = 1; lambda <= hk; ++lambda) {
      offsets.push_back(3 - 4 * lambda);  // n+3−4λ
      offsets.push_back(-1 + 4 * lambda); // n−1+4λ
    }
    if (k & 1) offsets.push_back(-1 - 4 * hk);  // n+1−2k
  } else {
    // Center n+1 always present; pairs around it, even k adds the next left.
    offsets.push_back(1);
    for (long lambda = 1; lambda <= (k - 1) / 2; ++lambda) {
      offsets.push_back(1 - 4 * lambda);
      offsets.push_back(1 + 4 * lambda);
    }
    if ((k & 1) == 0) offsets.push_back(1 - 2 * k);  // n+1−2k
  }
  std::sort(offsets.begin(), offsets.end());
  return offsets;
}

}  // namespace mlab
