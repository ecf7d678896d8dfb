#include "mlab/phi.hpp"

#include <stdexcept>

#include "mlab/psi.hpp"

namespace mlab {

namespace {

constexpr int kPhi0[8] = {2, 1, 0, -1, -2, -1, 0, 1};

// φ_1 by n mod 8: 0, n−1, 2n, n+1, 0, −(n−1), −2n, −(n+1).
mpz_class phi1_boundary(long n) {
  switch (n % 8) {
    case 1: return n - 1;
    case 2: return 2 * n;
    case 3: return n + 1;
    case 5: return -(n - 1);
    case 6: return -2 * n;
    case 7: return -(n + 1);
    default: return 0;
  }
}

mpz_class exact_quotient(const mpz_class& numerator, const mpz_class& denominator,
                         const char* what) {
  if (!mpz_divisible_p(numerator.get_mpz_t(), denominator.get_mpz_t()))
    throw std::logic_error(what);
  mpz_class q;
  mpz_divexact(q.get_mpz_t(), numerator.get_mpz_t(), denominator.get_mpz_t());
  return q;
}

mpz_class factorial(long k) {
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(k));
  return f;
}

mpz_class product_sq0(long n, long top) {
  mpz_class prod = 1;
  mpz_class n2 = mpz_class(n) * n;
  for (long lambda = 0; lambda <= top; ++lambda)
    prod *= n2 - mpz_class(4 * lambda) * (4 * lambda);
  return prod;
}

mpz_class product_sq2(long base, long top) {
  mpz_class prod = 1;
  mpz_class b2 = mpz_class(base) * base;
  for (long lambda = 1; lambda <= top; ++lambda)
    prod *= b2 - mpz_class(4 * lambda - 2) * (4 * lambda - 2);
  return prod;
}

mpz_class product_sq4(long base, long top) {
  mpz_class prod = 1;
  mpz_class b2 = mpz_class(base) * base;
  for (long lambda = 1; lambda <= top; ++lambda)
    prod *= b2 - mpz_class(4 * lambda) * (4 * lambda);
  return prod;
}

mpz_class pow2(long e) {
  mpz_class v;
  mpz_ui_pow_ui(v.get_mpz_t(), 2, static_cast<unsigned long>(e));
  return v;
}

}  // namespace

const mpz_class& PhiSequence::at(long k) const {
  if (k < 0 || static_cast<std::size_t>(k) >= values.size())
    throw std::out_of_range("PhiSequence::at: k outside stored row");
  return values[static_cast<std::size_t>(k)];
}

mpz_class phi_from_psi(long n, long k) {
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 4, static_cast<unsigned long>(k));
  return scale * psi_closed_form(n, k);
}

std::vector<PhiSequence> phi_row_recurrence(long m_max) {
  if (m_max < 0) throw std::out_of_range("phi_row_recurrence: m_max must be >= 0");
  std::vector<PhiSequence> rows(static_cast<std::size_t>(m_max) + 1);
  for (long m = 0; m <= m_max; ++m) {
    PhiSequence row{m, {}, PhiScheme::RowRecurrence};
    row.values.resize(static_cast<std::size_t>(m / 2) + 1);
    row.values[0] = kPhi0[m % 8];
    if (m / 2 >= 1) row.values[1] = phi1_boundary(m);
    for (long k = 2; k <= m / 2; ++k) {
      // φ_k(m) = 4·φ_{k-1}(m-2) − φ_k(m-4), entries beyond a row are zero.
      mpz_class v = 4 * rows[static_cast<std::size_t>(m - 2)].at(k - 1);
      if (k <= (m - 4) / 2) v -= rows[static_cast<std::size_t>(m - 4)].at(k);
      row.values[static_cast<std::size_t>(k)] = std::move(v);
    }
    rows[static_cast<std::size_t>(m)] = std::move(row);
  }
  return rows;
}

mpz_class phi_ratio_step(long n, long k, const mpz_class& phi_prev) {
  if ((n & 1) != 0)
    throw std::domain_error("phi_ratio_step: stated for even n only");
  if (k < 2 || k > n / 2)
    throw std::out_of_range("phi_ratio_step: k outside 2..floor(n/2)");
  if (psi_lane_vanishes(n, k) || psi_lane_vanishes(n, k - 2))
    throw std::domain_error("phi_ratio_step: identically-zero lane");

  mpz_class n2 = mpz_class(n) * n;
  mpz_class b = 2 * k - 4;
  mpz_class numerator = -(n2 - b * b) * phi_prev;
  return exact_quotient(numerator, mpz_class(k) * (k - 1),
                        "phi_ratio_step: non-integral quotient");
}

mpz_class phi_closed_form(long n, long k) {
  if (n < 0) throw std::out_of_range("phi_closed_form: n must be non-negative");
  if (k < 0 || k > n / 2)
    throw std::out_of_range("phi_closed_form: k outside 0..floor(n/2)");
  int r = static_cast<int>(n % 8);
  if (k == 0) return kPhi0[r];

  long hk = k / 2;
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
      int shift = (r == 3) ? static_cast<int>((k - 1) & 1) : static_cast<int>(k & 1);
      sign = ((hk + shift) % 2 == 0) ? 1 : -1;
      numerator = mpz_class(n + 1) * product_sq4(n + 1, (k - 1) / 2);
      if (((k - 1) & 1) != 0) numerator *= n + 1 - 2 * k;
      break;
    }
  }

  mpz_class value =
      exact_quotient(numerator, factorial(k), "phi_closed_form: non-integral quotient");
  return sign > 0 ? value : mpz_class(-value);
}

PhiHeadTail phi_head_tail(long n) {
  if (n < 16 || n % 8 != 0)
    throw std::domain_error("phi_head_tail: requires n ≡ 0 (mod 8), n >= 16");

  PhiHeadTail out;
  mpz_class n2 = mpz_class(n) * n;
  out.head[0] = 2;
  out.head[1] = -n2;
  out.head[2] = exact_quotient(n2 * (n2 - 16), 12, "phi_head_tail: head k=4");
  out.head[3] = exact_quotient(-n2 * (n2 - 16) * (n2 - 64), 360, "phi_head_tail: head k=6");
  out.head[4] =
      exact_quotient(n2 * (n2 - 16) * (n2 - 64) * (n2 - 144), 20160, "phi_head_tail: head k=8");

  // Tail entries carry powers 2^{n-shift}; for n = 16 the last shift
  // exceeds n, so evaluate as exact rationals and demand integrality.
  auto tail_value = [n](const mpz_class& scale, long shift, long div) {
    mpq_class q(scale);
    q /= div;
    if (n - shift >= 0)
      q *= mpq_class(pow2(n - shift));
    else
      q /= mpq_class(pow2(shift - n));
    q.canonicalize();
    if (q.get_den() != 1)
      throw std::logic_error("phi_head_tail: tail value is not an integer");
    return mpz_class(q.get_num());
  };

  mpz_class nz(n);
  out.tail[0] = tail_value(1, 0, 1);                                       // 2^n
  out.tail[1] = tail_value(-nz, 5, 1);                                     // −n·2^{n−5}
  out.tail[2] = tail_value(nz * (n - 6), 11, 1);                           // +n(n−6)·2^{n−11}
  out.tail[3] = tail_value(-nz * (n - 8) * (n - 10), 16, 3);               // −n(n−8)(n−10)/3·2^{n−16}
  out.tail[4] = tail_value(nz * (n - 10) * (n - 12) * (n - 14), 23, 3);    // +n(n−10)(n−12)(n−14)/3·2^{n−23}

  for (int i = 0; i < 5; ++i) {
    if (out.head[i] != phi_closed_form(n, 2 * i))
      throw std::logic_error("phi_head_tail: head disagrees with closed form");
    if (out.tail[i] != phi_closed_form(n, n / 2 - 2 * i))
      throw std::logic_error("phi_head_tail: tail disagrees with closed form");
  }
  return out;
}

}  // namespace mlab
