#include "hhinv/specfun.hpp"

#include <cmath>

namespace hhinv::specfun {
namespace detail {
namespace {

// J_{k+1/2}(xi) = sqrt(2 xi / pi) j_k(xi) with the spherical chain started at
// j_{-1} = cos(xi)/xi, j_0 = sin(xi)/xi. Upward recurrence is stable while the
// order stays below the argument, which the caller guarantees.
double bessel_j_half(int k, double xi) {
  double jm = std::cos(xi) / xi;
  double j = std::sin(xi) / xi;
  if (k == -1) return std::sqrt(2.0 * xi / M_PI) * jm;
  for (int i = 0; i < k; ++i) {
    const double jn = (2.0 * i + 1.0) / xi * j - jm;
    jm = j;
    j = jn;
  }
  return std::sqrt(2.0 * xi / M_PI) * j;
}

}  // namespace

// 0F1(; c; x) for x < 0 with |x| large: 0F1(; c; -w) = Gamma(c) w^{(1-c)/2} J_{c-1}(2 sqrt w).
// The Taylor series is useless here (terms grow to ~e^{2 sqrt w} before decaying),
// so the value is taken from the oscillatory Bessel form.
double hyp0f1_bessel(double c, double x) {
  const double w = -x;
  const double xi = 2.0 * std::sqrt(w);
  const double nu = c - 1.0;
  const double nu_round = std::round(nu);
  const double half_round = std::round(nu - 0.5);
  double j;
  if (std::abs(nu - nu_round) <= 1e-12 && nu_round >= 0.0) {
    j = ::jn(static_cast<int>(nu_round), xi);
  } else if (std::abs(nu - 0.5 - half_round) <= 1e-12 && half_round >= -1.0 &&
             half_round <= 0.5 * xi) {
    j = bessel_j_half(static_cast<int>(half_round), xi);
  } else {
    throw std::domain_error("hyp0f1: unsupported c for large negative argument");
  }
  return std::tgamma(c) * std::pow(w, 0.5 * (1.0 - c)) * j;
}

std::vector<long double> phi_m_taylor_ld(int n, int m, int k_max) {
  if (n < 3) throw std::domain_error("phi_m_taylor: dimension must be at least 3");
  if (m < 0) throw std::domain_error("phi_m_taylor: m must be nonnegative");
  if (k_max < 0) throw std::domain_error("phi_m_taylor: k_max must be nonnegative");
  const long double A = 0.5L * n - 1.0L;
  const long double B = m + n - 2.0L;
  const long double C = m + 0.5L * n;
  std::vector<long double> b(static_cast<std::size_t>(k_max) + 1);
  b[0] = 1.0L;
  for (int j = 0; j < k_max; ++j)
    b[j + 1] = b[j] * (A + j) * (B + j) / ((C + j) * (j + 1.0L));
  const long double pre = pochhammer<long double>(n - 2.0L, m) *
                          pochhammer<long double>(1.0L, m) /
                          (pochhammer<long double>(0.5L * n, m) *
                           pochhammer<long double>(0.5L * n - 1.0L, m));
  std::vector<long double> a(static_cast<std::size_t>(k_max) + 1);
  for (int k = 0; k <= k_max; ++k) {
    long double acc = 0.0L;
    for (int j = 0; j <= k; ++j) acc += b[j] * b[k - j];
    a[k] = pre * acc;
  }
  return a;
}

}  // namespace detail

TaylorCoeffs phi_m_taylor(int n, int m, int k_max) {
  const std::vector<long double> a = detail::phi_m_taylor_ld(n, m, k_max);
  TaylorCoeffs out;
  out.dim = n;
  out.m = m;
  out.a.assign(a.begin(), a.end());
  return out;
}

}  // namespace hhinv::specfun
