#include "hhinv/zonal.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "hhinv/specfun.hpp"

namespace hhinv::zonal {
namespace {

double dot(std::span<const double> x, std::span<const double> y) {
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
  return s;
}

}  // namespace

ZonalEvaluator::ZonalEvaluator(int n, int m_max) : n_(n), m_max_(m_max) {
  if (n < 3) throw std::domain_error("ZonalEvaluator: dimension must be at least 3");
  if (m_max < 0) throw std::domain_error("ZonalEvaluator: m_max must be nonnegative");
  up_.resize(static_cast<std::size_t>(m_max) + 1);
  down_.resize(static_cast<std::size_t>(m_max) + 1);
  const double half_n = 0.5 * n;
  for (int m = 0; m <= m_max; ++m) {
    up_[static_cast<std::size_t>(m)] = (m + 1.0) / (m + half_n);
    down_[static_cast<std::size_t>(m)] =
        (m == 0) ? 0.0 : (m + n - 3.0) / (m + half_n - 2.0);
  }
}

void ZonalEvaluator::eval_all_unit(double s, std::span<double> out) const {
  if (out.size() < static_cast<std::size_t>(m_max_) + 1)
    throw std::domain_error("ZonalEvaluator: output span too small");
  out[0] = 1.0;
  if (m_max_ == 0) return;
  out[1] = n_ * s;
  for (int m = 1; m < m_max_; ++m)
    out[static_cast<std::size_t>(m) + 1] =
        (2.0 * s * out[static_cast<std::size_t>(m)] -
         down_[static_cast<std::size_t>(m)] * out[static_cast<std::size_t>(m) - 1]) /
        up_[static_cast<std::size_t>(m)];
}

double ZonalEvaluator::eval_unit(int m, double s) const {
  if (m < 0 || m > m_max_)
    throw std::domain_error("ZonalEvaluator: degree outside constructed range");
  double zm1 = 0.0, z = 1.0;
  for (int k = 0; k < m; ++k) {
    const double znext =
        (2.0 * s * z - down_[static_cast<std::size_t>(k)] * zm1) / up_[static_cast<std::size_t>(k)];
    zm1 = z;
    z = znext;
  }
  return z;
}

double ZonalEvaluator::eval(int m, std::span<const double> x, std::span<const double> y) const {
  if (x.size() != static_cast<std::size_t>(n_) || y.size() != static_cast<std::size_t>(n_))
    throw std::domain_error("ZonalEvaluator: point dimension mismatch");
  if (m < 0 || m > m_max_)
    throw std::domain_error("ZonalEvaluator: degree outside constructed range");
  const double nx = std::sqrt(dot(x, x));
  const double ny = std::sqrt(dot(y, y));
  if (nx == 0.0 || ny == 0.0) return m == 0 ? 1.0 : 0.0;
  const double s = std::clamp(dot(x, y) / (nx * ny), -1.0, 1.0);
  return std::pow(nx * ny, m) * eval_unit(m, s);
}

double zonal_generating_oracle(int n, int m, std::span<const double> x,
                               std::span<const double> y) {
  if (n < 3) throw std::domain_error("zonal_generating_oracle: dimension must be at least 3");
  if (m < 0) throw std::domain_error("zonal_generating_oracle: m must be nonnegative");
  if (x.size() != static_cast<std::size_t>(n) || y.size() != static_cast<std::size_t>(n))
    throw std::domain_error("zonal_generating_oracle: point dimension mismatch");
  const double sigma = dot(x, y);
  const double rho2 = dot(x, x) * dot(y, y);
  // u_k = [t^k] (1 - 2 sigma t + rho2 t^2)^{-n/2} by binomial double expansion
  auto series_coeff = [&](int k) {
    if (k < 0) return 0.0;
    double acc = 0.0;
    for (int i = 0; 2 * i <= k; ++i) {
      double term = specfun::pochhammer(0.5 * n, k - i);
      for (int j = 1; j <= k - 2 * i; ++j) term *= 2.0 * sigma / j;
      for (int j = 1; j <= i; ++j) term *= -rho2 / j;
      // split (k-i)! across the two binomial factors: term now carries
      // (n/2)_{k-i} (2 sigma)^{k-2i} (-rho2)^i / ((k-2i)! i!)
      acc += term;
    }
    return acc;
  };
  return series_coeff(m) - rho2 * series_coeff(m - 2);
}

double zonal_diag(int n, int m, double norm_u) {
  if (n < 3) throw std::domain_error("zonal_diag: dimension must be at least 3");
  if (m < 0) throw std::domain_error("zonal_diag: m must be nonnegative");
  if (norm_u < 0.0) throw std::domain_error("zonal_diag: |u| must be nonnegative");
  const double ratio = specfun::pochhammer(0.5 * n, m) * specfun::pochhammer(n - 2.0, m) /
                       (specfun::pochhammer(0.5 * n - 1.0, m) * specfun::pochhammer(1.0, m));
  return std::pow(norm_u, 2 * m) * ratio;
}

std::complex<double> complex_zonal(int n, int m, std::span<const std::complex<double>> z,
                                   std::span<const std::complex<double>> w) {
  if (n < 1) throw std::domain_error("complex_zonal: dimension must be at least 1");
  if (m < 0) throw std::domain_error("complex_zonal: m must be nonnegative");
  if (z.size() != static_cast<std::size_t>(n) || w.size() != static_cast<std::size_t>(n))
    throw std::domain_error("complex_zonal: point dimension mismatch");
  std::complex<double> zw = 0.0;
  for (int i = 0; i < n; ++i)
    zw += z[static_cast<std::size_t>(i)] * std::conj(w[static_cast<std::size_t>(i)]);
  const double coeff = specfun::pochhammer(static_cast<double>(n), m) / specfun::pochhammer(1.0, m);
  return coeff * std::pow(zw, m);
}

}  // namespace hhinv::zonal
