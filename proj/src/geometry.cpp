#include "hhinv/geometry.hpp"

#include <cmath>
#include <stdexcept>

namespace hhinv::geometry {
namespace {

double dot(std::span<const double> x, std::span<const double> y) {
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
  return s;
}

std::complex<double> hermitian_dot(std::span<const std::complex<double>> z,
                                   std::span<const std::complex<double>> w) {
  std::complex<double> s = 0.0;
  for (std::size_t i = 0; i < z.size(); ++i) s += z[i] * std::conj(w[i]);
  return s;
}

}  // namespace

MoebiusMap::MoebiusMap(std::vector<double> center) : a_(std::move(center)) {
  if (a_.size() < 3) throw std::domain_error("MoebiusMap: dimension must be at least 3");
  a2_ = dot(a_, a_);
  if (!(a2_ < 1.0)) throw std::domain_error("MoebiusMap: center must lie inside the unit ball");
}

void MoebiusMap::apply(std::span<const double> x, std::span<double> out) const {
  const int n = dim();
  double x2 = 0.0, xa = 0.0;
  for (int i = 0; i < n; ++i) {
    x2 += x[static_cast<std::size_t>(i)] * x[static_cast<std::size_t>(i)];
    xa += x[static_cast<std::size_t>(i)] * a_[static_cast<std::size_t>(i)];
  }
  const double xma2 = x2 - 2.0 * xa + a2_;  // |x - a|^2
  const double den = 1.0 - 2.0 * xa + x2 * a2_;
  const double inv = 1.0 / den;
  const double c = 1.0 - a2_;
  for (int i = 0; i < n; ++i)
    out[static_cast<std::size_t>(i)] =
        (a_[static_cast<std::size_t>(i)] * xma2 +
         c * (a_[static_cast<std::size_t>(i)] - x[static_cast<std::size_t>(i)])) *
        inv;
}

std::vector<double> MoebiusMap::operator()(std::span<const double> x) const {
  if (x.size() != a_.size()) throw std::domain_error("MoebiusMap: point dimension mismatch");
  if (dot(x, x) > 1.0 + 1e-12)
    throw std::domain_error("MoebiusMap: point must lie in the closed unit ball");
  std::vector<double> out(a_.size());
  apply(x, out);
  return out;
}

double kernel_inner(const MoebiusMap& phi, std::span<const double> x, std::span<const double> y) {
  const std::size_t n = static_cast<std::size_t>(phi.dim());
  std::vector<double> px(n), py(n);
  phi.apply(x, px);
  phi.apply(y, py);
  return dot(px, py);
}

double lemma1_rhs(const MoebiusMap& phi, std::span<const double> x, std::span<const double> y) {
  const double a2 = phi.center_norm_sq();
  const double ax = dot(phi.center(), x);
  const double ay = dot(phi.center(), y);
  const double xy = dot(x, y);
  const double c = 1.0 - a2;
  return 1.0 - (1.0 - xy) * c * c / ((1.0 - 2.0 * ax + a2) * (1.0 - 2.0 * ay + a2));
}

std::complex<double> holo_kernel(std::span<const std::complex<double>> a,
                                 std::span<const std::complex<double>> zeta,
                                 std::span<const std::complex<double>> eta) {
  if (a.size() != zeta.size() || a.size() != eta.size() || a.empty())
    throw std::domain_error("holo_kernel: dimension mismatch");
  double a2 = 0.0;
  for (const auto& ai : a) a2 += std::norm(ai);
  if (!(a2 < 1.0)) throw std::domain_error("holo_kernel: center must lie inside the unit ball");
  const std::complex<double> num = (1.0 - a2) * (1.0 - hermitian_dot(zeta, eta));
  const std::complex<double> den =
      (1.0 - hermitian_dot(zeta, a)) * (1.0 - hermitian_dot(a, eta));
  return 1.0 - num / den;
}

}  // namespace hhinv::geometry
