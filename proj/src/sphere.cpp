#include "hhinv/sphere.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "hhinv/specfun.hpp"

namespace hhinv::sphere {
namespace detail {

void throw_nonfinite(std::int64_t node) {
  if (node < 0)
    throw evaluation_error("integrand produced a non-finite value", node);
  throw evaluation_error("integrand produced a non-finite value at node " + std::to_string(node),
                         node);
}

double GaussianStream::next() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  const double u1 = static_cast<double>((eng_() >> 11) + 1) * 0x1.0p-53;
  const double u2 = static_cast<double>((eng_() >> 11) + 1) * 0x1.0p-53;
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double a = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(a);
  have_spare_ = true;
  return r * std::cos(a);
}

PairFrame make_pair_frame(int n, std::span<const double> axis) {
  if (axis.size() != static_cast<std::size_t>(n))
    throw std::domain_error("pair quadrature: axis dimension mismatch");
  PairFrame fr{};
  double norm2 = 0.0;
  for (int i = 0; i < n; ++i) norm2 += axis[static_cast<std::size_t>(i)] * axis[static_cast<std::size_t>(i)];
  if (norm2 == 0.0) {
    fr.b1[0] = 1.0;
  } else {
    const double inv = 1.0 / std::sqrt(norm2);
    for (int i = 0; i < n; ++i) fr.b1[static_cast<std::size_t>(i)] = axis[static_cast<std::size_t>(i)] * inv;
  }
  // complete with the two coordinate axes least aligned with b1 (deterministic)
  int p = 0, q = 1;
  for (int i = 1; i < n; ++i)
    if (std::abs(fr.b1[static_cast<std::size_t>(i)]) < std::abs(fr.b1[static_cast<std::size_t>(p)])) p = i;
  q = (p == 0) ? 1 : 0;
  for (int i = 0; i < n; ++i) {
    if (i == p) continue;
    if (std::abs(fr.b1[static_cast<std::size_t>(i)]) < std::abs(fr.b1[static_cast<std::size_t>(q)])) q = i;
  }
  auto project_out = [n](std::array<double, kMaxDim>& vec, const std::array<double, kMaxDim>& onto) {
    double dot = 0.0;
    for (int i = 0; i < n; ++i) dot += vec[static_cast<std::size_t>(i)] * onto[static_cast<std::size_t>(i)];
    for (int i = 0; i < n; ++i) vec[static_cast<std::size_t>(i)] -= dot * onto[static_cast<std::size_t>(i)];
  };
  auto normalize = [n](std::array<double, kMaxDim>& vec) {
    double s = 0.0;
    for (int i = 0; i < n; ++i) s += vec[static_cast<std::size_t>(i)] * vec[static_cast<std::size_t>(i)];
    const double inv = 1.0 / std::sqrt(s);
    for (int i = 0; i < n; ++i) vec[static_cast<std::size_t>(i)] *= inv;
  };
  fr.b2[static_cast<std::size_t>(p)] = 1.0;
  project_out(fr.b2, fr.b1);
  normalize(fr.b2);
  fr.b3[static_cast<std::size_t>(q)] = 1.0;
  project_out(fr.b3, fr.b1);
  project_out(fr.b3, fr.b2);
  normalize(fr.b3);
  return fr;
}

}  // namespace detail

SphereQuadrature build_quadrature(int n, int order, std::int64_t node_budget) {
  if (n < 3) throw std::domain_error("build_quadrature: dimension must be at least 3");
  if (n > kMaxDim) throw std::domain_error("build_quadrature: dimension exceeds kMaxDim");
  if (order < 1) throw std::domain_error("build_quadrature: order must be positive");
  const int azimuth = 2 * order;
  std::int64_t count = azimuth;
  for (int j = 1; j <= n - 2; ++j) {
    count *= order;
    if (count > node_budget)
      throw budget_error("build_quadrature: node count exceeds budget", count, node_budget);
  }
  if (count > node_budget)
    throw budget_error("build_quadrature: node count exceeds budget", count, node_budget);

  // polar angle j carries the weight sin^{n-1-j}, i.e. Jacobi exponent (n-2-j)/2
  std::vector<quad::Rule1D> polar;
  polar.reserve(static_cast<std::size_t>(n - 2));
  for (int j = 1; j <= n - 2; ++j) {
    const double lam = 0.5 * (n - 2 - j);
    quad::Rule1D r = quad::gauss_jacobi(order, lam, lam);
    double total = 0.0;
    for (double w : r.weights) total += w;
    for (double& w : r.weights) w /= total;
    polar.push_back(std::move(r));
  }

  SphereQuadrature q;
  q.dim = n;
  q.order = order;
  q.exact_degree = 2 * order - 1;
  q.nodes.resize(static_cast<std::size_t>(count) * static_cast<std::size_t>(n));
  q.weights.resize(static_cast<std::size_t>(count));

  std::vector<int> idx(static_cast<std::size_t>(n - 2), 0);
  const double dphi = 2.0 * std::numbers::pi / azimuth;
  std::int64_t at = 0;
  bool done = false;
  while (!done) {
    double wpolar = 1.0;
    for (int j = 0; j < n - 2; ++j)
      wpolar *= polar[static_cast<std::size_t>(j)].weights[static_cast<std::size_t>(idx[static_cast<std::size_t>(j)])];
    for (int k = 0; k < azimuth; ++k) {
      double* x = q.nodes.data() + at * n;
      double sines = 1.0;
      for (int j = 0; j < n - 2; ++j) {
        const double c = polar[static_cast<std::size_t>(j)].nodes[static_cast<std::size_t>(idx[static_cast<std::size_t>(j)])];
        x[j] = sines * c;
        sines *= std::sqrt(std::max(0.0, 1.0 - c * c));
      }
      const double phi = dphi * k;
      x[n - 2] = sines * std::cos(phi);
      x[n - 1] = sines * std::sin(phi);
      q.weights[static_cast<std::size_t>(at)] = wpolar / azimuth;
      ++at;
    }
    done = true;
    for (int j = n - 3; j >= 0; --j) {
      if (++idx[static_cast<std::size_t>(j)] < order) {
        done = false;
        break;
      }
      idx[static_cast<std::size_t>(j)] = 0;
    }
  }

  double total = 0.0;
  for (double w : q.weights) total += w;
  for (double& w : q.weights) w /= total;
  return q;
}

double monomial_moment(int n, std::span<const int> exponents) {
  if (n < 3) throw std::domain_error("monomial_moment: dimension must be at least 3");
  if (exponents.size() != static_cast<std::size_t>(n))
    throw std::domain_error("monomial_moment: exponent count must equal the dimension");
  int total_half = 0;
  double num = 1.0;
  for (int e : exponents) {
    if (e < 0) throw std::domain_error("monomial_moment: exponents must be nonnegative");
    if (e % 2 == 1) return 0.0;
    num *= specfun::pochhammer(0.5, e / 2);
    total_half += e / 2;
  }
  return num / specfun::pochhammer(0.5 * n, total_half);
}

PairQuadrature build_pair_quadrature(int n, int axis_order, int mutual_order,
                                     std::int64_t node_budget) {
  if (n < 3) throw std::domain_error("build_pair_quadrature: dimension must be at least 3");
  if (n > kMaxDim) throw std::domain_error("build_pair_quadrature: dimension exceeds kMaxDim");
  if (axis_order < 1 || mutual_order < 1)
    throw std::domain_error("build_pair_quadrature: orders must be positive");
  const std::int64_t count = static_cast<std::int64_t>(axis_order) * axis_order * mutual_order;
  if (count > node_budget)
    throw budget_error("build_pair_quadrature: node count exceeds budget", count, node_budget);
  auto normalized = [](quad::Rule1D r) {
    double total = 0.0;
    for (double w : r.weights) total += w;
    for (double& w : r.weights) w /= total;
    return r;
  };
  PairQuadrature pq;
  pq.dim = n;
  pq.axis_order = axis_order;
  pq.mutual_order = mutual_order;
  const double lam_axis = 0.5 * (n - 3);    // coordinate marginal on S^{n-1}
  const double lam_mutual = 0.5 * (n - 4);  // mutual cosine marginal on S^{n-2}
  pq.s = normalized(quad::gauss_jacobi(axis_order, lam_axis, lam_axis));
  pq.t = pq.s;
  pq.v = normalized(quad::gauss_jacobi(mutual_order, lam_mutual, lam_mutual));
  return pq;
}

}  // namespace hhinv::sphere
