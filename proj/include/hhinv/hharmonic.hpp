#pragma once

#include <array>
#include <cmath>
#include <span>
#include <vector>

#include "hhinv/errors.hpp"
#include "hhinv/specfun.hpp"
#include "hhinv/sphere.hpp"
#include "hhinv/zonal.hpp"

namespace hhinv::hharm {

// Radial factor of the H-harmonic extension of a degree-m sphere harmonic:
// S_m(t) = (n-1)_m / (n/2)_m 2F1(m, 1-n/2; m+n/2; t), S_m(1) = 1.
double radial_Sm(int n, int m, double t, specfun::SeriesControl ctl = {});

// f(x) = S_m(|x|^2) Z_m(x, pole): the H-harmonic extension of Z_m(., pole).
struct SolidHarmonic {
  SolidHarmonic(int n, int m, std::vector<double> pole);  // pole must be a unit vector
  int dim;
  int m;
  std::vector<double> pole;
};

double solid_eval(const SolidHarmonic& h, std::span<const double> x,
                  specfun::SeriesControl ctl = {});

// Hyperbolic Laplacian by central differences:
// (1-|x|^2) [ (1-|x|^2) lap f + 2(n-2) <x, grad f> ], second-order in h.
// Requires |x| + 2h < 1 so the stencil stays inside the ball.
template <class F>
double hyperbolic_laplacian_fd(F&& f, std::span<const double> x, double h) {
  const int n = static_cast<int>(x.size());
  if (n < 3) throw std::domain_error("hyperbolic_laplacian_fd: dimension must be at least 3");
  if (!(h > 0.0)) throw std::domain_error("hyperbolic_laplacian_fd: h must be positive");
  double x2 = 0.0;
  for (int i = 0; i < n; ++i) x2 += x[static_cast<std::size_t>(i)] * x[static_cast<std::size_t>(i)];
  if (!(std::sqrt(x2) + 2.0 * h < 1.0))
    throw std::domain_error("hyperbolic_laplacian_fd: stencil leaves the unit ball");
  std::array<double, sphere::kMaxDim> p{};
  for (int i = 0; i < n; ++i) p[static_cast<std::size_t>(i)] = x[static_cast<std::size_t>(i)];
  const std::span<const double> pv(p.data(), static_cast<std::size_t>(n));
  const double f0 = f(pv);
  double lap = 0.0, radial = 0.0;
  for (int i = 0; i < n; ++i) {
    const double xi = p[static_cast<std::size_t>(i)];
    p[static_cast<std::size_t>(i)] = xi + h;
    const double fp = f(pv);
    p[static_cast<std::size_t>(i)] = xi - h;
    const double fm = f(pv);
    p[static_cast<std::size_t>(i)] = xi;
    lap += (fp - 2.0 * f0 + fm) / (h * h);
    radial += xi * (fp - fm) / (2.0 * h);
  }
  const double w = 1.0 - x2;
  return w * (w * lap + 2.0 * (n - 2) * radial);
}

// Boundary values of the degree components of an H-harmonic function,
// recovered from one interior sphere of radius r: the projection integral
// against Z_m at radius r divided by S_m(r^2) r^m. Component m holds values at
// the nodes of the quadrature that produced it.
struct PeterWeylComponents {
  int dim = 0;
  int m_max = 0;
  double radius = 0.0;
  std::int64_t node_count = 0;
  std::vector<double> values;  // (m_max+1) x node_count

  std::span<const double> component(int m) const {
    return {values.data() + static_cast<std::size_t>(m) * static_cast<std::size_t>(node_count),
            static_cast<std::size_t>(node_count)};
  }
};

inline constexpr int kMaxProjectionDegree = 63;

namespace detail {
std::vector<double> projection_amplifications(int n, int m_max, double r, double amp_cap);
}

// f is sampled on the sphere of radius r; each node of q then receives the
// m-th component boundary value via one pass over the node pairs. The
// amplification 1/(S_m(r^2) r^m) is checked against amp_cap up front.
template <class F>
PeterWeylComponents peter_weyl_project(F&& f, int m_max, double r, const sphere::SphereQuadrature& q,
                                       double amp_cap = 1e4) {
  const int n = q.dim;
  if (m_max < 0 || m_max > kMaxProjectionDegree)
    throw std::domain_error("peter_weyl_project: m_max outside supported range");
  if (!(r > 0.0) || !(r < 1.0))
    throw std::domain_error("peter_weyl_project: radius must lie in (0, 1)");
  const std::vector<double> amp = detail::projection_amplifications(n, m_max, r, amp_cap);

  const std::int64_t count = q.count();
  std::vector<double> fvals(static_cast<std::size_t>(count));
  for (std::int64_t j = 0; j < count; ++j) {
    std::array<double, sphere::kMaxDim> rx{};
    const auto node = q.node(j);
    for (int d = 0; d < n; ++d) rx[static_cast<std::size_t>(d)] = r * node[static_cast<std::size_t>(d)];
    const double v = f(std::span<const double>(rx.data(), static_cast<std::size_t>(n)));
    if (!std::isfinite(v)) sphere::detail::throw_nonfinite(j);
    fvals[static_cast<std::size_t>(j)] = v;
  }

  PeterWeylComponents out;
  out.dim = n;
  out.m_max = m_max;
  out.radius = r;
  out.node_count = count;
  out.values.resize(static_cast<std::size_t>(m_max + 1) * static_cast<std::size_t>(count));

  const zonal::ZonalEvaluator ev(n, m_max);
#ifdef _OPENMP
#pragma omp parallel for schedule(static) num_threads(par::thread_count())
#endif
  for (std::int64_t i = 0; i < count; ++i) {
    const auto zi = q.node(i);
    std::array<double, kMaxProjectionDegree + 1> zbuf{};
    std::array<double, kMaxProjectionDegree + 1> acc{};
    const std::span<double> zview(zbuf.data(), static_cast<std::size_t>(m_max + 1));
    for (std::int64_t j = 0; j < count; ++j) {
      const auto yj = q.node(j);
      double s = 0.0;
      for (int d = 0; d < n; ++d) s += zi[static_cast<std::size_t>(d)] * yj[static_cast<std::size_t>(d)];
      ev.eval_all_unit(s, zview);
      const double wf = q.weights[static_cast<std::size_t>(j)] * fvals[static_cast<std::size_t>(j)];
      for (int m = 0; m <= m_max; ++m) acc[static_cast<std::size_t>(m)] += wf * zbuf[static_cast<std::size_t>(m)];
    }
    for (int m = 0; m <= m_max; ++m)
      out.values[static_cast<std::size_t>(m) * static_cast<std::size_t>(count) +
                 static_cast<std::size_t>(i)] = acc[static_cast<std::size_t>(m)] * amp[static_cast<std::size_t>(m)];
  }
  return out;
}

// L2(sphere) norm squared of one component.
double component_norm_sq(const PeterWeylComponents& comps, const sphere::SphereQuadrature& q,
                         int m);

// Evaluate the m-th boundary component at an arbitrary unit vector through the
// reproducing integral against Z_m (exact while 2m stays within the rule's
// polynomial exactness).
double component_eval(const PeterWeylComponents& comps, const sphere::SphereQuadrature& q, int m,
                      std::span<const double> unit_x);

}  // namespace hhinv::hharm
