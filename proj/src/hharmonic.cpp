#include "hhinv/hharmonic.hpp"

#include <cmath>
#include <string>

namespace hhinv::hharm {

double radial_Sm(int n, int m, double t, specfun::SeriesControl ctl) {
  if (n < 3) throw std::domain_error("radial_Sm: dimension must be at least 3");
  if (m < 0) throw std::domain_error("radial_Sm: m must be nonnegative");
  if (!(t >= 0.0) || !(t <= 1.0)) throw std::domain_error("radial_Sm: t must lie in [0, 1]");
  const double pre =
      specfun::pochhammer(n - 1.0, m) / specfun::pochhammer(0.5 * n, m);
  return pre * specfun::hyp2f1(static_cast<double>(m), 1.0 - 0.5 * n, m + 0.5 * n, t, ctl);
}

SolidHarmonic::SolidHarmonic(int n, int m_, std::vector<double> pole_)
    : dim(n), m(m_), pole(std::move(pole_)) {
  if (n < 3) throw std::domain_error("SolidHarmonic: dimension must be at least 3");
  if (m < 0) throw std::domain_error("SolidHarmonic: m must be nonnegative");
  if (pole.size() != static_cast<std::size_t>(n))
    throw std::domain_error("SolidHarmonic: pole dimension mismatch");
  double p2 = 0.0;
  for (double v : pole) p2 += v * v;
  if (std::abs(p2 - 1.0) > 1e-12)
    throw std::domain_error("SolidHarmonic: pole must be a unit vector");
}

double solid_eval(const SolidHarmonic& h, std::span<const double> x,
                  specfun::SeriesControl ctl) {
  if (x.size() != static_cast<std::size_t>(h.dim))
    throw std::domain_error("solid_eval: point dimension mismatch");
  double x2 = 0.0;
  for (double v : x) x2 += v * v;
  if (x2 > 1.0 + 1e-12) throw std::domain_error("solid_eval: point must lie in the closed ball");
  const zonal::ZonalEvaluator ev(h.dim, h.m);
  return radial_Sm(h.dim, h.m, std::min(x2, 1.0), ctl) * ev.eval(h.m, x, h.pole);
}

namespace detail {

std::vector<double> projection_amplifications(int n, int m_max, double r, double amp_cap) {
  std::vector<double> amp(static_cast<std::size_t>(m_max) + 1);
  for (int m = 0; m <= m_max; ++m) {
    const double scale = radial_Sm(n, m, r * r) * std::pow(r, m);
    const double a = 1.0 / scale;
    if (!(std::abs(a) <= amp_cap))
      throw conditioning_error(
          "peter_weyl_project: amplification " + std::to_string(a) + " at degree " +
          std::to_string(m) +
          " exceeds the cap; increase the radius or lower m_max");
    amp[static_cast<std::size_t>(m)] = a;
  }
  return amp;
}

}  // namespace detail

double component_norm_sq(const PeterWeylComponents& comps, const sphere::SphereQuadrature& q,
                         int m) {
  if (m < 0 || m > comps.m_max)
    throw std::domain_error("component_norm_sq: degree outside projected range");
  if (q.count() != comps.node_count || q.dim != comps.dim)
    throw std::domain_error("component_norm_sq: quadrature does not match the projection");
  const std::span<const double> c = comps.component(m);
  return par::blocked_sum(q.count(), [&](std::int64_t i) {
    const double v = c[static_cast<std::size_t>(i)];
    return q.weights[static_cast<std::size_t>(i)] * v * v;
  });
}

double component_eval(const PeterWeylComponents& comps, const sphere::SphereQuadrature& q, int m,
                      std::span<const double> unit_x) {
  if (m < 0 || m > comps.m_max)
    throw std::domain_error("component_eval: degree outside projected range");
  if (q.count() != comps.node_count || q.dim != comps.dim)
    throw std::domain_error("component_eval: quadrature does not match the projection");
  if (unit_x.size() != static_cast<std::size_t>(comps.dim))
    throw std::domain_error("component_eval: point dimension mismatch");
  const zonal::ZonalEvaluator ev(comps.dim, m);
  const std::span<const double> c = comps.component(m);
  return par::blocked_sum(q.count(), [&](std::int64_t j) {
    const auto yj = q.node(j);
    double s = 0.0;
    for (int d = 0; d < comps.dim; ++d)
      s += unit_x[static_cast<std::size_t>(d)] * yj[static_cast<std::size_t>(d)];
    return q.weights[static_cast<std::size_t>(j)] * c[static_cast<std::size_t>(j)] *
           ev.eval_unit(m, s);
  });
}

}  // namespace hhinv::hharm
