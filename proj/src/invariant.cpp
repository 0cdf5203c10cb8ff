#include "hhinv/invariant.hpp"

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <utility>

#include "hhinv/errors.hpp"
#include "hhinv/parallel.hpp"

namespace hhinv::invariant {

namespace {

// Shared integrand body for both prop7 quadrature routes: pushes
// w * <phi(x), phi(y)> * Z_m(<x,y>) onto acc[0..m_max].
struct KernelZonalAccum {
  const geometry::MoebiusMap& phi;
  const zonal::ZonalEvaluator& ev;
  int n;
  int m_max;

  void operator()(std::span<const double> x, std::span<const double> y, double w,
                  double* acc) const {
    std::array<double, sphere::kMaxDim> u{}, v{};
    phi.apply(x, std::span<double>(u.data(), static_cast<std::size_t>(n)));
    phi.apply(y, std::span<double>(v.data(), static_cast<std::size_t>(n)));
    double k = 0.0, s = 0.0;
    for (int i = 0; i < n; ++i) {
      k += u[static_cast<std::size_t>(i)] * v[static_cast<std::size_t>(i)];
      s += x[static_cast<std::size_t>(i)] * y[static_cast<std::size_t>(i)];
    }
    std::array<double, hharm::kMaxProjectionDegree + 1> z{};
    ev.eval_all_unit(s, std::span<double>(z.data(), static_cast<std::size_t>(m_max) + 1));
    const double wk = w * k;
    for (int m = 0; m <= m_max; ++m) acc[m] += wk * z[static_cast<std::size_t>(m)];
  }
};

void check_lhs_args(const geometry::MoebiusMap& phi, int rule_dim, int m_max,
                    std::span<const double> out) {
  if (phi.dim() != rule_dim)
    throw std::invalid_argument("prop7_lhs_all: map and rule dimensions differ");
  if (m_max < 0 || m_max > hharm::kMaxProjectionDegree)
    throw std::domain_error("prop7_lhs_all: degree outside supported range");
  if (std::cmp_less(out.size(), m_max + 1))
    throw std::invalid_argument("prop7_lhs_all: output span too small");
}

void check_finite(std::span<const double> out, int m_max) {
  for (int m = 0; m <= m_max; ++m)
    if (!std::isfinite(out[static_cast<std::size_t>(m)])) sphere::detail::throw_nonfinite(-1);
}

}  // namespace

CoefficientSequence invariant_reference(int n, int m_max) {
  if (n < 3) throw std::domain_error("invariant_reference: need n >= 3");
  if (m_max < 1) throw std::domain_error("invariant_reference: need m_max >= 1");
  CoefficientSequence seq;
  seq.dim = n;
  seq.c.assign(static_cast<std::size_t>(m_max) + 1, 0.0);
  long double fact = 1.0L;  // (m-1)!
  for (int m = 1; m <= m_max; ++m) {
    if (m >= 2) fact *= static_cast<long double>(m - 1);
    seq.c[static_cast<std::size_t>(m)] =
        static_cast<double>(specfun::pochhammer<long double>(n - 1.0L, m) / fact);
  }
  return seq;
}

double phi_m_eval(int n, int m, double x, specfun::SeriesControl ctl) {
  if (n < 3) throw std::domain_error("phi_m_eval: need n >= 3");
  if (m < -1) throw std::domain_error("phi_m_eval: need m >= -1");
  if (m == -1) return 0.0;
  if (!(x >= 0.0) || !(x < 1.0)) throw std::domain_error("phi_m_eval: need 0 <= x < 1");
  const double h = n / 2.0;
  const double pre = specfun::pochhammer(static_cast<double>(n - 2), m) *
                     specfun::pochhammer(1.0, m) /
                     (specfun::pochhammer(h, m) * specfun::pochhammer(h - 1.0, m));
  const double f = specfun::hyp2f1(h - 1.0, m + n - 2.0, m + h, x, ctl);
  return pre * std::pow(x, m) * f * f;
}

double prop7_rhs(int n, int m, double x) {
  if (n < 3) throw std::domain_error("prop7_rhs: need n >= 3");
  if (m < 0) throw std::domain_error("prop7_rhs: need m >= 0");
  if (!(x >= 0.0) || !(x < 1.0)) throw std::domain_error("prop7_rhs: need 0 <= x < 1");
  double bracket = phi_m_eval(n, m, x) -
                   (m + 1.0) / (2.0 * m + n) * phi_m_eval(n, m + 1, x);
  // The m = 0 instance has no lower term: Phi_{-1} = 0, and the coefficient is
  // never formed (it would be 0/0 at n = 4).
  if (m >= 1) bracket -= (m + n - 3.0) / (2.0 * m + n - 4.0) * phi_m_eval(n, m - 1, x);
  const double delta = (m == 0) ? 1.0 : 0.0;
  return delta - std::pow(1.0 - x, 2.0 * n - 4.0) * bracket;
}

void prop7_lhs_all(const geometry::MoebiusMap& phi, int m_max,
                   const sphere::SphereQuadrature& q, std::span<double> out) {
  check_lhs_args(phi, q.dim, m_max, out);
  const zonal::ZonalEvaluator ev(q.dim, m_max);
  sphere::integrate2_multi(q, m_max + 1, out.data(),
                           KernelZonalAccum{phi, ev, q.dim, m_max});
  check_finite(out, m_max);
}

void prop7_lhs_all(const geometry::MoebiusMap& phi, int m_max,
                   const sphere::PairQuadrature& pq, std::span<double> out) {
  check_lhs_args(phi, pq.dim, m_max, out);
  const zonal::ZonalEvaluator ev(pq.dim, m_max);
  sphere::integrate_pairs_multi(pq, phi.center(), m_max + 1, out.data(),
                                KernelZonalAccum{phi, ev, pq.dim, m_max});
  check_finite(out, m_max);
}

double F_value(const CoefficientSequence& seq, double abs_a) {
  if (seq.dim < 3) throw std::domain_error("F_value: sequence dimension must be >= 3");
  if (!(abs_a >= 0.0) || !(abs_a < 1.0)) throw std::domain_error("F_value: need 0 <= |a| < 1");
  const double x = abs_a * abs_a;
  double total = 0.0;
  for (int m = 0; m <= seq.m_max(); ++m) {
    const double cm = seq.c[static_cast<std::size_t>(m)];
    if (cm == 0.0) continue;
    total += cm * prop7_rhs(seq.dim, m, x);
  }
  return total;
}

double F_value_quadrature(const CoefficientSequence& seq, std::span<const double> a,
                          const sphere::SphereQuadrature& q) {
  if (seq.dim != q.dim)
    throw std::invalid_argument("F_value_quadrature: sequence and rule dimensions differ");
  const geometry::MoebiusMap phi(std::vector<double>(a.begin(), a.end()));
  const int mm = seq.m_max();
  std::vector<double> lhs(static_cast<std::size_t>(mm) + 1);
  prop7_lhs_all(phi, mm, q, lhs);
  double total = 0.0;
  for (int m = 0; m <= mm; ++m)
    total += seq.c[static_cast<std::size_t>(m)] * lhs[static_cast<std::size_t>(m)];
  return total;
}

double F_value_quadrature(const CoefficientSequence& seq, std::span<const double> a,
                          const sphere::PairQuadrature& q) {
  if (seq.dim != q.dim)
    throw std::invalid_argument("F_value_quadrature: sequence and rule dimensions differ");
  const geometry::MoebiusMap phi(std::vector<double>(a.begin(), a.end()));
  const int mm = seq.m_max();
  std::vector<double> lhs(static_cast<std::size_t>(mm) + 1);
  prop7_lhs_all(phi, mm, q, lhs);
  double total = 0.0;
  for (int m = 0; m <= mm; ++m)
    total += seq.c[static_cast<std::size_t>(m)] * lhs[static_cast<std::size_t>(m)];
  return total;
}

std::vector<double> recurrence_solve_d(int n, double d1, int K) {
  if (n < 3) throw std::domain_error("recurrence_solve_d: need n >= 3");
  if (K < 1) throw std::domain_error("recurrence_solve_d: need K >= 1");
  // table[m][j] = a_{m,j}, the j-th Taylor coefficient of Phi_m(x)/x^m.
  std::vector<std::vector<long double>> table(static_cast<std::size_t>(K));
  for (int m = 0; m < K; ++m)
    table[static_cast<std::size_t>(m)] = specfun::detail::phi_m_taylor_ld(n, m, K - 1 - m);

  std::vector<long double> d(static_cast<std::size_t>(K) + 1, 0.0L);
  d[1] = d1;
  long double lead_coef = 1.0L;  // (2n-4)_k / k!
  for (int k = 1; k <= K - 1; ++k) {
    lead_coef *= static_cast<long double>(2 * n - 4 + (k - 1)) / k;
    const std::size_t uk = static_cast<std::size_t>(k);
    long double rhs = lead_coef * d[1];
    rhs += table[uk][0] * static_cast<long double>(k) / (2 * k + n - 2) * d[uk];
    for (int m = 0; m < k; ++m) {
      const std::size_t um = static_cast<std::size_t>(m);
      const long double mix =
          static_cast<long double>(m + n - 2) / (2 * m + n - 2) * d[um + 1] -
          static_cast<long double>(m) / (2 * m + n - 2) * d[um];
      rhs -= table[um][static_cast<std::size_t>(k - m)] * mix;
    }
    const long double lead =
        table[uk][0] * static_cast<long double>(k + n - 2) / (2 * k + n - 2);
    d[uk + 1] = rhs / lead;
  }
  return std::vector<double>(d.begin(), d.end());
}

double remark_residual(int n, int K) {
  if (n < 3) throw std::domain_error("remark_residual: need n >= 3");
  if (K < 0) throw std::domain_error("remark_residual: need K >= 0");
  std::vector<std::vector<long double>> table(static_cast<std::size_t>(K) + 1);
  for (int m = 0; m <= K; ++m)
    table[static_cast<std::size_t>(m)] = specfun::detail::phi_m_taylor_ld(n, m, K - m);

  double worst = 0.0;
  long double lhs = 1.0L;  // (2n-4)_k / k!
  for (int k = 0; k <= K; ++k) {
    if (k > 0) lhs *= static_cast<long double>(2 * n - 4 + (k - 1)) / k;
    long double rhs = 0.0L;
    long double coef = 1.0L;  // (n-2)_m / m!
    for (int m = 0; m <= k; ++m) {
      if (m > 0) coef *= static_cast<long double>(n - 2 + (m - 1)) / m;
      rhs += coef * table[static_cast<std::size_t>(m)][static_cast<std::size_t>(k - m)];
    }
    worst = std::max(worst, static_cast<double>(std::fabs(lhs - rhs)));
  }
  return worst;
}

double semi_norm_sq(const hharm::PeterWeylComponents& comps, const sphere::SphereQuadrature& q,
                    const CoefficientSequence& seq) {
  if (seq.dim != comps.dim)
    throw std::invalid_argument("semi_norm_sq: sequence and component dimensions differ");
  if (seq.m_max() > comps.m_max)
    throw std::invalid_argument("semi_norm_sq: sequence degree exceeds projected degree");
  double total = 0.0;
  for (int m = 0; m <= seq.m_max(); ++m) {
    const double cm = seq.c[static_cast<std::size_t>(m)];
    if (cm == 0.0) continue;
    total += cm * hharm::component_norm_sq(comps, q, m);
  }
  return total;
}

std::vector<double> holo_reference(int n, double c1, int m_max) {
  if (n < 1) throw std::domain_error("holo_reference: need n >= 1");
  if (m_max < 1) throw std::domain_error("holo_reference: need m_max >= 1");
  std::vector<double> c(static_cast<std::size_t>(m_max) + 1, 0.0);
  long double coef = 1.0L;  // (n)_m / m!
  for (int m = 1; m <= m_max; ++m) {
    coef *= static_cast<long double>(n + m - 1) / m;
    c[static_cast<std::size_t>(m)] =
        static_cast<double>(static_cast<long double>(c1) / n * m * coef);
  }
  return c;
}

double holo_bracket(int n, int m, double x) {
  if (n < 1) throw std::domain_error("holo_bracket: need n >= 1");
  if (m < 0) throw std::domain_error("holo_bracket: need m >= 0");
  if (!(x >= 0.0) || !(x < 1.0)) throw std::domain_error("holo_bracket: need 0 <= x < 1");
  long double ratio = 1.0L;  // m! / (n)_m
  for (int j = 1; j <= m; ++j) ratio *= static_cast<long double>(j) / (n + j - 1);
  double term = static_cast<double>(ratio) * std::pow(x, m);
  if (m >= 1) {
    long double prev = ratio * (n + m - 1.0L) / m;  // (m-1)! / (n)_{m-1}
    term -= static_cast<double>(prev) * std::pow(x, m - 1);
  }
  const double delta = (m == 0) ? 1.0 : 0.0;
  return delta - (1.0 - x) * term;
}

double holo_F_closed(int n, std::span<const double> c, double abs_a) {
  if (!(abs_a >= 0.0) || !(abs_a < 1.0))
    throw std::domain_error("holo_F_closed: need 0 <= |a| < 1");
  const double x = abs_a * abs_a;
  double total = 0.0;
  for (std::size_t m = 0; m < c.size(); ++m) {
    if (c[m] == 0.0) continue;
    total += c[m] * holo_bracket(n, static_cast<int>(m), x);
  }
  return total;
}

double holo_c_recurrence_residual(int n, std::span<const double> c) {
  if (n < 1) throw std::domain_error("holo_c_recurrence_residual: need n >= 1");
  if (c.size() < 2)
    throw std::invalid_argument("holo_c_recurrence_residual: need at least c_0, c_1");
  const double target = c[0] - c[1];
  double worst = 0.0;
  long double ratio = 1.0L;  // m! / (n)_m
  for (std::size_t m = 0; m + 1 < c.size(); ++m) {
    if (m > 0) ratio *= static_cast<long double>(m) / (n + static_cast<long double>(m) - 1.0L);
    const double val = static_cast<double>(ratio * static_cast<long double>(c[m] - c[m + 1]));
    worst = std::max(worst, std::abs(target - val));
  }
  return worst;
}

void holo_lhs_all(int n, double abs_a, int m_max, const sphere::SphereQuadrature& q,
                  std::span<double> out) {
  if (n < 1) throw std::domain_error("holo_lhs_all: need n >= 1");
  if (q.dim != 2 * n)
    throw std::invalid_argument("holo_lhs_all: rule must live on the real 2n-sphere");
  if (m_max < 0 || m_max > hharm::kMaxProjectionDegree)
    throw std::domain_error("holo_lhs_all: degree outside supported range");
  if (std::cmp_less(out.size(), m_max + 1))
    throw std::invalid_argument("holo_lhs_all: output span too small");
  if (!(abs_a >= 0.0) || !(abs_a < 1.0)) throw std::domain_error("holo_lhs_all: need 0 <= |a| < 1");

  const std::int64_t count = q.count();
  std::vector<std::complex<double>> zn(static_cast<std::size_t>(count) * n);
  for (std::int64_t i = 0; i < count; ++i) {
    const std::span<const double> x = q.node(i);
    for (int j = 0; j < n; ++j)
      zn[static_cast<std::size_t>(i) * n + static_cast<std::size_t>(j)] = {
          x[static_cast<std::size_t>(2 * j)], x[static_cast<std::size_t>(2 * j + 1)]};
  }
  std::vector<std::complex<double>> a(static_cast<std::size_t>(n));
  a[0] = abs_a;

  par::blocked_sum_multi(count * count, m_max + 1, out.data(),
                         [&](std::int64_t idx, double* acc) {
    const std::int64_t i = idx / count, j = idx % count;
    const double w = q.weights[static_cast<std::size_t>(i)] *
                     q.weights[static_cast<std::size_t>(j)];
    const std::span<const std::complex<double>> zeta(
        zn.data() + static_cast<std::size_t>(i) * n, static_cast<std::size_t>(n));
    const std::span<const std::complex<double>> eta(
        zn.data() + static_cast<std::size_t>(j) * n, static_cast<std::size_t>(n));
    const std::complex<double> kern = geometry::holo_kernel(a, zeta, eta);
    std::complex<double> h = 0.0;  // <eta, zeta>
    for (int t = 0; t < n; ++t)
      h += eta[static_cast<std::size_t>(t)] * std::conj(zeta[static_cast<std::size_t>(t)]);
    std::complex<double> p = 1.0;
    for (int m = 0; m <= m_max; ++m) {
      acc[m] += w * (kern * p).real();
      p *= h;
    }
  });

  long double coef = 1.0L;  // (n)_m / m!
  for (int m = 0; m <= m_max; ++m) {
    if (m > 0) coef *= static_cast<long double>(n + m - 1) / m;
    const std::size_t um = static_cast<std::size_t>(m);
    out[um] = static_cast<double>(coef * static_cast<long double>(out[um]));
  }
  check_finite(out, m_max);
}

}  // namespace hhinv::invariant
