#pragma once

#include <cmath>
#include <concepts>
#include <vector>

#include "hhinv/errors.hpp"

namespace hhinv::specfun {

// Truncation control shared by every series evaluator: stop once the next term
// is below rel_tol of the running sum in magnitude and terms are decreasing.
struct SeriesControl {
  double rel_tol = 1e-15;
  int max_terms = 10000;

  void validate() const {
    if (!(rel_tol > 0.0) || !(rel_tol < 1.0))
      throw std::domain_error("SeriesControl: rel_tol must lie in (0, 1)");
    if (max_terms < 1) throw std::domain_error("SeriesControl: max_terms must be positive");
  }
};

namespace detail {

template <std::floating_point Real>
bool is_nonpositive_integer(Real t) {
  return t <= Real(0.5) && std::abs(t - std::round(t)) <= Real(1e-12) && std::round(t) <= Real(0);
}

// sign of Gamma(t) for non-pole t
inline double gamma_sign(double t) {
  if (t > 0.0) return 1.0;
  const double f = std::floor(t);
  return (static_cast<long long>(f) % 2 == 0) ? -1.0 : 1.0;
}

double hyp0f1_bessel(double c, double x);

}  // namespace detail

// Rising factorial (a)_m = a (a+1) ... (a+m-1), (a)_0 = 1.
template <std::floating_point Real>
Real pochhammer(Real a, int m) {
  if (m < 0) throw std::domain_error("pochhammer: m must be nonnegative");
  Real p = 1;
  for (int k = 0; k < m; ++k) p *= a + Real(k);
  return p;
}

// 0F1(; c; x). Direct series; for x below the cancellation threshold the value
// is recovered through the Bessel-J connection instead (see hyp0f1_bessel).
template <std::floating_point Real>
Real hyp0f1(Real c, Real x, SeriesControl ctl = {}) {
  ctl.validate();
  if (detail::is_nonpositive_integer(c))
    throw std::domain_error("hyp0f1: c must not be a nonpositive integer");
  if (x < Real(-40)) return Real(detail::hyp0f1_bessel(static_cast<double>(c), static_cast<double>(x)));
  Real sum = 1, term = 1;
  for (int k = 0; k < ctl.max_terms; ++k) {
    const Real next = term * x / ((c + Real(k)) * Real(k + 1));
    sum += next;
    if (std::abs(next) <= Real(ctl.rel_tol) * std::abs(sum) && std::abs(next) <= std::abs(term))
      return sum;
    term = next;
  }
  throw truncation_error("hyp0f1: series did not converge", static_cast<double>(term),
                         ctl.max_terms);
}

namespace detail {

template <std::floating_point Real>
Real hyp2f1_series(Real a, Real b, Real c, Real x, const SeriesControl& ctl) {
  Real sum = 1, term = 1;
  for (int k = 0; k < ctl.max_terms; ++k) {
    const Real next = term * (a + Real(k)) * (b + Real(k)) * x / ((c + Real(k)) * Real(k + 1));
    sum += next;
    if (std::abs(next) <= Real(ctl.rel_tol) * std::abs(sum) && std::abs(next) <= std::abs(term))
      return sum;
    term = next;
  }
  throw truncation_error("hyp2f1: series did not converge", static_cast<double>(term),
                         ctl.max_terms);
}

}  // namespace detail

// 2F1(a, b; c; x) on |x| < 1, terminating cases for any x, and x = 1 when
// c-a-b > 0 (Gauss summation). For 0.5 < x < 1 with c-a-b > 0 the Euler
// transform is applied before summing.
template <std::floating_point Real>
Real hyp2f1(Real a, Real b, Real c, Real x, SeriesControl ctl = {}) {
  ctl.validate();
  if (detail::is_nonpositive_integer(c))
    throw std::domain_error("hyp2f1: c must not be a nonpositive integer");
  const bool terminating = detail::is_nonpositive_integer(a) || detail::is_nonpositive_integer(b);
  if (terminating) return detail::hyp2f1_series(a, b, c, x, ctl);
  const Real s = c - a - b;
  if (x == Real(1)) {
    if (!(s > Real(0))) throw std::domain_error("hyp2f1: x = 1 requires c - a - b > 0");
    const double cd = static_cast<double>(c), sd = static_cast<double>(s);
    const double cad = static_cast<double>(c - a), cbd = static_cast<double>(c - b);
    const double lg = std::lgamma(cd) + std::lgamma(sd) - std::lgamma(cad) - std::lgamma(cbd);
    const double sign = detail::gamma_sign(cd) * detail::gamma_sign(sd) *
                        detail::gamma_sign(cad) * detail::gamma_sign(cbd);
    return Real(sign * std::exp(lg));
  }
  if (!(std::abs(x) < Real(1)))
    throw std::domain_error("hyp2f1: series requires |x| < 1 (or x = 1 with c - a - b > 0)");
  if (x > Real(0.5) && s > Real(0))
    return std::pow(Real(1) - x, s) * detail::hyp2f1_series(c - a, c - b, c, x, ctl);
  return detail::hyp2f1_series(a, b, c, x, ctl);
}

// Taylor coefficients a_{m,k} of Phi_m(x) / x^m for k = 0..k_max:
// Phi_m(x) = (n-2)_m m! / ((n/2)_m (n/2-1)_m) x^m 2F1(n/2-1, m+n-2; m+n/2; x)^2,
// so a_{m,k} is the prefactor times the Cauchy square of the 2F1 coefficients.
struct TaylorCoeffs {
  int dim = 0;
  int m = 0;
  std::vector<double> a;
};

TaylorCoeffs phi_m_taylor(int n, int m, int k_max);

namespace detail {
// extended-precision variant used by the coefficient recurrences
std::vector<long double> phi_m_taylor_ld(int n, int m, int k_max);
}  // namespace detail

}  // namespace hhinv::specfun
