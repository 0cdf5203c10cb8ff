#pragma once

#include <cmath>
#include <span>
#include <vector>

#include "hhinv/geometry.hpp"
#include "hhinv/hharmonic.hpp"
#include "hhinv/specfun.hpp"
#include "hhinv/sphere.hpp"
#include "hhinv/zonal.hpp"

namespace hhinv::invariant {

// Weights c_m of the candidate invariant semi-norm sum_m c_m ||f_m||^2.
struct CoefficientSequence {
  int dim = 0;
  std::vector<double> c;

  int m_max() const { return static_cast<int>(c.size()) - 1; }
};

// The sequence the invariance argument singles out (up to scale):
// c_0 = 0, c_m = (n-1)_m / (m-1)! for m >= 1.
CoefficientSequence invariant_reference(int n, int m_max);

// Phi_m(x) = (n-2)_m m! / ((n/2)_m (n/2-1)_m) x^m 2F1(n/2-1, m+n-2; m+n/2; x)^2,
// with Phi_{-1} identically 0.
double phi_m_eval(int n, int m, double x, specfun::SeriesControl ctl = {});

// Closed form of the double integral of Z_m(x,y) <phi_a(x), phi_a(y)>:
// delta_{m,0} - (1-x)^{2n-4} [Phi_m - (m+1)/(2m+n) Phi_{m+1}
//                              - (m+n-3)/(2m+n-4) Phi_{m-1}] at x = |a|^2.
// At m = 0 the lower term is absent (Phi_{-1} = 0 kills it; the coefficient is
// never formed, which also covers the 0/0 at n = 4).
double prop7_rhs(int n, int m, double x);

// The same double integral evaluated by quadrature, driving the Moebius map
// pointwise. Tensor-product route over all node pairs of q:
void prop7_lhs_all(const geometry::MoebiusMap& phi, int m_max,
                   const sphere::SphereQuadrature& q, std::span<double> out);
// Axial pair-rule route (the integrand is invariant under rotations fixing a):
void prop7_lhs_all(const geometry::MoebiusMap& phi, int m_max,
                   const sphere::PairQuadrature& pq, std::span<double> out);

template <class Rule>
double prop7_residual(const geometry::MoebiusMap& phi, int m, const Rule& rule) {
  std::vector<double> lhs(static_cast<std::size_t>(m) + 1);
  prop7_lhs_all(phi, m, rule, lhs);
  double a2 = phi.center_norm_sq();
  return std::abs(lhs[static_cast<std::size_t>(m)] - prop7_rhs(phi.dim(), m, a2));
}

// F(a) = sum_m c_m integral-pair of Z_m against the Moebius kernel, through
// the closed form above. Constant in a exactly when c is (a multiple of) the
// reference sequence; F(0) = c_1 always.
double F_value(const CoefficientSequence& seq, double abs_a);

// Raw double-quadrature route for F (oracle path).
double F_value_quadrature(const CoefficientSequence& seq, std::span<const double> a,
                          const sphere::SphereQuadrature& q);
double F_value_quadrature(const CoefficientSequence& seq, std::span<const double> a,
                          const sphere::PairQuadrature& q);

// d_{k+1} solved from the Taylor-coefficient recurrence
//   a_{k,0} (k+n-2)/(2k+n-2) d_{k+1} = (2n-4)_k / k! d_1
//     + a_{k,0} k/(2k+n-2) d_k
//     - sum_{m<k} a_{m,k-m} [ (m+n-2)/(2m+n-2) d_{m+1} - m/(2m+n-2) d_m ],
// where a_{m,j} are the Taylor coefficients of Phi_m(x)/x^m.
// Returns d[0..K] with d[0] = 0 unused and d[1] = d1.
std::vector<double> recurrence_solve_d(int n, double d1, int K);

// Max over k <= K of the coefficient mismatch in
// (1-z)^{4-2n} = sum_m (n-2)_m / m! Phi_m(z): LHS coefficient (2n-4)_k / k!
// against the convolution of the Phi Taylor tables.
double remark_residual(int n, int K);

// sum_m c_m ||f_m||^2 over the projected components.
double semi_norm_sq(const hharm::PeterWeylComponents& comps, const sphere::SphereQuadrature& q,
                    const CoefficientSequence& seq);

// ---- holomorphic-ball analogue ----

// c_m = (c1/n) m (n)_m / m!; the unique solution of the Sec.-5 recurrence.
std::vector<double> holo_reference(int n, double c1, int m_max);

// delta_{m,0} - (1-x) ( m!/(n)_m x^m - [m>=1] (m-1)!/(n)_{m-1} x^{m-1} ).
double holo_bracket(int n, int m, double x);

// F(a) = sum_m c_m holo_bracket(n, m, |a|^2).
double holo_F_closed(int n, std::span<const double> c, double abs_a);

// Max over m < m_max of |(c_0 - c_1) - (m!/(n)_m)(c_m - c_{m+1})|.
double holo_c_recurrence_residual(int n, std::span<const double> c);

// Double quadrature of <phibar_a(zeta), phibar_a(eta)> cZ_m(eta, zeta) over
// S^{2n-1} x S^{2n-1} (through the kernel identity), all degrees at once.
// q must be a sphere rule of real dimension 2n.
void holo_lhs_all(int n, double abs_a, int m_max, const sphere::SphereQuadrature& q,
                  std::span<double> out);

}  // namespace hhinv::invariant
