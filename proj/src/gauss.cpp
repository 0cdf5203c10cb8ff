#include "hhinv/gauss.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>

namespace hhinv::quad {
namespace {

// Golub-Welsch: nodes are the eigenvalues of the symmetric tridiagonal matrix
// built from the three-term recurrence, weights are mu0 times the squared
// first components of the normalized eigenvectors.
Rule1D golub_welsch(const std::vector<double>& diag, const std::vector<double>& offdiag,
                    double mu0) {
  const int n = static_cast<int>(diag.size());
  Eigen::MatrixXd T = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) T(i, i) = diag[static_cast<std::size_t>(i)];
  for (int i = 0; i + 1 < n; ++i) {
    T(i, i + 1) = offdiag[static_cast<std::size_t>(i)];
    T(i + 1, i) = offdiag[static_cast<std::size_t>(i)];
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(T);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("golub_welsch: eigensolver failed to converge");
  Rule1D rule;
  rule.nodes.resize(static_cast<std::size_t>(n));
  rule.weights.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    rule.nodes[static_cast<std::size_t>(i)] = es.eigenvalues()(i);
    const double v0 = es.eigenvectors()(0, i);
    rule.weights[static_cast<std::size_t>(i)] = mu0 * v0 * v0;
  }
  return rule;
}

// L_N^(alpha) and L_{N-1}^(alpha) at t through the ascending three-term
// recurrence, in extended precision so products of the two stay representable
// well past order 64.
struct LaguerrePair {
  long double pN = 0.0L;
  long double pNm1 = 0.0L;
};

LaguerrePair laguerre_pair(int order, double alpha, long double t) {
  long double pk = 1.0L, pkm1 = 0.0L;
  for (int k = 0; k < order; ++k) {
    const long double pnext =
        ((2.0L * k + 1.0L + alpha - t) * pk - (k + alpha) * pkm1) / (k + 1.0L);
    pkm1 = pk;
    pk = pnext;
  }
  return {pk, pkm1};
}

}  // namespace

Rule1D gauss_jacobi(int order, double alpha, double beta) {
  if (order < 1) throw std::domain_error("gauss_jacobi: order must be positive");
  if (!(alpha > -1.0) || !(beta > -1.0))
    throw std::domain_error("gauss_jacobi: alpha and beta must exceed -1");
  std::vector<double> diag(static_cast<std::size_t>(order));
  std::vector<double> off(static_cast<std::size_t>(order > 0 ? order - 1 : 0));
  const double ab = alpha + beta;
  diag[0] = (beta - alpha) / (ab + 2.0);
  for (int k = 1; k < order; ++k) {
    const double denom = (2.0 * k + ab) * (2.0 * k + ab + 2.0);
    diag[static_cast<std::size_t>(k)] = (beta * beta - alpha * alpha) / denom;
  }
  if (order > 1) {
    off[0] = std::sqrt(4.0 * (1.0 + alpha) * (1.0 + beta) /
                       ((2.0 + ab) * (2.0 + ab) * (3.0 + ab)));
    for (int k = 2; k < order; ++k) {
      const double t = 2.0 * k + ab;
      off[static_cast<std::size_t>(k - 1)] =
          std::sqrt(4.0 * k * (k + alpha) * (k + beta) * (k + ab) /
                    (t * t * (t + 1.0) * (t - 1.0)));
    }
  }
  const double mu0 = std::exp((ab + 1.0) * std::log(2.0) + std::lgamma(alpha + 1.0) +
                              std::lgamma(beta + 1.0) - std::lgamma(ab + 2.0));
  Rule1D rule = golub_welsch(diag, off, mu0);
  if (alpha == beta) {
    // enforce the symmetry the weight has, so odd moments cancel exactly
    for (int i = 0, j = order - 1; i < j; ++i, --j) {
      const double x = 0.5 * (rule.nodes[static_cast<std::size_t>(i)] -
                              rule.nodes[static_cast<std::size_t>(j)]);
      rule.nodes[static_cast<std::size_t>(i)] = x;
      rule.nodes[static_cast<std::size_t>(j)] = -x;
      const double w = 0.5 * (rule.weights[static_cast<std::size_t>(i)] +
                              rule.weights[static_cast<std::size_t>(j)]);
      rule.weights[static_cast<std::size_t>(i)] = w;
      rule.weights[static_cast<std::size_t>(j)] = w;
    }
    if (order % 2 == 1) rule.nodes[static_cast<std::size_t>(order / 2)] = 0.0;
  }
  return rule;
}

Rule1D gauss_laguerre(int order, double alpha) {
  if (order < 1) throw std::domain_error("gauss_laguerre: order must be positive");
  if (!(alpha > -1.0)) throw std::domain_error("gauss_laguerre: alpha must exceed -1");
  std::vector<double> diag(static_cast<std::size_t>(order));
  std::vector<double> off(static_cast<std::size_t>(order > 0 ? order - 1 : 0));
  for (int k = 0; k < order; ++k) diag[static_cast<std::size_t>(k)] = 2.0 * k + alpha + 1.0;
  for (int k = 1; k < order; ++k)
    off[static_cast<std::size_t>(k - 1)] = std::sqrt(k * (k + alpha));
  Rule1D rule = golub_welsch(diag, off, std::tgamma(alpha + 1.0));

  // The squared first eigenvector components bottom out near eps^2, so the
  // far-tail weights carry no relative accuracy. That matters whenever the
  // integrand grows almost as fast as e^t. Rebuild every weight from the
  // recurrence instead: polish the eigenvalue node with Newton steps on
  // L_N, then w = -Gamma(N+alpha)/N! / (L_N'(t) L_{N-1}(t)).
  const long double lognorm = std::lgamma(alpha + static_cast<double>(order)) -
                              std::lgamma(static_cast<double>(order) + 1.0);
  for (int i = 0; i < order; ++i) {
    long double t = rule.nodes[static_cast<std::size_t>(i)];
    for (int step = 0; step < 4; ++step) {
      const LaguerrePair p = laguerre_pair(order, alpha, t);
      const long double deriv = (order * p.pN - (order + alpha) * p.pNm1) / t;
      const long double dt = p.pN / deriv;
      t -= dt;
      if (std::abs(dt) < 1e-17L * t) break;
    }
    const LaguerrePair p = laguerre_pair(order, alpha, t);
    const long double deriv = (order * p.pN - (order + alpha) * p.pNm1) / t;
    const long double w = -std::exp(lognorm) / (deriv * p.pNm1);
    if (!(w > 0.0L) || !std::isfinite(static_cast<double>(w)))
      throw std::runtime_error("gauss_laguerre: weight recomputation failed");
    rule.nodes[static_cast<std::size_t>(i)] = static_cast<double>(t);
    rule.weights[static_cast<std::size_t>(i)] = static_cast<double>(w);
  }
  return rule;
}

}  // namespace hhinv::quad
