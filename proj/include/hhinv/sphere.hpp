#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "hhinv/errors.hpp"
#include "hhinv/gauss.hpp"
#include "hhinv/parallel.hpp"

namespace hhinv::sphere {

inline constexpr int kMaxDim = 16;

// Product rule on the unit sphere S^{n-1} in hyperspherical coordinates:
// Gauss-Jacobi in each polar cosine, uniform points in the azimuth. Weights
// are normalized against the sphere measure (they sum to 1), so integrate()
// approximates the mean over the sphere.
struct SphereQuadrature {
  int dim = 0;
  int order = 0;
  int exact_degree = 0;
  std::vector<double> nodes;    // count * dim, row-major
  std::vector<double> weights;  // sum to 1 within 1e-14

  std::int64_t count() const { return static_cast<std::int64_t>(weights.size()); }
  std::span<const double> node(std::int64_t i) const {
    return {nodes.data() + i * dim, static_cast<std::size_t>(dim)};
  }
};

SphereQuadrature build_quadrature(int n, int order, std::int64_t node_budget = 4'000'000);

namespace detail {
[[noreturn]] void throw_nonfinite(std::int64_t node);
}

// Deterministic parallel quadrature sum (blocked reduction; bit-identical for
// any thread count). Throws evaluation_error if the integrand goes non-finite.
template <class F>
double integrate(const SphereQuadrature& q, F&& f) {
  const double total = par::blocked_sum(q.count(), [&](std::int64_t i) {
    return q.weights[static_cast<std::size_t>(i)] * f(q.node(i));
  });
  if (!std::isfinite(total)) {
    for (std::int64_t i = 0; i < q.count(); ++i)
      if (!std::isfinite(f(q.node(i)))) detail::throw_nonfinite(i);
    detail::throw_nonfinite(-1);
  }
  return total;
}

// Serial reference for the blocked kernel above.
template <class F>
double integrate_serial(const SphereQuadrature& q, F&& f) {
  const double total = par::serial_sum(q.count(), [&](std::int64_t i) {
    return q.weights[static_cast<std::size_t>(i)] * f(q.node(i));
  });
  if (!std::isfinite(total)) {
    for (std::int64_t i = 0; i < q.count(); ++i)
      if (!std::isfinite(f(q.node(i)))) detail::throw_nonfinite(i);
    detail::throw_nonfinite(-1);
  }
  return total;
}

// Tensor-product double integral over S^{n-1} x S^{n-1}: sum over all node
// pairs of the same rule. O(count^2) kernel evaluations.
template <class F>
double integrate2(const SphereQuadrature& q, F&& f) {
  const std::int64_t n = q.count();
  const double total = par::blocked_sum(n * n, [&](std::int64_t idx) {
    const std::int64_t i = idx / n, j = idx % n;
    return q.weights[static_cast<std::size_t>(i)] * q.weights[static_cast<std::size_t>(j)] *
           f(q.node(i), q.node(j));
  });
  if (!std::isfinite(total)) detail::throw_nonfinite(-1);
  return total;
}

template <class F>
double integrate2_serial(const SphereQuadrature& q, F&& f) {
  const std::int64_t n = q.count();
  const double total = par::serial_sum(n * n, [&](std::int64_t idx) {
    const std::int64_t i = idx / n, j = idx % n;
    return q.weights[static_cast<std::size_t>(i)] * q.weights[static_cast<std::size_t>(j)] *
           f(q.node(i), q.node(j));
  });
  if (!std::isfinite(total)) detail::throw_nonfinite(-1);
  return total;
}

// Multi-output variant: f(x, y, w, acc) adds its w-weighted contributions into
// acc[0..width). Used when several degrees share one sweep over node pairs.
template <class F>
void integrate2_multi(const SphereQuadrature& q, int width, double* out, F&& f) {
  const std::int64_t n = q.count();
  par::blocked_sum_multi(n * n, width, out, [&](std::int64_t idx, double* acc) {
    const std::int64_t i = idx / n, j = idx % n;
    const double w = q.weights[static_cast<std::size_t>(i)] * q.weights[static_cast<std::size_t>(j)];
    f(q.node(i), q.node(j), w, acc);
  });
}

// Closed-form sphere moment: the mean of prod_i x_i^{e_i} over S^{n-1}.
// Zero when any exponent is odd, prod_i (1/2)_{e_i/2} / (n/2)_{|e|/2} otherwise.
double monomial_moment(int n, std::span<const int> exponents);

struct McEstimate {
  double value = 0.0;
  double std_error = 0.0;
  std::int64_t samples = 0;
};

namespace detail {
// mt19937_64 bits -> uniform (0,1] -> Box-Muller. The engine sequence is fixed
// by the standard and the transform is spelled out here, so estimates are
// bit-reproducible across platforms for a fixed seed (std::normal_distribution
// would not be).
class GaussianStream {
public:
  explicit GaussianStream(std::uint64_t seed) : eng_(seed) {}
  double next();

private:
  std::mt19937_64 eng_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};
}  // namespace detail

// Plain Monte Carlo over uniform sphere directions (normalized Gaussians).
// Serial on purpose: the sample sequence is part of the reproducibility
// contract.
template <class F>
McEstimate mc_integrate(int n, std::int64_t samples, std::uint64_t seed, F&& f) {
  if (n < 3) throw std::domain_error("mc_integrate: dimension must be at least 3");
  if (n > kMaxDim) throw std::domain_error("mc_integrate: dimension exceeds kMaxDim");
  if (samples < 2) throw std::domain_error("mc_integrate: need at least 2 samples");
  detail::GaussianStream g(seed);
  std::array<double, kMaxDim> x{};
  double sum = 0.0, sum_sq = 0.0;
  for (std::int64_t s = 0; s < samples; ++s) {
    double norm2 = 0.0;
    do {
      norm2 = 0.0;
      for (int i = 0; i < n; ++i) {
        x[static_cast<std::size_t>(i)] = g.next();
        norm2 += x[static_cast<std::size_t>(i)] * x[static_cast<std::size_t>(i)];
      }
    } while (norm2 == 0.0);
    const double inv = 1.0 / std::sqrt(norm2);
    for (int i = 0; i < n; ++i) x[static_cast<std::size_t>(i)] *= inv;
    const double v = f(std::span<const double>(x.data(), static_cast<std::size_t>(n)));
    if (!std::isfinite(v)) detail::throw_nonfinite(s);
    sum += v;
    sum_sq += v * v;
  }
  McEstimate est;
  est.samples = samples;
  est.value = sum / static_cast<double>(samples);
  const double var =
      (sum_sq - sum * sum / static_cast<double>(samples)) / static_cast<double>(samples - 1);
  est.std_error = std::sqrt(std::max(var, 0.0) / static_cast<double>(samples));
  return est;
}

// Quadrature for double sphere integrals whose integrand depends only on
// <e,x>, <e,y> and <x,y> for a fixed axis e (equivalently: is invariant under
// rotations fixing e). Three nested Gauss rules in s = <e,x>, t = <e,y> and
// the mutual cosine v replace the full tensor pair sum; the integral value is
// identical by rotation invariance. Exact when the reduced integrand is
// polynomial of degree <= 2*order-1 per variable.
struct PairQuadrature {
  int dim = 0;
  int axis_order = 0;
  int mutual_order = 0;
  quad::Rule1D s;  // normalized: weights sum to 1
  quad::Rule1D t;
  quad::Rule1D v;

  std::int64_t count() const {
    return static_cast<std::int64_t>(s.nodes.size()) * static_cast<std::int64_t>(t.nodes.size()) *
           static_cast<std::int64_t>(v.nodes.size());
  }
};

PairQuadrature build_pair_quadrature(int n, int axis_order, int mutual_order,
                                     std::int64_t node_budget = 4'000'000);

namespace detail {
// Orthonormal frame (b1, b2, b3) with b1 along axis (e_1 if axis is zero).
struct PairFrame {
  std::array<double, kMaxDim> b1, b2, b3;
};
PairFrame make_pair_frame(int n, std::span<const double> axis);
}  // namespace detail

// f(x, y, w, acc) adds w-weighted contributions into acc[0..width). The pair
// (x, y) realizes the sampled (s, t, v) as genuine points of S^{n-1}.
template <class F>
void integrate_pairs_multi(const PairQuadrature& pq, std::span<const double> axis, int width,
                           double* out, F&& f) {
  const detail::PairFrame fr = detail::make_pair_frame(pq.dim, axis);
  const int n = pq.dim;
  const std::int64_t nt = static_cast<std::int64_t>(pq.t.nodes.size());
  const std::int64_t nv = static_cast<std::int64_t>(pq.v.nodes.size());
  par::blocked_sum_multi(pq.count(), width, out, [&](std::int64_t idx, double* acc) {
    const std::int64_t is = idx / (nt * nv);
    const std::int64_t it = (idx / nv) % nt;
    const std::int64_t iv = idx % nv;
    const double s = pq.s.nodes[static_cast<std::size_t>(is)];
    const double t = pq.t.nodes[static_cast<std::size_t>(it)];
    const double v = pq.v.nodes[static_cast<std::size_t>(iv)];
    const double w = pq.s.weights[static_cast<std::size_t>(is)] *
                     pq.t.weights[static_cast<std::size_t>(it)] *
                     pq.v.weights[static_cast<std::size_t>(iv)];
    const double cs = std::sqrt(std::max(0.0, 1.0 - s * s));
    const double ct = std::sqrt(std::max(0.0, 1.0 - t * t));
    const double cv = std::sqrt(std::max(0.0, 1.0 - v * v));
    std::array<double, kMaxDim> x, y;
    for (int d = 0; d < n; ++d) {
      x[static_cast<std::size_t>(d)] = s * fr.b1[static_cast<std::size_t>(d)] +
                                       cs * fr.b2[static_cast<std::size_t>(d)];
      y[static_cast<std::size_t>(d)] =
          t * fr.b1[static_cast<std::size_t>(d)] +
          ct * (v * fr.b2[static_cast<std::size_t>(d)] + cv * fr.b3[static_cast<std::size_t>(d)]);
    }
    f(std::span<const double>(x.data(), static_cast<std::size_t>(n)),
      std::span<const double>(y.data(), static_cast<std::size_t>(n)), w, acc);
  });
}

template <class F>
double integrate_pairs(const PairQuadrature& pq, std::span<const double> axis, F&& f) {
  double out = 0.0;
  integrate_pairs_multi(pq, axis, 1, &out,
                        [&](std::span<const double> x, std::span<const double> y, double w,
                            double* acc) { acc[0] += w * f(x, y); });
  if (!std::isfinite(out)) detail::throw_nonfinite(-1);
  return out;
}

}  // namespace hhinv::sphere
