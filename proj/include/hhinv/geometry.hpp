#pragma once

#include <complex>
#include <span>
#include <vector>

namespace hhinv::geometry {

// Moebius automorphism of the real unit ball exchanging 0 and the center a:
// phi_a(x) = (a |x-a|^2 + (1-|a|^2)(a-x)) / (1 - 2<x,a> + |x|^2 |a|^2).
class MoebiusMap {
public:
  explicit MoebiusMap(std::vector<double> center);

  int dim() const { return static_cast<int>(a_.size()); }
  const std::vector<double>& center() const { return a_; }
  double center_norm_sq() const { return a2_; }

  // Hot-path evaluation; `out` must have size dim(). No input validation.
  void apply(std::span<const double> x, std::span<double> out) const;

  // Validating convenience wrapper.
  std::vector<double> operator()(std::span<const double> x) const;

private:
  std::vector<double> a_;
  double a2_ = 0.0;
};

// <phi_a(x), phi_a(y)> computed through two pointwise applications.
double kernel_inner(const MoebiusMap& phi, std::span<const double> x, std::span<const double> y);

// Closed form of the same inner product for unit x, y:
// 1 - (1-<x,y>)(1-|a|^2)^2 / ((1-2<a,x>+|a|^2)(1-2<a,y>+|a|^2)).
double lemma1_rhs(const MoebiusMap& phi, std::span<const double> x, std::span<const double> y);

// Hermitian inner product of the complex-ball automorphism images:
// <phibar_a(zeta), phibar_a(eta)> = 1 - (1-|a|^2)(1-<zeta,eta>) /
// ((1-<zeta,a>)(1-<a,eta>)). The map itself is never evaluated pointwise; this
// identity is all the holomorphic checks need.
std::complex<double> holo_kernel(std::span<const std::complex<double>> a,
                                 std::span<const std::complex<double>> zeta,
                                 std::span<const std::complex<double>> eta);

}  // namespace hhinv::geometry
