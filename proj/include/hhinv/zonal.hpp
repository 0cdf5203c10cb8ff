#pragma once

#include <complex>
#include <span>
#include <vector>

namespace hhinv::zonal {

// Degree-m zonal harmonic Z_m(x, y), evaluated through the three-term
// recurrence 2 s Z_m = (m+1)/(m+n/2) Z_{m+1} + (m+n-3)/(m+n/2-2) Z_{m-1} on
// unit vectors (the m = 0 instance has no lower term) and homogeneity
// Z_m(x, y) = (|x||y|)^m Z_m(x/|x|, y/|y|) in general.
class ZonalEvaluator {
public:
  ZonalEvaluator(int n, int m_max);

  int dim() const { return n_; }
  int max_degree() const { return m_max_; }

  // Z_0..Z_{m_max} for unit vectors with cosine s; out.size() >= m_max+1.
  void eval_all_unit(double s, std::span<double> out) const;

  double eval_unit(int m, double s) const;

  // General vectors of matching dimension; homogeneity makes the unit-sphere
  // value exact for any norms.
  double eval(int m, std::span<const double> x, std::span<const double> y) const;

private:
  int n_ = 0;
  int m_max_ = 0;
  std::vector<double> up_;    // (m+1)/(m+n/2)
  std::vector<double> down_;  // (m+n-3)/(m+n/2-2); entry 0 unused (the term is absent)
};

// Coefficient of t^m in (1 - t^2 |x|^2 |y|^2) (1 - 2 t <x,y> + t^2 |x|^2 |y|^2)^{-n/2},
// extracted by explicit binomial expansion. Independent route kept as the
// oracle for the recurrence evaluator.
double zonal_generating_oracle(int n, int m, std::span<const double> x,
                               std::span<const double> y);

// Z_m(u, u) = |u|^{2m} (n/2)_m (n-2)_m / ((n/2-1)_m m!).
double zonal_diag(int n, int m, double norm_u);

// Complex-ball analogue on C^n: (n)_m / m! <z,w>^m with the Hermitian pairing.
std::complex<double> complex_zonal(int n, int m, std::span<const std::complex<double>> z,
                                   std::span<const std::complex<double>> w);

}  // namespace hhinv::zonal
