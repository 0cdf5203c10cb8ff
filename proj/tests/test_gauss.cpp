#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstddef>
#include <numbers>

#include "hhinv/gauss.hpp"

using hhinv::quad::gauss_jacobi;
using hhinv::quad::gauss_laguerre;
using hhinv::quad::Rule1D;

namespace {

double moment(const Rule1D& r, int k) {
  double s = 0.0;
  for (std::size_t i = 0; i < r.nodes.size(); ++i) s += r.weights[i] * std::pow(r.nodes[i], k);
  return s;
}

}  // namespace

TEST_CASE("Legendre special case integrates monomials exactly") {
  const auto r = gauss_jacobi(8, 0.0, 0.0);
  CHECK(std::abs(moment(r, 0) - 2.0) < 1e-14);
  CHECK(std::abs(moment(r, 2) - 2.0 / 3.0) < 1e-14);
  CHECK(std::abs(moment(r, 12) - 2.0 / 13.0) < 1e-14);
  CHECK(std::abs(moment(r, 7)) < 1e-15);
}

TEST_CASE("Chebyshev-like Jacobi weights reproduce Beta moments") {
  const auto r = gauss_jacobi(10, 0.5, 0.5);
  const double pi = std::numbers::pi;
  CHECK(std::abs(moment(r, 0) - pi / 2.0) < 1e-14);
  CHECK(std::abs(moment(r, 2) - pi / 8.0) < 1e-14);
  CHECK(std::abs(moment(r, 4) - pi / 16.0) < 1e-14);
  CHECK(std::abs(moment(r, 3)) < 1e-15);
}

TEST_CASE("Jacobi rule with alpha + beta = -1 stays consistent") {
  const auto r = gauss_jacobi(12, 0.5, -0.5);
  const double pi = std::numbers::pi;
  CHECK(std::abs(moment(r, 0) - pi) < 1e-13);
  CHECK(std::abs(moment(r, 1) + pi / 2.0) < 1e-13);
  CHECK(std::abs(moment(r, 2) - pi / 2.0) < 1e-13);
}

TEST_CASE("generalized Laguerre moments are Gamma ratios") {
  const auto r0 = gauss_laguerre(8, 0.0);
  for (int k = 0; k <= 6; ++k) {
    const double fact = std::tgamma(k + 1.0);
    CHECK(std::abs(moment(r0, k) - fact) / fact < 1e-13);
  }
  const auto r = gauss_laguerre(12, 1.5);
  CHECK(std::abs(moment(r, 0) - std::tgamma(2.5)) < 1e-13);
  CHECK(std::abs(moment(r, 1) - std::tgamma(3.5)) < 1e-12);
  CHECK(std::abs(moment(r, 3) - std::tgamma(5.5)) < 5e-11);
}

TEST_CASE("rule construction guards") {
  CHECK_THROWS(gauss_jacobi(0, 0.0, 0.0));
  CHECK_THROWS(gauss_jacobi(5, -1.0, 0.0));
  CHECK_THROWS(gauss_laguerre(5, -1.0));
  CHECK_THROWS(gauss_laguerre(0, 0.5));
}
