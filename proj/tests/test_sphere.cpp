#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include "hhinv/errors.hpp"
#include "hhinv/sphere.hpp"
#include "hhinv/zonal.hpp"

using namespace hhinv;

namespace {

double dot(std::span<const double> x, std::span<const double> y) {
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
  return s;
}

}  // namespace

TEST_CASE("quadrature shape, normalization, and node placement") {
  const auto q = sphere::build_quadrature(3, 8);
  CHECK(q.count() == 128);
  CHECK(q.exact_degree == 15);
  double w = 0.0;
  for (const double wi : q.weights) w += wi;
  CHECK(std::abs(w - 1.0) < 1e-14);
  for (std::int64_t i = 0; i < q.count(); ++i) {
    const auto x = q.node(i);
    CHECK(std::abs(dot(x, x) - 1.0) < 1e-13);
  }
}

TEST_CASE("monomial moments match the closed form") {
  const std::array<int, 3> e2 = {2, 0, 0};
  const std::array<int, 3> e4 = {0, 4, 0};
  const std::array<int, 3> e22 = {2, 0, 2};
  const std::array<int, 3> odd = {1, 2, 0};
  CHECK(sphere::monomial_moment(3, e2) == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
  CHECK(sphere::monomial_moment(3, e4) == doctest::Approx(1.0 / 5.0).epsilon(1e-14));
  CHECK(sphere::monomial_moment(3, e22) == doctest::Approx(1.0 / 15.0).epsilon(1e-14));
  CHECK(sphere::monomial_moment(3, odd) == 0.0);

  for (const int n : {3, 4, 5}) {
    const auto q = sphere::build_quadrature(n, n == 5 ? 8 : 10);
    std::vector<int> e(static_cast<std::size_t>(n), 0);
    e[0] = 2;
    e[static_cast<std::size_t>(n) - 1] = 4;
    const double closed = sphere::monomial_moment(n, e);
    const double quad = sphere::integrate(q, [&](std::span<const double> x) {
      double p = 1.0;
      for (std::size_t i = 0; i < x.size(); ++i)
        for (int k = 0; k < e[i]; ++k) p *= x[i];
      return p;
    });
    CHECK(std::abs(quad - closed) < 1e-15);
  }
}

TEST_CASE("smooth integrand reference value") {
  const auto q = sphere::build_quadrature(3, 12);
  const double got =
      sphere::integrate(q, [](std::span<const double> x) { return std::exp(x[0]); });
  CHECK(std::abs(got - std::sinh(1.0)) < 1e-14);
}

TEST_CASE("zonal harmonics of positive degree average to zero") {
  const auto q = sphere::build_quadrature(3, 12);
  const zonal::ZonalEvaluator ev(3, 6);
  const std::array<double, 3> pole = {0.0, 0.6, 0.8};
  for (int m = 1; m <= 6; ++m) {
    const double got = sphere::integrate(
        q, [&](std::span<const double> x) { return ev.eval_unit(m, dot(x, pole)); });
    CHECK(std::abs(got) < 1e-14);
  }
}

TEST_CASE("rotating a smooth integrand leaves the value unchanged") {
  const auto q = sphere::build_quadrature(3, 12);
  const std::array<double, 3> u1 = {1.0, 0.0, 0.0};
  const std::array<double, 3> u2 = {0.36, -0.48, 0.8};
  const double v1 =
      sphere::integrate(q, [&](std::span<const double> x) { return std::exp(dot(u1, x)); });
  const double v2 =
      sphere::integrate(q, [&](std::span<const double> x) { return std::exp(dot(u2, x)); });
  CHECK(std::abs(v1 - v2) < 1e-13);
}

TEST_CASE("blocked and serial sums agree and rerun bit-identically") {
  const auto q = sphere::build_quadrature(4, 10);
  const auto f = [](std::span<const double> x) { return std::exp(x[0] - 0.5 * x[1]); };
  const double a = sphere::integrate(q, f);
  const double b = sphere::integrate_serial(q, f);
  CHECK(std::abs(a - b) < 1e-14);
  CHECK(sphere::integrate(q, f) == a);

  const auto g = [](std::span<const double> x, std::span<const double> y) {
    return std::exp(0.3 * dot(x, y));
  };
  const auto q3 = sphere::build_quadrature(3, 8);
  CHECK(std::abs(sphere::integrate2(q3, g) - sphere::integrate2_serial(q3, g)) < 1e-14);
}

TEST_CASE("Monte Carlo control agrees within error bars and is seeded") {
  const auto q = sphere::build_quadrature(4, 12);
  const auto f = [](std::span<const double> x) { return std::exp(x[0]) + x[1] * x[1]; };
  const double exact = sphere::integrate(q, f);
  const auto est = sphere::mc_integrate(4, 200000, 99, f);
  CHECK(est.std_error > 0.0);
  CHECK(std::abs(est.value - exact) < 4.0 * est.std_error);
  const auto est2 = sphere::mc_integrate(4, 200000, 99, f);
  CHECK(est.value == est2.value);
  CHECK(est.std_error == est2.std_error);
}

TEST_CASE("pair rule agrees with the tensor rule on frame-reducible kernels") {
  const auto q = sphere::build_quadrature(3, 12);
  const std::array<double, 3> axis = {0.0, 0.0, 1.0};
  const auto f = [&](std::span<const double> x, std::span<const double> y) {
    const double s = dot(x, y);
    return (1.0 + 0.5 * dot(x, axis)) * s * s + 0.25 * dot(y, axis) * s;
  };
  const double tensor = sphere::integrate2(q, f);
  const auto pq = sphere::build_pair_quadrature(3, 10, 6);
  const double pair = sphere::integrate_pairs(pq, axis, f);
  CHECK(std::abs(tensor - pair) < 1e-13);

  double w = 0.0;
  for (const double wi : pq.v.weights) w += wi;
  CHECK(std::abs(w - 1.0) < 1e-13);
}

TEST_CASE("construction guards") {
  CHECK_THROWS_AS(sphere::build_quadrature(2, 8), std::domain_error);
  CHECK_THROWS(sphere::build_quadrature(3, 0));
  CHECK_THROWS_AS(sphere::build_quadrature(5, 40), budget_error);
  CHECK_THROWS_AS(sphere::build_quadrature(3, 8, 10), budget_error);
  CHECK_THROWS_AS(
      sphere::mc_integrate(3, 1, 1, [](std::span<const double>) { return 1.0; }),
      std::domain_error);
  CHECK_THROWS_AS(sphere::build_pair_quadrature(2, 8, 4), std::domain_error);
}
