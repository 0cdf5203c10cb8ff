#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <tuple>
#include <vector>

#include "hhinv/errors.hpp"
#include "hhinv/hharmonic.hpp"
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

TEST_CASE("radial factor closed forms") {
  // even dimensions terminate: n = 4 gives S_1 = (3 - t)/2, S_2 = 2 - t
  CHECK(std::abs(hharm::radial_Sm(4, 1, 0.4) - 1.3) < 1e-14);
  CHECK(std::abs(hharm::radial_Sm(4, 2, 0.3) - 1.7) < 1e-14);
  CHECK(std::abs(hharm::radial_Sm(6, 1, 0.5) - 31.0 / 24.0) < 1e-14);
  CHECK(hharm::radial_Sm(3, 0, 0.7) == 1.0);
  for (const int n : {3, 4, 5})
    for (int m = 0; m <= 6; ++m) CHECK(std::abs(hharm::radial_Sm(n, m, 1.0) - 1.0) < 1e-12);
}

TEST_CASE("radial factor matches a direct series summation") {
  const std::vector<std::tuple<int, int, double>> cases = {
      {3, 2, 0.36}, {5, 3, 0.5}, {3, 4, 0.81}};
  for (const auto& [n, m, t] : cases) {
    long double pre = 1.0L;
    for (int k = 0; k < m; ++k) pre *= (n - 1.0L + k) / (n / 2.0L + k);
    long double sum = 0.0L, term = 1.0L;
    for (int k = 0; k < 400 && std::abs(static_cast<double>(term)) > 1e-19; ++k) {
      sum += term;
      term *= (m + k) * (1.0L - n / 2.0L + k) / ((m + n / 2.0L + k) * (k + 1.0L)) * t;
    }
    const double ref = static_cast<double>(pre * sum);
    CHECK(std::abs(hharm::radial_Sm(n, m, t) - ref) < 1e-13);
  }
}

TEST_CASE("solid extensions are annihilated by the hyperbolic Laplacian") {
  const std::vector<std::vector<double>> pts3 = {
      {0.2, -0.1, 0.3}, {0.4, 0.1, -0.2}, {0.0, 0.0, 0.5}};
  const hharm::SolidHarmonic h3(3, 3, {0.0, 0.0, 1.0});
  for (const auto& x : pts3) {
    const double lap = hharm::hyperbolic_laplacian_fd(
        [&](std::span<const double> p) { return hharm::solid_eval(h3, p); }, x, 1e-3);
    CHECK(std::abs(lap) < 1e-4);
  }
  const hharm::SolidHarmonic h4(4, 2, {0.5, 0.5, 0.5, 0.5});
  const std::vector<double> x4 = {0.3, -0.2, 0.1, 0.4};
  const double lap4 = hharm::hyperbolic_laplacian_fd(
      [&](std::span<const double> p) { return hharm::solid_eval(h4, p); }, x4, 1e-3);
  CHECK(std::abs(lap4) < 1e-4);
}

TEST_CASE("finite differences are exact on a quadratic") {
  const std::vector<double> x = {0.5, 0.0, 0.0};
  const double lap = hharm::hyperbolic_laplacian_fd(
      [](std::span<const double> p) { return dot(p, p); }, x, 1e-3);
  CHECK(std::abs(lap - 4.125) < 5e-9);
}

TEST_CASE("boundary components recover a single solid harmonic") {
  const auto q = sphere::build_quadrature(3, 16);
  const zonal::ZonalEvaluator ev(3, 4);
  const std::vector<double> pz = {0.0, 0.0, 1.0};
  const hharm::SolidHarmonic h(3, 2, pz);
  const auto comps = hharm::peter_weyl_project(
      [&](std::span<const double> p) { return hharm::solid_eval(h, p); }, 4, 0.6, q);
  CHECK(comps.node_count == q.count());
  double worst_target = 0.0, worst_rest = 0.0;
  for (std::int64_t i = 0; i < q.count(); ++i) {
    const double want = ev.eval_unit(2, dot(q.node(i), pz));
    worst_target = std::max(worst_target,
                            std::abs(comps.component(2)[static_cast<std::size_t>(i)] - want));
    for (const int m : {0, 1, 3, 4})
      worst_rest =
          std::max(worst_rest, std::abs(comps.component(m)[static_cast<std::size_t>(i)]));
  }
  CHECK(worst_target < 1e-10);
  CHECK(worst_rest < 1e-10);

  CHECK(std::abs(hharm::component_norm_sq(comps, q, 2) - 5.0) < 1e-10);
  const std::vector<double> fresh = {0.48, -0.6, 0.64};
  CHECK(std::abs(hharm::component_eval(comps, q, 2, fresh) - ev.eval_unit(2, dot(fresh, pz))) <
        1e-10);
}

TEST_CASE("boundary components split a two-term combination") {
  const auto q = sphere::build_quadrature(3, 16);
  const zonal::ZonalEvaluator ev(3, 4);
  const std::vector<double> p1 = {1.0, 0.0, 0.0};
  const std::vector<double> p3 = {0.0, 0.6, 0.8};
  const hharm::SolidHarmonic h1(3, 1, p1);
  const hharm::SolidHarmonic h3(3, 3, p3);
  const auto comps = hharm::peter_weyl_project(
      [&](std::span<const double> p) {
        return 0.7 * hharm::solid_eval(h1, p) + 1.3 * hharm::solid_eval(h3, p);
      },
      4, 0.6, q);
  double worst = 0.0;
  for (std::int64_t i = 0; i < q.count(); ++i) {
    const std::size_t j = static_cast<std::size_t>(i);
    worst = std::max(worst,
                     std::abs(comps.component(1)[j] - 0.7 * ev.eval_unit(1, dot(q.node(i), p1))));
    worst = std::max(worst,
                     std::abs(comps.component(3)[j] - 1.3 * ev.eval_unit(3, dot(q.node(i), p3))));
    worst = std::max(worst, std::abs(comps.component(0)[j]));
    worst = std::max(worst, std::abs(comps.component(2)[j]));
    worst = std::max(worst, std::abs(comps.component(4)[j]));
  }
  CHECK(worst < 1e-10);
}

TEST_CASE("constant functions project onto degree zero only") {
  const auto q = sphere::build_quadrature(3, 12);
  const auto comps =
      hharm::peter_weyl_project([](std::span<const double>) { return 1.0; }, 3, 0.5, q);
  for (std::int64_t i = 0; i < q.count(); ++i) {
    const std::size_t j = static_cast<std::size_t>(i);
    CHECK(std::abs(comps.component(0)[j] - 1.0) < 1e-12);
    CHECK(std::abs(comps.component(1)[j]) < 1e-12);
    CHECK(std::abs(comps.component(3)[j]) < 1e-12);
  }
}

TEST_CASE("small radii at high degree are rejected as ill-conditioned") {
  const auto q = sphere::build_quadrature(3, 8);
  CHECK_THROWS_AS(hharm::peter_weyl_project([](std::span<const double>) { return 1.0; }, 30, 0.1,
                                            q, 1e4),
                  conditioning_error);
}

TEST_CASE("argument guards") {
  const auto q = sphere::build_quadrature(3, 8);
  const auto one = [](std::span<const double>) { return 1.0; };
  CHECK_THROWS_AS(hharm::peter_weyl_project(one, 64, 0.5, q), std::domain_error);
  CHECK_THROWS_AS(hharm::peter_weyl_project(one, 4, 1.0, q), std::domain_error);
  CHECK_THROWS_AS(hharm::radial_Sm(2, 1, 0.5), std::domain_error);
  CHECK_THROWS_AS(hharm::radial_Sm(3, 1, 1.2), std::domain_error);
  CHECK_THROWS_AS(hharm::SolidHarmonic(3, 2, {0.5, 0.0, 0.0}), std::domain_error);
  CHECK_THROWS_AS(hharm::SolidHarmonic(2, 1, {1.0, 0.0}), std::domain_error);
  const std::vector<double> near = {0.95, 0.0, 0.0};
  CHECK_THROWS_AS(hharm::hyperbolic_laplacian_fd(one, near, 0.05), std::domain_error);
  CHECK_THROWS_AS(hharm::hyperbolic_laplacian_fd(one, near, 0.0), std::domain_error);
}
