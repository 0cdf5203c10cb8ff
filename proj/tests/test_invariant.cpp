#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include "hhinv/geometry.hpp"
#include "hhinv/hharmonic.hpp"
#include "hhinv/invariant.hpp"
#include "hhinv/sphere.hpp"

using namespace hhinv;

TEST_CASE("reference coefficient sequences") {
  const auto seq3 = invariant::invariant_reference(3, 6);
  REQUIRE(seq3.c.size() == 7);
  const double want3[] = {0.0, 2.0, 6.0, 12.0, 20.0, 30.0, 42.0};
  for (std::size_t m = 0; m < 7; ++m) CHECK(std::abs(seq3.c[m] - want3[m]) < 1e-12);
  const auto seq4 = invariant::invariant_reference(4, 3);
  const double want4[] = {0.0, 3.0, 12.0, 30.0};
  for (std::size_t m = 0; m < 4; ++m) CHECK(std::abs(seq4.c[m] - want4[m]) < 1e-12);
  CHECK_THROWS_AS(invariant::invariant_reference(2, 5), std::domain_error);
  CHECK_THROWS_AS(invariant::invariant_reference(3, 0), std::domain_error);
}

TEST_CASE("radial bracket building blocks at the origin") {
  CHECK(invariant::phi_m_eval(3, -1, 0.5) == 0.0);
  CHECK(invariant::phi_m_eval(3, 0, 0.0) == 1.0);
  for (const int n : {3, 4, 5}) {
    CHECK(invariant::prop7_rhs(n, 0, 0.0) == 0.0);
    CHECK(invariant::prop7_rhs(n, 1, 0.0) == 1.0);
    CHECK(invariant::prop7_rhs(n, 2, 0.0) == 0.0);
  }
  CHECK_THROWS_AS(invariant::phi_m_eval(3, 2, 1.0), std::domain_error);
  CHECK_THROWS_AS(invariant::phi_m_eval(3, 2, -0.1), std::domain_error);
  CHECK_THROWS_AS(invariant::prop7_rhs(3, -1, 0.5), std::domain_error);
}

TEST_CASE("closed-form F is constant in the center and truncation-stable") {
  const auto s60 = invariant::invariant_reference(3, 60);
  const auto s90 = invariant::invariant_reference(3, 90);
  CHECK(std::abs(invariant::F_value(s60, 0.5) - invariant::F_value(s90, 0.5)) < 1e-12);
  CHECK(std::abs(invariant::F_value(s60, 0.0) - 2.0) < 1e-15);
  for (const double a : {0.1, 0.3, 0.5, 0.7})
    CHECK(std::abs(invariant::F_value(s60, a) - 2.0) < 1e-8);
  CHECK_THROWS_AS(invariant::F_value(s60, 1.0), std::domain_error);
}

TEST_CASE("moment identity holds pointwise through both quadrature routes") {
  const geometry::MoebiusMap phi(std::vector<double>{0.2, 0.0, 0.1});
  const auto q = sphere::build_quadrature(3, 14);
  CHECK(invariant::prop7_residual(phi, 2, q) < 1e-12);
  const auto pq = sphere::build_pair_quadrature(3, 16, 8);
  CHECK(invariant::prop7_residual(phi, 2, pq) < 1e-12);

  const auto seq = invariant::invariant_reference(3, 3);
  const double closed = invariant::F_value(seq, std::sqrt(0.05));
  CHECK(std::abs(invariant::F_value_quadrature(seq, phi.center(), q) - closed) < 1e-11);
  CHECK(std::abs(invariant::F_value_quadrature(seq, phi.center(), pq) - closed) < 1e-11);

  std::vector<double> small(2);
  CHECK_THROWS(invariant::prop7_lhs_all(phi, 2, q, small));
  const geometry::MoebiusMap phi4(std::vector<double>{0.2, 0.0, 0.1, 0.0});
  std::vector<double> out(3);
  CHECK_THROWS(invariant::prop7_lhs_all(phi4, 2, q, out));
}

TEST_CASE("coefficient recurrence solutions") {
  const auto d = invariant::recurrence_solve_d(3, 2.0, 12);
  REQUIRE(d.size() == 13);
  CHECK(d[0] == 0.0);
  for (std::size_t m = 1; m < d.size(); ++m)
    CHECK(std::abs(d[m] - 2.0 * static_cast<double>(m)) < 1e-12);
  const auto zeros = invariant::recurrence_solve_d(4, 0.0, 8);
  for (const double v : zeros) CHECK(v == 0.0);
  const auto one = invariant::recurrence_solve_d(4, 3.0, 10);
  const auto two = invariant::recurrence_solve_d(4, 6.0, 10);
  for (std::size_t m = 0; m < one.size(); ++m) CHECK(two[m] == 2.0 * one[m]);
  CHECK_THROWS_AS(invariant::recurrence_solve_d(2, 1.0, 5), std::domain_error);
}

TEST_CASE("bracket expansion coefficients match the binomial series") {
  CHECK(invariant::remark_residual(3, 25) < 1e-12);
  CHECK(invariant::remark_residual(4, 25) < 1e-12);
  CHECK(invariant::remark_residual(6, 20) < 1e-10);
}

TEST_CASE("semi-norm of a projected two-term combination") {
  const auto q = sphere::build_quadrature(3, 16);
  const hharm::SolidHarmonic h1(3, 1, {1.0, 0.0, 0.0});
  const hharm::SolidHarmonic h3(3, 3, {0.0, 0.6, 0.8});
  const auto comps = hharm::peter_weyl_project(
      [&](std::span<const double> p) {
        return 0.7 * hharm::solid_eval(h1, p) + 1.3 * hharm::solid_eval(h3, p);
      },
      4, 0.6, q);
  const auto seq = invariant::invariant_reference(3, 4);
  // c_1 |0.7|^2 Z_1(p,p) + c_3 |1.3|^2 Z_3(p,p) = 2(0.49)(3) + 12(1.69)(7)
  CHECK(std::abs(invariant::semi_norm_sq(comps, q, seq) - 144.9) < 1e-8);
  CHECK_THROWS(invariant::semi_norm_sq(comps, q, invariant::invariant_reference(4, 3)));
  CHECK_THROWS(invariant::semi_norm_sq(comps, q, invariant::invariant_reference(3, 6)));
}

TEST_CASE("holomorphic-ball coefficients and brackets") {
  const auto c1 = invariant::holo_reference(1, 1.0, 5);
  for (std::size_t m = 0; m < c1.size(); ++m)
    CHECK(std::abs(c1[m] - static_cast<double>(m)) < 1e-13);
  const auto c2 = invariant::holo_reference(2, 2.0, 6);
  const double want[] = {0.0, 2.0, 6.0, 12.0, 20.0, 30.0, 42.0};
  for (std::size_t m = 0; m < 7; ++m) CHECK(std::abs(c2[m] - want[m]) < 1e-12);

  CHECK(invariant::holo_c_recurrence_residual(1, c1) < 1e-13);
  CHECK(invariant::holo_c_recurrence_residual(2, c2) < 1e-13);

  CHECK(std::abs(invariant::holo_bracket(2, 0, 0.25) - 0.25) < 1e-15);
  CHECK(invariant::holo_bracket(2, 1, 0.0) == 1.0);
  const auto c120 = invariant::holo_reference(2, 2.0, 120);
  CHECK(std::abs(invariant::holo_F_closed(2, c120, 0.6) - 2.0) < 1e-10);
  CHECK(std::abs(invariant::holo_F_closed(2, c120, 0.0) - 2.0) < 1e-13);
}

TEST_CASE("holomorphic-ball double integrals match the bracket") {
  std::vector<double> lhs(3);
  const auto q8 = sphere::build_quadrature(4, 8);
  invariant::holo_lhs_all(2, 0.0, 2, q8, lhs);
  CHECK(std::abs(lhs[0]) < 1e-13);
  CHECK(std::abs(lhs[1] - 1.0) < 1e-13);
  CHECK(std::abs(lhs[2]) < 1e-13);

  const auto q10 = sphere::build_quadrature(4, 10);
  invariant::holo_lhs_all(2, 0.3, 2, q10, lhs);
  for (int m = 0; m <= 2; ++m)
    CHECK(std::abs(lhs[static_cast<std::size_t>(m)] - invariant::holo_bracket(2, m, 0.09)) <
          1e-7);

  const auto q3 = sphere::build_quadrature(3, 6);
  CHECK_THROWS(invariant::holo_lhs_all(2, 0.3, 2, q3, lhs));
  CHECK_THROWS(invariant::holo_lhs_all(2, 1.0, 2, q8, lhs));
}
