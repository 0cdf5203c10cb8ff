#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <string>

#include "hhinv/battery.hpp"

using namespace hhinv;
using battery::BatteryConfig;

namespace {

BatteryConfig fast_config() {
  BatteryConfig cfg;
  cfg.dims = {3};
  cfg.m_max = 2;
  cfg.quad_order = 8;
  cfg.only = {"remark", "d_recurrence", "hyp1", "holo_recurrence"};
  return cfg;
}

}  // namespace

TEST_CASE("configuration validation") {
  BatteryConfig cfg;
  CHECK_NOTHROW(cfg.validate());
  BatteryConfig bad = cfg;
  bad.dims = {2};
  CHECK_THROWS_AS(bad.validate(), std::domain_error);
  bad = cfg;
  bad.dims.clear();
  CHECK_THROWS_AS(bad.validate(), std::domain_error);
  bad = cfg;
  bad.m_max = 0;
  CHECK_THROWS_AS(bad.validate(), std::domain_error);
  bad = cfg;
  bad.quad_order = 2;
  CHECK_THROWS_AS(bad.validate(), std::domain_error);
  bad = cfg;
  bad.proj_radius = 1.0;
  CHECK_THROWS_AS(bad.validate(), std::domain_error);
  bad = cfg;
  bad.only = {"no_such_family"};
  CHECK_THROWS_AS(bad.validate(), std::domain_error);
  bad = cfg;
  bad.tol_overrides["no_such_family"] = 1e-9;
  CHECK_THROWS_AS(bad.validate(), std::domain_error);
  bad = cfg;
  bad.tol_overrides["remark"] = 0.0;
  CHECK_THROWS_AS(bad.validate(), std::domain_error);
}

TEST_CASE("per-dimension order defaults and overrides") {
  BatteryConfig cfg;
  CHECK(cfg.order_for(3) == 24);
  CHECK(cfg.order_for(4) == 24);
  CHECK(cfg.order_for(5) == 12);
  CHECK(cfg.order_for(6) == 6);
  cfg.quad_order = 16;
  CHECK(cfg.order_for(3) == 16);
  CHECK(cfg.order_for(6) == 16);
}

TEST_CASE("a fast selection runs green and reports the right shape") {
  const auto rep = battery::run_battery(fast_config());
  CHECK(rep.all_pass());
  CHECK(rep.fail_count() == 0);
  CHECK(rep.checks.size() >= 6);
  const auto j = rep.to_json();
  REQUIRE(j.contains("config"));
  REQUIRE(j.contains("checks"));
  REQUIRE(j.contains("summary"));
  CHECK(j["summary"]["pass"].get<int>() == rep.pass_count());
  CHECK(j["summary"]["fail"].get<int>() == 0);
  for (const auto& c : j["checks"]) {
    CHECK(c.size() == 5);
    REQUIRE(c.contains("name"));
    REQUIRE(c.contains("params"));
    REQUIRE(c.contains("residual"));
    REQUIRE(c.contains("tol"));
    REQUIRE(c.contains("pass"));
    CHECK(c["params"].contains("anchor"));
  }
  const std::string csv = rep.to_csv();
  CHECK(csv.find("name,params,residual,tol,pass") != std::string::npos);
  CHECK(csv.find("# summary") != std::string::npos);
}

TEST_CASE("reports are byte-stable for a fixed configuration") {
  const auto a = battery::run_battery(fast_config()).to_json().dump();
  const auto b = battery::run_battery(fast_config()).to_json().dump();
  CHECK(a == b);
}

TEST_CASE("the only filter restricts families") {
  BatteryConfig cfg = fast_config();
  cfg.only = {"remark"};
  const auto rep = battery::run_battery(cfg);
  CHECK(!rep.checks.empty());
  for (const auto& c : rep.checks) CHECK(c.name == "remark");
}

TEST_CASE("tolerance overrides flip marginal rows") {
  BatteryConfig cfg = fast_config();
  cfg.only = {"remark"};
  cfg.tol_overrides["remark"] = 1e-30;
  const auto rep = battery::run_battery(cfg);
  CHECK(!rep.all_pass());
  for (const auto& c : rep.checks) {
    CHECK(c.tol == 1e-30);
    CHECK(!c.pass);
  }
}

TEST_CASE("a family that throws becomes a failed row with the error text") {
  BatteryConfig cfg;
  cfg.dims = {3};
  cfg.m_max = 4;
  cfg.only = {"seminorm"};
  cfg.proj_radius = 0.05;  // amplification blows past the conditioning cap
  const auto rep = battery::run_battery(cfg);
  CHECK(!rep.all_pass());
  REQUIRE(!rep.checks.empty());
  bool saw_error = false;
  for (const auto& c : rep.checks) {
    CHECK(!c.pass);
    CHECK(std::isnan(c.residual));
    for (const auto& [k, v] : c.params)
      if (k == "error") saw_error = !v.empty();
  }
  CHECK(saw_error);
  const auto j = rep.to_json();
  CHECK(j["checks"][0]["residual"].is_null());
}

TEST_CASE("oracle mode swaps the closed-form routes for quadrature") {
  BatteryConfig cfg;
  cfg.dims = {3};
  cfg.m_max = 4;
  cfg.oracle = true;
  cfg.only = {"f_constancy"};
  const auto rep = battery::run_battery(cfg);
  CHECK(rep.all_pass());
  bool saw_route = false;
  for (const auto& c : rep.checks)
    for (const auto& [k, v] : c.params) saw_route = saw_route || k == "route" || k == "mode";
  CHECK(saw_route);

  BatteryConfig holo = cfg;
  holo.only = {"holo_constancy"};
  const auto rep2 = battery::run_battery(holo);
  CHECK(rep2.all_pass());
}

TEST_CASE("the family table is canonical and complete") {
  const auto& table = battery::family_table();
  CHECK(table.size() == 18);
  for (const auto& fam : table) {
    CHECK(fam.name != nullptr);
    CHECK(fam.anchor != nullptr);
    CHECK(fam.run != nullptr);
  }
}
