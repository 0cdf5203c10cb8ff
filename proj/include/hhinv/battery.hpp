#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hhinv/report.hpp"

namespace hhinv::battery {

// Shared knobs for every check family. validate() rejects bad values up front
// so a run never mixes valid rows with a half-applied configuration.
struct BatteryConfig {
  std::vector<int> dims = {3, 4, 5};
  int m_max = 6;
  std::optional<int> quad_order;  // unset = per-family defaults
  double proj_radius = 0.6;
  std::uint64_t seed = 42;
  bool oracle = false;            // swap closed-form routes for raw quadrature
  std::vector<std::string> only;  // family filter; empty runs everything
  std::map<std::string, double> tol_overrides;

  void validate() const;
  int order_for(int n) const;
  double tol_for(const std::string& family, double fallback) const;
  bool selected(const std::string& family) const;
};

using Rows = std::vector<report::CheckResult>;
using CheckFn = void (*)(const BatteryConfig&, Rows&);

struct FamilyInfo {
  const char* name;    // CLI / report name
  const char* anchor;  // identity tag carried as the first parameter of each row
  CheckFn run;
};

// Every family in canonical report order.
const std::vector<FamilyInfo>& family_table();

void check_moments(const BatteryConfig&, Rows&);
void check_lemma1(const BatteryConfig&, Rows&);
void check_zonal_recurrence(const BatteryConfig&, Rows&);
void check_zonal_oracle(const BatteryConfig&, Rows&);
void check_reproducing(const BatteryConfig&, Rows&);
void check_zme(const BatteryConfig&, Rows&);
void check_zmee(const BatteryConfig&, Rows&);
void check_hyp1(const BatteryConfig&, Rows&);
void check_cor6(const BatteryConfig&, Rows&);
void check_prop7(const BatteryConfig&, Rows&);
void check_f_constancy(const BatteryConfig&, Rows&);
void check_d_recurrence(const BatteryConfig&, Rows&);
void check_remark(const BatteryConfig&, Rows&);
void check_seminorm(const BatteryConfig&, Rows&);
void check_laplacian(const BatteryConfig&, Rows&);
void check_holo_recurrence(const BatteryConfig&, Rows&);
void check_holo_constancy(const BatteryConfig&, Rows&);
void check_holo_oracle(const BatteryConfig&, Rows&);

// Runs the selected families in canonical order. A family that throws is
// recorded as a failed row carrying the error text; earlier rows survive.
report::VerificationReport run_battery(const BatteryConfig& cfg);

}  // namespace hhinv::battery
