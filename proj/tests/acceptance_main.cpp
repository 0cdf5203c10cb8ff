// Acceptance battery: one line per criterion, nonzero exit if any fails.
// Each criterion runs the library check families at a pinned configuration
// and enforces a wall-clock ceiling.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <initializer_list>
#include <string>
#include <vector>

#include "hhinv/battery.hpp"

using hhinv::battery::BatteryConfig;
using hhinv::battery::CheckFn;
using hhinv::battery::Rows;

namespace {

int g_failures = 0;

BatteryConfig with_dims(std::vector<int> dims) {
  BatteryConfig cfg;
  cfg.dims = std::move(dims);
  return cfg;
}

void run_criterion(int id, const char* label, double limit_seconds, const BatteryConfig& cfg,
                   std::initializer_list<CheckFn> fns) {
  const auto t0 = std::chrono::steady_clock::now();
  Rows rows;
  bool ok = true;
  std::string note;
  try {
    for (const CheckFn fn : fns) fn(cfg, rows);
  } catch (const std::exception& e) {
    ok = false;
    note = e.what();
  }
  double worst = 0.0;
  for (const auto& r : rows) {
    if (!r.pass) {
      ok = false;
      if (note.empty()) note = "row '" + r.name + "' failed";
    }
    if (r.tol > 0.0 && std::isfinite(r.residual))
      worst = std::max(worst, r.residual / r.tol);
  }
  if (rows.empty() && note.empty()) {
    ok = false;
    note = "no rows produced";
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (secs > limit_seconds) {
    ok = false;
    note += note.empty() ? "over time limit" : "; over time limit";
  }
  std::printf("[%s] criterion-%02d %-38s rows=%2zu worst(residual/tol)=%8.2e time=%6.2fs cap=%gs%s%s\n",
              ok ? "PASS" : "FAIL", id, label, rows.size(), worst, secs, limit_seconds,
              note.empty() ? "" : " note=", note.c_str());
  std::fflush(stdout);
  if (!ok) ++g_failures;
}

}  // namespace

int main() {
  using namespace hhinv::battery;
  run_criterion(1, "surface-measure moments", 5.0, with_dims({3, 4, 5}), {&check_moments});
  run_criterion(2, "automorphism kernel closed form", 1.0, with_dims({3, 4, 5}),
                {&check_lemma1});
  run_criterion(3, "zonal recurrence and oracle", 5.0, with_dims({3, 4, 5}),
                {&check_zonal_recurrence, &check_zonal_oracle});
  run_criterion(4, "reproducing property", 10.0, with_dims({3, 4}), {&check_reproducing});
  run_criterion(5, "exponential zonal moments", 60.0, with_dims({3, 4}),
                {&check_zme, &check_zmee});
  run_criterion(6, "Laguerre transform identity", 1.0, with_dims({3}), {&check_hyp1});
  run_criterion(7, "product-kernel zonal moments", 60.0, with_dims({3}), {&check_cor6});
  run_criterion(8, "automorphism zonal moments", 120.0, with_dims({3, 5}), {&check_prop7});
  run_criterion(9, "invariant functional constancy", 10.0, with_dims({3, 4}),
                {&check_f_constancy});
  run_criterion(10, "coefficient recurrence closed form", 1.0, with_dims({3, 4, 5, 6}),
                {&check_d_recurrence});
  run_criterion(11, "bracket binomial expansion", 1.0, with_dims({3, 4, 5}), {&check_remark});
  run_criterion(12, "semi-norm invariance under recentering", 120.0, with_dims({3}),
                {&check_seminorm});
  run_criterion(13, "hyperbolic Laplacian annihilation", 5.0, with_dims({3, 4, 5}),
                {&check_laplacian});
  run_criterion(14, "complex-ball analogue", 60.0, with_dims({3}),
                {&check_holo_recurrence, &check_holo_constancy, &check_holo_oracle});
  if (g_failures == 0)
    std::printf("acceptance: all 14 criteria passed\n");
  else
    std::printf("acceptance: %d criteria failed\n", g_failures);
  return g_failures == 0 ? 0 : 1;
}
