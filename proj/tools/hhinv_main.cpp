#include <cstdint>
#include <fstream>
#include <iostream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hhinv/battery.hpp"

namespace {

// NAME=VALUE pairs from --tol-family, validated against the family table.
void apply_tol_overrides(const std::vector<std::string>& specs, hhinv::battery::BatteryConfig& cfg) {
  for (const std::string& spec : specs) {
    const auto eq = spec.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 == spec.size())
      throw std::domain_error("config: --tol-family expects NAME=VALUE, got '" + spec + "'");
    const std::string name = spec.substr(0, eq);
    std::size_t used = 0;
    double value = 0.0;
    try {
      value = std::stod(spec.substr(eq + 1), &used);
    } catch (const std::exception&) {
      throw std::domain_error("config: --tol-family value in '" + spec + "' is not a number");
    }
    if (used != spec.size() - eq - 1)
      throw std::domain_error("config: --tol-family value in '" + spec + "' is not a number");
    cfg.tol_overrides[name] = value;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Verification battery for the invariant inner-product identities"};
  app.require_subcommand(1);

  auto* verify = app.add_subcommand("verify", "Run the check families and emit a report");
  hhinv::battery::BatteryConfig cfg;
  std::vector<std::string> tol_specs;
  int quad_order = 0;
  std::string out_path;
  std::string format = "json";

  verify->add_option("--dims", cfg.dims, "Sphere dimensions to test")->delimiter(',');
  verify->add_option("--mmax", cfg.m_max, "Degree cutoff for the zonal families");
  auto* order_opt =
      verify->add_option("--quad-order", quad_order, "Override the per-family quadrature orders");
  verify->add_option("--radius", cfg.proj_radius, "Interior sphere radius for the projections");
  verify->add_option("--tol-family", tol_specs,
                     "Override one family tolerance as NAME=VALUE (repeatable)");
  verify->add_option("--seed", cfg.seed, "Seed for the sampled points");
  verify->add_option("--only", cfg.only, "Run only the named check families")->delimiter(',');
  verify->add_flag("--oracle", cfg.oracle, "Use the raw quadrature routes where available");
  verify->add_option("--out", out_path, "Write the report to this path instead of stdout");
  verify->add_option("--format", format, "Report format")
      ->check(CLI::IsMember({"json", "csv"}));

  CLI11_PARSE(app, argc, argv);

  hhinv::report::VerificationReport rep;
  try {
    if (order_opt->count() > 0) cfg.quad_order = quad_order;
    apply_tol_overrides(tol_specs, cfg);
    cfg.validate();
    rep = hhinv::battery::run_battery(cfg);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  const std::string payload =
      format == "json" ? rep.to_json().dump(2) + "\n" : rep.to_csv();
  if (out_path.empty()) {
    std::cout << payload;
  } else {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
      std::cerr << "error: cannot open '" << out_path << "' for writing\n";
      return 2;
    }
    out << payload;
  }
  std::cerr << "checks: " << rep.pass_count() << " passed, " << rep.fail_count() << " failed\n";
  return rep.all_pass() ? 0 : 1;
}
