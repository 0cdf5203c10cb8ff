#include "hhinv/report.hpp"

#include <cmath>
#include <sstream>

namespace hhinv::report {

std::string number_string(double v) { return nlohmann::json(v).dump(); }

int VerificationReport::pass_count() const {
  int n = 0;
  for (const CheckResult& c : checks) n += c.pass ? 1 : 0;
  return n;
}

int VerificationReport::fail_count() const {
  return static_cast<int>(checks.size()) - pass_count();
}

nlohmann::ordered_json VerificationReport::to_json() const {
  nlohmann::ordered_json root;
  root["config"] = config;
  nlohmann::ordered_json items = nlohmann::ordered_json::array();
  for (const CheckResult& c : checks) {
    nlohmann::ordered_json entry;
    entry["name"] = c.name;
    nlohmann::ordered_json params;
    for (const auto& [key, value] : c.params) params[key] = value;
    entry["params"] = params;
    // non-finite residuals (errored rows) serialize as null, matching dump()
    if (std::isfinite(c.residual))
      entry["residual"] = c.residual;
    else
      entry["residual"] = nullptr;
    entry["tol"] = c.tol;
    entry["pass"] = c.pass;
    items.push_back(std::move(entry));
  }
  root["checks"] = std::move(items);
  root["summary"] = {{"pass", pass_count()}, {"fail", fail_count()}};
  return root;
}

std::string VerificationReport::to_csv() const {
  std::ostringstream out;
  for (const auto& [key, value] : config.items()) {
    out << "# " << key << "=";
    if (value.is_string())
      out << value.get<std::string>();
    else
      out << value.dump();
    out << "\n";
  }
  out << "name,params,residual,tol,pass\n";
  for (const CheckResult& c : checks) {
    out << c.name << ",";
    for (std::size_t i = 0; i < c.params.size(); ++i) {
      if (i > 0) out << ";";
      out << c.params[i].first << "=" << c.params[i].second;
    }
    out << "," << number_string(c.residual) << "," << number_string(c.tol) << ","
        << (c.pass ? "true" : "false") << "\n";
  }
  out << "# summary pass=" << pass_count() << " fail=" << fail_count() << "\n";
  return out.str();
}

}  // namespace hhinv::report
