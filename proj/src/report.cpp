#include "pathot/report.hpp"

namespace pathot {

void SecurityReport::add_check(const std::string& name,
                               const std::string& expected,
                               const std::string& actual, bool pass) {
  checks.push_back({name, expected, actual, pass});
}

bool SecurityReport::all_pass() const {
  for (const ReportCheck& c : checks)
    if (!c.pass) return false;
  return true;
}

nlohmann::json SecurityReport::to_json() const {
  nlohmann::json j;
  j["protocol"] = protocol;
  if (!attack.empty()) j["attack"] = attack;
  j["ell"] = ell;
  j["n_paths"] = n_paths;
  j["corrupted"] = corrupted;
  j["controller"] = controller;
  j["honest_path"] = honest_path;
  j["disjoint_paths"] = disjoint_paths;
  j["separating"] = separating;
  j["mode"] = mode;
  j["trials"] = trials;
  j["seed"] = seed;

  auto put_rational = [&](const char* key,
                          const std::optional<Rational>& r) {
    if (!r.has_value()) return;
    j[key] = to_string(*r);
    j[std::string(key) + "_approx"] = to_double(*r);
  };
  put_rational("correctness_rate", correctness_rate);
  put_rational("epsilon_receiver", epsilon_receiver);
  put_rational("epsilon_sender", epsilon_sender);
  put_rational("attack_success_exact", attack_success_exact);
  if (mc_frequency.has_value()) j["mc_frequency"] = *mc_frequency;
  if (mc_half_width.has_value()) j["mc_half_width99"] = *mc_half_width;
  if (attack_expected.has_value()) j["attack_expected"] = *attack_expected;

  nlohmann::json checks_json = nlohmann::json::array();
  for (const ReportCheck& c : checks)
    checks_json.push_back({{"name", c.name},
                           {"expected", c.expected},
                           {"actual", c.actual},
                           {"pass", c.pass}});
  j["checks"] = checks_json;
  j["all_pass"] = all_pass();
  return j;
}

}  // namespace pathot
