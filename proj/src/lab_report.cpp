#include <cstdio>
#include <sstream>

#include "lab_internal.hpp"

namespace parindex {

const std::vector<std::string>& battery_checks() {
  static const std::vector<std::string> names = {
      "solver-cross-oracle",  "evenness-decomposition", "transduction-soundness", "bounded-pair-completeness",
      "strahler-completeness", "bounded-pair-strahler", "universal-trees",        "composition",
      "guided-bound",          "mutation"};
  return names;
}

CheckResult run_check(const std::string& name, const GenParams& p) {
  using namespace lab_detail;
  if (name == "solver-cross-oracle") return solver_cross_oracle(p);
  if (name == "evenness-decomposition") return evenness_decomposition(p);
  if (name == "transduction-soundness") return transduction_soundness(p, p.reset);
  if (name == "bounded-pair-completeness") return bounded_pair_completeness(p, p.reset);
  if (name == "strahler-completeness") return strahler_completeness(p);
  if (name == "bounded-pair-strahler") return bounded_pair_strahler(p);
  if (name == "universal-trees") return universal_trees(p);
  if (name == "composition") return composition(p);
  if (name == "guided-bound") return guided_bound(p);
  if (name == "mutation") return mutation(p);
  throw Error(ErrorCode::InvalidArgument, "unknown check '" + name + "'");
}

TheoremReport run_theorem_battery(const GenParams& p) {
  TheoremReport r;
  if (p.instance_count == 0) return r;
  for (const auto& name : battery_checks()) r.checks.push_back(run_check(name, p));
  return r;
}

bool TheoremReport::passed() const {
  for (const auto& c : checks)
    if (!c.passed()) return false;
  return true;
}

std::string TheoremReport::summary_table() const {
  std::ostringstream out;
  char line[160];
  std::snprintf(line, sizeof line, "%-28s %9s %9s %10s  %s\n", "check", "instances", "failures", "seconds", "result");
  out << line;
  for (const auto& c : checks) {
    std::snprintf(line, sizeof line, "%-28s %9zu %9zu %10.2f  %s\n", c.name.c_str(), c.instances, c.failures.size(),
                  c.seconds, c.passed() ? "pass" : "FAIL");
    out << line;
    for (const auto& f : c.failures) out << "    #" << f.instance << ": " << f.message << "\n";
  }
  return out.str();
}

std::string TheoremReport::to_text() const {
  Json checks_json = Json::array();
  for (const auto& c : checks) {
    Json cj;
    cj["name"] = c.name;
    cj["instances"] = c.instances;
    cj["seconds"] = c.seconds;
    cj["time_limit"] = c.time_limit;
    cj["passed"] = c.passed();
    Json fs = Json::array();
    for (const auto& f : c.failures) {
      Json fj;
      fj["instance"] = f.instance;
      fj["message"] = f.message;
      if (!f.counterexample.empty()) fj["counterexample"] = Json::parse(f.counterexample);
      fs.push_back(std::move(fj));
    }
    cj["failures"] = std::move(fs);
    checks_json.push_back(std::move(cj));
  }
  Json payload;
  payload["passed"] = passed();
  payload["checks"] = std::move(checks_json);
  return print_manifest(Manifest{"report", std::move(payload)});
}

}  // namespace parindex
