#include "spectec/report.hpp"

#include <cstdio>
#include <numeric>

#include "json.hpp"

namespace spectec {

int RunReport::passed() const {
  int n = 0;
  for (const auto& f : files) n += f.passed;
  return n;
}

int RunReport::failed() const {
  int n = 0;
  for (const auto& f : files) n += f.failed;
  return n;
}

bool RunReport::ok() const {
  if (failed() > 0) return false;
  for (const auto& f : files)
    if (!f.infra_error.empty()) return false;
  return true;
}

std::string RunReport::summary() const {
  char buf[128];
  snprintf(buf, sizeof buf, "%d/%d assertions passed in %.3fs", passed(),
           total(), wall_seconds);
  return buf;
}

std::string RunReport::to_json() const {
  nlohmann::json j;
  j["schema_version"] = 1;
  j["total"] = {{"assertions", total()},
                {"passed", passed()},
                {"failed", failed()}};
  j["wall_seconds"] = wall_seconds;
  j["files"] = nlohmann::json::array();
  for (const auto& f : files) {
    nlohmann::json jf;
    jf["file"] = f.file;
    jf["assertions"] = f.total();
    jf["passed"] = f.passed;
    jf["failed"] = f.failed;
    jf["trapped_as_expected"] = f.trapped_as_expected;
    jf["wall_seconds"] = f.wall_seconds;
    if (!f.infra_error.empty()) jf["infra_error"] = f.infra_error;
    jf["failures"] = nlohmann::json::array();
    for (const auto& fail : f.failures) {
      jf["failures"].push_back({{"command_index", fail.command_index},
                                {"command", fail.command},
                                {"expected", fail.expected},
                                {"actual", fail.actual}});
    }
    j["files"].push_back(std::move(jf));
  }
  return j.dump(2);
}

}  // namespace spectec
