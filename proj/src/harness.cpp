#include "spectec/harness.hpp"

#include <chrono>
#include <sstream>

namespace spectec::rt {
namespace {

std::string render_invoke(const Invoke& inv) {
  std::ostringstream os;
  os << "(invoke \"" << inv.func << "\"";
  for (const auto& v : inv.args) os << " (" << v.to_string() << ")";
  os << ")";
  return os.str();
}

std::string render_values(const std::vector<Value>& vs) {
  std::ostringstream os;
  os << "[";
  for (size_t i = 0; i < vs.size(); ++i) {
    if (i) os << ", ";
    os << vs[i].to_string();
  }
  os << "]";
  return os.str();
}

}  // namespace

FileReport run_test_script(const TestScript& script, Engine& engine,
                           const std::string& filename) {
  FileReport report;
  report.file = filename;
  auto t0 = std::chrono::steady_clock::now();
  bool have_module = false;

  for (size_t idx = 0; idx < script.commands.size(); ++idx) {
    const TestCmd& cmd = script.commands[idx];
    if (auto* mod = std::get_if<MwModule>(&cmd.kind)) {
      std::string err = engine.instantiate(*mod);
      if (!err.empty()) {
        report.infra_error =
            filename + ":" + std::to_string(cmd.line) + ": " + err;
        return report;
      }
      have_module = true;
      continue;
    }

    const Invoke* inv = nullptr;
    bool expect_trap = false;
    const std::vector<Value>* expected = nullptr;
    if (auto* ar = std::get_if<AssertReturn>(&cmd.kind)) {
      inv = &ar->invoke;
      expected = &ar->expected;
    } else {
      inv = &std::get<AssertTrap>(cmd.kind).invoke;
      expect_trap = true;
    }
    if (!have_module || !engine.has_export(inv->func)) {
      report.infra_error = filename + ":" + std::to_string(cmd.line) +
                           ": invoke of unknown export \"" + inv->func + "\"";
      return report;
    }

    TrapResult actual = engine.invoke(inv->func, inv->args);
    bool pass;
    std::string expected_str;
    if (expect_trap) {
      pass = actual.trapped;
      expected_str = "trap";
      if (pass) ++report.trapped_as_expected;
    } else {
      pass = !actual.trapped && actual.values == *expected;
      expected_str = render_values(*expected);
    }
    if (pass) {
      ++report.passed;
    } else {
      ++report.failed;
      report.failures.push_back(AssertionFailure{
          idx, render_invoke(*inv), expected_str, actual.to_string()});
    }
  }

  report.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  return report;
}

}  // namespace spectec::rt
