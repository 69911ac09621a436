#pragma once

#include <functional>
#include <memory>
#include <string>

#include "spectec/minwast.hpp"
#include "spectec/report.hpp"

namespace spectec::rt {

// An engine the conformance harness can drive: the extracted interpreter in
// production, the hand-written oracle in the test tree.
class Engine {
 public:
  virtual ~Engine() = default;

  // Validates and instantiates; returns an error message or "".
  virtual std::string instantiate(const MwModule& mod) = 0;

  // Runs an exported function. May throw for harness bugs; returns Trap for
  // a trapping execution.
  virtual TrapResult invoke(const std::string& func,
                            const std::vector<Value>& args) = 0;

  // Whether an export of this name exists in the current module.
  virtual bool has_export(const std::string& func) = 0;
};

// Runs every command of a script against the engine. Expected values
// compare bit-exactly.
FileReport run_test_script(const TestScript& script, Engine& engine,
                           const std::string& filename);

}  // namespace spectec::rt
