#pragma once

#include <string_view>
#include <variant>
#include <vector>

#include "spectec/module.hpp"

// Parser for the .minwast conformance-script subset: text-format modules
// plus assert_return / assert_trap commands (see docs/minwast.md).
namespace spectec::rt {

struct Invoke {
  std::string func;  // export name
  std::vector<Value> args;
};

struct AssertReturn {
  Invoke invoke;
  std::vector<Value> expected;
};

struct AssertTrap {
  Invoke invoke;
};

struct TestCmd {
  int line = 0;
  std::variant<MwModule, AssertReturn, AssertTrap> kind;
};

struct TestScript {
  std::vector<TestCmd> commands;
};

struct WastError {
  std::string message;
  int line = 0;
  int col = 0;
};

std::variant<TestScript, WastError> parse_test_script(std::string_view text);

// Parses a script expected to contain exactly one module.
std::variant<MwModule, WastError> parse_module_text(std::string_view text);

}  // namespace spectec::rt
