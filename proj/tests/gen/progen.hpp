#pragma once

#include <random>
#include <vector>

#include "spectec/module.hpp"

// Seeded random module generator for differential testing. Programs are
// type-correct by construction over the covered subset; loops are bounded
// counted loops, calls only reach earlier functions plus a bounded
// self-recursion pattern is avoided entirely.
namespace progen {

using spectec::rt::MwModule;
using spectec::rt::Value;

struct GeneratedCase {
  MwModule module;
  std::string entry;             // export to invoke
  std::vector<Value> args;
};

GeneratedCase generate(uint64_t seed);

}  // namespace progen
