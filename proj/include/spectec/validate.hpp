#pragma once

#include <string>
#include <vector>

#include "spectec/module.hpp"

namespace spectec::rt {

// Minimal validator: arity/type checking of function bodies, sufficient to
// justify the top-of-stack assertions the algorithms rely on. Returns one
// message per problem; an empty result means the module is valid.
std::vector<std::string> validate(const MwModule& mod);

}  // namespace spectec::rt
