#pragma once

#include <string>

#include "spectec/el.hpp"

namespace spectec {

// Canonical text form of an EL script. Deterministic, and re-parsing the
// output yields a structurally equal script.
std::string pretty_el(const el::Script& script);

std::string pretty_exp(const el::Exp& exp);
std::string pretty_typ(const el::Typ& typ);
std::string pretty_premise(const el::Premise& prem);

}  // namespace spectec
