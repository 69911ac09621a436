#pragma once

#include <optional>
#include <string>

#include "spectec/value.hpp"

// Numeric operator tables backing the intrinsic functions $unop, $binop,
// $testop, $relop. Integer arithmetic wraps modulo the width; division and
// remainder of zero and signed-overflow division are partial (empty result);
// float arithmetic follows round-to-nearest with NaN results canonicalized.
namespace spectec::rt {

// `op` is the DSL constructor name ("ADD", "DIV_S", "FMIN", "CLZ", ...).
std::optional<Value> numeric_unop(const std::string& op, NumType nt, Value a);
std::optional<Value> numeric_binop(const std::string& op, NumType nt, Value a,
                                   Value b);
Value numeric_testop(const std::string& op, NumType nt, Value a);
Value numeric_relop(const std::string& op, NumType nt, Value a, Value b);

// Whether (op, nt) names an operator instance covered by the tables.
bool unop_exists(const std::string& op, NumType nt);
bool binop_exists(const std::string& op, NumType nt);
bool testop_exists(const std::string& op, NumType nt);
bool relop_exists(const std::string& op, NumType nt);

}  // namespace spectec::rt
