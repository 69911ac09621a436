#pragma once

#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "spectec/al.hpp"
#include "spectec/il.hpp"

namespace spectec {

struct AnimationError {
  std::string rule_id;  // "Relation/rule" or "$func"
  std::vector<std::string> unresolved_vars;
  SourceSpan span;
  std::string message;
};

// ---------------------------------------------------------------------------
// Premise dataflow

struct PremiseStep {
  size_t premise_index;                // into the input premise vector
  bool binds = false;                  // false: pure check
  std::vector<std::string> bound_vars; // variables bound by this premise
};

struct CyclicDependency {
  std::vector<std::string> vars;  // variables no ordering can bind
};

// Orders premises so that every binding premise's expression side is fully
// bound by prior steps. An equality binds when exactly one side is a pattern
// of unbound variables and the other side is an application with bound
// arguments; everything else is a check. Among valid orders the stable one
// closest to source order is returned (earlier source premise first).
std::variant<std::vector<PremiseStep>, CyclicDependency> premise_dataflow(
    const std::vector<il::PremPtr>& premises,
    const std::set<std::string>& initially_bound);

// Builds the LetI binding `pattern` to `expr` (whose IL type is `expr_type`)
// together with the guard condition that makes the binding total at run
// time: a length check for option/list destructuring, none for scalars.
std::pair<al::CondPtr, al::Instr> guard_partiality(const il::Exp& pattern,
                                                   const al::ExprPtr& expr,
                                                   const il::Type& expr_type);

// ---------------------------------------------------------------------------
// Animation

// Merges all reduction rules for one instruction constructor into a single
// algorithm: stack operands become Assert/Pop pairs in reverse order,
// premises become LetI bindings or IfI checks, and each rule contributes one
// guarded section in source order.
// Throws nothing; errors are reported through `errors`.
std::optional<al::Algorithm> animate_rule_group(
    const std::vector<const il::Rule*>& rules,
    std::vector<AnimationError>& errors);

struct AnimateResult {
  al::AlgorithmSet algorithms;
  std::vector<AnimationError> errors;

  bool ok() const { return errors.empty(); }
};

// Animates every reduction relation of the script (instruction algorithms)
// plus every '$' function defined by clauses (function algorithms).
AnimateResult animate(const il::Script& script);

}  // namespace spectec
