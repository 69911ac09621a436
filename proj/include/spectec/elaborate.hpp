#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "spectec/el.hpp"
#include "spectec/il.hpp"

namespace spectec {

struct ElabResult {
  std::optional<il::Script> script;  // present iff no errors occurred
  std::vector<Diagnostic> diags;     // sorted by (file, line, col)

  bool ok() const { return script.has_value(); }
};

// Checks an EL script at the meta level (names, types, arities,
// multiplicities) and produces the typed IL. All independent errors are
// reported, not just the first. Diagnostics use the stable codes
// E-UNDEF, E-ARITY, E-TYPE, E-MULT, E-DUP and the warning W-UNUSED.
ElabResult elaborate(const el::Script& script);

// Synthesizes the type of `exp` under the signatures of `context`, with the
// types of variable families overridden by `env` (base name -> type).
// Iterated expressions strip one layer from each iterated variable inside
// the body; conflicting multiplicities yield E-MULT. Context-dependent
// literals (epsilon, empty lists) take their type from `expected`.
il::Type infer_multiplicity(const el::Exp& exp,
                            const std::map<std::string, il::Type>& env,
                            const el::Script& context,
                            std::vector<Diagnostic>& diags,
                            const il::Type* expected = nullptr);

}  // namespace spectec
