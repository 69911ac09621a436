#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "spectec/el.hpp"
#include "spectec/source.hpp"

namespace spectec::render {

// DSL name -> LaTeX template. Placeholders #0, #1, ... substitute rendered
// arguments; #R substitutes the remaining arguments, comma-separated.
// Constructor keys are bare ("CONST"); function keys carry a '$'.
struct SymbolTable {
  std::map<std::string, std::string> entries;

  static SymbolTable defaults();
  // Merges entries from a JSON object file; returns false and sets `error`
  // on failure.
  bool load(const std::string& path, std::string& error);
};

struct LatexBlock {
  std::string kind;   // "syntax", "var", "func", "relation", "rule"
  std::string name;
  std::string label;  // anchor: def-<kind>-<name>
  std::string tex;
};

struct LatexDoc {
  std::string preamble;  // fixed wrapper, up to \begin{document}
  std::vector<LatexBlock> blocks;
  std::map<std::string, std::string> anchors;  // definition -> label
  std::vector<std::string> warnings;  // unknown-symbol fallbacks

  std::string body() const;
  std::string full_document() const;
};

// Thrown when rendering is requested for a script that has not elaborated
// cleanly.
struct RenderRefused : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Renders every definition, in source order, to LaTeX in the fixed-macro
// style (sans-serif keywords, math-italic variables, \hookrightarrow rules).
LatexDoc render_latex(const el::Script& script, const SymbolTable& symbols);

// Same, but refuses when diagnostics contain errors.
LatexDoc render_latex_checked(const el::Script& script,
                              const SymbolTable& symbols,
                              const std::vector<Diagnostic>& diags);

// Mechanical well-formedness: balanced braces and environments, no use of
// macros outside the fixed preamble set. Empty result = well formed.
std::vector<std::string> check_latex_wellformed(const std::string& tex);

}  // namespace spectec::render
