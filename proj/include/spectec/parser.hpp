#pragma once

#include <string_view>
#include <vector>

#include "spectec/el.hpp"
#include "spectec/lexer.hpp"

namespace spectec {

struct ParseResult {
  el::Script script;
  std::vector<Diagnostic> diags;

  bool ok() const { return !has_errors(diags); }
};

// Parses a token stream into an EL script. On a syntax error the parser
// records a diagnostic and resumes at the next top-level definition, so one
// run reports every independent error.
ParseResult parse_script(const std::vector<Token>& tokens);

// Convenience: tokenize + parse one file.
ParseResult parse_source(std::string_view source, FileId file);

}  // namespace spectec
