#pragma once

#include <vector>

#include "spectec/source.hpp"
#include "spectec/token.hpp"

namespace spectec {

struct LexResult {
  std::vector<Token> tokens;  // terminated by Eof
  std::vector<Diagnostic> diags;
};

// Tokenizes one file. `;;` starts a line comment; consecutive line breaks
// collapse into a single Newline token. Characters outside the grammar's
// alphabet produce E-LEX diagnostics and are skipped.
LexResult tokenize(std::string_view source, FileId file);

}  // namespace spectec
