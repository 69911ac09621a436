#pragma once

#include <cstdint>
#include <string>

#include "spectec/source.hpp"

namespace spectec {

enum class TokKind {
  // keywords
  KwSyntax,
  KwRule,
  KwDef,
  KwRelation,
  KwVar,
  KwIf,
  KwOtherwise,
  KwEpsilon,
  // identifiers and literals
  UpperId,   // [A-Z][A-Za-z0-9_]*  (constructors are the all-caps subset)
  LowerId,   // [a-z][a-z0-9_]* with '-' allowed between alphanumerics
  DollarId,  // $name
  Nat,       // decimal natural
  // symbols
  Arrow,      // ~>
  Turnstile,  // |-
  PremDash,   // --
  Eq,         // =
  Ne,         // =/=
  Lt,
  Le,
  Gt,
  Ge,
  LParen,
  RParen,
  LBracket,
  RBracket,
  Star,
  Question,
  Slash,
  Colon,
  Comma,
  Bar,
  // layout
  Newline,
  Eof,
};

const char* tok_kind_name(TokKind k);

struct Token {
  TokKind kind = TokKind::Eof;
  SourceSpan span;
  std::string text;       // raw text (identifiers, for rule-id positions)
  std::string base;       // LowerId: base name with subscript stripped
  std::string subscript;  // LowerId: trailing _<digits> subscript, "" if none
  uint64_t nat = 0;       // Nat

  bool is(TokKind k) const { return kind == k; }
};

}  // namespace spectec
