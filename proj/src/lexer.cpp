#include "spectec/lexer.hpp"

#include <cctype>

namespace spectec {

const char* tok_kind_name(TokKind k) {
  switch (k) {
    case TokKind::KwSyntax: return "'syntax'";
    case TokKind::KwRule: return "'rule'";
    case TokKind::KwDef: return "'def'";
    case TokKind::KwRelation: return "'relation'";
    case TokKind::KwVar: return "'var'";
    case TokKind::KwIf: return "'if'";
    case TokKind::KwOtherwise: return "'otherwise'";
    case TokKind::KwEpsilon: return "'epsilon'";
    case TokKind::UpperId: return "upper identifier";
    case TokKind::LowerId: return "identifier";
    case TokKind::DollarId: return "'$' identifier";
    case TokKind::Nat: return "natural literal";
    case TokKind::Arrow: return "'~>'";
    case TokKind::Turnstile: return "'|-'";
    case TokKind::PremDash: return "'--'";
    case TokKind::Eq: return "'='";
    case TokKind::Ne: return "'=/='";
    case TokKind::Lt: return "'<'";
    case TokKind::Le: return "'<='";
    case TokKind::Gt: return "'>'";
    case TokKind::Ge: return "'>='";
    case TokKind::LParen: return "'('";
    case TokKind::RParen: return "')'";
    case TokKind::LBracket: return "'['";
    case TokKind::RBracket: return "']'";
    case TokKind::Star: return "'*'";
    case TokKind::Question: return "'?'";
    case TokKind::Slash: return "'/'";
    case TokKind::Colon: return "':'";
    case TokKind::Comma: return "','";
    case TokKind::Bar: return "'|'";
    case TokKind::Newline: return "end of line";
    case TokKind::Eof: return "end of file";
  }
  return "?";
}

namespace {

bool is_lower_start(char c) { return c >= 'a' && c <= 'z'; }
bool is_upper_start(char c) { return c >= 'A' && c <= 'Z'; }
bool is_digit(char c) { return c >= '0' && c <= '9'; }
bool is_ident_char(char c) {
  return is_lower_start(c) || is_digit(c) || c == '_';
}
bool is_upper_ident_char(char c) {
  return is_lower_start(c) || is_upper_start(c) || is_digit(c) || c == '_';
}

struct Lexer {
  std::string_view src;
  FileId file;
  size_t pos = 0;
  int line = 1;
  int col = 1;
  LexResult out;

  char peek(size_t off = 0) const {
    return pos + off < src.size() ? src[pos + off] : '\0';
  }

  void advance() {
    if (pos >= src.size()) return;
    if (src[pos] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
    ++pos;
  }

  SourceSpan span_from(int l0, int c0) const {
    // Tokens never contain a line break, so the end position is on the same
    // line. Newline and Eof are pushed before consuming anything and get a
    // point span.
    if (line == l0 && col == c0) return SourceSpan{file, l0, c0, l0, c0};
    return SourceSpan{file, l0, c0, line, col - 1};
  }

  void push(TokKind kind, int l0, int c0, std::string text = {}) {
    Token t;
    t.kind = kind;
    t.span = span_from(l0, c0);
    t.text = std::move(text);
    out.tokens.push_back(std::move(t));
  }

  void lex_lower(int l0, int c0) {
    size_t start = pos;
    advance();
    while (is_ident_char(peek())) advance();
    // Hyphens joining alphanumeric segments (rule ids like binop-val).
    while (peek() == '-' && (is_lower_start(peek(1)) || is_digit(peek(1)))) {
      advance();
      while (is_ident_char(peek())) advance();
    }
    std::string text(src.substr(start, pos - start));

    TokKind kw = TokKind::Eof;
    if (text == "syntax") kw = TokKind::KwSyntax;
    else if (text == "rule") kw = TokKind::KwRule;
    else if (text == "def") kw = TokKind::KwDef;
    else if (text == "relation") kw = TokKind::KwRelation;
    else if (text == "var") kw = TokKind::KwVar;
    else if (text == "if") kw = TokKind::KwIf;
    else if (text == "otherwise") kw = TokKind::KwOtherwise;
    else if (text == "epsilon") kw = TokKind::KwEpsilon;
    if (kw != TokKind::Eof) {
      push(kw, l0, c0, text);
      return;
    }

    Token t;
    t.kind = TokKind::LowerId;
    t.span = span_from(l0, c0);
    t.text = text;
    // Trailing _<digits> is a subscript and part of the variable identity.
    size_t us = text.rfind('_');
    bool sub = us != std::string::npos && us > 0 && us + 1 < text.size();
    if (sub) {
      for (size_t i = us + 1; i < text.size(); ++i)
        if (!is_digit(text[i])) { sub = false; break; }
    }
    if (sub && text.find('-') == std::string::npos) {
      t.base = text.substr(0, us);
      t.subscript = text.substr(us + 1);
    } else {
      t.base = text;
    }
    out.tokens.push_back(std::move(t));
  }

  void lex_upper(int l0, int c0) {
    size_t start = pos;
    advance();
    while (is_upper_ident_char(peek())) advance();
    push(TokKind::UpperId, l0, c0, std::string(src.substr(start, pos - start)));
  }

  void lex_nat(int l0, int c0) {
    uint64_t v = 0;
    size_t start = pos;
    while (is_digit(peek())) {
      v = v * 10 + static_cast<uint64_t>(peek() - '0');
      advance();
    }
    Token t;
    t.kind = TokKind::Nat;
    t.span = span_from(l0, c0);
    t.text = std::string(src.substr(start, pos - start));
    t.nat = v;
    out.tokens.push_back(std::move(t));
  }

  void error_char(int l0, int c0) {
    std::string shown;
    unsigned char c = static_cast<unsigned char>(peek());
    if (c >= 0x20 && c < 0x7f) {
      shown = std::string("'") + static_cast<char>(c) + "'";
    } else {
      char buf[16];
      snprintf(buf, sizeof buf, "byte 0x%02x", c);
      shown = buf;
    }
    advance();
    out.diags.push_back(Diagnostic{Severity::Error, "E-LEX",
                                   "unexpected character " + shown,
                                   span_from(l0, c0),
                                   {}});
  }

  void run() {
    bool line_has_token = false;
    while (pos < src.size()) {
      char c = peek();
      int l0 = line, c0 = col;
      if (c == '\n') {
        if (line_has_token) push(TokKind::Newline, l0, c0);
        line_has_token = false;
        advance();
        continue;
      }
      if (c == ' ' || c == '\t' || c == '\r') {
        advance();
        continue;
      }
      if (c == ';' && peek(1) == ';') {
        while (pos < src.size() && peek() != '\n') advance();
        continue;
      }
      line_has_token = true;
      if (is_lower_start(c)) { lex_lower(l0, c0); continue; }
      if (is_upper_start(c)) { lex_upper(l0, c0); continue; }
      if (is_digit(c)) { lex_nat(l0, c0); continue; }
      if (c == '$' && is_lower_start(peek(1))) {
        advance();
        size_t start = pos;
        while (is_ident_char(peek())) advance();
        push(TokKind::DollarId, l0, c0,
             std::string(src.substr(start, pos - start)));
        continue;
      }
      // multi-char symbols first
      if (c == '=' && peek(1) == '/' && peek(2) == '=') {
        advance(); advance(); advance();
        push(TokKind::Ne, l0, c0, "=/=");
        continue;
      }
      if (c == '~' && peek(1) == '>') {
        advance(); advance();
        push(TokKind::Arrow, l0, c0, "~>");
        continue;
      }
      if (c == '-' && peek(1) == '-') {
        advance(); advance();
        push(TokKind::PremDash, l0, c0, "--");
        continue;
      }
      if (c == '|' && peek(1) == '-') {
        advance(); advance();
        push(TokKind::Turnstile, l0, c0, "|-");
        continue;
      }
      if (c == '<' && peek(1) == '=') {
        advance(); advance();
        push(TokKind::Le, l0, c0, "<=");
        continue;
      }
      if (c == '>' && peek(1) == '=') {
        advance(); advance();
        push(TokKind::Ge, l0, c0, ">=");
        continue;
      }
      // UTF-8 for U+2264 / U+2265
      if (static_cast<unsigned char>(c) == 0xe2 &&
          static_cast<unsigned char>(peek(1)) == 0x89 &&
          (static_cast<unsigned char>(peek(2)) == 0xa4 ||
           static_cast<unsigned char>(peek(2)) == 0xa5)) {
        bool le = static_cast<unsigned char>(peek(2)) == 0xa4;
        advance(); advance(); advance();
        push(le ? TokKind::Le : TokKind::Ge, l0, c0, le ? "<=" : ">=");
        continue;
      }
      TokKind k = TokKind::Eof;
      switch (c) {
        case '=': k = TokKind::Eq; break;
        case '<': k = TokKind::Lt; break;
        case '>': k = TokKind::Gt; break;
        case '(': k = TokKind::LParen; break;
        case ')': k = TokKind::RParen; break;
        case '[': k = TokKind::LBracket; break;
        case ']': k = TokKind::RBracket; break;
        case '*': k = TokKind::Star; break;
        case '?': k = TokKind::Question; break;
        case '/': k = TokKind::Slash; break;
        case ':': k = TokKind::Colon; break;
        case ',': k = TokKind::Comma; break;
        case '|': k = TokKind::Bar; break;
        default: break;
      }
      if (k != TokKind::Eof) {
        std::string text(1, c);
        advance();
        push(k, l0, c0, text);
        continue;
      }
      error_char(l0, c0);
    }
    push(TokKind::Eof, line, col);
  }
};

}  // namespace

LexResult tokenize(std::string_view source, FileId file) {
  Lexer lx{source, file};
  lx.run();
  return std::move(lx.out);
}

}  // namespace spectec
