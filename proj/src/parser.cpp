#include "spectec/parser.hpp"

#include <initializer_list>
#include <optional>
#include <sstream>

namespace spectec {
namespace {

using namespace el;

bool is_all_caps(const std::string& s) {
  for (char c : s)
    if (c >= 'a' && c <= 'z') return false;
  return true;
}

bool is_plain_var(const Token& t) {
  // Variables may not contain hyphens (those are reserved for rule ids).
  return t.kind == TokKind::LowerId && t.text.find('-') == std::string::npos;
}

struct ParseError {};  // thrown to unwind to the recovery point

struct Parser {
  const std::vector<Token>& toks;
  size_t pos = 0;
  std::vector<Diagnostic> diags;
  Script script;

  const Token& peek(size_t off = 0) const {
    size_t i = pos + off;
    return i < toks.size() ? toks[i] : toks.back();
  }
  const Token& cur() const { return peek(); }
  void advance() {
    if (pos + 1 < toks.size()) ++pos;
  }
  bool at(TokKind k) const { return cur().kind == k; }

  void skip_newlines() {
    while (at(TokKind::Newline)) advance();
  }

  // True if the token after any newlines is `k`; if so, consume up to and
  // including it.
  bool accept_through_newlines(TokKind k) {
    size_t p = pos;
    while (p < toks.size() && toks[p].kind == TokKind::Newline) ++p;
    if (p < toks.size() && toks[p].kind == k) {
      pos = p;
      advance();
      return true;
    }
    return false;
  }

  [[noreturn]] void fail(const std::string& expected) {
    std::ostringstream os;
    os << "expected " << expected << ", found " << tok_kind_name(cur().kind);
    if (!cur().text.empty() && cur().kind != TokKind::Newline)
      os << " '" << cur().text << "'";
    diags.push_back(Diagnostic{Severity::Error, "E-PARSE", os.str(),
                               cur().span,
                               {}});
    throw ParseError{};
  }

  Token expect(TokKind k, const char* what) {
    if (!at(k)) fail(what);
    Token t = cur();
    advance();
    return t;
  }

  bool accept(TokKind k) {
    if (at(k)) {
      advance();
      return true;
    }
    return false;
  }

  // --- types -----------------------------------------------------------

  TypPtr parse_typ() {
    TypPtr base = parse_typ_atom();
    for (;;) {
      if (at(TokKind::Star)) {
        SourceSpan sp = SourceSpan::join(base->span, cur().span);
        advance();
        base = make_typ(sp, IterT{base, Iter::List});
      } else if (at(TokKind::Question)) {
        SourceSpan sp = SourceSpan::join(base->span, cur().span);
        advance();
        base = make_typ(sp, IterT{base, Iter::Opt});
      } else {
        return base;
      }
    }
  }

  TypPtr parse_typ_atom() {
    if (at(TokKind::LowerId)) {
      if (!is_plain_var(cur())) fail("a type name");
      Token t = cur();
      advance();
      return make_typ(t.span, NameT{t.text});
    }
    if (at(TokKind::LParen)) {
      SourceSpan start = cur().span;
      advance();
      std::vector<TypPtr> elems;
      elems.push_back(parse_typ());
      while (accept(TokKind::Comma)) elems.push_back(parse_typ());
      SourceSpan end = expect(TokKind::RParen, "')'").span;
      if (elems.size() == 1) return elems[0];
      return make_typ(SourceSpan::join(start, end), TupleT{std::move(elems)});
    }
    fail("a type");
  }

  // --- expressions ------------------------------------------------------

  bool starts_atom(const Token& t) const {
    switch (t.kind) {
      case TokKind::LowerId:
      case TokKind::UpperId:
      case TokKind::DollarId:
      case TokKind::Nat:
      case TokKind::KwEpsilon:
      case TokKind::LParen:
      case TokKind::LBracket:
        return true;
      default:
        return false;
    }
  }

  ExpPtr apply_iters(ExpPtr e) {
    for (;;) {
      if (at(TokKind::Star)) {
        SourceSpan sp = SourceSpan::join(e->span, cur().span);
        advance();
        e = make_exp(sp, IterE{e, Iter::List});
      } else if (at(TokKind::Question)) {
        SourceSpan sp = SourceSpan::join(e->span, cur().span);
        advance();
        e = make_exp(sp, IterE{e, Iter::Opt});
      } else {
        return e;
      }
    }
  }

  ExpPtr parse_atom() {
    const Token t = cur();
    switch (t.kind) {
      case TokKind::LowerId: {
        if (!is_plain_var(t)) fail("an expression");
        advance();
        return apply_iters(make_exp(t.span, VarE{t.base, t.subscript}));
      }
      case TokKind::UpperId: {
        if (!is_all_caps(t.text)) fail("an expression");
        advance();
        return apply_iters(make_exp(t.span, ConstructE{t.text, {}}));
      }
      case TokKind::Nat: {
        advance();
        return make_exp(t.span, NatE{t.nat});
      }
      case TokKind::KwEpsilon: {
        advance();
        return make_exp(t.span, OptE{nullptr});
      }
      case TokKind::DollarId: {
        advance();
        expect(TokKind::LParen, "'(' after function name");
        std::vector<ExpPtr> args;
        if (!at(TokKind::RParen)) {
          args.push_back(parse_exp());
          while (accept(TokKind::Comma)) args.push_back(parse_exp());
        }
        SourceSpan end = expect(TokKind::RParen, "')'").span;
        return apply_iters(make_exp(SourceSpan::join(t.span, end),
                                    CallE{t.text, std::move(args)}));
      }
      case TokKind::LBracket: {
        advance();
        std::vector<ExpPtr> elems;
        if (!at(TokKind::RBracket)) {
          elems.push_back(parse_exp());
          while (accept(TokKind::Comma)) elems.push_back(parse_exp());
        }
        SourceSpan end = expect(TokKind::RBracket, "']'").span;
        return apply_iters(
            make_exp(SourceSpan::join(t.span, end), ListE{std::move(elems)}));
      }
      case TokKind::LParen: {
        advance();
        // Leading all-caps identifier means constructor application.
        if (at(TokKind::UpperId) && is_all_caps(cur().text)) {
          Token ctor = cur();
          advance();
          std::vector<ExpPtr> args;
          while (starts_atom(cur())) args.push_back(parse_atom());
          SourceSpan end = expect(TokKind::RParen, "')'").span;
          return apply_iters(make_exp(SourceSpan::join(t.span, end),
                                      ConstructE{ctor.text, std::move(args)}));
        }
        std::vector<ExpPtr> elems;
        elems.push_back(parse_exp());
        while (accept(TokKind::Comma)) elems.push_back(parse_exp());
        SourceSpan end = expect(TokKind::RParen, "')'").span;
        if (elems.size() == 1) return apply_iters(elems[0]);
        return apply_iters(
            make_exp(SourceSpan::join(t.span, end), TupleE{std::move(elems)}));
      }
      default:
        fail("an expression");
    }
  }

  // A (possibly juxtaposed) expression; stops before any token that cannot
  // start an atom.
  ExpPtr parse_exp() {
    ExpPtr first = parse_atom();
    if (!starts_atom(cur())) return first;
    std::vector<ExpPtr> elems{first};
    while (starts_atom(cur())) elems.push_back(parse_atom());
    SourceSpan sp = SourceSpan::join(elems.front()->span, elems.back()->span);
    return make_exp(sp, SeqE{std::move(elems)});
  }

  // --- premises ---------------------------------------------------------

  std::optional<CmpOp> cmp_op_at() {
    switch (cur().kind) {
      case TokKind::Eq: return CmpOp::Eq;
      case TokKind::Ne: return CmpOp::Ne;
      case TokKind::Lt: return CmpOp::Lt;
      case TokKind::Le: return CmpOp::Le;
      case TokKind::Gt: return CmpOp::Gt;
      case TokKind::Ge: return CmpOp::Ge;
      default: return std::nullopt;
    }
  }

  PremPtr parse_if_body(SourceSpan start) {
    expect(TokKind::KwIf, "'if'");
    ExpPtr lhs = parse_exp();
    auto op = cmp_op_at();
    if (!op) fail("a comparison operator");
    advance();
    ExpPtr rhs = parse_exp();
    return make_premise(SourceSpan::join(start, rhs->span),
                        IfPremise{lhs, *op, rhs});
  }

  PremPtr parse_premise() {
    SourceSpan start = expect(TokKind::PremDash, "'--'").span;
    if (at(TokKind::KwOtherwise)) {
      SourceSpan sp = SourceSpan::join(start, cur().span);
      advance();
      return make_premise(sp, ElsePremise{});
    }
    if (at(TokKind::LParen)) {
      advance();
      PremPtr body = parse_if_body(cur().span);
      expect(TokKind::RParen, "')'");
      Iter iter;
      if (accept(TokKind::Star)) {
        iter = Iter::List;
      } else if (accept(TokKind::Question)) {
        iter = Iter::Opt;
      } else {
        fail("'*' or '?' after iterated premise");
      }
      return make_premise(SourceSpan::join(start, body->span),
                          IterPremise{body, iter});
    }
    return parse_if_body(start);
  }

  std::vector<PremPtr> parse_premises() {
    std::vector<PremPtr> out;
    while (accept_through_newlines(TokKind::PremDash)) {
      --pos;  // re-expose the '--' for parse_premise
      out.push_back(parse_premise());
    }
    return out;
  }

  // --- definitions ------------------------------------------------------

  void end_of_def() {
    if (!at(TokKind::Newline) && !at(TokKind::Eof))
      fail("end of line after definition");
  }

  SyntaxCase parse_syntax_case() {
    if (at(TokKind::UpperId)) {
      if (!is_all_caps(cur().text)) fail("a constructor name (all caps)");
      Token ctor = cur();
      advance();
      std::vector<TypPtr> args;
      SourceSpan sp = ctor.span;
      while (at(TokKind::LowerId) || at(TokKind::LParen)) {
        args.push_back(parse_typ());
        sp = SourceSpan::join(sp, args.back()->span);
      }
      return SyntaxCase{sp, CtorCase{ctor.text, std::move(args)}};
    }
    if (at(TokKind::LowerId)) {
      TypPtr t = parse_typ();
      return SyntaxCase{t->span, InclCase{t}};
    }
    fail("a syntax case");
  }

  Def parse_syntax_def(SourceSpan start) {
    Token name = expect(TokKind::LowerId, "syntax name");
    if (!is_plain_var(name)) fail("a syntax name");
    expect(TokKind::Eq, "'='");
    SyntaxDef def;
    def.name = name.text;
    // Optional leading '|' (possibly after a line break).
    accept_through_newlines(TokKind::Bar);
    def.cases.push_back(parse_syntax_case());
    while (accept_through_newlines(TokKind::Bar))
      def.cases.push_back(parse_syntax_case());
    end_of_def();
    SourceSpan sp = SourceSpan::join(start, def.cases.back().span);
    return Def{sp, std::move(def)};
  }

  Def parse_var_decl(SourceSpan start) {
    Token name = expect(TokKind::LowerId, "variable name");
    if (!is_plain_var(name) || !name.subscript.empty())
      fail("a variable family name (no subscript)");
    expect(TokKind::Colon, "':'");
    TypPtr t = parse_typ();
    end_of_def();
    return Def{SourceSpan::join(start, t->span), VarDeclDef{name.text, t}};
  }

  // `def $f(...) : t` declares; `def $f(...) = e` is a clause.
  Def parse_func_def(SourceSpan start) {
    Token name = expect(TokKind::DollarId, "function name");
    expect(TokKind::LParen, "'('");
    std::vector<ExpPtr> items;
    if (!at(TokKind::RParen)) {
      items.push_back(parse_exp());
      while (accept(TokKind::Comma)) items.push_back(parse_exp());
    }
    expect(TokKind::RParen, "')'");
    if (accept(TokKind::Colon)) {
      FuncDeclDef def;
      def.name = name.text;
      for (auto& item : items) def.params.push_back(exp_to_typ(item));
      def.result = parse_typ();
      end_of_def();
      return Def{SourceSpan::join(start, def.result->span), std::move(def)};
    }
    if (accept(TokKind::Eq)) {
      FuncClauseDef def;
      def.name = name.text;
      def.args = std::move(items);
      def.result = parse_exp();
      SourceSpan sp = SourceSpan::join(start, def.result->span);
      def.premises = parse_premises();
      if (!def.premises.empty())
        sp = SourceSpan::join(sp, def.premises.back()->span);
      end_of_def();
      return Def{sp, std::move(def)};
    }
    fail("':' (declaration) or '=' (clause)");
  }

  // Declaration parameter lists reuse the expression parser; reinterpret.
  TypPtr exp_to_typ(const ExpPtr& e) {
    if (auto* v = std::get_if<VarE>(&e->kind)) {
      if (!v->subscript.empty()) fail_at(e->span, "a type name");
      return make_typ(e->span, NameT{v->base});
    }
    if (auto* it = std::get_if<IterE>(&e->kind))
      return make_typ(e->span, IterT{exp_to_typ(it->body), it->iter});
    if (auto* tu = std::get_if<TupleE>(&e->kind)) {
      std::vector<TypPtr> elems;
      for (auto& x : tu->elems) elems.push_back(exp_to_typ(x));
      return make_typ(e->span, TupleT{std::move(elems)});
    }
    fail_at(e->span, "a type");
  }

  [[noreturn]] void fail_at(const SourceSpan& span, const std::string& what) {
    diags.push_back(Diagnostic{Severity::Error, "E-PARSE",
                               "expected " + what, span,
                               {}});
    throw ParseError{};
  }

  Def parse_relation_decl(SourceSpan start) {
    Token name = expect(TokKind::UpperId, "relation name");
    expect(TokKind::Colon, "':'");
    TypPtr lhs = parse_typ();
    RelKind rel;
    if (accept(TokKind::Arrow)) {
      rel = RelKind::Reduction;
    } else if (accept(TokKind::Turnstile)) {
      rel = RelKind::Typing;
    } else {
      fail("'~>' or '|-'");
    }
    TypPtr rhs = parse_typ();
    end_of_def();
    return Def{SourceSpan::join(start, rhs->span),
               RelationDef{name.text, lhs, rel, rhs}};
  }

  Def parse_rule_def(SourceSpan start) {
    Token rel = expect(TokKind::UpperId, "relation name");
    expect(TokKind::Slash, "'/'");
    if (!at(TokKind::LowerId) && !at(TokKind::KwIf)) fail("a rule id");
    Token id = cur();
    advance();
    expect(TokKind::Colon, "':'");
    skip_newlines();
    ExpPtr lhs = parse_exp();
    if (!at(TokKind::Arrow) && !at(TokKind::Turnstile))
      fail("'~>' or '|-'");
    RelKind rk =
        at(TokKind::Arrow) ? RelKind::Reduction : RelKind::Typing;
    advance();
    ExpPtr rhs = parse_exp();
    RuleDef def;
    def.relation = rel.text;
    def.rule_id = id.text;
    def.rel = rk;
    def.lhs = lhs;
    def.rhs = rhs;
    SourceSpan sp = SourceSpan::join(start, rhs->span);
    def.premises = parse_premises();
    if (!def.premises.empty())
      sp = SourceSpan::join(sp, def.premises.back()->span);
    end_of_def();
    return Def{sp, std::move(def)};
  }

  void recover_to_next_def() {
    for (;;) {
      if (at(TokKind::Eof)) return;
      if (at(TokKind::Newline)) {
        switch (peek(1).kind) {
          case TokKind::KwSyntax:
          case TokKind::KwVar:
          case TokKind::KwDef:
          case TokKind::KwRelation:
          case TokKind::KwRule:
          case TokKind::Eof:
            advance();
            return;
          default:
            break;
        }
      }
      advance();
    }
  }

  void run() {
    skip_newlines();
    while (!at(TokKind::Eof)) {
      SourceSpan start = cur().span;
      try {
        switch (cur().kind) {
          case TokKind::KwSyntax:
            advance();
            script.defs.push_back(parse_syntax_def(start));
            break;
          case TokKind::KwVar:
            advance();
            script.defs.push_back(parse_var_decl(start));
            break;
          case TokKind::KwDef:
            advance();
            script.defs.push_back(parse_func_def(start));
            break;
          case TokKind::KwRelation:
            advance();
            script.defs.push_back(parse_relation_decl(start));
            break;
          case TokKind::KwRule:
            advance();
            script.defs.push_back(parse_rule_def(start));
            break;
          default:
            fail("a definition (syntax, var, def, relation, or rule)");
        }
      } catch (ParseError&) {
        recover_to_next_def();
      }
      skip_newlines();
    }
  }
};

}  // namespace

ParseResult parse_script(const std::vector<Token>& tokens) {
  Parser p{tokens};
  p.run();
  ParseResult r;
  r.script = std::move(p.script);
  r.diags = std::move(p.diags);
  return r;
}

ParseResult parse_source(std::string_view source, FileId file) {
  LexResult lexed = tokenize(source, file);
  ParseResult r = parse_script(lexed.tokens);
  r.diags.insert(r.diags.begin(), lexed.diags.begin(), lexed.diags.end());
  return r;
}

}  // namespace spectec
