#include <algorithm>

#include "doctest.h"
#include "helpers.hpp"
#include "spectec/parser.hpp"
#include "spectec/pretty.hpp"

using namespace spectec;

namespace {

// The two reduction rules for the binary operator, as published.
const char* kBinopRules =
    "rule Step_pure/binop-val:\n"
    "  (CONST nt c_1) (CONST nt c_2) (BINOP nt binop) ~> (CONST nt c)\n"
    "  -- if $binop(binop, nt, c_1, c_2) = c\n"
    "\n"
    "rule Step_pure/binop-trap:\n"
    "  (CONST nt c_1) (CONST nt c_2) (BINOP nt binop) ~> TRAP\n"
    "  -- if $binop(binop, nt, c_1, c_2) = epsilon\n";

}  // namespace

TEST_CASE("the binop rule pair parses into two premised rules") {
  auto r = parse_source(kBinopRules, 0);
  REQUIRE(r.ok());
  REQUIRE(r.script.defs.size() == 2);
  auto* val = std::get_if<el::RuleDef>(&r.script.defs[0].kind);
  auto* trap = std::get_if<el::RuleDef>(&r.script.defs[1].kind);
  REQUIRE(val);
  REQUIRE(trap);
  CHECK(val->relation == "Step_pure");
  CHECK(val->rule_id == "binop-val");
  CHECK(trap->rule_id == "binop-trap");
  REQUIRE(val->premises.size() == 1);
  REQUIRE(trap->premises.size() == 1);
  CHECK(std::holds_alternative<el::IfPremise>(val->premises[0]->kind));
  // lhs is a three-element juxtaposition ending in the binop constructor
  auto* seq = std::get_if<el::SeqE>(&val->lhs->kind);
  REQUIRE(seq);
  REQUIRE(seq->elems.size() == 3);
  auto* head = std::get_if<el::ConstructE>(&seq->elems[2]->kind);
  REQUIRE(head);
  CHECK(head->ctor == "BINOP");
  // the trap rule's premise compares against epsilon
  auto& prem = std::get<el::IfPremise>(trap->premises[0]->kind);
  auto* eps = std::get_if<el::OptE>(&prem.rhs->kind);
  REQUIRE(eps);
  CHECK(eps->payload == nullptr);
}

TEST_CASE("a syntax alternation parses to nullary constructor cases") {
  auto r = parse_source("syntax numtype = I32 | I64 | F32 | F64\n", 0);
  REQUIRE(r.ok());
  auto* def = std::get_if<el::SyntaxDef>(&r.script.defs[0].kind);
  REQUIRE(def);
  CHECK(def->name == "numtype");
  REQUIRE(def->cases.size() == 4);
  for (auto& c : def->cases) {
    auto* ctor = std::get_if<el::CtorCase>(&c.kind);
    REQUIRE(ctor);
    CHECK(ctor->args.empty());
  }
}

TEST_CASE("a truncated rule is a parse error") {
  auto r = parse_source("rule R/x: A ~>\n", 0);
  CHECK(!r.ok());
  REQUIRE(!r.diags.empty());
  CHECK(r.diags[0].code == "E-PARSE");
}

TEST_CASE("recovery reports several independent errors in one run") {
  auto r = parse_source(
      "rule R/x: A ~>\n"
      "var ok : idx\n"
      "syntax broken =\n"
      "var ok2 : idx\n",
      0);
  CHECK(!r.ok());
  int errors = 0;
  for (auto& d : r.diags)
    if (d.severity == Severity::Error) ++errors;
  CHECK(errors >= 2);
  // the definitions between the errors still parsed
  int vars = 0;
  for (auto& d : r.script.defs)
    if (std::holds_alternative<el::VarDeclDef>(d.kind)) ++vars;
  CHECK(vars == 2);
}

TEST_CASE("iterated premises and list literals parse") {
  auto r = parse_source(
      "rule R/i:\n"
      "  (LABEL_ 0 [NOP, NOP] instr*) ~> epsilon\n"
      "  -- (if c = c_2)*\n",
      0);
  REQUIRE(r.ok());
  auto* rule = std::get_if<el::RuleDef>(&r.script.defs[0].kind);
  REQUIRE(rule);
  REQUIRE(rule->premises.size() == 1);
  auto* iter = std::get_if<el::IterPremise>(&rule->premises[0]->kind);
  REQUIRE(iter);
  CHECK(iter->iter == el::Iter::List);
}

TEST_CASE("pretty-printing round-trips the corpus") {
  const auto& fx = testutil::corpus_fixture();
  std::string printed = pretty_el(fx.corpus.script);
  auto again = parse_source(printed, 0);
  REQUIRE(again.ok());
  CHECK(el::equal(fx.corpus.script, again.script));
  // parse . pretty . parse = parse (fixpoint on the printed form)
  CHECK(pretty_el(again.script) == printed);
}

TEST_CASE("pretty-printing an empty script is empty") {
  CHECK(pretty_el(el::Script{}) == "");
}

TEST_CASE("round-trip preserves rule order") {
  auto r = parse_source(kBinopRules, 0);
  REQUIRE(r.ok());
  auto again = parse_source(pretty_el(r.script), 0);
  REQUIRE(again.ok());
  std::vector<std::string> ids;
  for (auto& d : again.script.defs)
    ids.push_back(std::get<el::RuleDef>(d.kind).rule_id);
  CHECK(ids == std::vector<std::string>{"binop-val", "binop-trap"});
}

TEST_CASE("every corpus span re-lexes to a token subsequence of its file") {
  const auto& fx = testutil::corpus_fixture();
  const FileTable& files = fx.corpus.files;

  // Tokens of each file, as (kind, text) pairs.
  std::vector<std::vector<std::pair<TokKind, std::string>>> file_tokens;
  for (int f = 0; f < files.size(); ++f) {
    auto lexed = tokenize(files.text(f), f);
    REQUIRE(lexed.diags.empty());
    std::vector<std::pair<TokKind, std::string>> toks;
    for (auto& t : lexed.tokens)
      if (t.kind != TokKind::Eof && t.kind != TokKind::Newline)
        toks.emplace_back(t.kind, t.text);
    file_tokens.push_back(std::move(toks));
  }

  int checked = 0;
  el::walk_spans(fx.corpus.script, [&](const SourceSpan& span) {
    if (span.file < 0) return;
    std::string_view text = files.slice(span);
    REQUIRE(!text.empty());
    auto lexed = tokenize(text, span.file);
    REQUIRE(lexed.diags.empty());
    std::vector<std::pair<TokKind, std::string>> sub;
    for (auto& t : lexed.tokens)
      if (t.kind != TokKind::Eof && t.kind != TokKind::Newline)
        sub.emplace_back(t.kind, t.text);
    // `sub` must appear as a contiguous subsequence of the file's tokens
    auto& all = file_tokens[span.file];
    bool found = !sub.empty() &&
                 std::search(all.begin(), all.end(), sub.begin(), sub.end()) !=
                     all.end();
    CHECK(found);
    ++checked;
  });
  CHECK(checked > 300);
}

TEST_CASE("tokenize and parse are deterministic") {
  const char* src = "syntax t = A | B\nrule R/r: A ~> B\n";
  auto a = parse_source(src, 0);
  auto b = parse_source(src, 0);
  REQUIRE(a.ok());
  CHECK(el::equal(a.script, b.script));
  CHECK(pretty_el(a.script) == pretty_el(b.script));
}
