#include <algorithm>
#include <set>

#include "doctest.h"
#include "helpers.hpp"
#include "ilverify/ilverify.hpp"
#include "spectec/parser.hpp"

using namespace spectec;

namespace {

// Parses text against the corpus preamble (syntax + function declarations).
ElabResult elaborate_with_preamble(const std::string& extra) {
  const auto& fx = testutil::corpus_fixture();
  std::string text =
      testutil::read_file_or_die(testutil::corpus_dir() + "/syntax.spectec") +
      testutil::read_file_or_die(testutil::corpus_dir() +
                                 "/functions.spectec") +
      "relation Step_pure: admininstr* ~> admininstr*\n" + extra;
  (void)fx;
  auto parsed = parse_source(text, 0);
  REQUIRE(parsed.ok());
  return elaborate(parsed.script);
}

}  // namespace

TEST_CASE("the corpus elaborates with zero diagnostics") {
  const auto& fx = testutil::corpus_fixture();
  auto r = elaborate(fx.corpus.script);
  CHECK(r.ok());
  CHECK(r.diags.empty());  // not even warnings
}

TEST_CASE("binop call sites have the optional payload type") {
  const auto& fx = testutil::corpus_fixture();
  const il::RelationInfo& rel = fx.il.relations.at("Step_pure");
  const il::Rule* val = nullptr;
  for (auto& r : rel.rules)
    if (r.id == "binop-val") val = &r;
  REQUIRE(val);
  auto& prem = std::get<il::IfPrem>(val->premises[0]->kind);
  const il::Exp& call = il::skip_casts(*prem.lhs);
  REQUIRE(std::holds_alternative<il::CallE>(call.kind));
  il::Type expected =
      il::Type::iter(il::Type::syn("c_numtype"), el::Iter::Opt);
  CHECK(call.type == expected);
  // the scalar right-hand side was lifted into the option explicitly
  CHECK(std::holds_alternative<il::OptE>(prem.rhs->kind));
  CHECK(prem.rhs->type == expected);
}

TEST_CASE("a missing argument raises exactly one arity error at the call") {
  auto r = elaborate_with_preamble(
      "rule Step_pure/mutant:\n"
      "  (CONST nt c_1) (CONST nt c_2) (BINOP nt binop) ~> (CONST nt c)\n"
      "  -- if $binop(binop, nt, c_1) = c\n");
  CHECK(!r.ok());
  int arity = 0;
  for (auto& d : r.diags) {
    if (d.code == "E-ARITY") {
      ++arity;
      // the span covers the whole call expression
      CHECK(d.span.line_start == d.span.line_end);
      CHECK(d.span.col_end > d.span.col_start);
    } else {
      CHECK(d.severity == Severity::Warning);
    }
  }
  CHECK(arity == 1);
}

TEST_CASE("an empty script elaborates to an empty IL") {
  auto r = elaborate(el::Script{});
  REQUIRE(r.ok());
  CHECK(r.diags.empty());
  CHECK(r.script->syntaxes.empty());
  CHECK(r.script->funcs.empty());
  CHECK(r.script->recursion_groups.empty());
}

TEST_CASE("unknown names are E-UNDEF") {
  auto r = elaborate_with_preamble(
      "rule Step_pure/bad:\n"
      "  (CONST nt c) NOSUCH ~> epsilon\n");
  CHECK(!r.ok());
  bool found = false;
  for (auto& d : r.diags)
    if (d.code == "E-UNDEF") found = true;
  CHECK(found);
}

TEST_CASE("operand type mismatches are E-TYPE") {
  auto r = elaborate_with_preamble(
      "rule Step_pure/bad:\n"
      "  (CONST nt nt) DROP ~> epsilon\n");
  CHECK(!r.ok());
  bool found = false;
  for (auto& d : r.diags)
    if (d.code == "E-TYPE") found = true;
  CHECK(found);
}

TEST_CASE("duplicate rule ids are E-DUP") {
  auto r = elaborate_with_preamble(
      "rule Step_pure/dup: NOP ~> epsilon\n"
      "rule Step_pure/dup: NOP ~> epsilon\n");
  CHECK(!r.ok());
  bool found = false;
  for (auto& d : r.diags)
    if (d.code == "E-DUP") found = true;
  CHECK(found);
}

TEST_CASE("multiplicity conflicts are E-MULT") {
  // `instr` used both as a scalar and under a list iterator
  auto r = elaborate_with_preamble(
      "rule Step_pure/bad:\n"
      "  (BLOCK bt instr*) ~> instr\n");
  CHECK(!r.ok());
  bool found = false;
  for (auto& d : r.diags)
    if (d.code == "E-MULT") found = true;
  CHECK(found);
}

TEST_CASE("an unused premise-bound variable warns W-UNUSED") {
  auto r = elaborate_with_preamble(
      "rule Step_pure/lazy:\n"
      "  (BLOCK bt instr*) ~> epsilon\n"
      "  -- if $blockarity(bt) = n\n");
  REQUIRE(r.ok());  // warnings only
  REQUIRE(r.diags.size() == 1);
  CHECK(r.diags[0].code == "W-UNUSED");
  CHECK(r.diags[0].severity == Severity::Warning);
}

TEST_CASE("left-hand-side pattern variables are exempt from W-UNUSED") {
  // drop discards its operand; nt and c are deliberately unused
  const auto& fx = testutil::corpus_fixture();
  auto r = elaborate(fx.corpus.script);
  for (auto& d : r.diags) CHECK(d.code != "W-UNUSED");
}

TEST_CASE("diagnostics are stable and ordered across runs") {
  std::string bad =
      "rule Step_pure/bad1:\n  (CONST nt c_1) (UNOP nt unop) ~> NOSUCH\n"
      "rule Step_pure/bad2:\n  (CONST zz c) DROP ~> epsilon\n";
  auto a = elaborate_with_preamble(bad);
  auto b = elaborate_with_preamble(bad);
  REQUIRE(a.diags.size() == b.diags.size());
  for (size_t i = 0; i < a.diags.size(); ++i) {
    CHECK(a.diags[i].code == b.diags[i].code);
    CHECK(a.diags[i].message == b.diags[i].message);
  }
  // ordered by (file, line, col)
  for (size_t i = 1; i < a.diags.size(); ++i) {
    auto key = [](const Diagnostic& d) {
      return std::tuple(d.span.file, d.span.line_start, d.span.col_start);
    };
    CHECK(key(a.diags[i - 1]) <= key(a.diags[i]));
  }
}

TEST_CASE("re-deriving every annotation reproduces the stored types") {
  const auto& fx = testutil::corpus_fixture();
  auto problems = ilverify::recheck(fx.il);
  for (auto& p : problems) MESSAGE(p);
  CHECK(problems.empty());
}

TEST_CASE("successful scripts have no dangling references") {
  const auto& fx = testutil::corpus_fixture();
  // every constructor resolves
  for (const auto& [ctor, syn] : fx.il.ctor_syntax)
    CHECK(fx.il.syntaxes.count(syn) == 1);
  // relation shapes refer to known syntaxes
  for (const auto& name : fx.il.relation_order)
    CHECK(fx.il.relations.count(name) == 1);
}

// --- dependency groups ------------------------------------------------------

TEST_CASE("mutually recursive functions form one group") {
  auto parsed = parse_source(
      "def $f(nat) : nat\n"
      "def $f(n) = $g(n)\n"
      "def $g(nat) : nat\n"
      "def $g(n) = $f(n)\n"
      "var n : nat\n",
      0);
  REQUIRE(parsed.ok());
  auto r = elaborate(parsed.script);
  REQUIRE(r.ok());
  bool found = false;
  for (auto& g : r.script->recursion_groups) {
    if (g.names.size() == 2) {
      CHECK(g.recursive);
      std::set<std::string> names(g.names.begin(), g.names.end());
      CHECK(names == std::set<std::string>{"$f", "$g"});
      found = true;
    }
  }
  CHECK(found);
}

TEST_CASE("blockarity is a non-recursive singleton, by reachability") {
  const auto& fx = testutil::corpus_fixture();
  auto groups = il::dependency_groups(fx.il);
  bool found = false;
  for (auto& g : groups) {
    if (g.names == std::vector<std::string>{"$blockarity"}) {
      CHECK(!g.recursive);
      found = true;
    }
  }
  CHECK(found);

  // brute-force reachability oracle: $blockarity cannot reach itself
  // through the call graph of the corpus functions
  std::set<std::string> reachable;
  std::function<void(const il::Exp&)> scan = [&](const il::Exp& e) {
    if (auto* c = std::get_if<il::CallE>(&il::skip_casts(e).kind)) {
      reachable.insert(c->func);
      for (auto& a : c->args) scan(*a);
    } else if (auto* con =
                   std::get_if<il::ConstructE>(&il::skip_casts(e).kind)) {
      for (auto& a : con->args) scan(*a);
    }
  };
  for (auto& cl : fx.il.funcs.at("blockarity").clauses) scan(*cl.result);
  CHECK(reachable.count("blockarity") == 0);
}

TEST_CASE("groups come out dependencies-first") {
  const auto& fx = testutil::corpus_fixture();
  std::map<std::string, size_t> position;
  for (size_t i = 0; i < fx.il.recursion_groups.size(); ++i)
    for (auto& n : fx.il.recursion_groups[i].names) position[n] = i;
  // admininstr includes instr, so instr's group precedes admininstr's
  CHECK(position.at("instr") < position.at("admininstr"));
  // relations depend on the syntaxes they mention
  CHECK(position.at("admininstr") < position.at("relation:Step_pure"));
  // the instr group is self-recursive (blocks contain instructions)
  for (auto& g : fx.il.recursion_groups)
    if (std::count(g.names.begin(), g.names.end(), "instr"))
      CHECK(g.recursive);
}

TEST_CASE("dependency groups of an empty script are empty") {
  auto r = elaborate(el::Script{});
  REQUIRE(r.ok());
  CHECK(il::dependency_groups(*r.script).empty());
}

// --- infer_multiplicity ------------------------------------------------------

TEST_CASE("an iterated constant pattern types as a list of instructions") {
  const auto& fx = testutil::corpus_fixture();
  auto parsed = parse_source("rule X/x: (CONST nt c)* ~> epsilon\n", 0);
  REQUIRE(parsed.ok());
  auto& rule = std::get<el::RuleDef>(parsed.script.defs[0].kind);
  std::vector<Diagnostic> diags;
  il::Type t =
      infer_multiplicity(*rule.lhs, {}, fx.corpus.script, diags);
  CHECK(diags.empty());
  CHECK(t == il::Type::iter(il::Type::syn("instr"), el::Iter::List));
}

TEST_CASE("epsilon takes its type from the expected context") {
  const auto& fx = testutil::corpus_fixture();
  auto parsed = parse_source("rule X/x: epsilon ~> epsilon\n", 0);
  REQUIRE(parsed.ok());
  auto& rule = std::get<el::RuleDef>(parsed.script.defs[0].kind);
  std::vector<Diagnostic> diags;
  il::Type expected = il::Type::iter(il::Type::syn("instr"), el::Iter::Opt);
  il::Type t =
      infer_multiplicity(*rule.lhs, {}, fx.corpus.script, diags, &expected);
  CHECK(diags.empty());
  CHECK(t == expected);
}

TEST_CASE("subscripted variables share the base family type") {
  const auto& fx = testutil::corpus_fixture();
  auto parsed = parse_source("rule X/x: c_1 ~> epsilon\n", 0);
  REQUIRE(parsed.ok());
  auto& rule = std::get<el::RuleDef>(parsed.script.defs[0].kind);
  std::vector<Diagnostic> diags;
  il::Type t = infer_multiplicity(*rule.lhs, {}, fx.corpus.script, diags);
  CHECK(diags.empty());
  CHECK(t == il::Type::syn("c_numtype"));
}

TEST_CASE("the typing context argument overrides variable families") {
  const auto& fx = testutil::corpus_fixture();
  auto parsed = parse_source("rule X/x: c_1 ~> epsilon\n", 0);
  REQUIRE(parsed.ok());
  auto& rule = std::get<el::RuleDef>(parsed.script.defs[0].kind);
  std::vector<Diagnostic> diags;
  std::map<std::string, il::Type> env{{"c", il::Type::prim(il::Prim::Nat)}};
  il::Type t = infer_multiplicity(*rule.lhs, env, fx.corpus.script, diags);
  CHECK(t == il::Type::prim(il::Prim::Nat));
}

TEST_CASE("conflicting multiplicities in one expression are E-MULT") {
  const auto& fx = testutil::corpus_fixture();
  auto parsed = parse_source("rule X/x: (LABEL_ n instr* [instr]) ~> A\n", 0);
  REQUIRE(parsed.ok());
  auto& rule = std::get<el::RuleDef>(parsed.script.defs[0].kind);
  std::vector<Diagnostic> diags;
  infer_multiplicity(*rule.lhs, {}, fx.corpus.script, diags);
  bool found = false;
  for (auto& d : diags)
    if (d.code == "E-MULT") found = true;
  CHECK(found);
}
