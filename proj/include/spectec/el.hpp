#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "spectec/source.hpp"

// External Language: the span-annotated AST mirroring DSL surface syntax.
// Values are immutable once built; sharing via shared_ptr<const> keeps them
// cheap to copy across pipeline stages and threads.
namespace spectec::el {

enum class Iter { List, Opt };  // '*' and '?'

enum class CmpOp { Eq, Ne, Lt, Le, Gt, Ge };

const char* cmp_op_text(CmpOp op);  // "=", "=/=", "<", "<=", ">", ">="

// ---------------------------------------------------------------------------
// Types (as written in declarations)

struct Typ;
using TypPtr = std::shared_ptr<const Typ>;

struct NameT {
  std::string name;  // syntax name or prim name (nat, bool, ...)
};
struct TupleT {
  std::vector<TypPtr> elems;
};
struct IterT {
  TypPtr base;
  Iter iter;
};

struct Typ {
  SourceSpan span;
  std::variant<NameT, TupleT, IterT> kind;
};

TypPtr make_typ(SourceSpan span, std::variant<NameT, TupleT, IterT> kind);

// ---------------------------------------------------------------------------
// Expressions

struct Exp;
using ExpPtr = std::shared_ptr<const Exp>;

struct VarE {
  std::string base;
  std::string subscript;  // "" if none; "c_1" has base "c", subscript "1"
  std::string name() const {
    return subscript.empty() ? base : base + "_" + subscript;
  }
};
struct ConstructE {
  std::string ctor;
  std::vector<ExpPtr> args;
};
struct CallE {
  std::string func;  // without the '$'
  std::vector<ExpPtr> args;
};
// Juxtaposed instruction sequence; never directly nested in another SeqE.
struct SeqE {
  std::vector<ExpPtr> elems;
};
struct TupleE {
  std::vector<ExpPtr> elems;
};
// `epsilon` is OptE{nullptr}; a present payload is OptE{exp}.
struct OptE {
  ExpPtr payload;
};
struct IterE {
  ExpPtr body;
  Iter iter;
};
struct NatE {
  uint64_t value = 0;
};
struct ListE {
  std::vector<ExpPtr> elems;
};

struct Exp {
  SourceSpan span;
  std::variant<VarE, ConstructE, CallE, SeqE, TupleE, OptE, IterE, NatE, ListE>
      kind;
};

ExpPtr make_exp(SourceSpan span, decltype(Exp::kind) kind);

// ---------------------------------------------------------------------------
// Premises

struct Premise;
using PremPtr = std::shared_ptr<const Premise>;

struct IfPremise {
  ExpPtr lhs;
  CmpOp op;
  ExpPtr rhs;
};
struct ElsePremise {};
struct IterPremise {
  PremPtr body;
  Iter iter;
};

struct Premise {
  SourceSpan span;
  std::variant<IfPremise, ElsePremise, IterPremise> kind;
};

PremPtr make_premise(SourceSpan span, decltype(Premise::kind) kind);

// ---------------------------------------------------------------------------
// Definitions

struct CtorCase {
  std::string name;  // all caps
  std::vector<TypPtr> args;
};
struct InclCase {
  TypPtr type;  // inclusion of another syntax (or prim) into this sum
};
struct SyntaxCase {
  SourceSpan span;
  std::variant<CtorCase, InclCase> kind;
};

struct SyntaxDef {
  std::string name;
  std::vector<SyntaxCase> cases;
};
struct VarDeclDef {
  std::string var;
  TypPtr type;
};
struct FuncDeclDef {
  std::string name;  // without '$'
  std::vector<TypPtr> params;
  TypPtr result;
};
struct FuncClauseDef {
  std::string name;  // without '$'
  std::vector<ExpPtr> args;
  ExpPtr result;
  std::vector<PremPtr> premises;
};

enum class RelKind { Reduction, Typing };  // '~>' vs '|-'

struct RelationDef {
  std::string name;
  TypPtr lhs;
  RelKind rel;
  TypPtr rhs;
};
struct RuleDef {
  std::string relation;
  std::string rule_id;
  RelKind rel = RelKind::Reduction;  // arrow written between lhs and rhs
  ExpPtr lhs;
  ExpPtr rhs;  // reduction target or typing conclusion
  std::vector<PremPtr> premises;
};

struct Def {
  SourceSpan span;
  std::variant<SyntaxDef, VarDeclDef, FuncDeclDef, FuncClauseDef, RelationDef,
               RuleDef>
      kind;
};

struct Script {
  std::vector<Def> defs;  // source order, preserved exactly
};

// ---------------------------------------------------------------------------
// Structural equality, ignoring spans. Used by round-trip tests.

bool equal(const Typ& a, const Typ& b);
bool equal(const Exp& a, const Exp& b);
bool equal(const Premise& a, const Premise& b);
bool equal(const Def& a, const Def& b);
bool equal(const Script& a, const Script& b);

// Visits the span of every node in the script (defs, cases, types,
// expressions, premises).
void walk_spans(const Script& script,
                const std::function<void(const SourceSpan&)>& fn);

}  // namespace spectec::el
