#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "spectec/types.hpp"

// Internal Language: the elaborated, fully typed representation. Every
// expression node carries a Type; implicit injections between syntax sums
// appear as explicit SubE casts.
namespace spectec::il {

struct Exp;
using ExpPtr = std::shared_ptr<const Exp>;

struct VarE {
  std::string name;  // full name, subscript included ("c_1")
};
struct ConstructE {
  std::string ctor;
  std::string syntax;  // syntax that declares the constructor
  std::vector<ExpPtr> args;
};
struct CallE {
  std::string func;
  std::vector<ExpPtr> args;
};
// Instruction sequence; an element is either a scalar (one instruction) or a
// list-typed splice. The element's own type distinguishes the two.
struct SeqE {
  std::vector<ExpPtr> elems;
};
struct TupleE {
  std::vector<ExpPtr> elems;
};
struct OptE {
  ExpPtr payload;  // null = empty option (epsilon)
};
struct IterE {
  ExpPtr body;
  Iter iter;
  std::vector<std::string> iter_vars;  // variables iterated by this node
};
struct NatE {
  uint64_t value = 0;
};
struct ListE {
  std::vector<ExpPtr> elems;
};
// Cast inserted for an implicit inclusion; `from` is the inner type, the
// node's own type is the target.
struct SubE {
  ExpPtr inner;
  Type from;
};

struct Exp {
  SourceSpan span;
  Type type;
  std::variant<VarE, ConstructE, CallE, SeqE, TupleE, OptE, IterE, NatE, ListE,
               SubE>
      kind;
};

ExpPtr make_exp(SourceSpan span, Type type, decltype(Exp::kind) kind);

// Strips SubE wrappers.
const Exp& skip_casts(const Exp& e);

// ---------------------------------------------------------------------------
// Premises

struct Prem;
using PremPtr = std::shared_ptr<const Prem>;

struct IfPrem {
  ExpPtr lhs;
  el::CmpOp op;
  ExpPtr rhs;
};
struct ElsePrem {};
struct IterPrem {
  PremPtr body;
  Iter iter;
};

struct Prem {
  SourceSpan span;
  std::variant<IfPrem, ElsePrem, IterPrem> kind;
};

PremPtr make_prem(SourceSpan span, decltype(Prem::kind) kind);

// ---------------------------------------------------------------------------
// Tables

enum class BindOrigin { Lhs, Premise, Param };

struct Binding {
  Type type;
  BindOrigin origin = BindOrigin::Lhs;
  int premise_index = -1;  // first premise mentioning the var, if Premise
};

struct Rule {
  std::string relation;
  std::string id;
  SourceSpan span;
  ExpPtr lhs;
  ExpPtr rhs;
  std::vector<PremPtr> premises;
  std::map<std::string, Binding> bound_vars;
  std::string head_ctor;  // final lhs constructor (reduction rules only)
};

struct CtorSig {
  std::string name;
  std::vector<Type> args;
  SourceSpan span;
};

struct SyntaxInfo {
  std::string name;
  std::vector<CtorSig> ctors;
  std::vector<Type> inclusions;  // included syntaxes/prims, in case order
  SourceSpan span;
};

struct ClauseInfo {
  std::vector<ExpPtr> args;  // patterns
  ExpPtr result;
  std::vector<PremPtr> premises;
  std::map<std::string, Binding> bound_vars;
  SourceSpan span;
};

struct FuncInfo {
  std::string name;
  std::vector<Type> params;
  Type result;
  std::vector<ClauseInfo> clauses;  // may be empty: runtime-backed intrinsic
  SourceSpan span;
};

struct RelationInfo {
  std::string name;
  el::RelKind rel = el::RelKind::Reduction;
  Type lhs;
  Type rhs;
  std::vector<Rule> rules;  // source order
  SourceSpan span;
};

enum class DefKind { Syntax, Func, Relation };

struct RecursionGroup {
  std::vector<std::string> names;  // definition names in the group
  bool recursive = false;
};

struct Script {
  std::vector<std::string> syntax_order;
  std::map<std::string, SyntaxInfo> syntaxes;
  std::vector<std::string> func_order;
  std::map<std::string, FuncInfo> funcs;
  std::vector<std::string> relation_order;
  std::map<std::string, RelationInfo> relations;

  // constructor name -> declaring syntax
  std::map<std::string, std::string> ctor_syntax;
  // variable family base name -> type
  std::map<std::string, Type> var_families;

  // SCCs of the definition dependency graph, dependencies first.
  std::vector<RecursionGroup> recursion_groups;

  // definition order as written, for renderers
  std::vector<std::pair<DefKind, std::string>> def_order;

  const CtorSig* find_ctor(const std::string& ctor) const;
};

// Recomputes the strongly connected components of the definition dependency
// graph in dependency-first order. `elaborate` stores the same partition in
// `recursion_groups`.
std::vector<RecursionGroup> dependency_groups(const Script& script);

}  // namespace spectec::il
