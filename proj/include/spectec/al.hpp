#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <variant>
#include <vector>

namespace spectec::al {

// ---------------------------------------------------------------------------
// Expressions

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct NameE {
  std::string name;
};
struct AppE {
  std::string func;  // without '$'
  std::vector<ExprPtr> args;
};
struct ListE {
  std::vector<ExprPtr> elems;
};
struct ConstructE {
  std::string ctor;
  std::vector<ExprPtr> args;
};
struct LengthE {
  ExprPtr arg;
};
struct OptSomeE {
  ExprPtr arg;
};
struct OptNoneE {};
struct NatE {
  uint64_t value = 0;
};

struct Expr {
  std::variant<NameE, AppE, ListE, ConstructE, LengthE, OptSomeE, OptNoneE,
               NatE>
      kind;
};

ExprPtr make_expr(decltype(Expr::kind) kind);

// ---------------------------------------------------------------------------
// Conditions

enum class CmpOp { Is, Ne, Lt, Le, Gt, Ge };

struct Cond;
using CondPtr = std::shared_ptr<const Cond>;

struct CompareC {
  CmpOp op;
  ExprPtr lhs;
  ExprPtr rhs;
};
// "a value (of the given value type) is on the top of the stack"
struct TopValueC {
  ExprPtr type;  // may be null: any value
};
struct IsDefinedC {
  ExprPtr arg;
};
struct NotC {
  CondPtr arg;
};

struct Cond {
  std::variant<CompareC, TopValueC, IsDefinedC, NotC> kind;
};

CondPtr make_cond(decltype(Cond::kind) kind);

// ---------------------------------------------------------------------------
// Instructions

struct Instr;

struct AssertI {
  CondPtr cond;
};
struct PopI {
  ExprPtr pattern;
};
struct PushI {
  ExprPtr value;
};
struct LetI {
  ExprPtr pattern;
  ExprPtr value;
};
struct IfI {
  CondPtr cond;
  std::vector<Instr> then_body;
  std::vector<Instr> else_body;
};
struct TrapI {};
struct ReturnI {
  ExprPtr value;  // may be null
};
struct ExecuteI {
  ExprPtr instrs;  // evaluates to an instruction or instruction sequence
};

struct Instr {
  std::variant<AssertI, PopI, PushI, LetI, IfI, TrapI, ReturnI, ExecuteI> kind;
};

// ---------------------------------------------------------------------------
// Algorithms

// One algorithm per instruction constructor; all reduction rules for the
// instruction are merged into one body.
struct Algorithm {
  std::string instr_ctor;
  std::vector<ExprPtr> params;  // patterns for the instruction's immediates
  std::vector<Instr> body;
};

// Animated auxiliary function (a '$' function defined by clauses).
struct FuncAlgorithm {
  std::string func;
  std::vector<std::string> params;
  std::vector<Instr> body;
};

struct AlgorithmSet {
  std::vector<Algorithm> algorithms;  // ordered by first rule in the source
  std::map<std::string, size_t> by_ctor;
  std::vector<FuncAlgorithm> funcs;
  std::map<std::string, size_t> func_by_name;

  const Algorithm* find(const std::string& ctor) const {
    auto it = by_ctor.find(ctor);
    return it == by_ctor.end() ? nullptr : &algorithms[it->second];
  }
  const FuncAlgorithm* find_func(const std::string& name) const {
    auto it = func_by_name.find(name);
    return it == func_by_name.end() ? nullptr : &funcs[it->second];
  }
};

// ---------------------------------------------------------------------------
// Serialization in constructor syntax, e.g.
//   execution_of_BINOP NameE(nt) NameE(binop):
//     AssertI(TopValueC(NameE(nt)))
//     ...
std::string to_string(const Expr& e);
std::string to_string(const Cond& c);
std::string dump(const Algorithm& a);
std::string dump(const FuncAlgorithm& f);
std::string dump(const AlgorithmSet& set);

// Def-before-use check over an algorithm body. Returns human-readable
// violations; an empty result means the algorithm is binding-sound.
std::vector<std::string> check_binding_soundness(const Algorithm& a);
std::vector<std::string> check_binding_soundness(const FuncAlgorithm& f);

}  // namespace spectec::al
