#pragma once

#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "spectec/al.hpp"
#include "spectec/il.hpp"
#include "spectec/module.hpp"
#include "spectec/value.hpp"

namespace spectec::rt {

// Raised when an algorithm-level invariant fails on validated input: an
// AssertI that does not hold, an unbound variable, a pop from an empty
// stack. These indicate a bug in the pipeline, never a user error.
struct InterpreterBug : std::logic_error {
  using std::logic_error::logic_error;
};

// Raised by invoke() when the arguments do not match the function signature.
struct ArgumentMismatch : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Runtime meta-values: numbers, naturals, constructed terms, sequences.
// Options are sequences of length <= 1.

struct RtVal {
  enum class Kind { Num, Nat, Con, Seq };
  Kind kind = Kind::Nat;
  Value num;
  uint64_t nat = 0;
  std::string ctor;
  std::vector<RtVal> items;  // Con arguments or Seq elements

  static RtVal of_num(Value v) {
    RtVal r;
    r.kind = Kind::Num;
    r.num = v;
    return r;
  }
  static RtVal of_nat(uint64_t n) {
    RtVal r;
    r.kind = Kind::Nat;
    r.nat = n;
    return r;
  }
  static RtVal of_con(std::string ctor, std::vector<RtVal> args = {}) {
    RtVal r;
    r.kind = Kind::Con;
    r.ctor = std::move(ctor);
    r.items = std::move(args);
    return r;
  }
  static RtVal of_seq(std::vector<RtVal> elems = {}) {
    RtVal r;
    r.kind = Kind::Seq;
    r.items = std::move(elems);
    return r;
  }

  bool operator==(const RtVal&) const = default;
  std::string to_string() const;
};

// Equality with numeric unification: integer numbers and naturals compare by
// unsigned value; floats compare bit-exactly.
bool rt_equal(const RtVal& a, const RtVal& b);

// ---------------------------------------------------------------------------
// Configuration

// One pending item: either a constructed instruction value or an internal
// unwinding marker.
struct RtInstr {
  enum class Kind { Instr, ExitLabel, ExitFrame };
  Kind kind = Kind::Instr;
  RtVal instr;  // Kind::Instr

  static RtInstr of(RtVal v) { return RtInstr{Kind::Instr, std::move(v)}; }
  static RtInstr exit_label() { return RtInstr{Kind::ExitLabel, {}}; }
  static RtInstr exit_frame() { return RtInstr{Kind::ExitFrame, {}}; }
};

struct FuncInst {
  std::vector<NumType> params;
  std::vector<NumType> results;
  std::vector<NumType> locals;
  std::vector<RtInstr> code;  // translated body
  std::string name;           // export name or numeric id, for messages
};

struct GlobalInst {
  NumType type = NumType::I32;
  bool mut = false;
  Value value;
};

struct Store {
  std::vector<FuncInst> funcs;
  std::vector<GlobalInst> globals;
  std::map<std::string, uint32_t> exports;
};

struct Label {
  uint32_t arity = 0;
  std::vector<RtInstr> cont;  // branch continuation
  size_t stack_height = 0;
};

struct Frame {
  std::vector<Value> locals;
  uint32_t arity = 0;
  size_t stack_base = 0;   // value-stack height at entry (after args)
  size_t label_base = 0;   // label-stack window start
};

struct Config {
  Store store;
  std::vector<Value> stack;
  std::vector<Frame> frames;
  std::vector<Label> labels;     // all frames' labels; frames hold windows
  std::vector<RtInstr> pending;  // reversed: back() executes next
  bool trapped = false;

  bool done() const { return trapped || pending.empty(); }
};

// ---------------------------------------------------------------------------
// Interpreter

using Env = std::map<std::string, RtVal>;

// Drives AL algorithms against a configuration. The algorithm set provides
// one algorithm per instruction constructor; the four numeric operators are
// intrinsic; every other called function needs a function algorithm.
class Interpreter {
 public:
  Interpreter(const il::Script& script, const al::AlgorithmSet& algorithms);

  // Builds a store from a validated module (globals initialized, function
  // bodies translated to constructed instruction values).
  Store instantiate(const MwModule& mod) const;

  // Pushes the arguments, runs the function to completion, and returns its
  // results or Trap. The value stack must hold exactly the declared result
  // arity afterwards.
  TrapResult invoke(Config& config, uint32_t func_index,
                    const std::vector<Value>& args) const;

  // Executes one pending item (a value push, an administrative form, or an
  // instruction with a registered algorithm).
  void step_instr(Config& config) const;

  // Expression evaluation; pure with respect to the configuration.
  RtVal eval_expr(const al::Expr& expr, const Env& env,
                  const Config& config) const;

  bool eval_cond(const al::Cond& cond, const Env& env,
                 const Config& config) const;

  // Evaluates an animated auxiliary function or numeric intrinsic.
  RtVal call_function(const std::string& func, std::vector<RtVal> args,
                      const Config& config) const;

  const al::AlgorithmSet& algorithms() const { return algos_; }

  // Translates one instruction to its constructed runtime form.
  static RtVal translate_instr(const MwInstr& in);

 private:
  enum class Flow { Normal, Trap, Return };

  Flow exec_body(const std::vector<al::Instr>& body, Env& env, Config& config,
                 RtVal* ret, bool in_function) const;
  void do_execute(Config& config, const RtVal& v) const;
  void run_admin(Config& config, const RtVal& in) const;
  void branch_to(Config& config, uint64_t depth) const;
  void do_return(Config& config) const;

  const il::Script& script_;
  const al::AlgorithmSet& algos_;
};

// Runs a config until completion; returns false on trap.
bool run_to_completion(const Interpreter& interp, Config& config);

}  // namespace spectec::rt
