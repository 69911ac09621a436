#include "spectec/validate.hpp"

#include <optional>

namespace spectec::rt {
namespace {

// Standard typed-stack validation with control frames and a polymorphic
// stack after unconditional transfers.
struct FuncValidator {
  const MwModule& mod;
  const MwFunc& fn;
  std::vector<std::string>& errors;
  std::string where;

  std::vector<NumType> stack;
  struct Ctrl {
    std::vector<NumType> label_types;  // what a br to this label expects
    std::vector<NumType> end_types;    // what falls out at the end
    size_t height = 0;
    bool unreachable = false;
  };
  std::vector<Ctrl> ctrls;
  bool broken = false;

  void error(const std::string& msg) {
    if (broken) return;  // one message per function is enough
    errors.push_back(where + ": " + msg);
    broken = true;
  }

  void push(NumType t) { stack.push_back(t); }

  std::optional<NumType> pop() {
    Ctrl& c = ctrls.back();
    if (stack.size() == c.height) {
      if (c.unreachable) return std::nullopt;  // polymorphic
      error("stack underflow");
      return std::nullopt;
    }
    NumType t = stack.back();
    stack.pop_back();
    return t;
  }

  void pop_expect(NumType want) {
    auto got = pop();
    if (broken || !got) return;
    if (*got != want)
      error(std::string("expected ") + numtype_name(want) + ", found " +
            numtype_name(*got));
  }

  void pop_types(const std::vector<NumType>& types) {
    for (auto it = types.rbegin(); it != types.rend(); ++it) pop_expect(*it);
  }

  void push_types(const std::vector<NumType>& types) {
    for (NumType t : types) push(t);
  }

  void push_ctrl(std::vector<NumType> label_types,
                 std::vector<NumType> end_types) {
    ctrls.push_back(Ctrl{std::move(label_types), std::move(end_types),
                         stack.size(), false});
  }

  void pop_ctrl() {
    Ctrl c = ctrls.back();
    pop_types(c.end_types);
    if (!broken && stack.size() != c.height)
      error("values left on the stack at the end of a block");
    ctrls.pop_back();
    stack.resize(c.height);
    push_types(c.end_types);
  }

  void set_unreachable() {
    Ctrl& c = ctrls.back();
    stack.resize(c.height);
    c.unreachable = true;
  }

  const Ctrl* label(uint32_t depth) {
    if (depth >= ctrls.size()) {
      error("branch label out of range");
      return nullptr;
    }
    return &ctrls[ctrls.size() - 1 - depth];
  }

  NumType local_type(uint32_t idx) {
    size_t nparams = fn.params.size();
    if (idx < nparams) return fn.params[idx];
    size_t k = idx - nparams;
    if (k < fn.locals.size()) return fn.locals[k];
    error("local index out of range");
    return NumType::I32;
  }

  std::vector<NumType> block_results(BlockType bt) {
    auto r = blocktype_result(bt);
    if (!r) return {};
    return {*r};
  }

  void check_instr(const MwInstr& in) {
    using K = MwInstr::Kind;
    if (broken) return;
    switch (in.kind) {
      case K::Unreachable:
        set_unreachable();
        break;
      case K::Nop:
        break;
      case K::Drop:
        pop();
        break;
      case K::Select: {
        pop_expect(NumType::I32);
        auto b = pop();
        auto a = pop();
        if (a && b && *a != *b)
          error("select operands have different types");
        if (a) push(*a);
        else if (b) push(*b);
        else push(NumType::I32);  // fully polymorphic; any choice is sound
        break;
      }
      case K::Const:
        push(in.cval.type);
        break;
      case K::Unop:
      case K::Testop:
        pop_expect(in.nt);
        push(in.kind == K::Testop ? NumType::I32 : in.nt);
        break;
      case K::Binop:
        pop_expect(in.nt);
        pop_expect(in.nt);
        push(in.nt);
        break;
      case K::Relop:
        pop_expect(in.nt);
        pop_expect(in.nt);
        push(NumType::I32);
        break;
      case K::LocalGet:
        push(local_type(in.index));
        break;
      case K::LocalSet:
        pop_expect(local_type(in.index));
        break;
      case K::LocalTee: {
        NumType t = local_type(in.index);
        pop_expect(t);
        push(t);
        break;
      }
      case K::GlobalGet:
        if (in.index >= mod.globals.size()) {
          error("global index out of range");
          break;
        }
        push(mod.globals[in.index].type);
        break;
      case K::GlobalSet:
        if (in.index >= mod.globals.size()) {
          error("global index out of range");
          break;
        }
        if (!mod.globals[in.index].mut) error("global is immutable");
        pop_expect(mod.globals[in.index].type);
        break;
      case K::Block: {
        auto res = block_results(in.bt);
        push_ctrl(res, res);
        for (const auto& i : in.body) check_instr(i);
        pop_ctrl();
        break;
      }
      case K::Loop: {
        auto res = block_results(in.bt);
        push_ctrl({}, res);  // a branch to a loop label targets its start
        for (const auto& i : in.body) check_instr(i);
        pop_ctrl();
        break;
      }
      case K::If: {
        pop_expect(NumType::I32);
        auto res = block_results(in.bt);
        push_ctrl(res, res);
        for (const auto& i : in.body) check_instr(i);
        pop_ctrl();
        // Re-enter for the else branch with the same types.
        pop_types(res);
        push_ctrl(res, res);
        for (const auto& i : in.else_body) check_instr(i);
        pop_ctrl();
        if (res.empty() && in.else_body.empty()) break;
        if (!res.empty() && in.else_body.empty())
          error("if with a result type requires an else branch");
        break;
      }
      case K::Br: {
        const Ctrl* c = label(in.index);
        if (!c) break;
        pop_types(c->label_types);
        set_unreachable();
        break;
      }
      case K::BrIf: {
        pop_expect(NumType::I32);
        const Ctrl* c = label(in.index);
        if (!c) break;
        pop_types(c->label_types);
        push_types(c->label_types);
        break;
      }
      case K::Return:
        pop_types(fn.results);
        set_unreachable();
        break;
      case K::Call: {
        if (in.index >= mod.funcs.size()) {
          error("call index out of range");
          break;
        }
        const MwFunc& callee = mod.funcs[in.index];
        pop_types(callee.params);
        push_types(callee.results);
        break;
      }
    }
  }

  void run() {
    push_ctrl(fn.results, fn.results);
    for (const auto& in : fn.body) check_instr(in);
    pop_ctrl();
    if (!broken && stack.size() != fn.results.size())
      error("values left on the stack at the end of the function");
  }
};

}  // namespace

std::vector<std::string> validate(const MwModule& mod) {
  std::vector<std::string> errors;
  if (mod.funcs.size() > 1u << 20) errors.push_back("too many functions");
  for (size_t i = 0; i < mod.funcs.size(); ++i) {
    const MwFunc& fn = mod.funcs[i];
    if (fn.results.size() > 1)
      errors.push_back("func " + std::to_string(i) +
                       ": multiple results are not supported");
    std::string where = "func " + std::to_string(i);
    if (!fn.export_name.empty()) where += " (\"" + fn.export_name + "\")";
    FuncValidator v{mod, fn, errors, where, {}, {}, false};
    v.run();
  }
  return errors;
}

}  // namespace spectec::rt
