#include "spectec/runtime.hpp"

#include <algorithm>
#include <sstream>

#include "spectec/numerics.hpp"

namespace spectec::rt {

namespace {

constexpr const char* kConstCtor = "CONST";

[[noreturn]] void bug(const std::string& msg) { throw InterpreterBug(msg); }

bool is_numeric_kind(const RtVal& v) {
  return v.kind == RtVal::Kind::Num || v.kind == RtVal::Kind::Nat;
}

// Unsigned integer view for cross-kind numeric comparison.
uint64_t numeric_value(const RtVal& v) {
  if (v.kind == RtVal::Kind::Nat) return v.nat;
  if (v.kind == RtVal::Kind::Num) {
    if (v.num.type == NumType::F32 || v.num.type == NumType::F64)
      bug("float value used in an ordered/natural comparison");
    return v.num.bits;
  }
  bug("non-numeric value in numeric comparison");
}

NumType con_numtype(const RtVal& v) {
  NumType nt;
  if (v.kind != RtVal::Kind::Con || !numtype_from_ctor(v.ctor, nt))
    bug("expected a number-type constructor, got " + v.to_string());
  return nt;
}

}  // namespace

std::string RtVal::to_string() const {
  switch (kind) {
    case Kind::Num: return num.to_string();
    case Kind::Nat: return std::to_string(nat);
    case Kind::Con: {
      if (items.empty()) return ctor;
      std::string s = "(" + ctor;
      for (const auto& a : items) s += " " + a.to_string();
      return s + ")";
    }
    case Kind::Seq: {
      std::string s = "[";
      for (size_t i = 0; i < items.size(); ++i) {
        if (i) s += " ";
        s += items[i].to_string();
      }
      return s + "]";
    }
  }
  return "?";
}

bool rt_equal(const RtVal& a, const RtVal& b) {
  if (a.kind == b.kind) {
    switch (a.kind) {
      case RtVal::Kind::Num: return a.num == b.num;
      case RtVal::Kind::Nat: return a.nat == b.nat;
      case RtVal::Kind::Con: {
        if (a.ctor != b.ctor || a.items.size() != b.items.size()) return false;
        for (size_t i = 0; i < a.items.size(); ++i)
          if (!rt_equal(a.items[i], b.items[i])) return false;
        return true;
      }
      case RtVal::Kind::Seq: {
        if (a.items.size() != b.items.size()) return false;
        for (size_t i = 0; i < a.items.size(); ++i)
          if (!rt_equal(a.items[i], b.items[i])) return false;
        return true;
      }
    }
  }
  // Integer numbers and naturals compare by value.
  if (is_numeric_kind(a) && is_numeric_kind(b))
    return numeric_value(a) == numeric_value(b);
  return false;
}

// ---------------------------------------------------------------------------
// Module translation

RtVal Interpreter::translate_instr(const MwInstr& in) {
  using K = MwInstr::Kind;
  auto nt_con = [](NumType nt) { return RtVal::of_con(numtype_ctor(nt)); };
  auto seq_of = [](const std::vector<MwInstr>& instrs) {
    std::vector<RtVal> items;
    items.reserve(instrs.size());
    for (const auto& i : instrs) items.push_back(translate_instr(i));
    return RtVal::of_seq(std::move(items));
  };
  switch (in.kind) {
    case K::Unreachable: return RtVal::of_con("UNREACHABLE");
    case K::Nop: return RtVal::of_con("NOP");
    case K::Drop: return RtVal::of_con("DROP");
    case K::Select: return RtVal::of_con("SELECT");
    case K::Const:
      return RtVal::of_con(kConstCtor,
                           {nt_con(in.nt), RtVal::of_num(in.cval)});
    case K::Unop:
      return RtVal::of_con("UNOP", {nt_con(in.nt), RtVal::of_con(in.op)});
    case K::Binop:
      return RtVal::of_con("BINOP", {nt_con(in.nt), RtVal::of_con(in.op)});
    case K::Testop:
      return RtVal::of_con("TESTOP", {nt_con(in.nt), RtVal::of_con(in.op)});
    case K::Relop:
      return RtVal::of_con("RELOP", {nt_con(in.nt), RtVal::of_con(in.op)});
    case K::LocalGet: return RtVal::of_con("LOCAL_GET", {RtVal::of_nat(in.index)});
    case K::LocalSet: return RtVal::of_con("LOCAL_SET", {RtVal::of_nat(in.index)});
    case K::LocalTee: return RtVal::of_con("LOCAL_TEE", {RtVal::of_nat(in.index)});
    case K::GlobalGet:
      return RtVal::of_con("GLOBAL_GET", {RtVal::of_nat(in.index)});
    case K::GlobalSet:
      return RtVal::of_con("GLOBAL_SET", {RtVal::of_nat(in.index)});
    case K::Block:
      return RtVal::of_con("BLOCK",
                           {RtVal::of_con(blocktype_ctor(in.bt)), seq_of(in.body)});
    case K::Loop:
      return RtVal::of_con("LOOP",
                           {RtVal::of_con(blocktype_ctor(in.bt)), seq_of(in.body)});
    case K::If:
      return RtVal::of_con("IF", {RtVal::of_con(blocktype_ctor(in.bt)),
                                  seq_of(in.body), seq_of(in.else_body)});
    case K::Br: return RtVal::of_con("BR", {RtVal::of_nat(in.index)});
    case K::BrIf: return RtVal::of_con("BR_IF", {RtVal::of_nat(in.index)});
    case K::Return: return RtVal::of_con("RETURN");
    case K::Call: return RtVal::of_con("CALL", {RtVal::of_nat(in.index)});
  }
  bug("untranslatable instruction");
}

Interpreter::Interpreter(const il::Script& script,
                         const al::AlgorithmSet& algorithms)
    : script_(script), algos_(algorithms) {}

Store Interpreter::instantiate(const MwModule& mod) const {
  Store store;
  for (const auto& g : mod.globals)
    store.globals.push_back(GlobalInst{g.type, g.mut, g.init});
  for (const auto& f : mod.funcs) {
    FuncInst inst;
    inst.params = f.params;
    inst.results = f.results;
    inst.locals = f.locals;
    inst.name = f.export_name.empty() ? f.id : f.export_name;
    inst.code.reserve(f.body.size());
    for (const auto& in : f.body)
      inst.code.push_back(RtInstr::of(translate_instr(in)));
    store.funcs.push_back(std::move(inst));
  }
  store.exports = mod.exports;
  return store;
}

// ---------------------------------------------------------------------------
// Expression evaluation

RtVal Interpreter::eval_expr(const al::Expr& expr, const Env& env,
                             const Config& config) const {
  using namespace al;
  if (auto* n = std::get_if<NameE>(&expr.kind)) {
    auto it = env.find(n->name);
    if (it == env.end())
      bug("unbound variable '" + n->name +
          "' (animation soundness violation)");
    return it->second;
  }
  if (auto* a = std::get_if<AppE>(&expr.kind)) {
    std::vector<RtVal> args;
    args.reserve(a->args.size());
    for (const auto& x : a->args) args.push_back(eval_expr(*x, env, config));
    return call_function(a->func, std::move(args), config);
  }
  if (auto* l = std::get_if<al::ListE>(&expr.kind)) {
    std::vector<RtVal> items;
    items.reserve(l->elems.size());
    for (const auto& x : l->elems) items.push_back(eval_expr(*x, env, config));
    return RtVal::of_seq(std::move(items));
  }
  if (auto* c = std::get_if<al::ConstructE>(&expr.kind)) {
    std::vector<RtVal> args;
    args.reserve(c->args.size());
    for (const auto& x : c->args) args.push_back(eval_expr(*x, env, config));
    return RtVal::of_con(c->ctor, std::move(args));
  }
  if (auto* ln = std::get_if<LengthE>(&expr.kind)) {
    RtVal v = eval_expr(*ln->arg, env, config);
    if (v.kind != RtVal::Kind::Seq)
      bug("LengthE of a non-sequence value " + v.to_string());
    return RtVal::of_nat(v.items.size());
  }
  if (auto* s = std::get_if<OptSomeE>(&expr.kind))
    return RtVal::of_seq({eval_expr(*s->arg, env, config)});
  if (std::holds_alternative<OptNoneE>(expr.kind)) return RtVal::of_seq();
  auto& n = std::get<al::NatE>(expr.kind);
  return RtVal::of_nat(n.value);
}

RtVal Interpreter::call_function(const std::string& func,
                                 std::vector<RtVal> args,
                                 const Config& config) const {
  // Numeric intrinsics.
  auto value_arg = [&](size_t i) {
    if (i >= args.size() || args[i].kind != RtVal::Kind::Num)
      bug("numeric intrinsic '" + func + "' applied to a non-number");
    return args[i].num;
  };
  if (func == "binop" || func == "unop") {
    if (args.size() < 2) bug("intrinsic arity");
    const std::string& op = args[0].ctor;
    NumType nt = con_numtype(args[1]);
    std::optional<Value> r =
        func == "binop"
            ? numeric_binop(op, nt, value_arg(2), value_arg(3))
            : numeric_unop(op, nt, value_arg(2));
    if (!r) return RtVal::of_seq();
    return RtVal::of_seq({RtVal::of_num(*r)});
  }
  if (func == "testop") {
    NumType nt = con_numtype(args[1]);
    return RtVal::of_num(numeric_testop(args[0].ctor, nt, value_arg(2)));
  }
  if (func == "relop") {
    NumType nt = con_numtype(args[1]);
    return RtVal::of_num(
        numeric_relop(args[0].ctor, nt, value_arg(2), value_arg(3)));
  }

  const al::FuncAlgorithm* algo = algos_.find_func(func);
  if (!algo) bug("no algorithm or intrinsic for function '$" + func + "'");
  if (algo->params.size() != args.size())
    bug("function '$" + func + "' called with wrong arity");
  Env env;
  for (size_t i = 0; i < args.size(); ++i)
    env[algo->params[i]] = std::move(args[i]);
  RtVal ret;
  // Function bodies are pure: exec_body rejects stack effects for them.
  Config& mutable_config = const_cast<Config&>(config);
  Flow flow = exec_body(algo->body, env, mutable_config, &ret, true);
  if (flow != Flow::Return)
    bug("function '$" + func + "' finished without a result");
  return ret;
}

bool Interpreter::eval_cond(const al::Cond& cond, const Env& env,
                            const Config& config) const {
  using namespace al;
  if (auto* c = std::get_if<CompareC>(&cond.kind)) {
    RtVal a = eval_expr(*c->lhs, env, config);
    RtVal b = eval_expr(*c->rhs, env, config);
    switch (c->op) {
      case CmpOp::Is: return rt_equal(a, b);
      case CmpOp::Ne: return !rt_equal(a, b);
      case CmpOp::Lt: return numeric_value(a) < numeric_value(b);
      case CmpOp::Le: return numeric_value(a) <= numeric_value(b);
      case CmpOp::Gt: return numeric_value(a) > numeric_value(b);
      case CmpOp::Ge: return numeric_value(a) >= numeric_value(b);
    }
    return false;
  }
  if (auto* tv = std::get_if<TopValueC>(&cond.kind)) {
    if (config.frames.empty()) bug("TopValueC outside a frame");
    const Frame& frame = config.frames.back();
    size_t boundary = config.labels.size() > frame.label_base
                          ? config.labels.back().stack_height
                          : frame.stack_base;
    if (config.stack.size() <= boundary) return false;
    if (!tv->type) return true;
    RtVal want = eval_expr(*tv->type, env, config);
    return con_numtype(want) == config.stack.back().type;
  }
  if (auto* d = std::get_if<IsDefinedC>(&cond.kind)) {
    RtVal v = eval_expr(*d->arg, env, config);
    if (v.kind != RtVal::Kind::Seq) bug("IsDefinedC of a non-option value");
    return !v.items.empty();
  }
  auto& n = std::get<NotC>(cond.kind);
  return !eval_cond(*n.arg, env, config);
}

// ---------------------------------------------------------------------------
// Instruction execution

Interpreter::Flow Interpreter::exec_body(const std::vector<al::Instr>& body,
                                         Env& env, Config& config, RtVal* ret,
                                         bool in_function) const {
  using namespace al;
  for (const Instr& in : body) {
    if (auto* a = std::get_if<AssertI>(&in.kind)) {
      if (!eval_cond(*a->cond, env, config))
        bug("assertion failed: " + al::to_string(*a->cond));
      continue;
    }
    if (auto* p = std::get_if<PopI>(&in.kind)) {
      if (in_function) bug("stack effect inside a function algorithm");
      const Frame& frame = config.frames.back();
      size_t boundary = config.labels.size() > frame.label_base
                            ? config.labels.back().stack_height
                            : frame.stack_base;
      if (config.stack.size() <= boundary)
        bug("pop from an empty stack (validation should exclude this)");
      Value v = config.stack.back();
      config.stack.pop_back();
      // Pattern: a value constructor whose first immediate pins the type.
      auto* pc = std::get_if<al::ConstructE>(&p->pattern->kind);
      if (!pc || pc->ctor != kConstCtor || pc->args.size() != 2)
        bug("unsupported pop pattern " + al::to_string(*p->pattern));
      const al::Expr& tpat = *pc->args[0];
      if (auto* tn = std::get_if<NameE>(&tpat.kind)) {
        auto it = env.find(tn->name);
        if (it == env.end()) {
          env[tn->name] = RtVal::of_con(numtype_ctor(v.type));
        } else if (con_numtype(it->second) != v.type) {
          bug("popped value type does not match the bound number type");
        }
      } else if (auto* tc = std::get_if<al::ConstructE>(&tpat.kind)) {
        NumType want;
        if (!numtype_from_ctor(tc->ctor, want) || want != v.type)
          bug("popped value type mismatch");
      } else {
        bug("unsupported pop type pattern");
      }
      auto* vn = std::get_if<NameE>(&pc->args[1]->kind);
      if (!vn) bug("unsupported pop payload pattern");
      env[vn->name] = RtVal::of_num(v);
      continue;
    }
    if (auto* p = std::get_if<PushI>(&in.kind)) {
      if (in_function) bug("stack effect inside a function algorithm");
      RtVal v = eval_expr(*p->value, env, config);
      if (v.kind != RtVal::Kind::Con || v.ctor != kConstCtor ||
          v.items.size() != 2 || v.items[1].kind != RtVal::Kind::Num)
        bug("PushI of a non-value " + v.to_string());
      if (con_numtype(v.items[0]) != v.items[1].num.type)
        bug("PushI value/type mismatch");
      config.stack.push_back(v.items[1].num);
      continue;
    }
    if (auto* l = std::get_if<LetI>(&in.kind)) {
      RtVal v = eval_expr(*l->value, env, config);
      if (auto* n = std::get_if<NameE>(&l->pattern->kind)) {
        env[n->name] = std::move(v);
        continue;
      }
      if (auto* lp = std::get_if<al::ListE>(&l->pattern->kind)) {
        if (v.kind != RtVal::Kind::Seq || v.items.size() != lp->elems.size())
          bug("LetI list pattern arity mismatch (guard missing?)");
        for (size_t i = 0; i < lp->elems.size(); ++i) {
          auto* n = std::get_if<NameE>(&lp->elems[i]->kind);
          if (!n) bug("unsupported LetI pattern element");
          env[n->name] = v.items[i];
        }
        continue;
      }
      bug("unsupported LetI pattern " + al::to_string(*l->pattern));
    }
    if (auto* i = std::get_if<IfI>(&in.kind)) {
      bool c = eval_cond(*i->cond, env, config);
      Flow f = exec_body(c ? i->then_body : i->else_body, env, config, ret,
                         in_function);
      if (f != Flow::Normal) return f;
      continue;
    }
    if (std::holds_alternative<al::TrapI>(in.kind)) {
      if (in_function) bug("trap inside a function algorithm");
      return Flow::Trap;
    }
    if (auto* r = std::get_if<ReturnI>(&in.kind)) {
      if (!in_function) bug("ReturnI inside an instruction algorithm");
      if (ret && r->value) *ret = eval_expr(*r->value, env, config);
      return Flow::Return;
    }
    auto& ex = std::get<ExecuteI>(in.kind);
    if (in_function) bug("ExecuteI inside a function algorithm");
    RtVal v = eval_expr(*ex.instrs, env, config);
    do_execute(config, v);
  }
  return Flow::Normal;
}

void Interpreter::do_execute(Config& config, const RtVal& v) const {
  if (v.kind == RtVal::Kind::Con) {
    config.pending.push_back(RtInstr::of(v));
    return;
  }
  if (v.kind == RtVal::Kind::Seq) {
    for (auto it = v.items.rbegin(); it != v.items.rend(); ++it) {
      if (it->kind != RtVal::Kind::Con)
        bug("ExecuteI sequence element is not an instruction");
      config.pending.push_back(RtInstr::of(*it));
    }
    return;
  }
  bug("ExecuteI of a non-instruction value " + v.to_string());
}

void Interpreter::branch_to(Config& config, uint64_t depth) const {
  Frame& frame = config.frames.back();
  size_t window = config.labels.size() - frame.label_base;
  if (depth >= window) bug("branch depth exceeds the label stack");
  const Label target = config.labels[config.labels.size() - 1 - depth];

  // Keep the label's arity worth of values, discard the rest of the region.
  if (config.stack.size() < target.stack_height + target.arity)
    bug("branch with too few values on the stack");
  std::vector<Value> kept(config.stack.end() - target.arity,
                          config.stack.end());
  config.stack.resize(target.stack_height);
  config.stack.insert(config.stack.end(), kept.begin(), kept.end());

  // Drop pending work up to and including the (depth+1)-th label exit.
  uint64_t to_drop = depth + 1;
  while (to_drop > 0) {
    if (config.pending.empty()) bug("unwinding ran out of pending work");
    RtInstr item = config.pending.back();
    config.pending.pop_back();
    if (item.kind == RtInstr::Kind::ExitLabel) --to_drop;
    else if (item.kind == RtInstr::Kind::ExitFrame)
      bug("branch unwound past the frame");
  }
  config.labels.resize(config.labels.size() - (depth + 1));
  for (auto it = target.cont.rbegin(); it != target.cont.rend(); ++it)
    config.pending.push_back(*it);
}

void Interpreter::do_return(Config& config) const {
  Frame frame = config.frames.back();
  if (config.stack.size() < frame.stack_base + frame.arity)
    bug("return with too few values on the stack");
  std::vector<Value> kept(config.stack.end() - frame.arity,
                          config.stack.end());
  config.stack.resize(frame.stack_base);
  config.stack.insert(config.stack.end(), kept.begin(), kept.end());
  for (;;) {
    if (config.pending.empty()) bug("return ran out of pending work");
    RtInstr item = config.pending.back();
    config.pending.pop_back();
    if (item.kind == RtInstr::Kind::ExitFrame) break;
  }
  config.labels.resize(frame.label_base);
  config.frames.pop_back();
}

void Interpreter::run_admin(Config& config, const RtVal& in) const {
  const std::string& ctor = in.ctor;
  if (ctor == "TRAP") {
    config.trapped = true;
    return;
  }
  if (ctor == "LABEL_") {
    if (in.items.size() != 3 || in.items[0].kind != RtVal::Kind::Nat ||
        in.items[1].kind != RtVal::Kind::Seq ||
        in.items[2].kind != RtVal::Kind::Seq)
      bug("malformed LABEL_ " + in.to_string());
    Label label;
    label.arity = static_cast<uint32_t>(in.items[0].nat);
    for (const auto& c : in.items[1].items) {
      if (c.kind != RtVal::Kind::Con) bug("label continuation element");
      label.cont.push_back(RtInstr::of(c));
    }
    label.stack_height = config.stack.size();
    config.labels.push_back(std::move(label));
    config.pending.push_back(RtInstr::exit_label());
    const auto& body = in.items[2].items;
    for (auto it = body.rbegin(); it != body.rend(); ++it) {
      if (it->kind != RtVal::Kind::Con) bug("label body element");
      config.pending.push_back(RtInstr::of(*it));
    }
    return;
  }
  if (ctor == "BRANCH_") {
    if (in.items.size() != 1 || in.items[0].kind != RtVal::Kind::Nat)
      bug("malformed BRANCH_");
    branch_to(config, in.items[0].nat);
    return;
  }
  if (ctor == "RETURNING_") {
    do_return(config);
    return;
  }
  if (ctor == "INVOKE_") {
    if (in.items.size() != 1 || in.items[0].kind != RtVal::Kind::Nat)
      bug("malformed INVOKE_");
    uint64_t idx = in.items[0].nat;
    if (idx >= config.store.funcs.size()) bug("INVOKE_ index out of range");
    const FuncInst& fn = config.store.funcs[idx];
    size_t nargs = fn.params.size();
    if (config.stack.size() <
        (config.frames.empty() ? 0 : config.frames.back().stack_base) + nargs)
      bug("INVOKE_ with too few arguments on the stack");
    Frame frame;
    frame.locals.assign(config.stack.end() - static_cast<long>(nargs),
                        config.stack.end());
    config.stack.resize(config.stack.size() - nargs);
    for (size_t i = 0; i < nargs; ++i)
      if (frame.locals[i].type != fn.params[i])
        bug("INVOKE_ argument type mismatch");
    for (NumType t : fn.locals) frame.locals.push_back(Value::zero(t));
    frame.arity = static_cast<uint32_t>(fn.results.size());
    frame.stack_base = config.stack.size();
    frame.label_base = config.labels.size();
    config.frames.push_back(std::move(frame));
    config.pending.push_back(RtInstr::exit_frame());
    for (auto it = fn.code.rbegin(); it != fn.code.rend(); ++it)
      config.pending.push_back(*it);
    return;
  }
  if (ctor == "GETLOCAL_") {
    uint64_t x = in.items.at(0).nat;
    const Frame& frame = config.frames.back();
    if (x >= frame.locals.size()) bug("local index out of range");
    config.stack.push_back(frame.locals[x]);
    return;
  }
  if (ctor == "SETLOCAL_") {
    uint64_t x = in.items.at(0).nat;
    Frame& frame = config.frames.back();
    if (x >= frame.locals.size()) bug("local index out of range");
    NumType nt = con_numtype(in.items.at(1));
    const RtVal& cv = in.items.at(2);
    if (cv.kind != RtVal::Kind::Num || cv.num.type != nt)
      bug("SETLOCAL_ value/type mismatch");
    if (frame.locals[x].type != nt) bug("SETLOCAL_ local type mismatch");
    frame.locals[x] = cv.num;
    return;
  }
  if (ctor == "GETGLOBAL_") {
    uint64_t x = in.items.at(0).nat;
    if (x >= config.store.globals.size()) bug("global index out of range");
    config.stack.push_back(config.store.globals[x].value);
    return;
  }
  if (ctor == "SETGLOBAL_") {
    uint64_t x = in.items.at(0).nat;
    if (x >= config.store.globals.size()) bug("global index out of range");
    GlobalInst& g = config.store.globals[x];
    if (!g.mut) bug("SETGLOBAL_ of an immutable global");
    NumType nt = con_numtype(in.items.at(1));
    const RtVal& cv = in.items.at(2);
    if (cv.kind != RtVal::Kind::Num || cv.num.type != nt || g.type != nt)
      bug("SETGLOBAL_ value/type mismatch");
    g.value = cv.num;
    return;
  }
  bug("no native handler for administrative form " + ctor);
}

void Interpreter::step_instr(Config& config) const {
  if (config.done()) return;
  RtInstr item = config.pending.back();
  config.pending.pop_back();

  if (item.kind == RtInstr::Kind::ExitLabel) {
    Frame& frame = config.frames.back();
    if (config.labels.size() <= frame.label_base)
      bug("label exit without a label");
    config.labels.pop_back();
    return;
  }
  if (item.kind == RtInstr::Kind::ExitFrame) {
    Frame frame = config.frames.back();
    if (config.labels.size() != frame.label_base)
      bug("labels left at frame exit");
    if (config.stack.size() != frame.stack_base + frame.arity)
      bug("frame exit with a wrong result arity");
    config.frames.pop_back();
    return;
  }

  const RtVal& in = item.instr;
  if (in.kind != RtVal::Kind::Con) bug("pending item is not an instruction");

  // A constant is a value: executing it pushes the value.
  if (in.ctor == kConstCtor) {
    if (in.items.size() != 2 || in.items[1].kind != RtVal::Kind::Num ||
        con_numtype(in.items[0]) != in.items[1].num.type)
      bug("malformed constant " + in.to_string());
    config.stack.push_back(in.items[1].num);
    return;
  }

  // Instructions with animated algorithms.
  if (const al::Algorithm* algo = algos_.find(in.ctor)) {
    if (algo->params.size() != in.items.size())
      bug("instruction immediates do not match the algorithm parameters");
    Env env;
    for (size_t i = 0; i < algo->params.size(); ++i) {
      auto* n = std::get_if<al::NameE>(&algo->params[i]->kind);
      if (!n) bug("unsupported algorithm parameter pattern");
      env[n->name] = in.items[i];
    }
    Flow flow = exec_body(algo->body, env, config, nullptr, false);
    if (flow == Flow::Trap) config.trapped = true;
    return;
  }

  // Administrative forms are native.
  run_admin(config, in);
}

TrapResult Interpreter::invoke(Config& config, uint32_t func_index,
                               const std::vector<Value>& args) const {
  if (func_index >= config.store.funcs.size())
    throw ArgumentMismatch("function index out of range");
  const FuncInst& fn = config.store.funcs[func_index];
  if (args.size() != fn.params.size())
    throw ArgumentMismatch("argument count mismatch for " + fn.name);
  for (size_t i = 0; i < args.size(); ++i)
    if (args[i].type != fn.params[i])
      throw ArgumentMismatch("argument type mismatch for " + fn.name);

  config.trapped = false;
  config.stack.clear();
  config.frames.clear();
  config.labels.clear();
  config.pending.clear();

  // A root frame hosts the entry arguments; the call itself goes through the
  // same administrative path as a DSL-level call.
  Frame root;
  root.arity = static_cast<uint32_t>(fn.results.size());
  config.frames.push_back(root);
  for (const Value& v : args) config.stack.push_back(v);
  config.pending.push_back(
      RtInstr::of(RtVal::of_con("INVOKE_", {RtVal::of_nat(func_index)})));

  while (!config.done()) step_instr(config);

  if (config.trapped) {
    config.stack.clear();
    config.frames.clear();
    config.labels.clear();
    config.pending.clear();
    return TrapResult::trap();
  }
  if (config.stack.size() != fn.results.size())
    bug("stack discipline violation: result arity mismatch after invoke");
  TrapResult result = TrapResult::of(config.stack);
  config.stack.clear();
  config.frames.clear();
  return result;
}

bool run_to_completion(const Interpreter& interp, Config& config) {
  while (!config.done()) interp.step_instr(config);
  return !config.trapped;
}

}  // namespace spectec::rt
