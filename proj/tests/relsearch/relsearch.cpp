#include "relsearch.hpp"

#include <map>
#include <stdexcept>

#include "spectec/numerics.hpp"

namespace relsearch {
namespace {

namespace il = spectec::il;
namespace rt = spectec::rt;

using Env = std::map<std::string, RtVal>;

struct Unsolvable {};  // a premise can never hold under the candidate env

// --- evaluation --------------------------------------------------------------

// Evaluates an IL expression under env; nullopt when a variable is unbound.
std::optional<RtVal> eval(const il::Script& script, const il::Exp& e,
                          const Env& env);

std::optional<std::vector<RtVal>> eval_all(const il::Script& script,
                                           const std::vector<il::ExpPtr>& es,
                                           const Env& env) {
  std::vector<RtVal> out;
  for (const auto& x : es) {
    auto v = eval(script, *x, env);
    if (!v) return std::nullopt;
    out.push_back(std::move(*v));
  }
  return out;
}

std::optional<RtVal> eval(const il::Script& script, const il::Exp& e,
                          const Env& env) {
  const il::Exp& s = il::skip_casts(e);
  if (auto* v = std::get_if<il::VarE>(&s.kind)) {
    auto it = env.find(v->name);
    if (it == env.end()) return std::nullopt;
    return it->second;
  }
  if (auto* n = std::get_if<il::NatE>(&s.kind)) return RtVal::of_nat(n->value);
  if (auto* c = std::get_if<il::ConstructE>(&s.kind)) {
    auto args = eval_all(script, c->args, env);
    if (!args) return std::nullopt;
    return RtVal::of_con(c->ctor, std::move(*args));
  }
  if (auto* c = std::get_if<il::CallE>(&s.kind)) {
    auto args = eval_all(script, c->args, env);
    if (!args) return std::nullopt;
    return relational_call(script, c->func, *args);
  }
  if (auto* l = std::get_if<il::ListE>(&s.kind)) {
    auto elems = eval_all(script, l->elems, env);
    if (!elems) return std::nullopt;
    return RtVal::of_seq(std::move(*elems));
  }
  if (auto* o = std::get_if<il::OptE>(&s.kind)) {
    if (!o->payload) return RtVal::of_seq();
    auto p = eval(script, *o->payload, env);
    if (!p) return std::nullopt;
    return RtVal::of_seq({std::move(*p)});
  }
  if (auto* it = std::get_if<il::IterE>(&s.kind)) {
    const il::Exp& body = il::skip_casts(*it->body);
    if (auto* v = std::get_if<il::VarE>(&body.kind)) {
      auto found = env.find(v->name);
      if (found == env.end()) return std::nullopt;
      return found->second;
    }
    throw std::logic_error("relsearch: unsupported iterated expression");
  }
  if (auto* sq = std::get_if<il::SeqE>(&s.kind)) {
    std::vector<RtVal> out;
    for (const auto& el : sq->elems) {
      auto v = eval(script, *el, env);
      if (!v) return std::nullopt;
      if (el->type.is_iter(spectec::el::Iter::List)) {
        if (v->kind != RtVal::Kind::Seq)
          throw std::logic_error("relsearch: splice of a non-sequence");
        for (auto& item : v->items) out.push_back(std::move(item));
      } else {
        out.push_back(std::move(*v));
      }
    }
    return RtVal::of_seq(std::move(out));
  }
  if (auto* tu = std::get_if<il::TupleE>(&s.kind)) {
    auto elems = eval_all(script, tu->elems, env);
    if (!elems) return std::nullopt;
    return RtVal::of_seq(std::move(*elems));
  }
  throw std::logic_error("relsearch: unsupported expression");
}

// --- unification ---------------------------------------------------------------

// Matches `pattern` against `value`, extending env. Returns false when the
// value cannot match.
bool unify(const il::Exp& pattern, const RtVal& value, Env& env) {
  const il::Exp& p = il::skip_casts(pattern);
  if (auto* v = std::get_if<il::VarE>(&p.kind)) {
    auto it = env.find(v->name);
    if (it != env.end()) return rt::rt_equal(it->second, value);
    env[v->name] = value;
    return true;
  }
  if (auto* n = std::get_if<il::NatE>(&p.kind))
    return rt::rt_equal(RtVal::of_nat(n->value), value);
  if (auto* c = std::get_if<il::ConstructE>(&p.kind)) {
    if (value.kind != RtVal::Kind::Con || value.ctor != c->ctor ||
        value.items.size() != c->args.size())
      return false;
    for (size_t i = 0; i < c->args.size(); ++i)
      if (!unify(*c->args[i], value.items[i], env)) return false;
    return true;
  }
  if (auto* o = std::get_if<il::OptE>(&p.kind)) {
    if (value.kind != RtVal::Kind::Seq) return false;
    if (!o->payload) return value.items.empty();
    return value.items.size() == 1 && unify(*o->payload, value.items[0], env);
  }
  if (auto* l = std::get_if<il::ListE>(&p.kind)) {
    if (value.kind != RtVal::Kind::Seq ||
        value.items.size() != l->elems.size())
      return false;
    for (size_t i = 0; i < l->elems.size(); ++i)
      if (!unify(*l->elems[i], value.items[i], env)) return false;
    return true;
  }
  if (auto* it = std::get_if<il::IterE>(&p.kind)) {
    const il::Exp& body = il::skip_casts(*it->body);
    if (auto* v = std::get_if<il::VarE>(&body.kind)) {
      auto found = env.find(v->name);
      if (found != env.end()) return rt::rt_equal(found->second, value);
      env[v->name] = value;
      return true;
    }
    return false;
  }
  return false;
}

// --- premise solving ------------------------------------------------------------

bool numeric_holds(spectec::el::CmpOp op, const RtVal& a, const RtVal& b) {
  auto as_nat = [](const RtVal& v) -> uint64_t {
    if (v.kind == RtVal::Kind::Nat) return v.nat;
    if (v.kind == RtVal::Kind::Num) return v.num.bits;
    throw std::logic_error("relsearch: ordered comparison of non-numbers");
  };
  switch (op) {
    case spectec::el::CmpOp::Eq: return rt::rt_equal(a, b);
    case spectec::el::CmpOp::Ne: return !rt::rt_equal(a, b);
    case spectec::el::CmpOp::Lt: return as_nat(a) < as_nat(b);
    case spectec::el::CmpOp::Le: return as_nat(a) <= as_nat(b);
    case spectec::el::CmpOp::Gt: return as_nat(a) > as_nat(b);
    case spectec::el::CmpOp::Ge: return as_nat(a) >= as_nat(b);
  }
  return false;
}

// Repeatedly evaluates and unifies premises until a fixpoint; returns false
// when some premise fails, throws Unsolvable never (conveyed via false).
bool solve_premises(const il::Script& script,
                    const std::vector<il::PremPtr>& premises, Env& env) {
  std::vector<const il::IfPrem*> pending;
  for (const auto& p : premises) {
    if (auto* ip = std::get_if<il::IfPrem>(&p->kind)) {
      pending.push_back(ip);
    } else if (auto* itp = std::get_if<il::IterPrem>(&p->kind)) {
      auto* ip = std::get_if<il::IfPrem>(&itp->body->kind);
      if (!ip) throw std::logic_error("relsearch: unsupported premise");
      pending.push_back(ip);  // whole-list comparison
    } else {
      throw std::logic_error("relsearch: 'otherwise' handled at rule level");
    }
  }
  bool progress = true;
  while (!pending.empty() && progress) {
    progress = false;
    for (auto it = pending.begin(); it != pending.end();) {
      const il::IfPrem* ip = *it;
      auto lhs = eval(script, *ip->lhs, env);
      auto rhs = eval(script, *ip->rhs, env);
      if (lhs && rhs) {
        if (!numeric_holds(ip->op, *lhs, *rhs)) return false;
        it = pending.erase(it);
        progress = true;
        continue;
      }
      if (ip->op == spectec::el::CmpOp::Eq) {
        if (lhs && !rhs) {
          if (!unify(*ip->rhs, *lhs, env)) return false;
          it = pending.erase(it);
          progress = true;
          continue;
        }
        if (rhs && !lhs) {
          if (!unify(*ip->lhs, *rhs, env)) return false;
          it = pending.erase(it);
          progress = true;
          continue;
        }
      }
      ++it;
    }
  }
  if (!pending.empty())
    throw std::logic_error("relsearch: premises cannot be solved");
  return true;
}

std::vector<RtVal> flatten_rhs(const il::Script& script, const il::Exp& rhs,
                               const Env& env) {
  auto v = eval(script, rhs, env);
  if (!v || v->kind != RtVal::Kind::Seq)
    throw std::logic_error("relsearch: rule RHS did not evaluate");
  return v->items;
}

}  // namespace

RtVal relational_call(const il::Script& script, const std::string& func,
                      const std::vector<RtVal>& args) {
  // Intrinsics share the numeric tables; the relational route differs in
  // everything above them.
  if (func == "binop" || func == "unop" || func == "testop" ||
      func == "relop") {
    const std::string& op = args.at(0).ctor;
    rt::NumType nt;
    if (!rt::numtype_from_ctor(args.at(1).ctor, nt))
      throw std::logic_error("relsearch: bad numtype argument");
    if (func == "binop") {
      auto r = rt::numeric_binop(op, nt, args.at(2).num, args.at(3).num);
      return r ? RtVal::of_seq({RtVal::of_num(*r)}) : RtVal::of_seq();
    }
    if (func == "unop") {
      auto r = rt::numeric_unop(op, nt, args.at(2).num);
      return r ? RtVal::of_seq({RtVal::of_num(*r)}) : RtVal::of_seq();
    }
    if (func == "testop")
      return RtVal::of_num(rt::numeric_testop(op, nt, args.at(2).num));
    return RtVal::of_num(
        rt::numeric_relop(op, nt, args.at(2).num, args.at(3).num));
  }

  const auto it = script.funcs.find(func);
  if (it == script.funcs.end())
    throw std::logic_error("relsearch: unknown function $" + func);
  const il::FuncInfo& fn = it->second;
  for (const auto& clause : fn.clauses) {
    Env env;
    bool matched = true;
    for (size_t i = 0; i < clause.args.size(); ++i) {
      if (!unify(*clause.args[i], args.at(i), env)) {
        matched = false;
        break;
      }
    }
    if (!matched) continue;
    if (!solve_premises(script, clause.premises, env)) continue;
    auto r = eval(script, *clause.result, env);
    if (!r) throw std::logic_error("relsearch: clause result not ground");
    return *r;
  }
  if (fn.result.is_iter(spectec::el::Iter::Opt)) return RtVal::of_seq();
  throw std::logic_error("relsearch: no clause of $" + func + " matched");
}

std::vector<StepResult> relational_step(const il::Script& script,
                                        const RtVal& instr,
                                        const std::vector<Value>& operands) {
  std::vector<StepResult> results;
  for (const auto& rel_name : script.relation_order) {
    const il::RelationInfo& rel = script.relations.at(rel_name);
    if (rel.rel != spectec::el::RelKind::Reduction) continue;
    for (const auto& rule : rel.rules) {
      if (instr.kind != RtVal::Kind::Con || rule.head_ctor != instr.ctor)
        continue;
      auto* seq = std::get_if<il::SeqE>(&rule.lhs->kind);
      if (!seq || seq->elems.empty()) continue;
      size_t nvals = seq->elems.size() - 1;
      if (nvals != operands.size()) continue;

      bool is_otherwise =
          rule.premises.size() == 1 &&
          std::holds_alternative<il::ElsePrem>(rule.premises[0]->kind);

      Env env;
      bool matched = true;
      for (size_t i = 0; i < nvals && matched; ++i) {
        // Operands appear on the stack as constants of their type.
        RtVal as_con = RtVal::of_con(
            "CONST", {RtVal::of_con(rt::numtype_ctor(operands[i].type)),
                      RtVal::of_num(operands[i])});
        matched = unify(*seq->elems[i], as_con, env);
      }
      if (matched) matched = unify(*seq->elems.back(), instr, env);
      if (!matched) continue;

      if (is_otherwise) {
        // Applies only when no earlier rule for this instruction fired.
        if (results.empty())
          results.push_back(
              StepResult{rule.relation + "/" + rule.id,
                         flatten_rhs(script, *rule.rhs, env)});
        continue;
      }
      if (!solve_premises(script, rule.premises, env)) continue;
      results.push_back(StepResult{rule.relation + "/" + rule.id,
                                   flatten_rhs(script, *rule.rhs, env)});
    }
  }
  return results;
}

}  // namespace relsearch
