#include "ilverify.hpp"

#include <map>
#include <set>

namespace ilverify {
namespace {

namespace il = spectec::il;
using il::Type;
using spectec::el::Iter;

struct Verifier {
  const il::Script& script;
  std::vector<std::string> problems;
  const std::map<std::string, il::Binding>* bindings = nullptr;
  std::string where;

  void problem(const std::string& msg) { problems.push_back(where + ": " + msg); }

  // Strips `n` iteration layers off a binding type (for occurrences inside
  // iterated expressions).
  static bool strip_layers(Type t, int n, Type& out) {
    for (int i = 0; i < n; ++i) {
      if (!t.is_iter()) return false;
      t = t.base();
    }
    out = t;
    return true;
  }

  Type derive(const il::Exp& e, const std::map<std::string, int>& strips) {
    Type computed = derive_kind(e, strips);
    if (!(computed == e.type))
      problem("stored type " + e.type.to_string() + " but re-derived " +
              computed.to_string());
    return e.type;  // continue with the stored annotation
  }

  Type derive_kind(const il::Exp& e, const std::map<std::string, int>& strips) {
    if (auto* v = std::get_if<il::VarE>(&e.kind)) {
      if (!bindings) return Type::error();
      auto it = bindings->find(v->name);
      if (it == bindings->end()) {
        problem("dangling variable " + v->name);
        return Type::error();
      }
      int n = 0;
      if (auto s = strips.find(v->name); s != strips.end()) n = s->second;
      Type out;
      if (!strip_layers(it->second.type, n, out)) {
        problem("variable " + v->name + " lacks " + std::to_string(n) +
                " iteration layer(s)");
        return Type::error();
      }
      return out;
    }
    if (auto* c = std::get_if<il::ConstructE>(&e.kind)) {
      auto syn = script.ctor_syntax.find(c->ctor);
      if (syn == script.ctor_syntax.end()) {
        problem("dangling constructor " + c->ctor);
        return Type::error();
      }
      if (syn->second != c->syntax)
        problem("constructor " + c->ctor + " annotated with syntax " +
                c->syntax + " but declared in " + syn->second);
      const il::CtorSig* sig = script.find_ctor(c->ctor);
      if (!sig || sig->args.size() != c->args.size()) {
        problem("constructor arity mismatch for " + c->ctor);
      } else {
        for (size_t i = 0; i < c->args.size(); ++i) {
          Type got = derive(*c->args[i], strips);
          if (!(got == sig->args[i]))
            problem("argument " + std::to_string(i) + " of " + c->ctor +
                    " has type " + got.to_string() + ", signature wants " +
                    sig->args[i].to_string());
        }
      }
      return Type::syn(syn->second);
    }
    if (auto* c = std::get_if<il::CallE>(&e.kind)) {
      auto fn = script.funcs.find(c->func);
      if (fn == script.funcs.end()) {
        problem("dangling function $" + c->func);
        return Type::error();
      }
      if (fn->second.params.size() != c->args.size()) {
        problem("call arity mismatch for $" + c->func);
      } else {
        for (size_t i = 0; i < c->args.size(); ++i) {
          Type got = derive(*c->args[i], strips);
          if (!(got == fn->second.params[i]))
            problem("argument " + std::to_string(i) + " of $" + c->func +
                    " has type " + got.to_string());
        }
      }
      return fn->second.result;
    }
    if (auto* n = std::get_if<il::NatE>(&e.kind)) {
      (void)n;
      // literals may be nat or a forced machine-integer type
      if (e.type.kind() == Type::Kind::Prim &&
          (e.type.prim() == il::Prim::Nat ||
           e.type.prim() == il::Prim::Int32 ||
           e.type.prim() == il::Prim::Int64))
        return e.type;
      problem("numeric literal annotated as " + e.type.to_string());
      return Type::prim(il::Prim::Nat);
    }
    if (auto* o = std::get_if<il::OptE>(&e.kind)) {
      if (!o->payload) {
        if (e.type.is_iter(Iter::Opt) || e.type.is_error()) return e.type;
        problem("empty option annotated as " + e.type.to_string());
        return e.type;
      }
      Type p = derive(*o->payload, strips);
      return Type::iter(p, Iter::Opt);
    }
    if (auto* l = std::get_if<il::ListE>(&e.kind)) {
      if (l->elems.empty()) {
        if (!e.type.is_iter(Iter::List))
          problem("empty list annotated as " + e.type.to_string());
        return e.type;
      }
      Type elem = derive(*l->elems[0], strips);
      for (size_t i = 1; i < l->elems.size(); ++i) {
        Type t2 = derive(*l->elems[i], strips);
        if (!(t2 == elem)) problem("list element types differ");
      }
      return Type::iter(elem, Iter::List);
    }
    if (auto* it = std::get_if<il::IterE>(&e.kind)) {
      std::map<std::string, int> inner = strips;
      for (const auto& v : it->iter_vars) inner[v] += 1;
      Type body = derive(*it->body, inner);
      return Type::iter(body, it->iter);
    }
    if (auto* sq = std::get_if<il::SeqE>(&e.kind)) {
      if (!e.type.is_iter(Iter::List)) {
        problem("sequence annotated as non-list " + e.type.to_string());
        return e.type;
      }
      Type elem = e.type.base();
      for (const auto& x : sq->elems) {
        Type t2 = derive(*x, strips);
        bool ok = t2 == elem || (t2.is_iter(Iter::List) && t2.base() == elem);
        if (!ok)
          problem("sequence element has type " + t2.to_string() +
                  ", expected " + elem.to_string() + " or its list");
      }
      return e.type;
    }
    if (auto* tu = std::get_if<il::TupleE>(&e.kind)) {
      std::vector<Type> elems;
      for (const auto& x : tu->elems) elems.push_back(derive(*x, strips));
      return Type::tuple(std::move(elems));
    }
    auto& sub = std::get<il::SubE>(e.kind);
    Type inner = derive(*sub.inner, strips);
    if (!(inner == sub.from))
      problem("cast source annotated " + sub.from.to_string() +
              " but inner derives " + inner.to_string());
    // the cast target must include the source, directly or element-wise
    Type from = sub.from, to = e.type;
    if (from.is_iter() && to.is_iter() && from.iter() == to.iter()) {
      from = from.base();
      to = to.base();
    }
    bool ok = false;
    if (to.kind() == Type::Kind::Syn) {
      auto si = script.syntaxes.find(to.syn());
      if (si != script.syntaxes.end())
        for (const auto& inc : si->second.inclusions)
          if (inc == from) ok = true;
    }
    if (!ok)
      problem("cast from " + sub.from.to_string() + " to " +
              e.type.to_string() + " is not a declared inclusion");
    return e.type;
  }

  void check_premise(const il::Prem& p) {
    if (auto* ip = std::get_if<il::IfPrem>(&p.kind)) {
      Type l = derive(*ip->lhs, {});
      Type r = derive(*ip->rhs, {});
      if (!(l == r))
        problem("premise compares " + l.to_string() + " with " +
                r.to_string());
    } else if (auto* itp = std::get_if<il::IterPrem>(&p.kind)) {
      check_premise(*itp->body);
    }
  }

  void run() {
    for (const auto& [name, rel] : script.relations) {
      for (const auto& rule : rel.rules) {
        where = rule.relation + "/" + rule.id;
        bindings = &rule.bound_vars;
        derive(*rule.lhs, {});
        derive(*rule.rhs, {});
        for (const auto& p : rule.premises) check_premise(*p);
      }
    }
    for (const auto& [name, fn] : script.funcs) {
      for (size_t ci = 0; ci < fn.clauses.size(); ++ci) {
        const auto& clause = fn.clauses[ci];
        where = "$" + name + " clause " + std::to_string(ci);
        bindings = &clause.bound_vars;
        if (clause.args.size() == fn.params.size()) {
          for (size_t i = 0; i < clause.args.size(); ++i) {
            Type got = derive(*clause.args[i], {});
            if (!(got == fn.params[i]))
              problem("clause pattern type mismatch");
          }
        } else {
          problem("clause arity mismatch");
        }
        for (const auto& p : clause.premises) check_premise(*p);
        Type r = derive(*clause.result, {});
        bool ok = r == fn.result;
        if (!ok && fn.result.is_iter() && r == fn.result.base())
          ok = true;  // scalar result lifted into an option/list
        if (!ok)
          problem("clause result type " + r.to_string() +
                  " does not match declared " + fn.result.to_string());
      }
    }
  }
};

}  // namespace

std::vector<std::string> recheck(const spectec::il::Script& script) {
  Verifier v{script};
  v.run();
  return std::move(v.problems);
}

}  // namespace ilverify
