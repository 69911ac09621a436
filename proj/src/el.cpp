#include "spectec/el.hpp"

namespace spectec::el {

const char* cmp_op_text(CmpOp op) {
  switch (op) {
    case CmpOp::Eq: return "=";
    case CmpOp::Ne: return "=/=";
    case CmpOp::Lt: return "<";
    case CmpOp::Le: return "<=";
    case CmpOp::Gt: return ">";
    case CmpOp::Ge: return ">=";
  }
  return "?";
}

TypPtr make_typ(SourceSpan span, std::variant<NameT, TupleT, IterT> kind) {
  auto t = std::make_shared<Typ>();
  t->span = span;
  t->kind = std::move(kind);
  return t;
}

ExpPtr make_exp(SourceSpan span, decltype(Exp::kind) kind) {
  auto e = std::make_shared<Exp>();
  e->span = span;
  e->kind = std::move(kind);
  return e;
}

PremPtr make_premise(SourceSpan span, decltype(Premise::kind) kind) {
  auto p = std::make_shared<Premise>();
  p->span = span;
  p->kind = std::move(kind);
  return p;
}

namespace {

template <typename T>
bool all_equal(const std::vector<std::shared_ptr<const T>>& a,
               const std::vector<std::shared_ptr<const T>>& b) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i)
    if (!equal(*a[i], *b[i])) return false;
  return true;
}

}  // namespace

bool equal(const Typ& a, const Typ& b) {
  if (a.kind.index() != b.kind.index()) return false;
  if (auto* n = std::get_if<NameT>(&a.kind))
    return n->name == std::get<NameT>(b.kind).name;
  if (auto* t = std::get_if<TupleT>(&a.kind))
    return all_equal(t->elems, std::get<TupleT>(b.kind).elems);
  auto& ia = std::get<IterT>(a.kind);
  auto& ib = std::get<IterT>(b.kind);
  return ia.iter == ib.iter && equal(*ia.base, *ib.base);
}

bool equal(const Exp& a, const Exp& b) {
  if (a.kind.index() != b.kind.index()) return false;
  if (auto* v = std::get_if<VarE>(&a.kind)) {
    auto& w = std::get<VarE>(b.kind);
    return v->base == w.base && v->subscript == w.subscript;
  }
  if (auto* c = std::get_if<ConstructE>(&a.kind)) {
    auto& d = std::get<ConstructE>(b.kind);
    return c->ctor == d.ctor && all_equal(c->args, d.args);
  }
  if (auto* c = std::get_if<CallE>(&a.kind)) {
    auto& d = std::get<CallE>(b.kind);
    return c->func == d.func && all_equal(c->args, d.args);
  }
  if (auto* s = std::get_if<SeqE>(&a.kind))
    return all_equal(s->elems, std::get<SeqE>(b.kind).elems);
  if (auto* t = std::get_if<TupleE>(&a.kind))
    return all_equal(t->elems, std::get<TupleE>(b.kind).elems);
  if (auto* o = std::get_if<OptE>(&a.kind)) {
    auto& p = std::get<OptE>(b.kind);
    if (!o->payload || !p.payload) return !o->payload && !p.payload;
    return equal(*o->payload, *p.payload);
  }
  if (auto* i = std::get_if<IterE>(&a.kind)) {
    auto& j = std::get<IterE>(b.kind);
    return i->iter == j.iter && equal(*i->body, *j.body);
  }
  if (auto* n = std::get_if<NatE>(&a.kind))
    return n->value == std::get<NatE>(b.kind).value;
  return all_equal(std::get<ListE>(a.kind).elems,
                   std::get<ListE>(b.kind).elems);
}

bool equal(const Premise& a, const Premise& b) {
  if (a.kind.index() != b.kind.index()) return false;
  if (auto* i = std::get_if<IfPremise>(&a.kind)) {
    auto& j = std::get<IfPremise>(b.kind);
    return i->op == j.op && equal(*i->lhs, *j.lhs) && equal(*i->rhs, *j.rhs);
  }
  if (std::holds_alternative<ElsePremise>(a.kind)) return true;
  auto& ia = std::get<IterPremise>(a.kind);
  auto& ib = std::get<IterPremise>(b.kind);
  return ia.iter == ib.iter && equal(*ia.body, *ib.body);
}

namespace {

bool case_equal(const SyntaxCase& a, const SyntaxCase& b) {
  if (a.kind.index() != b.kind.index()) return false;
  if (auto* c = std::get_if<CtorCase>(&a.kind)) {
    auto& d = std::get<CtorCase>(b.kind);
    return c->name == d.name && all_equal(c->args, d.args);
  }
  return equal(*std::get<InclCase>(a.kind).type,
               *std::get<InclCase>(b.kind).type);
}

bool prem_lists_equal(const std::vector<PremPtr>& a,
                      const std::vector<PremPtr>& b) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i)
    if (!equal(*a[i], *b[i])) return false;
  return true;
}

}  // namespace

bool equal(const Def& a, const Def& b) {
  if (a.kind.index() != b.kind.index()) return false;
  if (auto* s = std::get_if<SyntaxDef>(&a.kind)) {
    auto& t = std::get<SyntaxDef>(b.kind);
    if (s->name != t.name || s->cases.size() != t.cases.size()) return false;
    for (size_t i = 0; i < s->cases.size(); ++i)
      if (!case_equal(s->cases[i], t.cases[i])) return false;
    return true;
  }
  if (auto* v = std::get_if<VarDeclDef>(&a.kind)) {
    auto& w = std::get<VarDeclDef>(b.kind);
    return v->var == w.var && equal(*v->type, *w.type);
  }
  if (auto* f = std::get_if<FuncDeclDef>(&a.kind)) {
    auto& g = std::get<FuncDeclDef>(b.kind);
    return f->name == g.name && all_equal(f->params, g.params) &&
           equal(*f->result, *g.result);
  }
  if (auto* f = std::get_if<FuncClauseDef>(&a.kind)) {
    auto& g = std::get<FuncClauseDef>(b.kind);
    return f->name == g.name && all_equal(f->args, g.args) &&
           equal(*f->result, *g.result) && prem_lists_equal(f->premises, g.premises);
  }
  if (auto* r = std::get_if<RelationDef>(&a.kind)) {
    auto& s2 = std::get<RelationDef>(b.kind);
    return r->name == s2.name && r->rel == s2.rel && equal(*r->lhs, *s2.lhs) &&
           equal(*r->rhs, *s2.rhs);
  }
  auto& r = std::get<RuleDef>(a.kind);
  auto& s2 = std::get<RuleDef>(b.kind);
  return r.relation == s2.relation && r.rule_id == s2.rule_id &&
         r.rel == s2.rel && equal(*r.lhs, *s2.lhs) && equal(*r.rhs, *s2.rhs) &&
         prem_lists_equal(r.premises, s2.premises);
}

bool equal(const Script& a, const Script& b) {
  if (a.defs.size() != b.defs.size()) return false;
  for (size_t i = 0; i < a.defs.size(); ++i)
    if (!equal(a.defs[i], b.defs[i])) return false;
  return true;
}

namespace {

using SpanFn = std::function<void(const SourceSpan&)>;

void walk(const Typ& t, const SpanFn& fn) {
  fn(t.span);
  if (auto* tu = std::get_if<TupleT>(&t.kind))
    for (auto& e : tu->elems) walk(*e, fn);
  else if (auto* it = std::get_if<IterT>(&t.kind))
    walk(*it->base, fn);
}

void walk(const Exp& e, const SpanFn& fn) {
  fn(e.span);
  std::visit(
      [&](const auto& k) {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, ConstructE> ||
                      std::is_same_v<K, CallE>) {
          for (auto& a : k.args) walk(*a, fn);
        } else if constexpr (std::is_same_v<K, SeqE> ||
                             std::is_same_v<K, TupleE> ||
                             std::is_same_v<K, ListE>) {
          for (auto& a : k.elems) walk(*a, fn);
        } else if constexpr (std::is_same_v<K, OptE>) {
          if (k.payload) walk(*k.payload, fn);
        } else if constexpr (std::is_same_v<K, IterE>) {
          walk(*k.body, fn);
        }
      },
      e.kind);
}

void walk(const Premise& p, const SpanFn& fn) {
  fn(p.span);
  if (auto* i = std::get_if<IfPremise>(&p.kind)) {
    walk(*i->lhs, fn);
    walk(*i->rhs, fn);
  } else if (auto* it = std::get_if<IterPremise>(&p.kind)) {
    walk(*it->body, fn);
  }
}

}  // namespace

void walk_spans(const Script& script, const SpanFn& fn) {
  for (const auto& def : script.defs) {
    fn(def.span);
    std::visit(
        [&](const auto& k) {
          using K = std::decay_t<decltype(k)>;
          if constexpr (std::is_same_v<K, SyntaxDef>) {
            for (auto& c : k.cases) {
              fn(c.span);
              if (auto* ct = std::get_if<CtorCase>(&c.kind))
                for (auto& t : ct->args) walk(*t, fn);
              else
                walk(*std::get<InclCase>(c.kind).type, fn);
            }
          } else if constexpr (std::is_same_v<K, VarDeclDef>) {
            walk(*k.type, fn);
          } else if constexpr (std::is_same_v<K, FuncDeclDef>) {
            for (auto& t : k.params) walk(*t, fn);
            walk(*k.result, fn);
          } else if constexpr (std::is_same_v<K, FuncClauseDef>) {
            for (auto& a : k.args) walk(*a, fn);
            walk(*k.result, fn);
            for (auto& p : k.premises) walk(*p, fn);
          } else if constexpr (std::is_same_v<K, RelationDef>) {
            walk(*k.lhs, fn);
            walk(*k.rhs, fn);
          } else if constexpr (std::is_same_v<K, RuleDef>) {
            walk(*k.lhs, fn);
            walk(*k.rhs, fn);
            for (auto& p : k.premises) walk(*p, fn);
          }
        },
        def.kind);
  }
}

}  // namespace spectec::el
