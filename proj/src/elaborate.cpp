#include "spectec/elaborate.hpp"

#include <algorithm>
#include <cassert>
#include <set>
#include <sstream>

namespace spectec {
namespace {

using il::Type;

struct Elaborator {
  const el::Script& in;
  std::vector<Diagnostic> diags;
  il::Script out;
  bool failed = false;

  // Body-local state (per rule / clause / standalone expression).
  std::map<std::string, Type> bind_types;
  std::map<std::string, std::vector<SourceSpan>> var_spans;
  std::vector<el::Iter> iter_stack;
  std::vector<std::set<std::string>*> iter_collectors;
  const std::map<std::string, Type>* env_override = nullptr;

  explicit Elaborator(const el::Script& s) : in(s) {}

  void error(const SourceSpan& span, const char* code, std::string msg) {
    failed = true;
    diags.push_back(
        Diagnostic{Severity::Error, code, std::move(msg), span, {}});
  }
  void warn(const SourceSpan& span, const char* code, std::string msg) {
    diags.push_back(
        Diagnostic{Severity::Warning, code, std::move(msg), span, {}});
  }

  // --- pass 0/1: signatures -------------------------------------------

  void collect_signatures() {
    // Names first, so types can refer to any definition in the file set
    // regardless of order.
    for (const auto& def : in.defs) {
      if (auto* s = std::get_if<el::SyntaxDef>(&def.kind)) {
        if (out.syntaxes.count(s->name)) {
          error(def.span, "E-DUP", "duplicate syntax '" + s->name + "'");
          continue;
        }
        il::Prim prim;
        if (il::prim_from_name(s->name, prim)) {
          error(def.span, "E-DUP",
                "syntax '" + s->name + "' shadows a primitive type");
          continue;
        }
        out.syntaxes[s->name] = il::SyntaxInfo{s->name, {}, {}, def.span};
        out.syntax_order.push_back(s->name);
        out.def_order.emplace_back(il::DefKind::Syntax, s->name);
      } else if (auto* f = std::get_if<el::FuncDeclDef>(&def.kind)) {
        if (out.funcs.count(f->name)) {
          error(def.span, "E-DUP", "duplicate function '$" + f->name + "'");
          continue;
        }
        out.funcs[f->name] =
            il::FuncInfo{f->name, {}, Type::error(), {}, def.span};
        out.func_order.push_back(f->name);
        out.def_order.emplace_back(il::DefKind::Func, f->name);
      } else if (auto* r = std::get_if<el::RelationDef>(&def.kind)) {
        if (out.relations.count(r->name)) {
          error(def.span, "E-DUP", "duplicate relation '" + r->name + "'");
          continue;
        }
        out.relations[r->name] = il::RelationInfo{
            r->name, r->rel, Type::error(), Type::error(), {}, def.span};
        out.relation_order.push_back(r->name);
        out.def_order.emplace_back(il::DefKind::Relation, r->name);
      }
    }
    // Resolve declared types now that all names are known.
    for (const auto& def : in.defs) {
      if (auto* s = std::get_if<el::SyntaxDef>(&def.kind)) {
        auto it = out.syntaxes.find(s->name);
        if (it == out.syntaxes.end() || it->second.span != def.span) continue;
        il::SyntaxInfo& info = it->second;
        for (const auto& c : s->cases) {
          if (auto* ct = std::get_if<el::CtorCase>(&c.kind)) {
            if (out.ctor_syntax.count(ct->name)) {
              error(c.span, "E-DUP",
                    "constructor '" + ct->name + "' already declared in '" +
                        out.ctor_syntax[ct->name] + "'");
              continue;
            }
            il::CtorSig sig{ct->name, {}, c.span};
            for (const auto& t : ct->args) sig.args.push_back(resolve_typ(*t));
            out.ctor_syntax[ct->name] = s->name;
            info.ctors.push_back(std::move(sig));
          } else {
            Type t = resolve_typ(*std::get<el::InclCase>(c.kind).type);
            if (t.kind() == Type::Kind::IterK || t.kind() == Type::Kind::Tuple)
              error(c.span, "E-TYPE",
                    "only syntax or primitive names can be included in a sum");
            else
              info.inclusions.push_back(std::move(t));
          }
        }
      } else if (auto* f = std::get_if<el::FuncDeclDef>(&def.kind)) {
        auto it = out.funcs.find(f->name);
        if (it == out.funcs.end() || it->second.span != def.span) continue;
        for (const auto& t : f->params)
          it->second.params.push_back(resolve_typ(*t));
        it->second.result = resolve_typ(*f->result);
      } else if (auto* r = std::get_if<el::RelationDef>(&def.kind)) {
        auto it = out.relations.find(r->name);
        if (it == out.relations.end() || it->second.span != def.span) continue;
        it->second.lhs = resolve_typ(*r->lhs);
        it->second.rhs = resolve_typ(*r->rhs);
      } else if (auto* v = std::get_if<el::VarDeclDef>(&def.kind)) {
        Type t = resolve_typ(*v->type);
        auto [pos, inserted] = out.var_families.emplace(v->var, t);
        if (!inserted && pos->second != t)
          error(def.span, "E-DUP",
                "variable family '" + v->var + "' already declared as " +
                    pos->second.to_string());
      }
    }
    // Implicit families: every syntax name doubles as a metavariable family.
    for (const auto& name : out.syntax_order)
      out.var_families.emplace(name, Type::syn(name));
  }

  Type resolve_typ(const el::Typ& t) {
    if (auto* n = std::get_if<el::NameT>(&t.kind)) {
      il::Prim p;
      if (il::prim_from_name(n->name, p)) return Type::prim(p);
      if (out.syntaxes.count(n->name)) return Type::syn(n->name);
      error(t.span, "E-UNDEF", "unknown type '" + n->name + "'");
      return Type::error();
    }
    if (auto* tu = std::get_if<el::TupleT>(&t.kind)) {
      std::vector<Type> elems;
      for (const auto& e : tu->elems) elems.push_back(resolve_typ(*e));
      return Type::tuple(std::move(elems));
    }
    auto& it = std::get<el::IterT>(t.kind);
    Type base = resolve_typ(*it.base);
    if (it.iter == el::Iter::Opt && base.is_iter(el::Iter::Opt)) {
      error(t.span, "E-TYPE", "doubly-optional type is not allowed");
      return Type::error();
    }
    return Type::iter(std::move(base), it.iter);
  }

  // --- variables --------------------------------------------------------

  std::optional<Type> family_type(const std::string& base) {
    if (env_override) {
      auto it = env_override->find(base);
      if (it != env_override->end()) return it->second;
    }
    auto it = out.var_families.find(base);
    if (it != out.var_families.end()) return it->second;
    return std::nullopt;
  }

  void reset_body() {
    bind_types.clear();
    var_spans.clear();
    iter_stack.clear();
    iter_collectors.clear();
  }

  void note_var(const std::string& name, const Type& scalar,
                const SourceSpan& span) {
    Type binding = scalar;
    for (auto it = iter_stack.rbegin(); it != iter_stack.rend(); ++it)
      binding = Type::iter(std::move(binding), *it);
    var_spans[name].push_back(span);
    for (auto* c : iter_collectors) c->insert(name);
    auto [pos, inserted] = bind_types.emplace(name, binding);
    if (!inserted && pos->second != binding && !pos->second.is_error() &&
        !binding.is_error()) {
      error(span, "E-MULT",
            "variable '" + name + "' used at multiplicity " +
                binding.to_string() + " but bound at " +
                pos->second.to_string());
      pos->second = Type::error();
    }
  }

  // --- inclusion chains -------------------------------------------------

  // One-level implicit upcast: `from` is listed as an inclusion case of the
  // sum `to`.
  bool included_one_level(const Type& from, const Type& to) {
    if (to.kind() != Type::Kind::Syn) return false;
    auto it = out.syntaxes.find(to.syn());
    if (it == out.syntaxes.end()) return false;
    for (const auto& inc : it->second.inclusions)
      if (inc == from) return true;
    return false;
  }

  bool is_numeric(const Type& t, std::set<std::string>* seen = nullptr) {
    if (t.kind() == Type::Kind::Prim)
      return t.prim() == il::Prim::Nat || t.prim() == il::Prim::Int32 ||
             t.prim() == il::Prim::Int64;
    if (t.kind() != Type::Kind::Syn) return t.is_error();
    std::set<std::string> local;
    if (!seen) seen = &local;
    if (!seen->insert(t.syn()).second) return false;
    auto it = out.syntaxes.find(t.syn());
    if (it == out.syntaxes.end()) return false;
    for (const auto& inc : it->second.inclusions)
      if (is_numeric(inc, seen)) return true;
    return false;
  }

  // --- expressions -------------------------------------------------------

  il::ExpPtr elab_exp(const el::Exp& e, const Type* expected) {
    using namespace el;
    if (auto* v = std::get_if<VarE>(&e.kind)) {
      auto fam = family_type(v->base);
      if (!fam) {
        error(e.span, "E-UNDEF",
              "variable '" + v->name() + "' has no declared type");
        return il::make_exp(e.span, Type::error(), il::VarE{v->name()});
      }
      note_var(v->name(), *fam, e.span);
      auto node = il::make_exp(e.span, *fam, il::VarE{v->name()});
      return expected ? coerce(node, *expected) : node;
    }
    if (auto* c = std::get_if<el::ConstructE>(&e.kind)) {
      auto syn_it = out.ctor_syntax.find(c->ctor);
      if (syn_it == out.ctor_syntax.end()) {
        error(e.span, "E-UNDEF", "unknown constructor '" + c->ctor + "'");
        for (const auto& a : c->args) elab_exp(*a, nullptr);
        return il::make_exp(e.span, Type::error(),
                            il::ConstructE{c->ctor, "", {}});
      }
      const il::CtorSig* sig = out.find_ctor(c->ctor);
      il::ConstructE node{c->ctor, syn_it->second, {}};
      if (sig->args.size() != c->args.size())
        error(e.span, "E-ARITY",
              "constructor '" + c->ctor + "' expects " +
                  std::to_string(sig->args.size()) + " argument(s), got " +
                  std::to_string(c->args.size()));
      for (size_t i = 0; i < c->args.size(); ++i) {
        const Type* exp_t = i < sig->args.size() ? &sig->args[i] : nullptr;
        node.args.push_back(elab_exp(*c->args[i], exp_t));
      }
      auto res = il::make_exp(e.span, Type::syn(syn_it->second),
                              std::move(node));
      return expected ? coerce(res, *expected) : res;
    }
    if (auto* c = std::get_if<el::CallE>(&e.kind)) {
      auto fit = out.funcs.find(c->func);
      if (fit == out.funcs.end()) {
        error(e.span, "E-UNDEF", "unknown function '$" + c->func + "'");
        for (const auto& a : c->args) elab_exp(*a, nullptr);
        return il::make_exp(e.span, Type::error(), il::CallE{c->func, {}});
      }
      const il::FuncInfo& fn = fit->second;
      if (fn.params.size() != c->args.size())
        error(e.span, "E-ARITY",
              "function '$" + c->func + "' expects " +
                  std::to_string(fn.params.size()) + " argument(s), got " +
                  std::to_string(c->args.size()));
      il::CallE node{c->func, {}};
      for (size_t i = 0; i < c->args.size(); ++i) {
        const Type* exp_t = i < fn.params.size() ? &fn.params[i] : nullptr;
        node.args.push_back(elab_exp(*c->args[i], exp_t));
      }
      auto res = il::make_exp(e.span, fn.result, std::move(node));
      return expected ? coerce(res, *expected) : res;
    }
    if (auto* n = std::get_if<el::NatE>(&e.kind)) {
      Type t = Type::prim(il::Prim::Nat);
      if (expected && expected->kind() == Type::Kind::Prim &&
          (expected->prim() == il::Prim::Int32 ||
           expected->prim() == il::Prim::Int64))
        t = *expected;
      auto node = il::make_exp(e.span, t, il::NatE{n->value});
      return expected ? coerce(node, *expected) : node;
    }
    if (auto* o = std::get_if<el::OptE>(&e.kind)) {
      if (!o->payload) {
        if (!expected || expected->is_error())
          return il::make_exp(e.span, Type::error(), il::OptE{nullptr});
        if (expected->is_iter(el::Iter::Opt))
          return il::make_exp(e.span, *expected, il::OptE{nullptr});
        if (expected->is_iter(el::Iter::List))
          return il::make_exp(e.span, *expected, il::ListE{{}});
        error(e.span, "E-TYPE",
              "epsilon used where " + expected->to_string() + " is expected");
        return il::make_exp(e.span, Type::error(), il::OptE{nullptr});
      }
      const Type* payload_exp = nullptr;
      if (expected && expected->is_iter(el::Iter::Opt))
        payload_exp = &expected->base();
      auto payload = elab_exp(*o->payload, payload_exp);
      return il::make_exp(e.span, Type::iter(payload->type, el::Iter::Opt),
                          il::OptE{payload});
    }
    if (auto* l = std::get_if<el::ListE>(&e.kind)) {
      const Type* elem_exp = nullptr;
      if (expected && expected->is_iter(el::Iter::List))
        elem_exp = &expected->base();
      std::vector<il::ExpPtr> elems;
      for (const auto& x : l->elems) elems.push_back(elab_exp(*x, elem_exp));
      Type t;
      if (elem_exp) {
        t = *expected;
      } else if (!elems.empty()) {
        t = Type::iter(elems[0]->type, el::Iter::List);
        for (auto& x : elems)
          if (x->type != elems[0]->type && !x->type.is_error())
            error(x->span, "E-TYPE",
                  "list element type " + x->type.to_string() +
                      " differs from " + elems[0]->type.to_string());
      } else {
        if (expected && !expected->is_error())
          error(e.span, "E-TYPE", "empty list used where " +
                                      expected->to_string() + " is expected");
        else if (!expected)
          error(e.span, "E-TYPE",
                "cannot infer the element type of an empty list");
        t = Type::error();
      }
      auto node = il::make_exp(e.span, t, il::ListE{std::move(elems)});
      return expected ? coerce(node, *expected) : node;
    }
    if (auto* it = std::get_if<el::IterE>(&e.kind)) {
      const Type* body_exp = nullptr;
      if (expected && expected->is_iter(it->iter)) body_exp = &expected->base();
      std::set<std::string> collected;
      iter_stack.push_back(it->iter);
      iter_collectors.push_back(&collected);
      auto body = elab_exp(*it->body, body_exp);
      iter_collectors.pop_back();
      iter_stack.pop_back();
      if (it->iter == el::Iter::Opt && body->type.is_iter(el::Iter::Opt))
        error(e.span, "E-TYPE", "doubly-optional expression is not allowed");
      il::IterE node{body, it->iter,
                     std::vector<std::string>(collected.begin(),
                                              collected.end())};
      auto res = il::make_exp(e.span, Type::iter(body->type, it->iter),
                              std::move(node));
      return expected ? coerce(res, *expected) : res;
    }
    if (auto* tu = std::get_if<el::TupleE>(&e.kind)) {
      const std::vector<Type>* exp_elems = nullptr;
      if (expected && expected->kind() == Type::Kind::Tuple &&
          expected->elems().size() == tu->elems.size())
        exp_elems = &expected->elems();
      std::vector<il::ExpPtr> elems;
      std::vector<Type> types;
      for (size_t i = 0; i < tu->elems.size(); ++i) {
        elems.push_back(
            elab_exp(*tu->elems[i], exp_elems ? &(*exp_elems)[i] : nullptr));
        types.push_back(elems.back()->type);
      }
      auto node = il::make_exp(e.span, Type::tuple(std::move(types)),
                               il::TupleE{std::move(elems)});
      return expected ? coerce(node, *expected) : node;
    }
    // SeqE: an instruction sequence.
    auto& seq = std::get<el::SeqE>(e.kind);
    if (expected && expected->is_iter(el::Iter::List))
      return elab_instr_seq(e, *expected);
    // Without a sequence-typed context, synthesize element-wise.
    std::vector<il::ExpPtr> elems;
    for (const auto& x : seq.elems) elems.push_back(elab_exp(*x, nullptr));
    Type elem_t = Type::error();
    for (auto& x : elems) {
      Type t = x->type.is_iter(el::Iter::List) ? x->type.base() : x->type;
      if (elem_t.is_error()) elem_t = t;
      else if (t != elem_t && !t.is_error()) {
        error(x->span, "E-TYPE",
              "sequence element type " + t.to_string() + " differs from " +
                  elem_t.to_string());
      }
    }
    auto node = il::make_exp(e.span, Type::iter(elem_t, el::Iter::List),
                             il::SeqE{std::move(elems)});
    return expected ? coerce(node, *expected) : node;
  }

  // Normalizes a rule side (or any juxtaposition) into a SeqE of the given
  // list type. Elements that are themselves list-typed are spliced.
  il::ExpPtr elab_instr_seq(const el::Exp& e, const Type& list_type) {
    assert(list_type.is_iter(el::Iter::List) || list_type.is_error());
    const Type elem_type =
        list_type.is_error() ? Type::error() : list_type.base();
    std::vector<const el::Exp*> elems;
    if (auto* s = std::get_if<el::SeqE>(&e.kind)) {
      for (const auto& x : s->elems) elems.push_back(x.get());
    } else {
      elems.push_back(&e);
    }
    std::vector<il::ExpPtr> out_elems;
    for (const el::Exp* x : elems) {
      if (auto* o = std::get_if<el::OptE>(&x->kind); o && !o->payload)
        continue;  // epsilon: empty splice
      if (std::holds_alternative<el::IterE>(x->kind)) {
        out_elems.push_back(elab_exp(*x, &list_type));  // splice
      } else {
        out_elems.push_back(elab_exp(*x, &elem_type));
      }
    }
    return il::make_exp(e.span, list_type, il::SeqE{std::move(out_elems)});
  }

  // Widening without diagnostics; returns null when no rule applies.
  il::ExpPtr try_coerce(const il::ExpPtr& got, const Type& expected) {
    const Type& t = got->type;
    if (t == expected || t.is_error() || expected.is_error()) return got;
    // Lift a scalar into an option or singleton list.
    if (expected.is_iter(el::Iter::Opt) && t == expected.base())
      return il::make_exp(got->span, expected, il::OptE{got});
    if (expected.is_iter(el::Iter::List) && t == expected.base())
      return il::make_exp(got->span, expected,
                          il::ListE{std::vector<il::ExpPtr>{got}});
    // Implicit upcast into a declaring sum (one level deep).
    if (included_one_level(t, expected))
      return il::make_exp(got->span, expected, il::SubE{got, t});
    // Element-wise upcast for iterations.
    if (expected.is_iter() && t.is_iter() && expected.iter() == t.iter() &&
        included_one_level(t.base(), expected.base()))
      return il::make_exp(got->span, expected, il::SubE{got, t});
    return nullptr;
  }

  il::ExpPtr coerce(const il::ExpPtr& got, const Type& expected) {
    if (auto res = try_coerce(got, expected)) return res;
    error(got->span, "E-TYPE",
          "expected " + expected.to_string() + ", found " +
              got->type.to_string());
    return got;
  }

  // --- premises ----------------------------------------------------------

  bool needs_context(const el::Exp& e) {
    if (auto* o = std::get_if<el::OptE>(&e.kind)) return !o->payload;
    if (auto* l = std::get_if<el::ListE>(&e.kind)) return l->elems.empty();
    return false;
  }

  il::PremPtr elab_premise(const el::Premise& p) {
    using namespace el;
    if (auto* i = std::get_if<IfPremise>(&p.kind)) {
      il::ExpPtr lhs, rhs;
      bool lneed = needs_context(*i->lhs), rneed = needs_context(*i->rhs);
      if (lneed && rneed) {
        error(p.span, "E-TYPE",
              "neither side of the premise determines a type");
        lhs = elab_exp(*i->lhs, nullptr);
        rhs = elab_exp(*i->rhs, nullptr);
      } else if (lneed) {
        rhs = elab_exp(*i->rhs, nullptr);
        lhs = elab_exp(*i->lhs, &rhs->type);
      } else if (rneed) {
        lhs = elab_exp(*i->lhs, nullptr);
        rhs = elab_exp(*i->rhs, &lhs->type);
      } else {
        lhs = elab_exp(*i->lhs, nullptr);
        rhs = elab_exp(*i->rhs, nullptr);
        if (lhs->type != rhs->type) {
          if (auto r2 = try_coerce(rhs, lhs->type)) {
            rhs = r2;
          } else if (auto l2 = try_coerce(lhs, rhs->type)) {
            lhs = l2;
          } else {
            error(p.span, "E-TYPE",
                  "premise compares " + lhs->type.to_string() + " with " +
                      rhs->type.to_string());
          }
        }
      }
      if (i->op != CmpOp::Eq && i->op != CmpOp::Ne) {
        if (!is_numeric(lhs->type))
          error(p.span, "E-TYPE",
                "ordered comparison requires a numeric type, found " +
                    lhs->type.to_string());
      }
      return il::make_prem(p.span, il::IfPrem{lhs, i->op, rhs});
    }
    if (std::holds_alternative<ElsePremise>(p.kind))
      return il::make_prem(p.span, il::ElsePrem{});
    auto& it = std::get<IterPremise>(p.kind);
    iter_stack.push_back(it.iter);
    auto body = elab_premise(*it.body);
    iter_stack.pop_back();
    return il::make_prem(p.span, il::IterPrem{body, it.iter});
  }

  void check_else_placement(const std::vector<el::PremPtr>& premises) {
    for (size_t i = 0; i < premises.size(); ++i) {
      if (std::holds_alternative<el::ElsePremise>(premises[i]->kind) &&
          premises.size() != 1)
        error(premises[i]->span, "E-TYPE",
              "'otherwise' must be the sole premise");
    }
  }

  // --- bodies ------------------------------------------------------------

  static void collect_el_vars(const el::Exp& e, std::set<std::string>& out) {
    if (auto* v = std::get_if<el::VarE>(&e.kind)) {
      out.insert(v->name());
      return;
    }
    std::visit(
        [&](const auto& k) {
          using K = std::decay_t<decltype(k)>;
          if constexpr (std::is_same_v<K, el::ConstructE> ||
                        std::is_same_v<K, el::CallE>) {
            for (const auto& a : k.args) collect_el_vars(*a, out);
          } else if constexpr (std::is_same_v<K, el::SeqE> ||
                               std::is_same_v<K, el::TupleE> ||
                               std::is_same_v<K, el::ListE>) {
            for (const auto& a : k.elems) collect_el_vars(*a, out);
          } else if constexpr (std::is_same_v<K, el::OptE>) {
            if (k.payload) collect_el_vars(*k.payload, out);
          } else if constexpr (std::is_same_v<K, el::IterE>) {
            collect_el_vars(*k.body, out);
          }
        },
        e.kind);
  }

  void finish_bindings(const std::set<std::string>& pattern_vars,
                       il::BindOrigin pattern_origin,
                       const std::vector<el::PremPtr>& premises,
                       std::map<std::string, il::Binding>& out_bound) {
    // First premise mentioning each non-pattern variable.
    std::map<std::string, int> first_prem;
    for (size_t i = 0; i < premises.size(); ++i) {
      std::set<std::string> vars;
      if (auto* ip = std::get_if<el::IfPremise>(&premises[i]->kind)) {
        collect_el_vars(*ip->lhs, vars);
        collect_el_vars(*ip->rhs, vars);
      } else if (auto* itp = std::get_if<el::IterPremise>(&premises[i]->kind)) {
        if (auto* ip2 = std::get_if<el::IfPremise>(&itp->body->kind)) {
          collect_el_vars(*ip2->lhs, vars);
          collect_el_vars(*ip2->rhs, vars);
        }
      }
      for (const auto& v : vars)
        first_prem.emplace(v, static_cast<int>(i));
    }
    for (const auto& [name, type] : bind_types) {
      il::Binding b;
      b.type = type;
      if (pattern_vars.count(name)) {
        b.origin = pattern_origin;
      } else {
        b.origin = il::BindOrigin::Premise;
        auto it = first_prem.find(name);
        b.premise_index = it == first_prem.end() ? -1 : it->second;
        // A premise-introduced variable mentioned exactly once is dead.
        if (var_spans[name].size() == 1)
          warn(var_spans[name][0], "W-UNUSED",
               "variable '" + name + "' is bound but never used");
      }
      out_bound[name] = std::move(b);
    }
  }

  void elab_rule(const el::RuleDef& r, const SourceSpan& def_span) {
    auto rel_it = out.relations.find(r.relation);
    if (rel_it == out.relations.end()) {
      error(def_span, "E-UNDEF", "unknown relation '" + r.relation + "'");
      return;
    }
    il::RelationInfo& rel = rel_it->second;
    if (rel.rel != r.rel)
      error(def_span, "E-TYPE",
            std::string("rule uses '") +
                (r.rel == el::RelKind::Reduction ? "~>" : "|-") +
                "' but relation '" + r.relation + "' is declared with '" +
                (rel.rel == el::RelKind::Reduction ? "~>" : "|-") + "'");
    for (const auto& existing : rel.rules)
      if (existing.id == r.rule_id)
        error(def_span, "E-DUP",
              "duplicate rule id '" + r.relation + "/" + r.rule_id + "'");

    reset_body();
    il::Rule rule;
    rule.relation = r.relation;
    rule.id = r.rule_id;
    rule.span = def_span;

    if (rel.rel == el::RelKind::Reduction) {
      rule.lhs = elab_instr_seq(*r.lhs, rel.lhs);
      rule.rhs = elab_instr_seq(*r.rhs, rel.rhs);
      // The final lhs element must be the constructor being defined.
      const auto& elems = std::get<il::SeqE>(rule.lhs->kind).elems;
      const il::Exp* head =
          elems.empty() ? nullptr : &il::skip_casts(*elems.back());
      const il::ConstructE* ctor =
          head ? std::get_if<il::ConstructE>(&head->kind) : nullptr;
      if (!ctor) {
        error(r.lhs->span, "E-TYPE",
              "the rule left-hand side must end with an instruction "
              "constructor");
      } else {
        rule.head_ctor = ctor->ctor;
      }
    } else {
      rule.lhs = elab_exp(*r.lhs, &rel.lhs);
      rule.rhs = elab_exp(*r.rhs, &rel.rhs);
    }

    check_else_placement(r.premises);
    for (const auto& p : r.premises) rule.premises.push_back(elab_premise(*p));

    std::set<std::string> lhs_vars;
    collect_el_vars(*r.lhs, lhs_vars);
    finish_bindings(lhs_vars, il::BindOrigin::Lhs, r.premises,
                    rule.bound_vars);
    rel.rules.push_back(std::move(rule));
  }

  void elab_clause(const el::FuncClauseDef& c, const SourceSpan& def_span) {
    auto it = out.funcs.find(c.name);
    if (it == out.funcs.end()) {
      error(def_span, "E-UNDEF",
            "clause for undeclared function '$" + c.name + "'");
      return;
    }
    il::FuncInfo& fn = it->second;
    reset_body();
    il::ClauseInfo clause;
    clause.span = def_span;
    if (fn.params.size() != c.args.size())
      error(def_span, "E-ARITY",
            "function '$" + c.name + "' expects " +
                std::to_string(fn.params.size()) + " argument(s), got " +
                std::to_string(c.args.size()));
    for (size_t i = 0; i < c.args.size(); ++i) {
      const Type* exp_t = i < fn.params.size() ? &fn.params[i] : nullptr;
      clause.args.push_back(elab_exp(*c.args[i], exp_t));
    }
    check_else_placement(c.premises);
    for (const auto& p : c.premises)
      clause.premises.push_back(elab_premise(*p));
    clause.result = elab_exp(*c.result, &fn.result);

    std::set<std::string> pattern_vars;
    for (const auto& a : c.args) collect_el_vars(*a, pattern_vars);
    finish_bindings(pattern_vars, il::BindOrigin::Param, c.premises,
                    clause.bound_vars);
    fn.clauses.push_back(std::move(clause));
  }

  void run() {
    collect_signatures();
    for (const auto& def : in.defs) {
      if (auto* r = std::get_if<el::RuleDef>(&def.kind))
        elab_rule(*r, def.span);
      else if (auto* c = std::get_if<el::FuncClauseDef>(&def.kind))
        elab_clause(*c, def.span);
    }
    if (!failed) out.recursion_groups = il::dependency_groups(out);
  }
};

}  // namespace

ElabResult elaborate(const el::Script& script) {
  Elaborator el(script);
  el.run();
  ElabResult result;
  sort_diagnostics(el.diags);
  result.diags = std::move(el.diags);
  if (!el.failed) result.script = std::move(el.out);
  return result;
}

il::Type infer_multiplicity(const el::Exp& exp,
                            const std::map<std::string, il::Type>& env,
                            const el::Script& context,
                            std::vector<Diagnostic>& diags,
                            const il::Type* expected) {
  Elaborator el(context);
  el.collect_signatures();
  el.env_override = &env;
  el.reset_body();
  auto typed = el.elab_exp(exp, expected);
  sort_diagnostics(el.diags);
  diags.insert(diags.end(), el.diags.begin(), el.diags.end());
  return typed->type;
}

}  // namespace spectec
