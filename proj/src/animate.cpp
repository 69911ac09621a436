#include "spectec/animate.hpp"

#include <algorithm>
#include <cassert>

namespace spectec {
namespace {

using il::Type;

// The trap target form of the DSL.
constexpr const char* kTrapCtor = "TRAP";

void collect_il_vars(const il::Exp& e, std::set<std::string>& out) {
  std::visit(
      [&](const auto& k) {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, il::VarE>) {
          out.insert(k.name);
        } else if constexpr (std::is_same_v<K, il::ConstructE> ||
                             std::is_same_v<K, il::CallE>) {
          for (const auto& a : k.args) collect_il_vars(*a, out);
        } else if constexpr (std::is_same_v<K, il::SeqE> ||
                             std::is_same_v<K, il::TupleE> ||
                             std::is_same_v<K, il::ListE>) {
          for (const auto& a : k.elems) collect_il_vars(*a, out);
        } else if constexpr (std::is_same_v<K, il::OptE>) {
          if (k.payload) collect_il_vars(*k.payload, out);
        } else if constexpr (std::is_same_v<K, il::IterE>) {
          collect_il_vars(*k.body, out);
        } else if constexpr (std::is_same_v<K, il::SubE>) {
          collect_il_vars(*k.inner, out);
        }
      },
      e.kind);
}

bool all_bound(const il::Exp& e, const std::set<std::string>& bound) {
  std::set<std::string> vars;
  collect_il_vars(e, vars);
  return std::all_of(vars.begin(), vars.end(),
                     [&](const std::string& v) { return bound.count(v) > 0; });
}

// A bindable pattern: a variable, an option of a variable, or a list of
// variables (modulo casts). Returns the variables it would bind, or nullopt
// when the shape is not a pattern.
std::optional<std::vector<std::string>> pattern_vars(const il::Exp& e) {
  const il::Exp& s = il::skip_casts(e);
  if (auto* v = std::get_if<il::VarE>(&s.kind))
    return std::vector<std::string>{v->name};
  if (auto* o = std::get_if<il::OptE>(&s.kind)) {
    if (!o->payload) return std::nullopt;
    const il::Exp& p = il::skip_casts(*o->payload);
    if (auto* v = std::get_if<il::VarE>(&p.kind))
      return std::vector<std::string>{v->name};
    return std::nullopt;
  }
  if (auto* l = std::get_if<il::ListE>(&s.kind)) {
    std::vector<std::string> vars;
    for (const auto& el : l->elems) {
      const il::Exp& p = il::skip_casts(*el);
      if (auto* v = std::get_if<il::VarE>(&p.kind))
        vars.push_back(v->name);
      else
        return std::nullopt;
    }
    if (vars.empty()) return std::nullopt;
    return vars;
  }
  return std::nullopt;
}

// The expression side of a binding premise must be rooted in a function
// application; a plain constant or variable never binds the other side.
bool app_rooted(const il::Exp& e) {
  return std::holds_alternative<il::CallE>(il::skip_casts(e).kind);
}

// Structural key for comparing LHS shapes across rules of a group
// (constructors, literals, and variable names must line up).
std::string shape_key(const il::Exp& e) {
  const il::Exp& s = il::skip_casts(e);
  std::string out;
  std::visit(
      [&](const auto& k) {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, il::VarE>) {
          out = "v:" + k.name;
        } else if constexpr (std::is_same_v<K, il::ConstructE>) {
          out = "c:" + k.ctor + "(";
          for (const auto& a : k.args) out += shape_key(*a) + ",";
          out += ")";
        } else if constexpr (std::is_same_v<K, il::CallE>) {
          out = "f:" + k.func + "(";
          for (const auto& a : k.args) out += shape_key(*a) + ",";
          out += ")";
        } else if constexpr (std::is_same_v<K, il::NatE>) {
          out = "n:" + std::to_string(k.value);
        } else if constexpr (std::is_same_v<K, il::IterE>) {
          out = std::string("i") + (k.iter == el::Iter::List ? "*" : "?") +
                ":" + shape_key(*k.body);
        } else if constexpr (std::is_same_v<K, il::ListE> ||
                             std::is_same_v<K, il::SeqE> ||
                             std::is_same_v<K, il::TupleE>) {
          out = "l:[";
          for (const auto& a : k.elems) out += shape_key(*a) + ",";
          out += "]";
        } else if constexpr (std::is_same_v<K, il::OptE>) {
          out = k.payload ? "o:" + shape_key(*k.payload) : "o:";
        } else {
          out = "?";
        }
      },
      s.kind);
  return out;
}

struct Animator {
  std::vector<AnimationError>& errors;
  std::string context;  // rule or function being animated
  SourceSpan context_span;
  bool failed = false;

  void error(std::string msg, std::vector<std::string> vars = {}) {
    failed = true;
    errors.push_back(AnimationError{context, std::move(vars), context_span,
                                    std::move(msg)});
  }

  al::ExprPtr conv(const il::Exp& e) {
    using namespace al;
    const il::Exp& s = il::skip_casts(e);
    if (auto* v = std::get_if<il::VarE>(&s.kind))
      return make_expr(NameE{v->name});
    if (auto* c = std::get_if<il::ConstructE>(&s.kind)) {
      ConstructE out{c->ctor, {}};
      for (const auto& a : c->args) out.args.push_back(conv(*a));
      return make_expr(std::move(out));
    }
    if (auto* c = std::get_if<il::CallE>(&s.kind)) {
      AppE out{c->func, {}};
      for (const auto& a : c->args) out.args.push_back(conv(*a));
      return make_expr(std::move(out));
    }
    if (auto* n = std::get_if<il::NatE>(&s.kind))
      return make_expr(NatE{n->value});
    if (auto* l = std::get_if<il::ListE>(&s.kind)) {
      ListE out;
      for (const auto& a : l->elems) out.elems.push_back(conv(*a));
      return make_expr(std::move(out));
    }
    if (auto* o = std::get_if<il::OptE>(&s.kind)) {
      // Options are sequences of length <= 1 at the algorithmic level.
      if (!o->payload) return make_expr(ListE{});
      return make_expr(ListE{{conv(*o->payload)}});
    }
    if (auto* it = std::get_if<il::IterE>(&s.kind)) {
      // `x*` reads the whole list bound to x.
      const il::Exp& body = il::skip_casts(*it->body);
      if (auto* v = std::get_if<il::VarE>(&body.kind))
        return make_expr(NameE{v->name});
      error("unsupported iterated expression in animation");
      return make_expr(ListE{});
    }
    if (auto* sq = std::get_if<il::SeqE>(&s.kind)) {
      ListE out;
      for (const auto& el : sq->elems) out.elems.push_back(conv(*el));
      return make_expr(std::move(out));
    }
    if (auto* tu = std::get_if<il::TupleE>(&s.kind)) {
      ListE out;
      for (const auto& el : tu->elems) out.elems.push_back(conv(*el));
      return make_expr(std::move(out));
    }
    error("unsupported expression form in animation");
    return make_expr(al::ListE{});
  }

  static al::CmpOp conv_op(el::CmpOp op) {
    switch (op) {
      case el::CmpOp::Eq: return al::CmpOp::Is;
      case el::CmpOp::Ne: return al::CmpOp::Ne;
      case el::CmpOp::Lt: return al::CmpOp::Lt;
      case el::CmpOp::Le: return al::CmpOp::Le;
      case el::CmpOp::Gt: return al::CmpOp::Gt;
      case el::CmpOp::Ge: return al::CmpOp::Ge;
    }
    return al::CmpOp::Is;
  }

  // A fully bound premise as a condition.
  al::CondPtr conv_check(const il::Prem& p) {
    if (auto* ip = std::get_if<il::IfPrem>(&p.kind))
      return al::make_cond(
          al::CompareC{conv_op(ip->op), conv(*ip->lhs), conv(*ip->rhs)});
    if (auto* itp = std::get_if<il::IterPrem>(&p.kind)) {
      // An iterated equality over whole lists compares the lists directly.
      if (auto* ip = std::get_if<il::IfPrem>(&itp->body->kind)) {
        if (ip->op == el::CmpOp::Eq || ip->op == el::CmpOp::Ne)
          return al::make_cond(
              al::CompareC{conv_op(ip->op), conv(*ip->lhs), conv(*ip->rhs)});
      }
      error("unsupported iterated premise in animation");
      return al::make_cond(al::TopValueC{nullptr});
    }
    error("unsupported premise form in animation");
    return al::make_cond(al::TopValueC{nullptr});
  }

  // Compiles a rule RHS into trailing instructions. `push_ctors` holds the
  // value constructors popped by this algorithm: the same forms push as
  // values; the trap form terminates; any residual instructions defer
  // through one ExecuteI so they execute in sequence order.
  std::vector<al::Instr> compile_rhs(const il::Exp& rhs,
                                     const std::set<std::string>& push_ctors) {
    using namespace al;
    std::vector<Instr> out;
    const auto* seq = std::get_if<il::SeqE>(&il::skip_casts(rhs).kind);
    std::vector<il::ExpPtr> single;
    const std::vector<il::ExpPtr>* elems;
    if (seq) {
      elems = &seq->elems;
    } else {
      single.push_back(std::make_shared<il::Exp>(rhs));
      elems = &single;
    }
    size_t i = 0;
    // Leading value pushes.
    for (; i < elems->size(); ++i) {
      const il::Exp& el_exp = il::skip_casts(*(*elems)[i]);
      auto* c = std::get_if<il::ConstructE>(&el_exp.kind);
      if (!c || !push_ctors.count(c->ctor)) break;
      out.push_back(Instr{PushI{conv(el_exp)}});
    }
    if (i == elems->size()) return out;
    // Trap.
    {
      const il::Exp& el_exp = il::skip_casts(*(*elems)[i]);
      auto* c = std::get_if<il::ConstructE>(&el_exp.kind);
      if (c && c->ctor == kTrapCtor) {
        if (i + 1 != elems->size())
          error("instructions follow the trap form in a rule right-hand side");
        out.push_back(Instr{al::TrapI{}});
        return out;
      }
    }
    // Residual instruction sequence.
    std::vector<ExprPtr> rest;
    for (; i < elems->size(); ++i) {
      const il::Exp& el_exp = il::skip_casts(*(*elems)[i]);
      if (el_exp.type.is_iter(el::Iter::List)) {
        if (!rest.empty() || i + 1 != elems->size()) {
          error(
              "a list splice in a rule right-hand side cannot be mixed with "
              "other residual instructions");
          return out;
        }
        out.push_back(Instr{ExecuteI{conv(el_exp)}});
        return out;
      }
      rest.push_back(conv(el_exp));
    }
    if (rest.size() == 1) {
      out.push_back(Instr{ExecuteI{rest[0]}});
    } else if (!rest.empty()) {
      out.push_back(Instr{ExecuteI{make_expr(ListE{std::move(rest)})}});
    }
    return out;
  }
};

// Structural info extracted from one rule's LHS.
struct LhsShape {
  std::vector<const il::Exp*> value_patterns;  // before the instruction
  const il::ConstructE* head = nullptr;
};

std::optional<LhsShape> split_lhs(const il::Rule& rule) {
  auto* seq = std::get_if<il::SeqE>(&rule.lhs->kind);
  if (!seq || seq->elems.empty()) return std::nullopt;
  LhsShape shape;
  for (size_t i = 0; i + 1 < seq->elems.size(); ++i)
    shape.value_patterns.push_back(seq->elems[i].get());
  shape.head =
      std::get_if<il::ConstructE>(&il::skip_casts(*seq->elems.back()).kind);
  if (!shape.head) return std::nullopt;
  return shape;
}

struct SectionResult {
  std::vector<al::Instr> instrs;
  al::CondPtr top_guard;  // condition of the single top-level IfI, if any
};

}  // namespace

std::variant<std::vector<PremiseStep>, CyclicDependency> premise_dataflow(
    const std::vector<il::PremPtr>& premises,
    const std::set<std::string>& initially_bound) {
  std::set<std::string> bound = initially_bound;
  std::vector<bool> placed(premises.size(), false);
  std::vector<PremiseStep> order;

  auto try_place = [&](size_t i) -> bool {
    const il::Prem& p = *premises[i];
    const il::IfPrem* ip = std::get_if<il::IfPrem>(&p.kind);
    if (auto* itp = std::get_if<il::IterPrem>(&p.kind))
      ip = std::get_if<il::IfPrem>(&itp->body->kind);
    if (!ip) return false;

    bool l_ok = all_bound(*ip->lhs, bound);
    bool r_ok = all_bound(*ip->rhs, bound);
    if (l_ok && r_ok) {
      order.push_back(PremiseStep{i, false, {}});
      placed[i] = true;
      return true;
    }
    if (ip->op != el::CmpOp::Eq) return false;
    if (std::holds_alternative<il::IterPrem>(p.kind)) return false;
    const il::Exp* pat;
    const il::Exp* expr;
    if (l_ok && !r_ok) {
      pat = ip->rhs.get();
      expr = ip->lhs.get();
    } else if (r_ok && !l_ok) {
      pat = ip->lhs.get();
      expr = ip->rhs.get();
    } else {
      return false;
    }
    auto vars = pattern_vars(*pat);
    if (!vars || !app_rooted(*expr)) return false;
    for (const auto& v : *vars)
      if (bound.count(v)) return false;
    for (const auto& v : *vars) bound.insert(v);
    order.push_back(PremiseStep{i, true, std::move(*vars)});
    placed[i] = true;
    return true;
  };

  size_t remaining = premises.size();
  for (size_t i = 0; i < premises.size(); ++i)
    if (std::holds_alternative<il::ElsePrem>(premises[i]->kind)) {
      placed[i] = true;  // 'otherwise' never participates in dataflow
      --remaining;
    }
  bool progress = true;
  while (remaining > 0 && progress) {
    progress = false;
    for (size_t i = 0; i < premises.size(); ++i) {
      if (placed[i]) continue;
      if (try_place(i)) {
        progress = true;
        --remaining;
      }
    }
  }
  if (remaining > 0) {
    std::set<std::string> unresolved;
    for (size_t i = 0; i < premises.size(); ++i) {
      if (placed[i]) continue;
      std::set<std::string> vars;
      if (auto* ip = std::get_if<il::IfPrem>(&premises[i]->kind)) {
        collect_il_vars(*ip->lhs, vars);
        collect_il_vars(*ip->rhs, vars);
      } else if (auto* itp = std::get_if<il::IterPrem>(&premises[i]->kind)) {
        if (auto* ip2 = std::get_if<il::IfPrem>(&itp->body->kind)) {
          collect_il_vars(*ip2->lhs, vars);
          collect_il_vars(*ip2->rhs, vars);
        }
      }
      for (const auto& v : vars)
        if (!bound.count(v)) unresolved.insert(v);
    }
    return CyclicDependency{
        std::vector<std::string>(unresolved.begin(), unresolved.end())};
  }
  return order;
}

std::pair<al::CondPtr, al::Instr> guard_partiality(const il::Exp& pattern,
                                                   const al::ExprPtr& expr,
                                                   const il::Type& expr_type) {
  using namespace al;
  const il::Exp& s = il::skip_casts(pattern);

  // Option/list destructuring: bind the payload(s), guarded by a length
  // check so the binding can never fail at run time.
  if (expr_type.is_iter()) {
    if (auto* o = std::get_if<il::OptE>(&s.kind); o && o->payload) {
      const il::Exp& p = il::skip_casts(*o->payload);
      const auto* v = std::get_if<il::VarE>(&p.kind);
      assert(v);
      auto pat = make_expr(ListE{{make_expr(NameE{v->name})}});
      auto guard = make_cond(CompareC{CmpOp::Is, make_expr(LengthE{expr}),
                                      make_expr(al::NatE{1})});
      return {guard, Instr{LetI{pat, expr}}};
    }
    if (auto* l = std::get_if<il::ListE>(&s.kind)) {
      ListE pat;
      for (const auto& el : l->elems) {
        const il::Exp& p = il::skip_casts(*el);
        const auto* v = std::get_if<il::VarE>(&p.kind);
        assert(v);
        pat.elems.push_back(make_expr(NameE{v->name}));
      }
      uint64_t n = pat.elems.size();
      auto guard = make_cond(CompareC{CmpOp::Is, make_expr(LengthE{expr}),
                                      make_expr(al::NatE{n})});
      return {guard, Instr{LetI{make_expr(std::move(pat)), expr}}};
    }
  }
  // Scalar (or whole-collection) binding needs no guard.
  const auto* v = std::get_if<il::VarE>(&s.kind);
  assert(v);
  return {nullptr, Instr{LetI{make_expr(al::NameE{v->name}), expr}}};
}

std::optional<al::Algorithm> animate_rule_group(
    const std::vector<const il::Rule*>& rules,
    std::vector<AnimationError>& errors) {
  using namespace al;
  assert(!rules.empty());
  Animator an{errors};
  an.context = rules[0]->relation + "/" + rules[0]->id;
  an.context_span = rules[0]->span;

  // All rules must share the instruction constructor and the LHS pattern
  // shape (including variable names) so pops can be emitted once.
  auto shape0 = split_lhs(*rules[0]);
  if (!shape0) {
    an.error("rule left-hand side does not end with an instruction");
    return std::nullopt;
  }
  std::string lhs_key = shape_key(*rules[0]->lhs);
  for (const il::Rule* r : rules) {
    an.context = r->relation + "/" + r->id;
    an.context_span = r->span;
    if (shape_key(*r->lhs) != lhs_key) {
      an.error(
          "rules for one instruction must share the left-hand-side pattern "
          "(same operands and variable names)");
      return std::nullopt;
    }
  }

  an.context = rules[0]->relation + "/" + rules[0]->id;
  an.context_span = rules[0]->span;

  Algorithm algo;
  algo.instr_ctor = shape0->head->ctor;

  // Parameters: the immediates of the instruction constructor.
  std::set<std::string> bound;
  for (const auto& arg : shape0->head->args) {
    const il::Exp& a = il::skip_casts(*arg);
    const il::VarE* v = std::get_if<il::VarE>(&a.kind);
    if (!v) {
      if (auto* it = std::get_if<il::IterE>(&a.kind))
        v = std::get_if<il::VarE>(&il::skip_casts(*it->body).kind);
    }
    if (!v) {
      an.error("unsupported immediate pattern in rule left-hand side");
      return std::nullopt;
    }
    algo.params.push_back(make_expr(NameE{v->name}));
    bound.insert(v->name);
  }

  // Stack operands: popped in reverse order, each preceded by a top-of-stack
  // assertion justified by validation.
  std::set<std::string> push_ctors;
  for (auto it = shape0->value_patterns.rbegin();
       it != shape0->value_patterns.rend(); ++it) {
    const il::Exp& pat = il::skip_casts(**it);
    auto* c = std::get_if<il::ConstructE>(&pat.kind);
    if (!c) {
      an.error("stack operand patterns must be value constructors");
      return std::nullopt;
    }
    push_ctors.insert(c->ctor);
    // The assertion names the value's type when the pattern pins it: either
    // an already-bound variable or a literal type constructor.
    ExprPtr type_expr = nullptr;
    if (!c->args.empty()) {
      const il::Exp& t = il::skip_casts(*c->args[0]);
      if (auto* v = std::get_if<il::VarE>(&t.kind)) {
        if (bound.count(v->name)) type_expr = make_expr(NameE{v->name});
      } else if (std::holds_alternative<il::ConstructE>(t.kind)) {
        type_expr = an.conv(t);
      }
    }
    algo.body.push_back(Instr{AssertI{make_cond(TopValueC{type_expr})}});
    algo.body.push_back(Instr{PopI{an.conv(pat)}});
    std::set<std::string> vars;
    collect_il_vars(pat, vars);
    bound.insert(vars.begin(), vars.end());
  }

  // Per-rule sections, in source order.
  std::vector<SectionResult> sections;
  for (const il::Rule* r : rules) {
    an.context = r->relation + "/" + r->id;
    an.context_span = r->span;

    bool is_otherwise =
        r->premises.size() == 1 &&
        std::holds_alternative<il::ElsePrem>(r->premises[0]->kind);

    SectionResult section;
    if (is_otherwise) {
      if (sections.empty() || !sections.back().top_guard) {
        an.error(
            "'otherwise' requires a preceding guarded rule for the same "
            "instruction");
        return std::nullopt;
      }
      CondPtr neg = make_cond(NotC{sections.back().top_guard});
      std::vector<Instr> body = an.compile_rhs(*r->rhs, push_ctors);
      if (an.failed) return std::nullopt;
      section.top_guard = neg;
      section.instrs.push_back(Instr{IfI{neg, std::move(body), {}}});
      sections.push_back(std::move(section));
      continue;
    }

    auto flow = premise_dataflow(r->premises, bound);
    if (auto* cyc = std::get_if<CyclicDependency>(&flow)) {
      an.error("premises cannot be ordered; unresolved variables", cyc->vars);
      return std::nullopt;
    }
    auto& steps = std::get<std::vector<PremiseStep>>(flow);

    // Build the section from the inside out: the RHS first, then premises in
    // reverse dataflow order wrapping it.
    std::vector<Instr> body = an.compile_rhs(*r->rhs, push_ctors);
    if (an.failed) return std::nullopt;
    CondPtr top;
    for (auto sit = steps.rbegin(); sit != steps.rend(); ++sit) {
      const il::Prem& p = *r->premises[sit->premise_index];
      if (!sit->binds) {
        CondPtr cond = an.conv_check(p);
        top = cond;
        std::vector<Instr> wrapped;
        wrapped.push_back(Instr{IfI{cond, std::move(body), {}}});
        body = std::move(wrapped);
        continue;
      }
      auto* ip = std::get_if<il::IfPrem>(&p.kind);
      assert(ip);
      // The pattern side is the one holding the variables this step binds.
      std::set<std::string> bvars(sit->bound_vars.begin(),
                                  sit->bound_vars.end());
      std::set<std::string> lhs_vars;
      collect_il_vars(*ip->lhs, lhs_vars);
      bool lhs_is_pattern =
          std::any_of(lhs_vars.begin(), lhs_vars.end(),
                      [&](const std::string& v) { return bvars.count(v); });
      const il::Exp* pat = lhs_is_pattern ? ip->lhs.get() : ip->rhs.get();
      const il::Exp* expr = lhs_is_pattern ? ip->rhs.get() : ip->lhs.get();
      auto [guard, let] =
          guard_partiality(*pat, an.conv(*expr), il::skip_casts(*expr).type);
      if (guard) {
        top = guard;
        std::vector<Instr> inner;
        inner.push_back(std::move(let));
        for (auto& b : body) inner.push_back(std::move(b));
        std::vector<Instr> wrapped;
        wrapped.push_back(Instr{IfI{guard, std::move(inner), {}}});
        body = std::move(wrapped);
      } else {
        std::vector<Instr> with_let;
        with_let.push_back(std::move(let));
        for (auto& b : body) with_let.push_back(std::move(b));
        body = std::move(with_let);
        top = nullptr;
      }
    }
    if (!(body.size() == 1 && std::holds_alternative<IfI>(body[0].kind)))
      top = nullptr;
    section.top_guard = top;
    section.instrs = std::move(body);
    sections.push_back(std::move(section));
  }

  for (auto& s : sections)
    for (auto& i : s.instrs) algo.body.push_back(std::move(i));
  return algo;
}

// ---------------------------------------------------------------------------
// Function clause animation

namespace {

std::optional<al::FuncAlgorithm> animate_function(
    const il::FuncInfo& fn, std::vector<AnimationError>& errors) {
  using namespace al;
  Animator an{errors};
  an.context = "$" + fn.name;
  an.context_span = fn.span;

  FuncAlgorithm algo;
  algo.func = fn.name;
  // Parameter names: reuse a variable pattern's name when every clause
  // agrees on it, else a positional name.
  for (size_t i = 0; i < fn.params.size(); ++i) {
    std::string name;
    bool uniform = true;
    for (const auto& cl : fn.clauses) {
      if (i >= cl.args.size()) continue;
      const il::Exp& a = il::skip_casts(*cl.args[i]);
      if (auto* v = std::get_if<il::VarE>(&a.kind)) {
        if (name.empty()) {
          name = v->name;
        } else if (name != v->name) {
          uniform = false;
        }
      } else {
        uniform = false;
      }
    }
    algo.params.push_back(uniform && !name.empty()
                              ? name
                              : "p_" + std::to_string(i));
  }

  for (const auto& cl : fn.clauses) {
    an.context = "$" + fn.name;
    an.context_span = cl.span;
    std::set<std::string> bound(algo.params.begin(), algo.params.end());
    std::vector<Instr> prologue;  // binds and guards from argument patterns
    std::vector<CondPtr> guards;
    for (size_t i = 0; i < cl.args.size() && i < algo.params.size(); ++i) {
      const il::Exp& a = il::skip_casts(*cl.args[i]);
      auto param = make_expr(NameE{algo.params[i]});
      if (auto* v = std::get_if<il::VarE>(&a.kind)) {
        if (v->name != algo.params[i]) {
          prologue.push_back(
              Instr{LetI{make_expr(NameE{v->name}), param}});
          bound.insert(v->name);
        }
      } else if (auto* c = std::get_if<il::ConstructE>(&a.kind)) {
        if (!c->args.empty()) {
          an.error(
              "only nullary constructor patterns are supported in function "
              "clauses");
          return std::nullopt;
        }
        guards.push_back(make_cond(
            CompareC{CmpOp::Is, param, make_expr(ConstructE{c->ctor, {}})}));
      } else if (auto* n = std::get_if<il::NatE>(&a.kind)) {
        guards.push_back(make_cond(
            CompareC{CmpOp::Is, param, make_expr(al::NatE{n->value})}));
      } else {
        an.error("unsupported argument pattern in function clause");
        return std::nullopt;
      }
    }

    auto flow = premise_dataflow(cl.premises, bound);
    if (auto* cyc = std::get_if<CyclicDependency>(&flow)) {
      an.error("premises cannot be ordered; unresolved variables", cyc->vars);
      return std::nullopt;
    }
    auto& steps = std::get<std::vector<PremiseStep>>(flow);

    std::vector<Instr> body;
    body.push_back(Instr{ReturnI{an.conv(*cl.result)}});
    for (auto sit = steps.rbegin(); sit != steps.rend(); ++sit) {
      const il::Prem& p = *cl.premises[sit->premise_index];
      if (!sit->binds) {
        CondPtr cond = an.conv_check(p);
        std::vector<Instr> wrapped;
        wrapped.push_back(Instr{IfI{cond, std::move(body), {}}});
        body = std::move(wrapped);
        continue;
      }
      auto* ip = std::get_if<il::IfPrem>(&p.kind);
      assert(ip);
      std::set<std::string> bvars(sit->bound_vars.begin(),
                                  sit->bound_vars.end());
      std::set<std::string> lhs_vars;
      collect_il_vars(*ip->lhs, lhs_vars);
      bool lhs_is_pattern =
          std::any_of(lhs_vars.begin(), lhs_vars.end(),
                      [&](const std::string& v) { return bvars.count(v); });
      const il::Exp* pat = lhs_is_pattern ? ip->lhs.get() : ip->rhs.get();
      const il::Exp* expr = lhs_is_pattern ? ip->rhs.get() : ip->lhs.get();
      auto [guard, let] =
          guard_partiality(*pat, an.conv(*expr), il::skip_casts(*expr).type);
      if (guard) {
        std::vector<Instr> inner;
        inner.push_back(std::move(let));
        for (auto& b : body) inner.push_back(std::move(b));
        std::vector<Instr> wrapped;
        wrapped.push_back(Instr{IfI{guard, std::move(inner), {}}});
        body = std::move(wrapped);
      } else {
        std::vector<Instr> with_let;
        with_let.push_back(std::move(let));
        for (auto& b : body) with_let.push_back(std::move(b));
        body = std::move(with_let);
      }
    }
    // Wrap in the argument-pattern guards, innermost last.
    for (auto git = guards.rbegin(); git != guards.rend(); ++git) {
      std::vector<Instr> wrapped;
      wrapped.push_back(Instr{IfI{*git, std::move(body), {}}});
      body = std::move(wrapped);
    }
    for (auto pit = prologue.rbegin(); pit != prologue.rend(); ++pit)
      body.insert(body.begin(), std::move(*pit));
    for (auto& i : body) algo.body.push_back(std::move(i));
  }

  // A partial function (optional result) falls through to the empty option.
  if (fn.result.is_iter(el::Iter::Opt))
    algo.body.push_back(Instr{ReturnI{make_expr(ListE{})}});

  if (an.failed) return std::nullopt;
  return algo;
}

}  // namespace

AnimateResult animate(const il::Script& script) {
  AnimateResult result;

  // Group reduction rules by instruction constructor, in order of first
  // appearance across the script.
  std::vector<std::string> group_order;
  std::map<std::string, std::vector<const il::Rule*>> groups;
  for (const auto& rel_name : script.relation_order) {
    const il::RelationInfo& rel = script.relations.at(rel_name);
    if (rel.rel != el::RelKind::Reduction) continue;
    for (const auto& rule : rel.rules) {
      if (rule.head_ctor.empty()) continue;
      auto [it, inserted] = groups.emplace(
          rule.head_ctor, std::vector<const il::Rule*>{});
      if (inserted) group_order.push_back(rule.head_ctor);
      it->second.push_back(&rule);
    }
  }
  for (const auto& ctor : group_order) {
    auto algo = animate_rule_group(groups[ctor], result.errors);
    if (algo) {
      result.algorithms.by_ctor[ctor] = result.algorithms.algorithms.size();
      result.algorithms.algorithms.push_back(std::move(*algo));
    }
  }
  for (const auto& fname : script.func_order) {
    const il::FuncInfo& fn = script.funcs.at(fname);
    if (fn.clauses.empty()) continue;  // intrinsic, backed by the runtime
    auto algo = animate_function(fn, result.errors);
    if (algo) {
      result.algorithms.func_by_name[fname] = result.algorithms.funcs.size();
      result.algorithms.funcs.push_back(std::move(*algo));
    }
  }
  return result;
}

}  // namespace spectec
