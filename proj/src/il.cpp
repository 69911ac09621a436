#include "spectec/il.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace spectec::il {

ExpPtr make_exp(SourceSpan span, Type type, decltype(Exp::kind) kind) {
  auto e = std::make_shared<Exp>();
  e->span = span;
  e->type = std::move(type);
  e->kind = std::move(kind);
  return e;
}

PremPtr make_prem(SourceSpan span, decltype(Prem::kind) kind) {
  auto p = std::make_shared<Prem>();
  p->span = span;
  p->kind = std::move(kind);
  return p;
}

const Exp& skip_casts(const Exp& e) {
  const Exp* cur = &e;
  while (auto* s = std::get_if<SubE>(&cur->kind)) cur = s->inner.get();
  return *cur;
}

const CtorSig* Script::find_ctor(const std::string& ctor) const {
  auto it = ctor_syntax.find(ctor);
  if (it == ctor_syntax.end()) return nullptr;
  const SyntaxInfo& info = syntaxes.at(it->second);
  for (const auto& c : info.ctors)
    if (c.name == ctor) return &c;
  return nullptr;
}

// ---------------------------------------------------------------------------
// Dependency analysis

namespace {

void type_refs(const Type& t, std::set<std::string>& out) {
  switch (t.kind()) {
    case Type::Kind::Syn: out.insert(t.syn()); break;
    case Type::Kind::Tuple:
      for (const auto& e : t.elems()) type_refs(e, out);
      break;
    case Type::Kind::IterK: type_refs(t.base(), out); break;
    default: break;
  }
}

void exp_refs(const Script& script, const Exp& e, std::set<std::string>& out) {
  type_refs(e.type, out);
  std::visit(
      [&](const auto& k) {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, ConstructE>) {
          out.insert(k.syntax);
          for (const auto& a : k.args) exp_refs(script, *a, out);
        } else if constexpr (std::is_same_v<K, CallE>) {
          out.insert("$" + k.func);
          for (const auto& a : k.args) exp_refs(script, *a, out);
        } else if constexpr (std::is_same_v<K, SeqE> ||
                             std::is_same_v<K, TupleE> ||
                             std::is_same_v<K, ListE>) {
          for (const auto& a : k.elems) exp_refs(script, *a, out);
        } else if constexpr (std::is_same_v<K, OptE>) {
          if (k.payload) exp_refs(script, *k.payload, out);
        } else if constexpr (std::is_same_v<K, IterE>) {
          exp_refs(script, *k.body, out);
        } else if constexpr (std::is_same_v<K, SubE>) {
          type_refs(k.from, out);
          exp_refs(script, *k.inner, out);
        }
      },
      e.kind);
}

void prem_refs(const Script& script, const Prem& p, std::set<std::string>& out) {
  if (auto* i = std::get_if<IfPrem>(&p.kind)) {
    exp_refs(script, *i->lhs, out);
    exp_refs(script, *i->rhs, out);
  } else if (auto* it = std::get_if<IterPrem>(&p.kind)) {
    prem_refs(script, *it->body, out);
  }
}

}  // namespace

std::vector<RecursionGroup> dependency_groups(const Script& script) {
  // Node names: syntax names, "$func", "relation:Name".
  std::vector<std::string> nodes;
  std::map<std::string, int> index;
  auto add_node = [&](const std::string& n) {
    index.emplace(n, static_cast<int>(nodes.size()));
    if (index[n] == static_cast<int>(nodes.size())) nodes.push_back(n);
  };
  for (const auto& [kind, name] : script.def_order) {
    switch (kind) {
      case DefKind::Syntax: add_node(name); break;
      case DefKind::Func: add_node("$" + name); break;
      case DefKind::Relation: add_node("relation:" + name); break;
    }
  }

  std::vector<std::set<std::string>> raw_edges(nodes.size());
  for (const auto& [kind, name] : script.def_order) {
    std::set<std::string> refs;
    switch (kind) {
      case DefKind::Syntax: {
        const SyntaxInfo& s = script.syntaxes.at(name);
        for (const auto& c : s.ctors)
          for (const auto& t : c.args) type_refs(t, refs);
        for (const auto& t : s.inclusions) type_refs(t, refs);
        raw_edges[index[name]] = std::move(refs);
        break;
      }
      case DefKind::Func: {
        const FuncInfo& f = script.funcs.at(name);
        for (const auto& t : f.params) type_refs(t, refs);
        type_refs(f.result, refs);
        for (const auto& cl : f.clauses) {
          for (const auto& a : cl.args) exp_refs(script, *a, refs);
          exp_refs(script, *cl.result, refs);
          for (const auto& p : cl.premises) prem_refs(script, *p, refs);
        }
        raw_edges[index["$" + name]] = std::move(refs);
        break;
      }
      case DefKind::Relation: {
        const RelationInfo& r = script.relations.at(name);
        type_refs(r.lhs, refs);
        type_refs(r.rhs, refs);
        for (const auto& rule : r.rules) {
          exp_refs(script, *rule.lhs, refs);
          exp_refs(script, *rule.rhs, refs);
          for (const auto& p : rule.premises) prem_refs(script, *p, refs);
        }
        raw_edges[index["relation:" + name]] = std::move(refs);
        break;
      }
    }
  }

  // Resolve reference names to node ids; unknown names (prims) are dropped.
  std::vector<std::vector<int>> edges(nodes.size());
  for (size_t i = 0; i < nodes.size(); ++i)
    for (const auto& r : raw_edges[i]) {
      auto it = index.find(r);
      if (it != index.end()) edges[i].push_back(it->second);
    }

  // Tarjan SCC. Components are emitted in reverse topological order of the
  // condensation, i.e. dependencies before dependents.
  int n = static_cast<int>(nodes.size());
  std::vector<int> low(n, -1), num(n, -1), on_stack(n, 0);
  std::vector<int> stack;
  std::vector<RecursionGroup> groups;
  int counter = 0;
  std::function<void(int)> strongconnect = [&](int v) {
    num[v] = low[v] = counter++;
    stack.push_back(v);
    on_stack[v] = 1;
    for (int w : edges[v]) {
      if (num[w] < 0) {
        strongconnect(w);
        low[v] = std::min(low[v], low[w]);
      } else if (on_stack[w]) {
        low[v] = std::min(low[v], num[w]);
      }
    }
    if (low[v] == num[v]) {
      RecursionGroup g;
      int w;
      do {
        w = stack.back();
        stack.pop_back();
        on_stack[w] = 0;
        g.names.push_back(nodes[w]);
      } while (w != v);
      std::sort(g.names.begin(), g.names.end());
      if (g.names.size() > 1) {
        g.recursive = true;
      } else {
        int self = index[g.names[0]];
        g.recursive = std::count(edges[self].begin(), edges[self].end(),
                                 self) > 0;
      }
      groups.push_back(std::move(g));
    }
  };
  for (int v = 0; v < n; ++v)
    if (num[v] < 0) strongconnect(v);
  return groups;
}

}  // namespace spectec::il
