#include "spectec/pretty.hpp"

#include <sstream>

namespace spectec {
namespace {

using namespace el;

void print_typ(std::ostream& os, const Typ& t) {
  if (auto* n = std::get_if<NameT>(&t.kind)) {
    os << n->name;
  } else if (auto* tu = std::get_if<TupleT>(&t.kind)) {
    os << '(';
    for (size_t i = 0; i < tu->elems.size(); ++i) {
      if (i) os << ", ";
      print_typ(os, *tu->elems[i]);
    }
    os << ')';
  } else {
    auto& it = std::get<IterT>(t.kind);
    print_typ(os, *it.base);
    os << (it.iter == Iter::List ? '*' : '?');
  }
}

void print_exp(std::ostream& os, const Exp& e);

// Prints `e` so that it re-parses as a single atom.
void print_atom(std::ostream& os, const Exp& e) {
  if (auto* s = std::get_if<SeqE>(&e.kind)) {
    os << '(';
    for (size_t i = 0; i < s->elems.size(); ++i) {
      if (i) os << ' ';
      print_atom(os, *s->elems[i]);
    }
    os << ')';
    return;
  }
  print_exp(os, e);
}

void print_exp(std::ostream& os, const Exp& e) {
  std::visit(
      [&](const auto& k) {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, VarE>) {
          os << k.name();
        } else if constexpr (std::is_same_v<K, ConstructE>) {
          if (k.args.empty()) {
            os << k.ctor;
          } else {
            os << '(' << k.ctor;
            for (auto& a : k.args) {
              os << ' ';
              print_atom(os, *a);
            }
            os << ')';
          }
        } else if constexpr (std::is_same_v<K, CallE>) {
          os << '$' << k.func << '(';
          for (size_t i = 0; i < k.args.size(); ++i) {
            if (i) os << ", ";
            print_exp(os, *k.args[i]);
          }
          os << ')';
        } else if constexpr (std::is_same_v<K, SeqE>) {
          for (size_t i = 0; i < k.elems.size(); ++i) {
            if (i) os << ' ';
            print_atom(os, *k.elems[i]);
          }
        } else if constexpr (std::is_same_v<K, TupleE>) {
          os << '(';
          for (size_t i = 0; i < k.elems.size(); ++i) {
            if (i) os << ", ";
            print_exp(os, *k.elems[i]);
          }
          os << ')';
        } else if constexpr (std::is_same_v<K, OptE>) {
          if (!k.payload)
            os << "epsilon";
          else
            print_exp(os, *k.payload);
        } else if constexpr (std::is_same_v<K, IterE>) {
          print_atom(os, *k.body);
          os << (k.iter == Iter::List ? '*' : '?');
        } else if constexpr (std::is_same_v<K, NatE>) {
          os << k.value;
        } else if constexpr (std::is_same_v<K, ListE>) {
          os << '[';
          for (size_t i = 0; i < k.elems.size(); ++i) {
            if (i) os << ", ";
            print_exp(os, *k.elems[i]);
          }
          os << ']';
        }
      },
      e.kind);
}

void print_premise(std::ostream& os, const Premise& p) {
  if (auto* i = std::get_if<IfPremise>(&p.kind)) {
    os << "-- if ";
    print_exp(os, *i->lhs);
    os << ' ' << cmp_op_text(i->op) << ' ';
    print_exp(os, *i->rhs);
  } else if (std::holds_alternative<ElsePremise>(p.kind)) {
    os << "-- otherwise";
  } else {
    auto& it = std::get<IterPremise>(p.kind);
    auto& body = std::get<IfPremise>(it.body->kind);
    os << "-- (if ";
    print_exp(os, *body.lhs);
    os << ' ' << cmp_op_text(body.op) << ' ';
    print_exp(os, *body.rhs);
    os << ')' << (it.iter == Iter::List ? '*' : '?');
  }
}

void print_def(std::ostream& os, const Def& d) {
  std::visit(
      [&](const auto& k) {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, SyntaxDef>) {
          os << "syntax " << k.name << " =";
          for (size_t i = 0; i < k.cases.size(); ++i) {
            if (i) os << " |";
            if (auto* c = std::get_if<CtorCase>(&k.cases[i].kind)) {
              os << ' ' << c->name;
              for (auto& t : c->args) {
                os << ' ';
                print_typ(os, *t);
              }
            } else {
              os << ' ';
              print_typ(os, *std::get<InclCase>(k.cases[i].kind).type);
            }
          }
          os << '\n';
        } else if constexpr (std::is_same_v<K, VarDeclDef>) {
          os << "var " << k.var << " : ";
          print_typ(os, *k.type);
          os << '\n';
        } else if constexpr (std::is_same_v<K, FuncDeclDef>) {
          os << "def $" << k.name << '(';
          for (size_t i = 0; i < k.params.size(); ++i) {
            if (i) os << ", ";
            print_typ(os, *k.params[i]);
          }
          os << ") : ";
          print_typ(os, *k.result);
          os << '\n';
        } else if constexpr (std::is_same_v<K, FuncClauseDef>) {
          os << "def $" << k.name << '(';
          for (size_t i = 0; i < k.args.size(); ++i) {
            if (i) os << ", ";
            print_exp(os, *k.args[i]);
          }
          os << ") = ";
          print_exp(os, *k.result);
          os << '\n';
          for (auto& p : k.premises) {
            os << "  ";
            print_premise(os, *p);
            os << '\n';
          }
        } else if constexpr (std::is_same_v<K, RelationDef>) {
          os << "relation " << k.name << ": ";
          print_typ(os, *k.lhs);
          os << (k.rel == RelKind::Reduction ? " ~> " : " |- ");
          print_typ(os, *k.rhs);
          os << '\n';
        } else if constexpr (std::is_same_v<K, RuleDef>) {
          os << "rule " << k.relation << '/' << k.rule_id << ":\n  ";
          print_exp(os, *k.lhs);
          os << (k.rel == RelKind::Reduction ? " ~> " : " |- ");
          print_exp(os, *k.rhs);
          os << '\n';
          for (auto& p : k.premises) {
            os << "  ";
            print_premise(os, *p);
            os << '\n';
          }
        }
      },
      d.kind);
}

}  // namespace

std::string pretty_typ(const el::Typ& typ) {
  std::ostringstream os;
  print_typ(os, typ);
  return os.str();
}

std::string pretty_exp(const el::Exp& exp) {
  std::ostringstream os;
  print_exp(os, exp);
  return os.str();
}

std::string pretty_premise(const el::Premise& prem) {
  std::ostringstream os;
  print_premise(os, prem);
  return os.str();
}

std::string pretty_el(const el::Script& script) {
  std::ostringstream os;
  bool first = true;
  for (const auto& def : script.defs) {
    if (!first) os << '\n';
    first = false;
    print_def(os, def);
  }
  return os.str();
}

}  // namespace spectec
