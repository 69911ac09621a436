#include "spectec/al.hpp"

#include <set>
#include <sstream>

namespace spectec::al {

ExprPtr make_expr(decltype(Expr::kind) kind) {
  auto e = std::make_shared<Expr>();
  e->kind = std::move(kind);
  return e;
}

CondPtr make_cond(decltype(Cond::kind) kind) {
  auto c = std::make_shared<Cond>();
  c->kind = std::move(kind);
  return c;
}

namespace {

const char* cmp_name(CmpOp op) {
  switch (op) {
    case CmpOp::Is: return "is";
    case CmpOp::Ne: return "ne";
    case CmpOp::Lt: return "lt";
    case CmpOp::Le: return "le";
    case CmpOp::Gt: return "gt";
    case CmpOp::Ge: return "ge";
  }
  return "?";
}

void print_expr(std::ostream& os, const Expr& e) {
  std::visit(
      [&](const auto& k) {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, NameE>) {
          os << "NameE(" << k.name << ")";
        } else if constexpr (std::is_same_v<K, AppE>) {
          os << "AppE(" << k.func << ", [";
          for (size_t i = 0; i < k.args.size(); ++i) {
            if (i) os << ", ";
            print_expr(os, *k.args[i]);
          }
          os << "])";
        } else if constexpr (std::is_same_v<K, ListE>) {
          os << "ListE([";
          for (size_t i = 0; i < k.elems.size(); ++i) {
            if (i) os << ", ";
            print_expr(os, *k.elems[i]);
          }
          os << "])";
        } else if constexpr (std::is_same_v<K, ConstructE>) {
          os << "ConstructE(" << k.ctor << ", [";
          for (size_t i = 0; i < k.args.size(); ++i) {
            if (i) os << ", ";
            print_expr(os, *k.args[i]);
          }
          os << "])";
        } else if constexpr (std::is_same_v<K, LengthE>) {
          os << "LengthE(";
          print_expr(os, *k.arg);
          os << ")";
        } else if constexpr (std::is_same_v<K, OptSomeE>) {
          os << "OptSomeE(";
          print_expr(os, *k.arg);
          os << ")";
        } else if constexpr (std::is_same_v<K, OptNoneE>) {
          os << "OptNoneE";
        } else if constexpr (std::is_same_v<K, NatE>) {
          os << k.value;
        }
      },
      e.kind);
}

void print_cond(std::ostream& os, const Cond& c) {
  std::visit(
      [&](const auto& k) {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, CompareC>) {
          os << "CompareC(" << cmp_name(k.op) << ", ";
          print_expr(os, *k.lhs);
          os << ", ";
          print_expr(os, *k.rhs);
          os << ")";
        } else if constexpr (std::is_same_v<K, TopValueC>) {
          os << "TopValueC(";
          if (k.type) print_expr(os, *k.type);
          os << ")";
        } else if constexpr (std::is_same_v<K, IsDefinedC>) {
          os << "IsDefinedC(";
          print_expr(os, *k.arg);
          os << ")";
        } else if constexpr (std::is_same_v<K, NotC>) {
          os << "NotC(";
          print_cond(os, *k.arg);
          os << ")";
        }
      },
      c.kind);
}

void print_body(std::ostream& os, const std::vector<Instr>& body, int indent);

void print_instr(std::ostream& os, const Instr& in, int indent) {
  std::string pad(static_cast<size_t>(indent), ' ');
  std::visit(
      [&](const auto& k) {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, AssertI>) {
          os << pad << "AssertI(";
          print_cond(os, *k.cond);
          os << ")";
        } else if constexpr (std::is_same_v<K, PopI>) {
          os << pad << "PopI(";
          print_expr(os, *k.pattern);
          os << ")";
        } else if constexpr (std::is_same_v<K, PushI>) {
          os << pad << "PushI(";
          print_expr(os, *k.value);
          os << ")";
        } else if constexpr (std::is_same_v<K, LetI>) {
          os << pad << "LetI(";
          print_expr(os, *k.pattern);
          os << ", ";
          print_expr(os, *k.value);
          os << ")";
        } else if constexpr (std::is_same_v<K, IfI>) {
          os << pad << "IfI(\n" << pad << "  ";
          print_cond(os, *k.cond);
          os << ",\n";
          print_body(os, k.then_body, indent + 2);
          os << ",\n";
          print_body(os, k.else_body, indent + 2);
          os << ")";
        } else if constexpr (std::is_same_v<K, TrapI>) {
          os << pad << "TrapI";
        } else if constexpr (std::is_same_v<K, ReturnI>) {
          os << pad << "ReturnI(";
          if (k.value) print_expr(os, *k.value);
          os << ")";
        } else if constexpr (std::is_same_v<K, ExecuteI>) {
          os << pad << "ExecuteI(";
          print_expr(os, *k.instrs);
          os << ")";
        }
      },
      in.kind);
}

void print_body(std::ostream& os, const std::vector<Instr>& body, int indent) {
  std::string pad(static_cast<size_t>(indent), ' ');
  if (body.empty()) {
    os << pad << "[]";
    return;
  }
  os << pad << "[";
  for (size_t i = 0; i < body.size(); ++i) {
    if (i) os << "\n";
    print_instr(os, body[i], i == 0 ? 0 : indent + 1);
  }
  os << "]";
}

}  // namespace

std::string to_string(const Expr& e) {
  std::ostringstream os;
  print_expr(os, e);
  return os.str();
}

std::string to_string(const Cond& c) {
  std::ostringstream os;
  print_cond(os, c);
  return os.str();
}

std::string dump(const Algorithm& a) {
  std::ostringstream os;
  os << "execution_of_" << a.instr_ctor;
  for (const auto& p : a.params) {
    os << ' ';
    print_expr(os, *p);
  }
  os << ":\n";
  for (const auto& in : a.body) {
    print_instr(os, in, 2);
    os << "\n";
  }
  return os.str();
}

std::string dump(const FuncAlgorithm& f) {
  std::ostringstream os;
  os << "definition_of_$" << f.func;
  for (const auto& p : f.params) os << ' ' << p;
  os << ":\n";
  for (const auto& in : f.body) {
    print_instr(os, in, 2);
    os << "\n";
  }
  return os.str();
}

std::string dump(const AlgorithmSet& set) {
  std::ostringstream os;
  bool first = true;
  for (const auto& a : set.algorithms) {
    if (!first) os << "\n";
    first = false;
    os << dump(a);
  }
  for (const auto& f : set.funcs) {
    if (!first) os << "\n";
    first = false;
    os << dump(f);
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Binding soundness

namespace {

struct SoundnessChecker {
  std::vector<std::string> violations;

  void use_vars(const Expr& e, const std::set<std::string>& bound,
                const char* where) {
    std::visit(
        [&](const auto& k) {
          using K = std::decay_t<decltype(k)>;
          if constexpr (std::is_same_v<K, NameE>) {
            if (!bound.count(k.name))
              violations.push_back(std::string("variable '") + k.name +
                                   "' used before binding in " + where);
          } else if constexpr (std::is_same_v<K, AppE> ||
                               std::is_same_v<K, ConstructE>) {
            for (const auto& a : k.args) use_vars(*a, bound, where);
          } else if constexpr (std::is_same_v<K, ListE>) {
            for (const auto& a : k.elems) use_vars(*a, bound, where);
          } else if constexpr (std::is_same_v<K, LengthE> ||
                               std::is_same_v<K, OptSomeE>) {
            use_vars(*k.arg, bound, where);
          }
        },
        e.kind);
  }

  void use_cond(const Cond& c, const std::set<std::string>& bound) {
    if (auto* cc = std::get_if<CompareC>(&c.kind)) {
      use_vars(*cc->lhs, bound, "condition");
      use_vars(*cc->rhs, bound, "condition");
    } else if (auto* tv = std::get_if<TopValueC>(&c.kind)) {
      if (tv->type) use_vars(*tv->type, bound, "condition");
    } else if (auto* d = std::get_if<IsDefinedC>(&c.kind)) {
      use_vars(*d->arg, bound, "condition");
    } else if (auto* n = std::get_if<NotC>(&c.kind)) {
      use_cond(*n->arg, bound);
    }
  }

  // Pattern position: free names bind; nested constructor arguments that are
  // already bound are checks.
  void bind_pattern(const Expr& e, std::set<std::string>& bound) {
    std::visit(
        [&](const auto& k) {
          using K = std::decay_t<decltype(k)>;
          if constexpr (std::is_same_v<K, NameE>) {
            bound.insert(k.name);
          } else if constexpr (std::is_same_v<K, ConstructE>) {
            for (const auto& a : k.args) bind_pattern(*a, bound);
          } else if constexpr (std::is_same_v<K, ListE>) {
            for (const auto& a : k.elems) bind_pattern(*a, bound);
          } else if constexpr (std::is_same_v<K, OptSomeE>) {
            bind_pattern(*k.arg, bound);
          }
        },
        e.kind);
  }

  void check_body(const std::vector<Instr>& body, std::set<std::string> bound) {
    for (size_t i = 0; i < body.size(); ++i) {
      const Instr& in = body[i];
      bool terminal = false;
      std::visit(
          [&](const auto& k) {
            using K = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<K, AssertI>) {
              use_cond(*k.cond, bound);
            } else if constexpr (std::is_same_v<K, PopI>) {
              bind_pattern(*k.pattern, bound);
            } else if constexpr (std::is_same_v<K, PushI>) {
              use_vars(*k.value, bound, "PushI");
            } else if constexpr (std::is_same_v<K, LetI>) {
              use_vars(*k.value, bound, "LetI");
              bind_pattern(*k.pattern, bound);
            } else if constexpr (std::is_same_v<K, IfI>) {
              use_cond(*k.cond, bound);
              check_body(k.then_body, bound);
              check_body(k.else_body, bound);
            } else if constexpr (std::is_same_v<K, TrapI>) {
              terminal = true;
            } else if constexpr (std::is_same_v<K, ReturnI>) {
              if (k.value) use_vars(*k.value, bound, "ReturnI");
              terminal = true;
            } else if constexpr (std::is_same_v<K, ExecuteI>) {
              use_vars(*k.instrs, bound, "ExecuteI");
            }
          },
          in.kind);
      if (terminal && i + 1 < body.size())
        violations.push_back(
            "instructions follow a terminating TrapI/ReturnI in the same "
            "body");
    }
  }
};

}  // namespace

std::vector<std::string> check_binding_soundness(const Algorithm& a) {
  SoundnessChecker ck;
  std::set<std::string> bound;
  for (const auto& p : a.params) ck.bind_pattern(*p, bound);
  ck.check_body(a.body, std::move(bound));
  return std::move(ck.violations);
}

std::vector<std::string> check_binding_soundness(const FuncAlgorithm& f) {
  SoundnessChecker ck;
  std::set<std::string> bound(f.params.begin(), f.params.end());
  ck.check_body(f.body, std::move(bound));
  return std::move(ck.violations);
}

}  // namespace spectec::al
