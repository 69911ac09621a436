#include "spectec/prose.hpp"

#include <sstream>

namespace spectec::render {
namespace {

std::string lower(const std::string& s) {
  std::string out = s;
  for (char& c : out)
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  return out;
}

std::string trim_trailing(std::string s) {
  while (!s.empty() && s.back() == '_') s.pop_back();
  return s;
}

// Prose rendering of AL expressions. In rst mode variable names carry
// emphasis markers.
struct ExprProse {
  bool rst = false;

  std::string name(const std::string& n) const {
    return rst ? "*" + n + "*" : n;
  }

  std::string expr(const al::Expr& e) const {
    std::string out;
    std::visit(
        [&](const auto& k) {
          using K = std::decay_t<decltype(k)>;
          if constexpr (std::is_same_v<K, al::NameE>) {
            out = name(k.name);
          } else if constexpr (std::is_same_v<K, al::AppE>) {
            out = "$" + k.func + "(";
            for (size_t i = 0; i < k.args.size(); ++i) {
              if (i) out += ", ";
              out += expr(*k.args[i]);
            }
            out += ")";
          } else if constexpr (std::is_same_v<K, al::ListE>) {
            if (k.elems.empty()) {
              out = rst ? "|eps|" : "epsilon";
            } else {
              out = "[";
              for (size_t i = 0; i < k.elems.size(); ++i) {
                if (i) out += ", ";
                out += expr(*k.elems[i]);
              }
              out += "]";
            }
          } else if constexpr (std::is_same_v<K, al::ConstructE>) {
            if (k.ctor == "CONST" && k.args.size() == 2) {
              out = expr(*k.args[0]) + ".const " + expr(*k.args[1]);
            } else {
              out = trim_trailing(lower(k.ctor));
              for (const auto& a : k.args) out += " " + expr(*a);
            }
          } else if constexpr (std::is_same_v<K, al::LengthE>) {
            out = "|" + expr(*k.arg) + "|";
          } else if constexpr (std::is_same_v<K, al::OptSomeE>) {
            out = expr(*k.arg);
          } else if constexpr (std::is_same_v<K, al::OptNoneE>) {
            out = rst ? "|eps|" : "epsilon";
          } else if constexpr (std::is_same_v<K, al::NatE>) {
            out = std::to_string(k.value);
          }
        },
        e.kind);
    return out;
  }

  std::string cond(const al::Cond& c) const {
    if (auto* cc = std::get_if<al::CompareC>(&c.kind)) {
      const char* op = "is";
      switch (cc->op) {
        case al::CmpOp::Is: op = "is"; break;
        case al::CmpOp::Ne: op = "is not"; break;
        case al::CmpOp::Lt: op = "is less than"; break;
        case al::CmpOp::Le: op = "is not greater than"; break;
        case al::CmpOp::Gt: op = "is greater than"; break;
        case al::CmpOp::Ge: op = "is not less than"; break;
      }
      return expr(*cc->lhs) + " " + op + " " + expr(*cc->rhs);
    }
    if (auto* tv = std::get_if<al::TopValueC>(&c.kind)) {
      if (tv->type)
        return "a value of value type " + expr(*tv->type) +
               " is on the top of the stack";
      return "a value is on the top of the stack";
    }
    if (auto* d = std::get_if<al::IsDefinedC>(&c.kind))
      return expr(*d->arg) + " is defined";
    auto& n = std::get<al::NotC>(c.kind);
    return "not (" + cond(*n.arg) + ")";
  }
};

void render_body(const std::vector<al::Instr>& body, const ExprProse& pr,
                 std::vector<ProseStep>& out) {
  for (const auto& in : body) {
    ProseStep step;
    std::visit(
        [&](const auto& k) {
          using K = std::decay_t<decltype(k)>;
          if constexpr (std::is_same_v<K, al::AssertI>) {
            step.text = "Assert: due to validation, " + pr.cond(*k.cond) + ".";
          } else if constexpr (std::is_same_v<K, al::PopI>) {
            step.text =
                "Pop the value " + pr.expr(*k.pattern) + " from the stack.";
          } else if constexpr (std::is_same_v<K, al::PushI>) {
            step.text =
                "Push the value " + pr.expr(*k.value) + " to the stack.";
          } else if constexpr (std::is_same_v<K, al::LetI>) {
            step.text = "Let " + pr.expr(*k.pattern) + " be " +
                        pr.expr(*k.value) + ".";
          } else if constexpr (std::is_same_v<K, al::IfI>) {
            step.text = "If " + pr.cond(*k.cond) + ", then:";
            render_body(k.then_body, pr, step.substeps);
            if (!k.else_body.empty()) {
              out.push_back(step);
              step = ProseStep{};
              step.text = "Else:";
              render_body(k.else_body, pr, step.substeps);
            }
          } else if constexpr (std::is_same_v<K, al::TrapI>) {
            step.text = "Trap.";
          } else if constexpr (std::is_same_v<K, al::ReturnI>) {
            step.text =
                k.value ? "Return " + pr.expr(*k.value) + "." : "Return.";
          } else if constexpr (std::is_same_v<K, al::ExecuteI>) {
            step.text = "Execute the instruction " + pr.expr(*k.instrs) + ".";
          }
        },
        in.kind);
    out.push_back(std::move(step));
  }
}

void emit_steps(std::ostringstream& os, const std::vector<ProseStep>& steps,
                int depth) {
  const std::string indent(static_cast<size_t>(depth) * 3, ' ');
  for (size_t i = 0; i < steps.size(); ++i) {
    std::string marker;
    if (depth == 0) {
      marker = std::to_string(i + 1) + ".";
    } else if (depth == 1) {
      marker = std::string(1, static_cast<char>('a' + (i % 26))) + ".";
    } else {
      static const char* romans[] = {"i", "ii", "iii", "iv", "v",
                                     "vi", "vii", "viii", "ix", "x"};
      marker = std::string(romans[i % 10]) + ".";
    }
    os << indent << marker << " " << steps[i].text << "\n\n";
    emit_steps(os, steps[i].substeps, depth + 1);
  }
}

}  // namespace

ProseFragment render_prose(const al::Algorithm& algorithm) {
  ProseFragment frag;
  frag.instr_ctor = algorithm.instr_ctor;
  std::string lname = trim_trailing(lower(algorithm.instr_ctor));
  frag.anchor = "def-exec-" + lname;
  ExprProse pr_rst{true};
  std::string heading = lname;
  for (const auto& p : algorithm.params) {
    heading += " ";
    heading += pr_rst.expr(*p);
  }
  frag.heading = heading;
  if (algorithm.body.empty()) {
    frag.steps.push_back(ProseStep{"Do nothing.", {}});
    return frag;
  }
  render_body(algorithm.body, pr_rst, frag.steps);
  return frag;
}

std::string fragment_to_rst(const ProseFragment& fragment) {
  std::ostringstream os;
  os << ".. _" << fragment.anchor << ":\n\n";
  os << fragment.heading << "\n";
  os << std::string(fragment.heading.size(), '~') << "\n\n";
  emit_steps(os, fragment.steps, 0);
  return os.str();
}

namespace {

std::string strip_rst(const std::string& s) {
  // Plain-text mode reuses the rst text minus emphasis and substitutions.
  std::string out;
  for (size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '*') continue;
    if (s.compare(i, 5, "|eps|") == 0) {
      out += "epsilon";
      i += 4;
      continue;
    }
    out += s[i];
  }
  return out;
}

void emit_steps_text(std::ostringstream& os,
                     const std::vector<ProseStep>& steps, int depth) {
  const std::string indent(static_cast<size_t>(depth) * 3, ' ');
  for (size_t i = 0; i < steps.size(); ++i) {
    std::string marker = depth == 0 ? std::to_string(i + 1) + "."
                         : depth == 1
                             ? std::string(1, static_cast<char>('a' + i)) + "."
                             : "-";
    os << indent << marker << " " << strip_rst(steps[i].text) << "\n";
    emit_steps_text(os, steps[i].substeps, depth + 1);
  }
}

}  // namespace

std::string fragment_to_text(const ProseFragment& fragment) {
  std::ostringstream os;
  os << strip_rst(fragment.heading) << "\n";
  emit_steps_text(os, fragment.steps, 0);
  return os.str();
}

ProseDoc render_prose_all(const al::AlgorithmSet& algorithms) {
  ProseDoc doc;
  for (const auto& a : algorithms.algorithms)
    doc.fragments.push_back(render_prose(a));
  return doc;
}

std::string ProseDoc::to_rst() const {
  std::ostringstream os;
  os << ".. |eps| replace:: :math:`\\epsilon`\n\n";
  os << "Execution\n=========\n\n";
  for (const auto& f : fragments) os << fragment_to_rst(f);
  return os.str();
}

std::string ProseDoc::to_text() const {
  std::ostringstream os;
  for (const auto& f : fragments) {
    os << fragment_to_text(f) << "\n";
  }
  return os.str();
}

}  // namespace spectec::render
