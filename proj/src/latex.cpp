#include "spectec/latex.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace spectec::render {
namespace {

using namespace el;

std::string escape_tex(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '_' || c == '$' || c == '#' || c == '%' || c == '&') out += '\\';
    out += c;
  }
  return out;
}

std::string lower(const std::string& s) {
  std::string out = s;
  for (char& c : out)
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  return out;
}

std::string sanitize_label(const std::string& s) {
  std::string out;
  for (char c : lower(s)) out += (c == '/' || c == '_' || c == ' ') ? '-' : c;
  return out;
}

struct Renderer {
  const SymbolTable& symbols;
  std::vector<std::string>* warnings;

  std::string apply_template(const std::string& tmpl,
                             const std::vector<std::string>& args) {
    std::string out;
    size_t max_used = 0;
    bool has_rest = false;
    for (size_t i = 0; i < tmpl.size(); ++i) {
      if (tmpl[i] != '#' || i + 1 >= tmpl.size()) {
        out += tmpl[i];
        continue;
      }
      char c = tmpl[i + 1];
      if (c == 'R') {
        has_rest = true;
        out += '\0';  // placeholder patched below
        ++i;
      } else if (c >= '0' && c <= '9') {
        size_t idx = static_cast<size_t>(c - '0');
        if (idx < args.size()) out += args[idx];
        max_used = std::max(max_used, idx + 1);
        ++i;
      } else {
        out += tmpl[i];
      }
    }
    if (has_rest) {
      std::string rest;
      for (size_t i = max_used; i < args.size(); ++i) {
        if (!rest.empty()) rest += ",\\, ";
        rest += args[i];
      }
      std::string patched;
      for (char c : out) {
        if (c == '\0') patched += rest;
        else patched += c;
      }
      out = std::move(patched);
    }
    return out;
  }

  std::string var(const std::string& base, const std::string& subscript) {
    std::string out = "\\mathit{" + escape_tex(base) + "}";
    if (!subscript.empty()) out += "_{" + subscript + "}";
    return out;
  }

  std::string ctor_apply(const std::string& ctor,
                         const std::vector<std::string>& args) {
    auto it = symbols.entries.find(ctor);
    if (it != symbols.entries.end()) return apply_template(it->second, args);
    std::string out = "\\mathtt{" + escape_tex(ctor) + "}";
    for (const auto& a : args) out += "~" + a;
    if (warnings)
      warnings->push_back("no symbol entry for constructor '" + ctor +
                          "'; using typewriter fallback");
    return out;
  }

  std::string exp(const Exp& e) {
    std::string out;
    std::visit(
        [&](const auto& k) {
          using K = std::decay_t<decltype(k)>;
          if constexpr (std::is_same_v<K, VarE>) {
            out = var(k.base, k.subscript);
          } else if constexpr (std::is_same_v<K, ConstructE>) {
            std::vector<std::string> args;
            for (const auto& a : k.args) args.push_back(exp_atom(*a));
            out = ctor_apply(k.ctor, args);
          } else if constexpr (std::is_same_v<K, CallE>) {
            std::vector<std::string> args;
            for (const auto& a : k.args) args.push_back(exp(*a));
            auto it = symbols.entries.find("$" + k.func);
            if (it != symbols.entries.end()) {
              out = apply_template(it->second, args);
            } else {
              out = "\\mathit{" + escape_tex(k.func) + "}(";
              for (size_t i = 0; i < args.size(); ++i) {
                if (i) out += ",\\, ";
                out += args[i];
              }
              out += ")";
            }
          } else if constexpr (std::is_same_v<K, SeqE>) {
            for (size_t i = 0; i < k.elems.size(); ++i) {
              if (i) out += "~";
              out += exp_atom(*k.elems[i]);
            }
            if (k.elems.empty()) out = "\\epsilon";
          } else if constexpr (std::is_same_v<K, TupleE>) {
            out = "(";
            for (size_t i = 0; i < k.elems.size(); ++i) {
              if (i) out += ",\\, ";
              out += exp(*k.elems[i]);
            }
            out += ")";
          } else if constexpr (std::is_same_v<K, OptE>) {
            out = k.payload ? exp(*k.payload) : "\\epsilon";
          } else if constexpr (std::is_same_v<K, IterE>) {
            out = exp_atom(*k.body);
            out += k.iter == Iter::List ? "^\\ast" : "^?";
          } else if constexpr (std::is_same_v<K, NatE>) {
            out = std::to_string(k.value);
          } else if constexpr (std::is_same_v<K, ListE>) {
            if (k.elems.empty()) {
              out = "\\epsilon";
            } else {
              out = "[";
              for (size_t i = 0; i < k.elems.size(); ++i) {
                if (i) out += "~";
                out += exp_atom(*k.elems[i]);
              }
              out += "]";
            }
          }
        },
        e.kind);
    return out;
  }

  // Constructor applications with arguments get parentheses when nested.
  std::string exp_atom(const Exp& e) {
    if (auto* c = std::get_if<ConstructE>(&e.kind); c && !c->args.empty())
      return "(" + exp(e) + ")";
    if (std::holds_alternative<SeqE>(e.kind)) return "(" + exp(e) + ")";
    return exp(e);
  }

  std::string typ(const Typ& t) {
    if (auto* n = std::get_if<NameT>(&t.kind))
      return "\\mathit{" + escape_tex(n->name) + "}";
    if (auto* tu = std::get_if<TupleT>(&t.kind)) {
      std::string out = "(";
      for (size_t i = 0; i < tu->elems.size(); ++i) {
        if (i) out += ",\\, ";
        out += typ(*tu->elems[i]);
      }
      return out + ")";
    }
    auto& it = std::get<IterT>(t.kind);
    return typ(*it.base) + (it.iter == Iter::List ? "^\\ast" : "^?");
  }

  // A rule side: sequence elements are parenthesized individually.
  std::string rule_side(const Exp& e) {
    if (std::holds_alternative<SeqE>(e.kind)) return exp(e);
    return exp_atom(e);
  }

  std::string premise(const Premise& p) {
    if (auto* i = std::get_if<IfPremise>(&p.kind)) {
      const char* op = "=";
      switch (i->op) {
        case CmpOp::Eq: op = "="; break;
        case CmpOp::Ne: op = "\\neq"; break;
        case CmpOp::Lt: op = "<"; break;
        case CmpOp::Le: op = "\\leq"; break;
        case CmpOp::Gt: op = ">"; break;
        case CmpOp::Ge: op = "\\geq"; break;
      }
      return exp(*i->lhs) + " " + op + " " + exp(*i->rhs);
    }
    if (std::holds_alternative<ElsePremise>(p.kind)) return "\\mbox{otherwise}";
    auto& it = std::get<IterPremise>(p.kind);
    return "(" + premise(*it.body) + ")" +
           (it.iter == Iter::List ? "^\\ast" : "^?");
  }
};

}  // namespace

SymbolTable SymbolTable::defaults() {
  SymbolTable t;
  t.entries = {
      {"CONST", "#0.\\mathsf{const}~#1"},
      {"UNOP", "#0.#1"},
      {"BINOP", "#0.#1"},
      {"TESTOP", "#0.#1"},
      {"RELOP", "#0.#1"},
      {"TRAP", "\\mathsf{trap}"},
      {"$unop", "{#0}_{#1}(#R)"},
      {"$binop", "{#0}_{#1}(#R)"},
      {"$testop", "{#0}_{#1}(#R)"},
      {"$relop", "{#0}_{#1}(#R)"},
  };
  return t;
}

bool SymbolTable::load(const std::string& path, std::string& error) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    error = "cannot read symbol table " + path;
    return false;
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  nlohmann::json j = nlohmann::json::parse(ss.str(), nullptr, false);
  if (j.is_discarded() || !j.is_object()) {
    error = "symbol table " + path + " is not a JSON object";
    return false;
  }
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (!it.value().is_string()) {
      error = "symbol entry " + it.key() + " is not a string";
      return false;
    }
    entries[it.key()] = it.value().get<std::string>();
  }
  return true;
}

std::string LatexDoc::body() const {
  std::string out;
  for (const auto& b : blocks) out += b.tex;
  return out;
}

std::string LatexDoc::full_document() const {
  return preamble + body() + "\\end{document}\n";
}

LatexDoc render_latex(const el::Script& script, const SymbolTable& symbols) {
  LatexDoc doc;
  doc.preamble =
      "\\documentclass{article}\n"
      "\\usepackage{amsmath}\n"
      "\\usepackage{amssymb}\n"
      "\\setlength{\\parindent}{0pt}\n"
      "\\begin{document}\n\n";
  Renderer r{symbols, &doc.warnings};
  std::map<std::string, int> clause_counts;

  auto add_block = [&](std::string kind, std::string name, std::string tex) {
    LatexBlock b;
    b.kind = std::move(kind);
    b.name = std::move(name);
    b.label = "def-" + b.kind + "-" + sanitize_label(b.name);
    b.tex = "\\label{" + b.label + "}%\n" + std::move(tex) + "\n";
    doc.anchors[b.kind + ":" + b.name] = b.label;
    doc.blocks.push_back(std::move(b));
  };

  for (const auto& def : script.defs) {
    std::visit(
        [&](const auto& k) {
          using K = std::decay_t<decltype(k)>;
          if constexpr (std::is_same_v<K, SyntaxDef>) {
            std::ostringstream os;
            os << "$$\\begin{array}{@{}lcl@{}}\n\\mathit{"
               << escape_tex(k.name) << "} &::=&\n";
            for (size_t i = 0; i < k.cases.size(); ++i) {
              if (i) os << " ~|~\n";
              if (auto* c = std::get_if<CtorCase>(&k.cases[i].kind)) {
                std::vector<std::string> args;
                for (const auto& t : c->args) args.push_back(r.typ(*t));
                os << "  " << r.ctor_apply(c->name, args);
              } else {
                os << "  " << r.typ(*std::get<InclCase>(k.cases[i].kind).type);
              }
            }
            os << "\n\\end{array}$$\n";
            add_block("syntax", k.name, os.str());
          } else if constexpr (std::is_same_v<K, VarDeclDef>) {
            std::ostringstream os;
            os << "$$\\mathit{" << escape_tex(k.var) << "} : "
               << r.typ(*k.type) << "$$\n";
            add_block("var", k.var, os.str());
          } else if constexpr (std::is_same_v<K, FuncDeclDef>) {
            std::ostringstream os;
            os << "$$\\mathit{" << escape_tex(k.name) << "} : ";
            for (size_t i = 0; i < k.params.size(); ++i) {
              if (i) os << " \\times ";
              os << r.typ(*k.params[i]);
            }
            if (k.params.empty()) os << "()";
            os << " \\to " << r.typ(*k.result) << "$$\n";
            add_block("func", k.name, os.str());
          } else if constexpr (std::is_same_v<K, FuncClauseDef>) {
            std::ostringstream os;
            os << "$$\\begin{array}{@{}l@{}}\n\\mathit{" << escape_tex(k.name)
               << "}(";
            for (size_t i = 0; i < k.args.size(); ++i) {
              if (i) os << ",\\, ";
              os << r.exp(*k.args[i]);
            }
            os << ") = " << r.exp(*k.result);
            for (const auto& p : k.premises)
              os << " \\\\\n\\quad \\mbox{if}~" << r.premise(*p);
            os << "\n\\end{array}$$\n";
            int idx = clause_counts[k.name]++;
            add_block("clause", k.name + "-" + std::to_string(idx), os.str());
          } else if constexpr (std::is_same_v<K, RelationDef>) {
            std::ostringstream os;
            os << "$$\\boxed{" << r.typ(*k.lhs)
               << (k.rel == RelKind::Reduction ? " \\hookrightarrow "
                                               : " \\vdash ")
               << r.typ(*k.rhs) << "}$$\n";
            add_block("relation", k.name, os.str());
          } else if constexpr (std::is_same_v<K, RuleDef>) {
            std::ostringstream os;
            if (k.rel == RelKind::Reduction) {
              os << "$$\\begin{array}{@{}llcl@{}}\n";
              os << "[\\textsc{E-" << escape_tex(sanitize_label(k.rule_id))
                 << "}] &\n  " << r.rule_side(*k.lhs)
                 << " &\\hookrightarrow& " << r.rule_side(*k.rhs) << " \\\\\n";
              for (const auto& p : k.premises)
                os << "& \\quad \\mbox{if}~" << r.premise(*p) << " \\\\\n";
              os << "\\end{array}$$\n";
            } else {
              os << "$$[\\textsc{" << escape_tex(sanitize_label(k.relation))
                 << "-" << escape_tex(sanitize_label(k.rule_id)) << "}]\\quad"
                 << "\\frac{";
              for (size_t i = 0; i < k.premises.size(); ++i) {
                if (i) os << " \\qquad ";
                os << r.premise(*k.premises[i]);
              }
              if (k.premises.empty()) os << "\\strut";
              os << "}{" << r.exp(*k.lhs) << " \\vdash " << r.exp(*k.rhs)
                 << "}$$\n";
            }
            add_block("rule", k.relation + "/" + k.rule_id, os.str());
          }
        },
        def.kind);
  }
  return doc;
}

LatexDoc render_latex_checked(const el::Script& script,
                              const SymbolTable& symbols,
                              const std::vector<Diagnostic>& diags) {
  if (has_errors(diags))
    throw RenderRefused("refusing to render a script with errors");
  return render_latex(script, symbols);
}

std::vector<std::string> check_latex_wellformed(const std::string& tex) {
  std::vector<std::string> problems;
  long brace_depth = 0;
  std::vector<std::string> env_stack;
  for (size_t i = 0; i < tex.size(); ++i) {
    char c = tex[i];
    if (c == '\\' && i + 1 < tex.size()) {
      // skip escaped characters; handle \begin / \end
      if (tex.compare(i, 7, "\\begin{") == 0) {
        size_t close = tex.find('}', i + 7);
        if (close == std::string::npos) {
          problems.push_back("unterminated \\begin{");
          break;
        }
        env_stack.push_back(tex.substr(i + 7, close - i - 7));
      } else if (tex.compare(i, 5, "\\end{") == 0) {
        size_t close = tex.find('}', i + 5);
        if (close == std::string::npos) {
          problems.push_back("unterminated \\end{");
          break;
        }
        std::string env = tex.substr(i + 5, close - i - 5);
        if (env_stack.empty() || env_stack.back() != env)
          problems.push_back("mismatched \\end{" + env + "}");
        else
          env_stack.pop_back();
      }
      ++i;  // the character after the backslash is literal
      continue;
    }
    if (c == '{') ++brace_depth;
    if (c == '}') --brace_depth;
    if (brace_depth < 0) {
      problems.push_back("unbalanced '}'");
      brace_depth = 0;
    }
  }
  if (brace_depth != 0) problems.push_back("unbalanced '{'");
  for (const auto& env : env_stack)
    problems.push_back("unclosed environment " + env);
  return problems;
}

}  // namespace spectec::render
