#include "spectec/minwast.hpp"

#include <cstdlib>
#include <map>
#include <optional>
#include <stdexcept>

namespace spectec::rt {
namespace {

// --- s-expressions ---------------------------------------------------------

struct SExp {
  bool list = false;
  bool string = false;  // "quoted" atom
  std::string atom;
  std::vector<SExp> items;
  int line = 1, col = 1;

  bool is_atom(const char* s) const { return !list && !string && atom == s; }
  const SExp* head() const { return list && !items.empty() ? &items[0] : nullptr; }
};

struct WastFail {
  WastError err;
};

[[noreturn]] void fail(int line, int col, std::string msg) {
  throw WastFail{WastError{std::move(msg), line, col}};
}
[[noreturn]] void fail(const SExp& at, std::string msg) {
  fail(at.line, at.col, std::move(msg));
}

struct Reader {
  std::string_view src;
  size_t pos = 0;
  int line = 1, col = 1;

  char peek(size_t off = 0) const {
    return pos + off < src.size() ? src[pos + off] : '\0';
  }
  void advance() {
    if (pos >= src.size()) return;
    if (src[pos] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
    ++pos;
  }
  void skip_ws() {
    for (;;) {
      char c = peek();
      if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        advance();
      } else if (c == ';' && peek(1) == ';') {
        while (pos < src.size() && peek() != '\n') advance();
      } else if (c == '(' && peek(1) == ';') {
        int l0 = line, c0 = col;
        advance();
        advance();
        int depth = 1;
        while (depth > 0) {
          if (pos >= src.size()) fail(l0, c0, "unterminated block comment");
          if (peek() == '(' && peek(1) == ';') {
            advance(); advance(); ++depth;
          } else if (peek() == ';' && peek(1) == ')') {
            advance(); advance(); --depth;
          } else {
            advance();
          }
        }
      } else {
        return;
      }
    }
  }

  SExp read() {
    skip_ws();
    int l0 = line, c0 = col;
    char c = peek();
    if (c == '\0') fail(l0, c0, "unexpected end of input");
    if (c == '(') {
      advance();
      SExp e;
      e.list = true;
      e.line = l0;
      e.col = c0;
      for (;;) {
        skip_ws();
        if (peek() == ')') {
          advance();
          return e;
        }
        if (peek() == '\0') fail(l0, c0, "unclosed '('");
        e.items.push_back(read());
      }
    }
    if (c == ')') fail(l0, c0, "unexpected ')'");
    if (c == '"') {
      advance();
      SExp e;
      e.string = true;
      e.line = l0;
      e.col = c0;
      while (peek() != '"') {
        if (peek() == '\0') fail(l0, c0, "unterminated string");
        if (peek() == '\\') {
          advance();
          char esc = peek();
          if (esc == 'n') e.atom += '\n';
          else if (esc == 't') e.atom += '\t';
          else if (esc == '\\') e.atom += '\\';
          else if (esc == '"') e.atom += '"';
          else fail(line, col, "unsupported string escape");
          advance();
        } else {
          e.atom += peek();
          advance();
        }
      }
      advance();
      return e;
    }
    SExp e;
    e.line = l0;
    e.col = c0;
    while (pos < src.size()) {
      char d = peek();
      if (d == ' ' || d == '\t' || d == '\r' || d == '\n' || d == '(' ||
          d == ')' || d == '"' || d == '\0')
        break;
      if (d == ';' && peek(1) == ';') break;
      e.atom += d;
      advance();
    }
    if (e.atom.empty()) fail(l0, c0, "unexpected character");
    return e;
  }

  std::vector<SExp> read_all() {
    std::vector<SExp> out;
    for (;;) {
      skip_ws();
      if (pos >= src.size()) return out;
      out.push_back(read());
    }
  }
};

// --- literals ---------------------------------------------------------------

std::string strip_seps(const std::string& s) {
  std::string out;
  for (char c : s)
    if (c != '_') out += c;
  return out;
}

uint64_t parse_int_bits(const SExp& at, const std::string& raw, int width) {
  std::string s = strip_seps(raw);
  bool neg = false;
  size_t i = 0;
  if (i < s.size() && (s[i] == '+' || s[i] == '-')) {
    neg = s[i] == '-';
    ++i;
  }
  uint64_t v = 0;
  bool any = false;
  if (s.compare(i, 2, "0x") == 0 || s.compare(i, 2, "0X") == 0) {
    for (i += 2; i < s.size(); ++i) {
      int d;
      char c = s[i];
      if (c >= '0' && c <= '9') d = c - '0';
      else if (c >= 'a' && c <= 'f') d = c - 'a' + 10;
      else if (c >= 'A' && c <= 'F') d = c - 'A' + 10;
      else fail(at, "bad hex digit in integer literal");
      v = v * 16 + static_cast<uint64_t>(d);
      any = true;
    }
  } else {
    for (; i < s.size(); ++i) {
      char c = s[i];
      if (c < '0' || c > '9') fail(at, "bad digit in integer literal");
      v = v * 10 + static_cast<uint64_t>(c - '0');
      any = true;
    }
  }
  if (!any) fail(at, "empty integer literal");
  if (neg) v = ~v + 1;
  if (width == 32) v &= 0xffffffffull;
  return v;
}

Value parse_const_value(const SExp& at, NumType nt, const std::string& raw) {
  switch (nt) {
    case NumType::I32: return Value::i32(static_cast<uint32_t>(parse_int_bits(at, raw, 32)));
    case NumType::I64: return Value::i64(parse_int_bits(at, raw, 64));
    case NumType::F32:
    case NumType::F64: {
      std::string s = strip_seps(raw);
      bool neg = !s.empty() && s[0] == '-';
      std::string body = (neg || (!s.empty() && s[0] == '+')) ? s.substr(1) : s;
      if (body == "nan") {
        if (nt == NumType::F32)
          return Value::f32_bits(kCanonicalNan32 | (neg ? 0x80000000u : 0));
        return Value::f64_bits(kCanonicalNan64 |
                               (neg ? 0x8000000000000000ull : 0));
      }
      if (body == "inf") {
        if (nt == NumType::F32)
          return Value::f32_bits(0x7f800000u | (neg ? 0x80000000u : 0));
        return Value::f64_bits(0x7ff0000000000000ull |
                               (neg ? 0x8000000000000000ull : 0));
      }
      const char* cs = s.c_str();
      char* end = nullptr;
      if (nt == NumType::F32) {
        float f = strtof(cs, &end);
        if (end == cs || *end != '\0') fail(at, "bad f32 literal");
        return Value::f32(f);
      }
      double d = strtod(cs, &end);
      if (end == cs || *end != '\0') fail(at, "bad f64 literal");
      return Value::f64(d);
    }
  }
  fail(at, "bad const");
}

std::optional<NumType> numtype_from_text(const std::string& s) {
  if (s == "i32") return NumType::I32;
  if (s == "i64") return NumType::I64;
  if (s == "f32") return NumType::F32;
  if (s == "f64") return NumType::F64;
  return std::nullopt;
}

// --- opcode table ------------------------------------------------------------

struct OpInfo {
  MwInstr::Kind kind;
  NumType nt;
  const char* ctor;  // operator constructor
};

const std::map<std::string, OpInfo>& opcode_table() {
  static const std::map<std::string, OpInfo> table = [] {
    std::map<std::string, OpInfo> t;
    auto add = [&](const std::string& name, MwInstr::Kind k, NumType nt,
                   const char* ctor) { t[name] = OpInfo{k, nt, ctor}; };
    using K = MwInstr::Kind;
    for (NumType nt : {NumType::I32, NumType::I64}) {
      std::string p = numtype_name(nt);
      add(p + ".clz", K::Unop, nt, "CLZ");
      add(p + ".ctz", K::Unop, nt, "CTZ");
      add(p + ".popcnt", K::Unop, nt, "POPCNT");
      add(p + ".add", K::Binop, nt, "ADD");
      add(p + ".sub", K::Binop, nt, "SUB");
      add(p + ".mul", K::Binop, nt, "MUL");
      add(p + ".div_s", K::Binop, nt, "DIV_S");
      add(p + ".div_u", K::Binop, nt, "DIV_U");
      add(p + ".rem_s", K::Binop, nt, "REM_S");
      add(p + ".rem_u", K::Binop, nt, "REM_U");
      add(p + ".and", K::Binop, nt, "AND");
      add(p + ".or", K::Binop, nt, "OR");
      add(p + ".xor", K::Binop, nt, "XOR");
      add(p + ".shl", K::Binop, nt, "SHL");
      add(p + ".shr_s", K::Binop, nt, "SHR_S");
      add(p + ".shr_u", K::Binop, nt, "SHR_U");
      add(p + ".rotl", K::Binop, nt, "ROTL");
      add(p + ".rotr", K::Binop, nt, "ROTR");
      add(p + ".eqz", K::Testop, nt, "EQZ");
      add(p + ".eq", K::Relop, nt, "EQ");
      add(p + ".ne", K::Relop, nt, "NE");
      add(p + ".lt_s", K::Relop, nt, "LT_S");
      add(p + ".lt_u", K::Relop, nt, "LT_U");
      add(p + ".gt_s", K::Relop, nt, "GT_S");
      add(p + ".gt_u", K::Relop, nt, "GT_U");
      add(p + ".le_s", K::Relop, nt, "LE_S");
      add(p + ".le_u", K::Relop, nt, "LE_U");
      add(p + ".ge_s", K::Relop, nt, "GE_S");
      add(p + ".ge_u", K::Relop, nt, "GE_U");
    }
    for (NumType nt : {NumType::F32, NumType::F64}) {
      std::string p = numtype_name(nt);
      add(p + ".neg", K::Unop, nt, "FNEG");
      add(p + ".abs", K::Unop, nt, "FABS");
      add(p + ".sqrt", K::Unop, nt, "FSQRT");
      add(p + ".add", K::Binop, nt, "FADD");
      add(p + ".sub", K::Binop, nt, "FSUB");
      add(p + ".mul", K::Binop, nt, "FMUL");
      add(p + ".div", K::Binop, nt, "FDIV");
      add(p + ".min", K::Binop, nt, "FMIN");
      add(p + ".max", K::Binop, nt, "FMAX");
      add(p + ".eq", K::Relop, nt, "FEQ");
      add(p + ".ne", K::Relop, nt, "FNE");
      add(p + ".lt", K::Relop, nt, "FLT");
      add(p + ".gt", K::Relop, nt, "FGT");
      add(p + ".le", K::Relop, nt, "FLE");
      add(p + ".ge", K::Relop, nt, "FGE");
    }
    return t;
  }();
  return table;
}

// --- module parsing -----------------------------------------------------------

struct FuncContext {
  const std::map<std::string, uint32_t>* func_ids;
  const std::map<std::string, uint32_t>* global_ids;
};

struct BodyParser {
  const std::vector<SExp>& items;
  size_t pos;
  const FuncContext& ctx;

  bool done() const { return pos >= items.size(); }
  const SExp& cur() const { return items[pos]; }

  enum class IdSpace { None, Func, Global };

  uint32_t parse_index(IdSpace space) {
    if (done()) fail(items.back(), "expected an index");
    const SExp& e = items[pos];
    if (!e.list && !e.string) {
      if (!e.atom.empty() && e.atom[0] == '$') {
        const std::map<std::string, uint32_t>* ids =
            space == IdSpace::Func     ? ctx.func_ids
            : space == IdSpace::Global ? ctx.global_ids
                                       : nullptr;
        if (!ids) fail(e, "symbolic indices are not supported here");
        auto it = ids->find(e.atom);
        if (it == ids->end()) fail(e, "unknown id " + e.atom);
        ++pos;
        return it->second;
      }
      ++pos;
      return static_cast<uint32_t>(parse_int_bits(e, e.atom, 32));
    }
    fail(e, "expected an index");
  }

  BlockType parse_blocktype() {
    if (!done() && cur().list && cur().head() && cur().head()->is_atom("result")) {
      const SExp& r = cur();
      if (r.items.size() != 2 || r.items[1].list)
        fail(r, "block result must name one value type");
      auto nt = numtype_from_text(r.items[1].atom);
      if (!nt) fail(r.items[1], "unknown value type");
      ++pos;
      switch (*nt) {
        case NumType::I32: return BlockType::I32;
        case NumType::I64: return BlockType::I64;
        case NumType::F32: return BlockType::F32;
        case NumType::F64: return BlockType::F64;
      }
    }
    return BlockType::None;
  }

  // Parses instructions until one of the given terminator atoms; consumes
  // the terminator and reports which one ended the sequence.
  std::vector<MwInstr> parse_until(std::initializer_list<const char*> stops,
                                   std::string& stopped_at) {
    std::vector<MwInstr> out;
    for (;;) {
      if (done()) fail(items.back(), "missing 'end'");
      const SExp& e = cur();
      if (!e.list && !e.string) {
        for (const char* s : stops) {
          if (e.atom == s) {
            stopped_at = s;
            ++pos;
            return out;
          }
        }
      }
      out.push_back(parse_instr());
    }
  }

  MwInstr parse_instr() {
    const SExp& e = cur();
    if (e.list || e.string) fail(e, "expected an instruction");
    const std::string& name = e.atom;
    ++pos;
    MwInstr in;
    using K = MwInstr::Kind;
    if (name == "unreachable") { in.kind = K::Unreachable; return in; }
    if (name == "nop") { in.kind = K::Nop; return in; }
    if (name == "drop") { in.kind = K::Drop; return in; }
    if (name == "select") { in.kind = K::Select; return in; }
    if (name == "return") { in.kind = K::Return; return in; }
    if (name == "br") {
      in.kind = K::Br;
      in.index = parse_index(IdSpace::None);
      return in;
    }
    if (name == "br_if") {
      in.kind = K::BrIf;
      in.index = parse_index(IdSpace::None);
      return in;
    }
    if (name == "call") {
      in.kind = K::Call;
      in.index = parse_index(IdSpace::Func);
      return in;
    }
    if (name == "local.get" || name == "local.set" || name == "local.tee") {
      in.kind = name == "local.get" ? K::LocalGet
                : name == "local.set" ? K::LocalSet
                                      : K::LocalTee;
      in.index = parse_index(IdSpace::None);
      return in;
    }
    if (name == "global.get" || name == "global.set") {
      in.kind = name == "global.get" ? K::GlobalGet : K::GlobalSet;
      in.index = parse_index(IdSpace::Global);
      return in;
    }
    if (name == "block" || name == "loop") {
      in.kind = name == "block" ? K::Block : K::Loop;
      in.bt = parse_blocktype();
      std::string stop;
      in.body = parse_until({"end"}, stop);
      return in;
    }
    if (name == "if") {
      in.kind = K::If;
      in.bt = parse_blocktype();
      std::string stop;
      in.body = parse_until({"else", "end"}, stop);
      if (stop == "else") in.else_body = parse_until({"end"}, stop);
      return in;
    }
    // numeric opcodes
    size_t dot = name.find('.');
    if (dot != std::string::npos && name.compare(dot + 1, 5, "const") == 0) {
      auto nt = numtype_from_text(name.substr(0, dot));
      if (!nt) fail(e, "unknown opcode " + name);
      if (done() || cur().list || cur().string)
        fail(e, "expected a literal after " + name);
      in.kind = K::Const;
      in.nt = *nt;
      in.cval = parse_const_value(cur(), *nt, cur().atom);
      ++pos;
      return in;
    }
    auto it = opcode_table().find(name);
    if (it == opcode_table().end()) fail(e, "unknown opcode " + name);
    in.kind = it->second.kind;
    in.nt = it->second.nt;
    in.op = it->second.ctor;
    return in;
  }
};

MwFunc parse_func(const SExp& f, const FuncContext& ctx) {
  MwFunc fn;
  size_t i = 1;
  if (i < f.items.size() && !f.items[i].list && !f.items[i].string &&
      !f.items[i].atom.empty() && f.items[i].atom[0] == '$') {
    fn.id = f.items[i].atom;
    ++i;
  }
  // header groups: (export "..") (param t*)* (result t*)* (local t*)*
  auto group_types = [&](const SExp& g, std::vector<NumType>& out) {
    for (size_t k = 1; k < g.items.size(); ++k) {
      const SExp& t = g.items[k];
      if (t.list || t.string) fail(t, "expected a value type");
      auto nt = numtype_from_text(t.atom);
      if (!nt) fail(t, "unknown value type " + t.atom);
      out.push_back(*nt);
    }
  };
  for (; i < f.items.size(); ++i) {
    const SExp& g = f.items[i];
    if (!g.list || !g.head()) break;
    const SExp& h = *g.head();
    if (h.is_atom("export")) {
      if (g.items.size() != 2 || !g.items[1].string)
        fail(g, "export expects a name string");
      fn.export_name = g.items[1].atom;
    } else if (h.is_atom("param")) {
      group_types(g, fn.params);
    } else if (h.is_atom("result")) {
      group_types(g, fn.results);
    } else if (h.is_atom("local")) {
      group_types(g, fn.locals);
    } else {
      break;
    }
  }
  std::vector<SExp> body_items(f.items.begin() + static_cast<long>(i),
                               f.items.end());
  BodyParser bp{body_items, 0, ctx};
  while (!bp.done()) fn.body.push_back(bp.parse_instr());
  return fn;
}

MwGlobal parse_global(const SExp& g) {
  MwGlobal out;
  size_t i = 1;
  if (i < g.items.size() && !g.items[i].list && !g.items[i].string &&
      !g.items[i].atom.empty() && g.items[i].atom[0] == '$') {
    out.id = g.items[i].atom;
    ++i;
  }
  if (i >= g.items.size()) fail(g, "global expects a type");
  const SExp& ty = g.items[i];
  if (ty.list) {
    if (!ty.head() || !ty.head()->is_atom("mut") || ty.items.size() != 2 ||
        ty.items[1].list)
      fail(ty, "bad global type");
    auto nt = numtype_from_text(ty.items[1].atom);
    if (!nt) fail(ty, "unknown value type");
    out.type = *nt;
    out.mut = true;
  } else {
    auto nt = numtype_from_text(ty.atom);
    if (!nt) fail(ty, "unknown value type");
    out.type = *nt;
  }
  ++i;
  if (i >= g.items.size() || !g.items[i].list)
    fail(g, "global expects a constant initializer");
  const SExp& init = g.items[i];
  if (init.items.size() != 2 || !init.head() || init.head()->list)
    fail(init, "bad global initializer");
  std::string opname = init.head()->atom;
  size_t dot = opname.find('.');
  if (dot == std::string::npos || opname.compare(dot + 1, 5, "const") != 0)
    fail(init, "global initializer must be a const");
  auto nt = numtype_from_text(opname.substr(0, dot));
  if (!nt || *nt != out.type) fail(init, "initializer type mismatch");
  out.init = parse_const_value(init.items[1], *nt, init.items[1].atom);
  return out;
}

MwModule parse_module(const SExp& m) {
  MwModule mod;
  // First pass: symbolic ids for functions and globals.
  std::map<std::string, uint32_t> func_ids;
  std::map<std::string, uint32_t> global_ids;
  uint32_t nfuncs = 0, nglobals = 0;
  for (size_t i = 1; i < m.items.size(); ++i) {
    const SExp& item = m.items[i];
    if (!item.list || !item.head()) fail(item, "bad module field");
    bool is_func = item.head()->is_atom("func");
    bool is_global = item.head()->is_atom("global");
    if (is_func || is_global) {
      if (item.items.size() > 1 && !item.items[1].list &&
          !item.items[1].string && !item.items[1].atom.empty() &&
          item.items[1].atom[0] == '$') {
        if (is_func) func_ids[item.items[1].atom] = nfuncs;
        else global_ids[item.items[1].atom] = nglobals;
      }
      if (is_func) ++nfuncs;
      else ++nglobals;
    }
  }
  FuncContext ctx{&func_ids, &global_ids};
  for (size_t i = 1; i < m.items.size(); ++i) {
    const SExp& item = m.items[i];
    const SExp& h = *item.head();
    if (h.is_atom("func")) {
      MwFunc fn = parse_func(item, ctx);
      if (!fn.export_name.empty())
        mod.exports[fn.export_name] = static_cast<uint32_t>(mod.funcs.size());
      mod.funcs.push_back(std::move(fn));
    } else if (h.is_atom("global")) {
      mod.globals.push_back(parse_global(item));
    } else {
      fail(item, "unsupported module field");
    }
  }
  return mod;
}

Invoke parse_invoke(const SExp& e) {
  if (!e.list || !e.head() || !e.head()->is_atom("invoke") ||
      e.items.size() < 2 || !e.items[1].string)
    fail(e, "expected (invoke \"name\" const*)");
  Invoke inv;
  inv.func = e.items[1].atom;
  for (size_t i = 2; i < e.items.size(); ++i) {
    const SExp& c = e.items[i];
    if (!c.list || c.items.size() != 2 || !c.head() || c.head()->list)
      fail(c, "invoke arguments must be constants");
    std::string opname = c.head()->atom;
    size_t dot = opname.find('.');
    if (dot == std::string::npos || opname.compare(dot + 1, 5, "const") != 0)
      fail(c, "invoke arguments must be constants");
    auto nt = numtype_from_text(opname.substr(0, dot));
    if (!nt) fail(c, "unknown const type");
    inv.args.push_back(parse_const_value(c.items[1], *nt, c.items[1].atom));
  }
  return inv;
}

}  // namespace

std::variant<TestScript, WastError> parse_test_script(std::string_view text) {
  try {
    Reader r{text};
    std::vector<SExp> top = r.read_all();
    TestScript script;
    for (const SExp& e : top) {
      if (!e.list || !e.head()) fail(e, "expected a command");
      const SExp& h = *e.head();
      TestCmd cmd;
      cmd.line = e.line;
      if (h.is_atom("module")) {
        cmd.kind = parse_module(e);
      } else if (h.is_atom("assert_return")) {
        if (e.items.size() < 2) fail(e, "assert_return expects an action");
        AssertReturn ar;
        ar.invoke = parse_invoke(e.items[1]);
        for (size_t i = 2; i < e.items.size(); ++i) {
          const SExp& c = e.items[i];
          if (!c.list || c.items.size() != 2 || !c.head())
            fail(c, "expected an expected-value constant");
          std::string opname = c.head()->atom;
          size_t dot = opname.find('.');
          if (dot == std::string::npos ||
              opname.compare(dot + 1, 5, "const") != 0)
            fail(c, "expected an expected-value constant");
          auto nt = numtype_from_text(opname.substr(0, dot));
          if (!nt) fail(c, "unknown const type");
          ar.expected.push_back(
              parse_const_value(c.items[1], *nt, c.items[1].atom));
        }
        cmd.kind = std::move(ar);
      } else if (h.is_atom("assert_trap")) {
        if (e.items.size() < 2) fail(e, "assert_trap expects an action");
        AssertTrap at;
        at.invoke = parse_invoke(e.items[1]);
        // An optional message string is accepted and ignored.
        cmd.kind = std::move(at);
      } else {
        fail(e, "unsupported command '" + h.atom + "'");
      }
      script.commands.push_back(std::move(cmd));
    }
    return script;
  } catch (WastFail& f) {
    return f.err;
  }
}

std::variant<MwModule, WastError> parse_module_text(std::string_view text) {
  auto r = parse_test_script(text);
  if (auto* err = std::get_if<WastError>(&r)) return *err;
  auto& script = std::get<TestScript>(r);
  for (auto& cmd : script.commands)
    if (auto* m = std::get_if<MwModule>(&cmd.kind)) return std::move(*m);
  return WastError{"input contains no module", 1, 1};
}

}  // namespace spectec::rt
