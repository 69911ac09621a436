#include <map>
#include <set>

#include "doctest.h"
#include "helpers.hpp"
#include "oracle/oracle.hpp"
#include "spectec/harness.hpp"
#include "spectec/minwast.hpp"
#include "spectec/runtime.hpp"
#include "spectec/validate.hpp"

using namespace spectec;

namespace {

const CorpusManifest& manifest() {
  static CorpusManifest* m = [] {
    std::string err;
    auto loaded = load_manifest(testutil::corpus_dir() + "/manifest.json", err);
    if (!loaded) throw std::runtime_error(err);
    return new CorpusManifest(*loaded);
  }();
  return *m;
}

// Opcode text for an instruction as it appears in the covered list.
std::string opcode_text(const rt::MwInstr& in) {
  using K = rt::MwInstr::Kind;
  std::string p = rt::numtype_name(in.nt);
  auto lower_op = [&](const std::string& op) {
    std::string out;
    for (char c : op) out += static_cast<char>(std::tolower(c));
    return out;
  };
  switch (in.kind) {
    case K::Unreachable: return "unreachable";
    case K::Nop: return "nop";
    case K::Drop: return "drop";
    case K::Select: return "select";
    case K::Const: return std::string(rt::numtype_name(in.cval.type)) + ".const";
    case K::Unop: {
      std::string op = lower_op(in.op);
      if (op[0] == 'f') op = op.substr(1);  // FNEG -> neg
      return p + "." + op;
    }
    case K::Binop: {
      std::string op = lower_op(in.op);
      if (in.nt == rt::NumType::F32 || in.nt == rt::NumType::F64)
        op = op.substr(1);
      return p + "." + op;
    }
    case K::Testop: return p + "." + lower_op(in.op);
    case K::Relop: {
      std::string op = lower_op(in.op);
      if (in.nt == rt::NumType::F32 || in.nt == rt::NumType::F64)
        op = op.substr(1);
      return p + "." + op;
    }
    case K::LocalGet: return "local.get";
    case K::LocalSet: return "local.set";
    case K::LocalTee: return "local.tee";
    case K::GlobalGet: return "global.get";
    case K::GlobalSet: return "global.set";
    case K::Block: return "block";
    case K::Loop: return "loop";
    case K::If: return "if";
    case K::Br: return "br";
    case K::BrIf: return "br_if";
    case K::Return: return "return";
    case K::Call: return "call";
  }
  return "?";
}

void scan_opcodes(const std::vector<rt::MwInstr>& body,
                  std::set<std::string>& out) {
  for (const auto& in : body) {
    out.insert(opcode_text(in));
    scan_opcodes(in.body, out);
    scan_opcodes(in.else_body, out);
  }
}

// Opcodes reachable from a function, following direct calls.
void reachable_opcodes(const rt::MwModule& mod, uint32_t fidx,
                       std::set<uint32_t>& seen, std::set<std::string>& out) {
  if (!seen.insert(fidx).second) return;
  std::function<void(const std::vector<rt::MwInstr>&)> walk =
      [&](const std::vector<rt::MwInstr>& body) {
        for (const auto& in : body) {
          out.insert(opcode_text(in));
          if (in.kind == rt::MwInstr::Kind::Call)
            reachable_opcodes(mod, in.index, seen, out);
          walk(in.body);
          walk(in.else_body);
        }
      };
  walk(mod.funcs[fidx].body);
}

}  // namespace

TEST_CASE("the manifest loads and the corpus parses from it") {
  const auto& m = manifest();
  CHECK(!m.version.empty());
  CHECK(m.files.size() == 3);
  auto corpus = load_corpus(m);
  CHECK(corpus.ok());
  CHECK(corpus.diags.empty());
}

TEST_CASE("a manifest with one file loads only that file") {
  CorpusManifest m = manifest();
  m.files = {"syntax.spectec"};
  auto corpus = load_corpus(m);
  REQUIRE(corpus.ok());
  for (auto& def : corpus.script.defs)
    CHECK(!std::holds_alternative<el::RuleDef>(def.kind));
}

TEST_CASE("a missing corpus file is reported") {
  CorpusManifest m = manifest();
  m.files.push_back("no-such-file.spectec");
  auto corpus = load_corpus(m);
  CHECK(!corpus.ok());
  bool found = false;
  for (auto& d : corpus.diags)
    if (d.code == "E-FILE") found = true;
  CHECK(found);
}

TEST_CASE("the covered instruction list matches the animated algorithms") {
  const auto& fx = testutil::corpus_fixture();
  std::set<std::string> animated;
  for (auto& a : fx.anim.algorithms.algorithms) animated.insert(a.instr_ctor);

  std::set<std::string> declared;
  for (auto& c : manifest().covered) {
    if (c.value_form) {
      // a value form executes natively and has no reduction rule
      CHECK(animated.count(c.ctor) == 0);
    } else {
      declared.insert(c.ctor);
    }
  }
  CHECK(declared == animated);
}

TEST_CASE("every covered instruction has a reduction rule") {
  const auto& fx = testutil::corpus_fixture();
  std::map<std::string, int> rules_per_ctor;
  for (auto& [name, rel] : fx.il.relations)
    for (auto& rule : rel.rules)
      if (!rule.head_ctor.empty()) rules_per_ctor[rule.head_ctor]++;
  for (auto& c : manifest().covered) {
    if (c.value_form) continue;
    CHECK(rules_per_ctor[c.ctor] >= 1);
  }
}

TEST_CASE("every covered instance has at least three assertions") {
  // Count, per opcode, the assertions whose invoked function reaches it.
  std::map<std::string, int> counts;
  for (const auto& path : testutil::suite_files()) {
    auto parsed = rt::parse_test_script(testutil::read_file_or_die(path));
    auto* script = std::get_if<rt::TestScript>(&parsed);
    REQUIRE(script);
    const rt::MwModule* current = nullptr;
    for (auto& cmd : script->commands) {
      if (auto* mod = std::get_if<rt::MwModule>(&cmd.kind)) {
        current = mod;
        continue;
      }
      const rt::Invoke* inv = nullptr;
      if (auto* ar = std::get_if<rt::AssertReturn>(&cmd.kind))
        inv = &ar->invoke;
      else
        inv = &std::get<rt::AssertTrap>(cmd.kind).invoke;
      REQUIRE(current);
      auto it = current->exports.find(inv->func);
      REQUIRE(it != current->exports.end());
      std::set<std::string> ops;
      std::set<uint32_t> seen;
      reachable_opcodes(*current, it->second, seen, ops);
      for (auto& arg : inv->args)
        ops.insert(std::string(rt::numtype_name(arg.type)) + ".const");
      for (auto& op : ops) counts[op]++;
    }
  }
  for (auto& c : manifest().covered) {
    for (auto& inst : c.instances) {
      INFO("instance ", inst);
      CHECK(counts[inst] >= 3);
    }
  }
}

TEST_CASE("the full suite passes under the extracted interpreter") {
  const auto& fx = testutil::corpus_fixture();
  rt::Interpreter interp(fx.il, fx.anim.algorithms);
  int total = 0;
  for (const auto& path : testutil::suite_files()) {
    auto parsed = rt::parse_test_script(testutil::read_file_or_die(path));
    auto* script = std::get_if<rt::TestScript>(&parsed);
    REQUIRE(script);

    struct Engine : rt::Engine {
      const rt::Interpreter& interp;
      rt::Config config;
      explicit Engine(const rt::Interpreter& i) : interp(i) {}
      std::string instantiate(const rt::MwModule& mod) override {
        auto errors = rt::validate(mod);
        if (!errors.empty()) return errors.front();
        config = rt::Config{};
        config.store = interp.instantiate(mod);
        return "";
      }
      rt::TrapResult invoke(const std::string& func,
                            const std::vector<rt::Value>& args) override {
        return interp.invoke(config, config.store.exports.at(func), args);
      }
      bool has_export(const std::string& func) override {
        return config.store.exports.count(func) > 0;
      }
    } engine{interp};

    auto report = rt::run_test_script(*script, engine, path);
    CHECK(report.infra_error.empty());
    CHECK(report.failed == 0);
    total += report.passed;
  }
  CHECK(total >= 200);
}

TEST_CASE("the full suite passes under the oracle as well") {
  int total = 0;
  for (const auto& path : testutil::suite_files()) {
    auto parsed = rt::parse_test_script(testutil::read_file_or_die(path));
    auto* script = std::get_if<rt::TestScript>(&parsed);
    REQUIRE(script);
    oracle::OracleEngine engine;
    auto report = rt::run_test_script(*script, engine, path);
    CHECK(report.infra_error.empty());
    for (auto& f : report.failures)
      MESSAGE(path, " #", f.command_index, " ", f.command, " expected ",
              f.expected, " got ", f.actual);
    CHECK(report.failed == 0);
    total += report.passed;
  }
  CHECK(total >= 200);
}

TEST_CASE("a deliberately wrong expectation fails with both values listed") {
  const auto& fx = testutil::corpus_fixture();
  rt::Interpreter interp(fx.il, fx.anim.algorithms);
  auto parsed = rt::parse_test_script(
      "(module (func (export \"two\") (result i32) i32.const 2))\n"
      "(assert_return (invoke \"two\") (i32.const 3))\n");
  auto* script = std::get_if<rt::TestScript>(&parsed);
  REQUIRE(script);

  struct Engine : rt::Engine {
    const rt::Interpreter& interp;
    rt::Config config;
    explicit Engine(const rt::Interpreter& i) : interp(i) {}
    std::string instantiate(const rt::MwModule& mod) override {
      config = rt::Config{};
      config.store = interp.instantiate(mod);
      return "";
    }
    rt::TrapResult invoke(const std::string& func,
                          const std::vector<rt::Value>& args) override {
      return interp.invoke(config, config.store.exports.at(func), args);
    }
    bool has_export(const std::string& func) override {
      return config.store.exports.count(func) > 0;
    }
  } engine{interp};

  auto report = rt::run_test_script(*script, engine, "neg");
  CHECK(report.failed == 1);
  REQUIRE(report.failures.size() == 1);
  CHECK(report.failures[0].expected.find("3") != std::string::npos);
  CHECK(report.failures[0].actual.find("2") != std::string::npos);
}
