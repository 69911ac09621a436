#include "doctest.h"
#include "helpers.hpp"
#include "spectec/minwast.hpp"
#include "spectec/validate.hpp"

using namespace spectec::rt;

TEST_CASE("assert_return commands parse with their constants") {
  auto r = parse_test_script(
      "(module (func (export \"add\") (param i32 i32) (result i32)\n"
      "  local.get 0 local.get 1 i32.add))\n"
      "(assert_return (invoke \"add\" (i32.const 1) (i32.const 2))"
      " (i32.const 3))\n");
  auto* script = std::get_if<TestScript>(&r);
  REQUIRE(script);
  REQUIRE(script->commands.size() == 2);
  auto* ar = std::get_if<AssertReturn>(&script->commands[1].kind);
  REQUIRE(ar);
  CHECK(ar->invoke.func == "add");
  CHECK(ar->invoke.args ==
        std::vector<Value>{Value::i32(1), Value::i32(2)});
  CHECK(ar->expected == std::vector<Value>{Value::i32(3)});
}

TEST_CASE("assert_trap commands parse") {
  auto r = parse_test_script(
      "(assert_trap (invoke \"div\" (i32.const 1) (i32.const 0)))\n");
  auto* script = std::get_if<TestScript>(&r);
  REQUIRE(script);
  auto* at = std::get_if<AssertTrap>(&script->commands[0].kind);
  REQUIRE(at);
  CHECK(at->invoke.func == "div");
}

TEST_CASE("an empty file is an empty script") {
  auto r = parse_test_script("  ;; nothing here\n");
  auto* script = std::get_if<TestScript>(&r);
  REQUIRE(script);
  CHECK(script->commands.empty());
}

TEST_CASE("parse errors carry line and column") {
  auto r = parse_test_script("(module\n  (func (export 7)))\n");
  auto* err = std::get_if<WastError>(&r);
  REQUIRE(err);
  CHECK(err->line == 2);
}

TEST_CASE("hex float literals parse bit-exactly") {
  auto r = parse_test_script(
      "(assert_return (invoke \"f\") (f32.const 0x1.8p+1) "
      "(f64.const -0x1p-1074) (f32.const nan) (f32.const -nan) "
      "(f64.const -inf))\n");
  auto* script = std::get_if<TestScript>(&r);
  REQUIRE(script);
  auto& ar = std::get<AssertReturn>(script->commands[0].kind);
  REQUIRE(ar.expected.size() == 5);
  CHECK(ar.expected[0] == Value::f32(3.0f));
  // smallest f64 subnormal, negative: sign bit plus the lowest bit
  CHECK(ar.expected[1].type == NumType::F64);
  CHECK(ar.expected[1].bits == 0x8000000000000001ull);
  CHECK(ar.expected[2].bits == kCanonicalNan32);
  CHECK(ar.expected[3].bits == (kCanonicalNan32 | 0x80000000u));
  CHECK(ar.expected[4].bits == 0xfff0000000000000ull);
}

TEST_CASE("integer literals accept signs, hex, and separators") {
  auto r = parse_test_script(
      "(assert_return (invoke \"f\") (i32.const -1) (i32.const 0xff) "
      "(i64.const 1_000_000) (i32.const -0x80000000))\n");
  auto* script = std::get_if<TestScript>(&r);
  REQUIRE(script);
  auto& ar = std::get<AssertReturn>(script->commands[0].kind);
  CHECK(ar.expected[0] == Value::i32(0xffffffffu));
  CHECK(ar.expected[1] == Value::i32(0xffu));
  CHECK(ar.expected[2] == Value::i64(1000000));
  CHECK(ar.expected[3] == Value::i32(0x80000000u));
}

// --- validator --------------------------------------------------------------

namespace {

MwModule module_of(const char* text) {
  auto r = parse_module_text(text);
  auto* mod = std::get_if<MwModule>(&r);
  REQUIRE(mod);
  return std::move(*mod);
}

}  // namespace

TEST_CASE("the whole bundled suite validates") {
  for (const auto& path : testutil::suite_files()) {
    auto parsed = parse_test_script(testutil::read_file_or_die(path));
    auto* script = std::get_if<TestScript>(&parsed);
    REQUIRE(script);
    for (auto& cmd : script->commands) {
      if (auto* mod = std::get_if<MwModule>(&cmd.kind)) {
        auto errors = validate(*mod);
        for (auto& e : errors) MESSAGE(path, ": ", e);
        CHECK(errors.empty());
      }
    }
  }
}

TEST_CASE("type mismatches fail validation") {
  auto mod = module_of(
      "(module (func (export \"f\") (result i32)\n"
      "  i64.const 1))");
  CHECK(!validate(mod).empty());
}

TEST_CASE("stack underflow fails validation") {
  auto mod = module_of(
      "(module (func (export \"f\") (result i32)\n"
      "  i32.add))");
  CHECK(!validate(mod).empty());
}

TEST_CASE("branch targets must exist") {
  auto mod = module_of(
      "(module (func (export \"f\")\n"
      "  block br 5 end))");
  CHECK(!validate(mod).empty());
}

TEST_CASE("assignments to immutable globals fail validation") {
  auto mod = module_of(
      "(module (global i32 (i32.const 1))\n"
      "  (func (export \"f\") i32.const 2 global.set 0))");
  CHECK(!validate(mod).empty());
}

TEST_CASE("code after an unconditional branch may be polymorphic") {
  auto mod = module_of(
      "(module (func (export \"f\") (result i32)\n"
      "  block (result i32) i32.const 1 br 0 i32.add end))");
  CHECK(validate(mod).empty());
}

TEST_CASE("an if with a result requires both arms") {
  auto mod = module_of(
      "(module (func (export \"f\") (param i32) (result i32)\n"
      "  local.get 0 if (result i32) i32.const 1 end))");
  CHECK(!validate(mod).empty());
}
