#include "doctest.h"
#include "helpers.hpp"
#include "spectec/minwast.hpp"
#include "spectec/numerics.hpp"
#include "spectec/runtime.hpp"
#include "spectec/validate.hpp"

using namespace spectec;
using rt::NumType;
using rt::RtVal;
using rt::Value;

namespace {

const rt::Interpreter& interp() {
  static rt::Interpreter* i = [] {
    const auto& fx = testutil::corpus_fixture();
    return new rt::Interpreter(fx.il, fx.anim.algorithms);
  }();
  return *i;
}

rt::Config module_config(const char* text) {
  auto parsed = rt::parse_module_text(text);
  auto* mod = std::get_if<rt::MwModule>(&parsed);
  REQUIRE(mod);
  REQUIRE(rt::validate(*mod).empty());
  rt::Config config;
  config.store = interp().instantiate(*mod);
  return config;
}

// Runs a single instruction against operand values; mirrors one small step.
struct StepOutcome {
  bool trapped = false;
  std::vector<Value> stack;
};

StepOutcome run_one(const RtVal& instr, const std::vector<Value>& operands) {
  rt::Config config;
  config.frames.push_back(rt::Frame{});
  for (const Value& v : operands) config.stack.push_back(v);
  config.pending.push_back(rt::RtInstr::of(instr));
  interp().step_instr(config);
  // drain whatever the step scheduled (administrative forms etc.)
  while (!config.done()) interp().step_instr(config);
  StepOutcome out;
  out.trapped = config.trapped;
  out.stack = config.stack;
  return out;
}

RtVal binop_instr(const char* nt, const char* op) {
  return RtVal::of_con("BINOP",
                       {RtVal::of_con(nt), RtVal::of_con(op)});
}

}  // namespace

// --- numeric operator tables ---------------------------------------------

TEST_CASE("integer addition wraps around") {
  auto r = rt::numeric_binop("ADD", NumType::I32, Value::i32(0xffffffffu),
                             Value::i32(1));
  REQUIRE(r);
  CHECK(*r == Value::i32(0));
}

TEST_CASE("signed division overflow has no result") {
  auto r = rt::numeric_binop("DIV_S", NumType::I32,
                             Value::i32(0x80000000u), Value::i32(0xffffffffu));
  CHECK(!r);
  auto r64 = rt::numeric_binop("DIV_S", NumType::I64,
                               Value::i64(0x8000000000000000ull),
                               Value::i64(0xffffffffffffffffull));
  CHECK(!r64);
  // the corresponding remainder is defined and zero
  auto rem = rt::numeric_binop("REM_S", NumType::I32,
                               Value::i32(0x80000000u), Value::i32(0xffffffffu));
  REQUIRE(rem);
  CHECK(*rem == Value::i32(0));
}

TEST_CASE("division by zero has no result") {
  CHECK(!rt::numeric_binop("DIV_U", NumType::I32, Value::i32(1),
                           Value::i32(0)));
  CHECK(!rt::numeric_binop("REM_S", NumType::I64, Value::i64(5),
                           Value::i64(0)));
}

TEST_CASE("subtraction of a value from itself is zero for sampled values") {
  for (uint64_t x : {0ull, 1ull, 2ull, 0xffffffffffffffffull,
                     0x8000000000000000ull, 0x7fffffffffffffffull}) {
    auto r = rt::numeric_binop("SUB", NumType::I64, Value::i64(x),
                               Value::i64(x));
    REQUIRE(r);
    CHECK(*r == Value::i64(0));
  }
}

TEST_CASE("shift counts are masked by the width") {
  auto r = rt::numeric_binop("SHL", NumType::I32, Value::i32(1),
                             Value::i32(32));
  REQUIRE(r);
  CHECK(*r == Value::i32(1));
  auto r2 = rt::numeric_binop("SHR_S", NumType::I32, Value::i32(0x80000000u),
                              Value::i32(31));
  REQUIRE(r2);
  CHECK(*r2 == Value::i32(0xffffffffu));
}

TEST_CASE("rotates behave at the boundaries") {
  auto r = rt::numeric_binop("ROTL", NumType::I32, Value::i32(0x80000001u),
                             Value::i32(1));
  REQUIRE(r);
  CHECK(*r == Value::i32(3));
  auto r2 = rt::numeric_binop("ROTR", NumType::I64, Value::i64(1),
                              Value::i64(64));
  REQUIRE(r2);
  CHECK(*r2 == Value::i64(1));
}

TEST_CASE("count instructions treat zero by width") {
  auto clz = rt::numeric_unop("CLZ", NumType::I32, Value::i32(0));
  CHECK(*clz == Value::i32(32));
  auto ctz = rt::numeric_unop("CTZ", NumType::I64, Value::i64(0));
  CHECK(*ctz == Value::i64(64));
}

TEST_CASE("float arithmetic canonicalizes NaN results") {
  auto inf = Value::f32_bits(0x7f800000u);
  auto ninf = Value::f32_bits(0xff800000u);
  auto r = rt::numeric_binop("FADD", NumType::F32, inf, ninf);
  REQUIRE(r);
  CHECK(r->bits == rt::kCanonicalNan32);
  auto z = rt::numeric_binop("FDIV", NumType::F64, Value::f64(0.0),
                             Value::f64(0.0));
  REQUIRE(z);
  CHECK(z->bits == rt::kCanonicalNan64);
}

TEST_CASE("negation and absolute value only touch the sign bit") {
  auto nan = Value::f32_bits(rt::kCanonicalNan32);
  auto r = rt::numeric_unop("FNEG", NumType::F32, nan);
  CHECK(r->bits == (rt::kCanonicalNan32 | 0x80000000u));
  auto r2 = rt::numeric_unop("FABS", NumType::F32, *r);
  CHECK(r2->bits == rt::kCanonicalNan32);
}

TEST_CASE("min and max order the zeroes") {
  auto pz = Value::f64(0.0), nz = Value::f64(-0.0);
  CHECK(rt::numeric_binop("FMIN", NumType::F64, pz, nz)->bits == nz.bits);
  CHECK(rt::numeric_binop("FMAX", NumType::F64, pz, nz)->bits == pz.bits);
}

// --- expression evaluation --------------------------------------------------

TEST_CASE("applying the binop intrinsic yields an option of the sum") {
  rt::Config config;
  rt::Env env;
  auto expr = al::make_expr(al::AppE{
      "binop",
      {al::make_expr(al::ConstructE{"ADD", {}}),
       al::make_expr(al::ConstructE{"I32", {}}),
       al::make_expr(al::NameE{"a"}), al::make_expr(al::NameE{"b"})}});
  env["a"] = RtVal::of_num(Value::i32(1));
  env["b"] = RtVal::of_num(Value::i32(2));
  RtVal r = interp().eval_expr(*expr, env, config);
  REQUIRE(r.kind == RtVal::Kind::Seq);
  REQUIRE(r.items.size() == 1);
  CHECK(r.items[0].num == Value::i32(3));
}

TEST_CASE("an empty list evaluates to an empty sequence") {
  rt::Config config;
  rt::Env env;
  auto expr = al::make_expr(al::ListE{});
  RtVal r = interp().eval_expr(*expr, env, config);
  CHECK(r.kind == RtVal::Kind::Seq);
  CHECK(r.items.empty());
}

TEST_CASE("the length of a singleton list is one") {
  rt::Config config;
  rt::Env env;
  env["c"] = RtVal::of_num(Value::i32(5));
  auto expr = al::make_expr(al::LengthE{
      al::make_expr(al::ListE{{al::make_expr(al::NameE{"c"})}})});
  RtVal r = interp().eval_expr(*expr, env, config);
  CHECK(r.kind == RtVal::Kind::Nat);
  CHECK(r.nat == 1);
}

TEST_CASE("expression evaluation does not disturb the configuration") {
  rt::Config config;
  config.frames.push_back(rt::Frame{});
  config.stack.push_back(Value::i32(9));
  rt::Env env;
  env["a"] = RtVal::of_num(Value::i64(4));
  auto expr = al::make_expr(al::AppE{
      "unop",
      {al::make_expr(al::ConstructE{"POPCNT", {}}),
       al::make_expr(al::ConstructE{"I64", {}}),
       al::make_expr(al::NameE{"a"})}});
  RtVal r1 = interp().eval_expr(*expr, env, config);
  RtVal r2 = interp().eval_expr(*expr, env, config);
  CHECK(rt::rt_equal(r1, r2));
  CHECK(config.stack.size() == 1);
  CHECK(config.pending.empty());
}

TEST_CASE("unbound variables are an interpreter bug, not a trap") {
  rt::Config config;
  rt::Env env;
  auto expr = al::make_expr(al::NameE{"ghost"});
  CHECK_THROWS_AS(interp().eval_expr(*expr, env, config), rt::InterpreterBug);
}

// --- single steps -------------------------------------------------------------

TEST_CASE("a binop step folds the operands") {
  auto out = run_one(binop_instr("I32", "ADD"),
                     {Value::i32(1), Value::i32(2)});
  CHECK(!out.trapped);
  REQUIRE(out.stack.size() == 1);
  CHECK(out.stack[0] == Value::i32(3));
}

TEST_CASE("a division by zero step traps") {
  auto out = run_one(binop_instr("I32", "DIV_U"),
                     {Value::i32(1), Value::i32(0)});
  CHECK(out.trapped);
}

TEST_CASE("nop leaves the stack unchanged") {
  auto out = run_one(RtVal::of_con("NOP"), {Value::i32(7)});
  CHECK(!out.trapped);
  REQUIRE(out.stack.size() == 1);
  CHECK(out.stack[0] == Value::i32(7));
}

// --- invoke ---------------------------------------------------------------------

TEST_CASE("invoking an add function returns the sum") {
  auto config = module_config(
      "(module (func (export \"add\") (param i32 i32) (result i32)\n"
      "  local.get 0 local.get 1 i32.add))");
  auto r = interp().invoke(config, 0, {Value::i32(7), Value::i32(35)});
  CHECK(r == rt::TrapResult::of({Value::i32(42)}));
}

TEST_CASE("invoking a constant function returns the constant") {
  auto config = module_config(
      "(module (func (export \"c0\") (result i32) i32.const 0))");
  auto r = interp().invoke(config, 0, {});
  CHECK(r == rt::TrapResult::of({Value::i32(0)}));
}

TEST_CASE("a trapping invoke reports Trap") {
  auto config = module_config(
      "(module (func (export \"div\") (param i32 i32) (result i32)\n"
      "  local.get 0 local.get 1 i32.div_u))");
  auto r = interp().invoke(config, 0, {Value::i32(1), Value::i32(0)});
  CHECK(r.trapped);
}

TEST_CASE("argument mismatches are rejected before execution") {
  auto config = module_config(
      "(module (func (export \"one\") (param i32) (result i32)\n"
      "  local.get 0))");
  CHECK_THROWS_AS(interp().invoke(config, 0, {}), rt::ArgumentMismatch);
  CHECK_THROWS_AS(interp().invoke(config, 0, {Value::i64(1)}),
                  rt::ArgumentMismatch);
  CHECK_THROWS_AS(interp().invoke(config, 9, {}), rt::ArgumentMismatch);
}

TEST_CASE("locals are zero-initialized") {
  auto config = module_config(
      "(module (func (export \"l\") (result f64) (local f64)\n"
      "  local.get 0))");
  auto r = interp().invoke(config, 0, {});
  CHECK(r == rt::TrapResult::of({Value::f64(0.0)}));
}

TEST_CASE("the stack holds exactly the result arity after invoke") {
  auto config = module_config(
      "(module (func (export \"f\") (result i32)\n"
      "  i32.const 1 i32.const 2 drop))");
  auto r = interp().invoke(config, 0, {});
  REQUIRE(!r.trapped);
  CHECK(r.values.size() == 1);
}
