#include "spectec/numerics.hpp"

#include <bit>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace spectec::rt {
namespace {

bool is_int(NumType nt) { return nt == NumType::I32 || nt == NumType::I64; }
bool is_f32(NumType nt) { return nt == NumType::F32; }

float canon32(float x) {
  return std::isnan(x) ? std::bit_cast<float>(kCanonicalNan32) : x;
}
double canon64(double x) {
  return std::isnan(x) ? std::bit_cast<double>(kCanonicalNan64) : x;
}

// min/max with the required zero-sign and NaN behaviour.
template <typename F>
F fmin_wasm(F a, F b) {
  if (std::isnan(a) || std::isnan(b)) return std::numeric_limits<F>::quiet_NaN();
  if (a == 0 && b == 0) return std::signbit(a) ? a : b;  // -0 wins
  return a < b ? a : b;
}
template <typename F>
F fmax_wasm(F a, F b) {
  if (std::isnan(a) || std::isnan(b)) return std::numeric_limits<F>::quiet_NaN();
  if (a == 0 && b == 0) return std::signbit(a) ? b : a;  // +0 wins
  return a > b ? a : b;
}

template <typename U, typename S>
std::optional<U> int_binop(const std::string& op, U a, U b) {
  constexpr unsigned width = sizeof(U) * 8;
  if (op == "ADD") return a + b;
  if (op == "SUB") return a - b;
  if (op == "MUL") return a * b;
  if (op == "DIV_U") {
    if (b == 0) return std::nullopt;
    return a / b;
  }
  if (op == "DIV_S") {
    S sa = static_cast<S>(a), sb = static_cast<S>(b);
    if (sb == 0) return std::nullopt;
    if (sa == std::numeric_limits<S>::min() && sb == -1) return std::nullopt;
    return static_cast<U>(sa / sb);
  }
  if (op == "REM_U") {
    if (b == 0) return std::nullopt;
    return a % b;
  }
  if (op == "REM_S") {
    S sa = static_cast<S>(a), sb = static_cast<S>(b);
    if (sb == 0) return std::nullopt;
    if (sa == std::numeric_limits<S>::min() && sb == -1) return U{0};
    return static_cast<U>(sa % sb);
  }
  if (op == "AND") return a & b;
  if (op == "OR") return a | b;
  if (op == "XOR") return a ^ b;
  if (op == "SHL") return static_cast<U>(a << (b & (width - 1)));
  if (op == "SHR_U") return a >> (b & (width - 1));
  if (op == "SHR_S")
    return static_cast<U>(static_cast<S>(a) >> (b & (width - 1)));
  if (op == "ROTL") return std::rotl(a, static_cast<int>(b & (width - 1)));
  if (op == "ROTR") return std::rotr(a, static_cast<int>(b & (width - 1)));
  throw std::invalid_argument("unknown integer binop " + op);
}

template <typename F>
std::optional<F> float_binop(const std::string& op, F a, F b) {
  if (op == "FADD") return a + b;
  if (op == "FSUB") return a - b;
  if (op == "FMUL") return a * b;
  if (op == "FDIV") return a / b;
  if (op == "FMIN") return fmin_wasm(a, b);
  if (op == "FMAX") return fmax_wasm(a, b);
  throw std::invalid_argument("unknown float binop " + op);
}

bool int_relop(const std::string& op, uint64_t au, uint64_t bu, int64_t as,
               int64_t bs) {
  if (op == "EQ") return au == bu;
  if (op == "NE") return au != bu;
  if (op == "LT_U") return au < bu;
  if (op == "GT_U") return au > bu;
  if (op == "LE_U") return au <= bu;
  if (op == "GE_U") return au >= bu;
  if (op == "LT_S") return as < bs;
  if (op == "GT_S") return as > bs;
  if (op == "LE_S") return as <= bs;
  if (op == "GE_S") return as >= bs;
  throw std::invalid_argument("unknown integer relop " + op);
}

template <typename F>
bool float_relop(const std::string& op, F a, F b) {
  if (op == "FEQ") return a == b;
  if (op == "FNE") return a != b;
  if (op == "FLT") return a < b;
  if (op == "FGT") return a > b;
  if (op == "FLE") return a <= b;
  if (op == "FGE") return a >= b;
  throw std::invalid_argument("unknown float relop " + op);
}

const char* kIntUnops[] = {"CLZ", "CTZ", "POPCNT"};
const char* kFloatUnops[] = {"FNEG", "FABS", "FSQRT"};
const char* kIntBinops[] = {"ADD",   "SUB",   "MUL",  "DIV_S", "DIV_U",
                            "REM_S", "REM_U", "AND",  "OR",    "XOR",
                            "SHL",   "SHR_S", "SHR_U", "ROTL",  "ROTR"};
const char* kFloatBinops[] = {"FADD", "FSUB", "FMUL", "FDIV", "FMIN", "FMAX"};
const char* kIntRelops[] = {"EQ",   "NE",   "LT_S", "LT_U", "GT_S",
                            "GT_U", "LE_S", "LE_U", "GE_S", "GE_U"};
const char* kFloatRelops[] = {"FEQ", "FNE", "FLT", "FGT", "FLE", "FGE"};

template <size_t N>
bool contains(const char* const (&arr)[N], const std::string& op) {
  for (const char* s : arr)
    if (op == s) return true;
  return false;
}

}  // namespace

std::optional<Value> numeric_unop(const std::string& op, NumType nt, Value a) {
  if (is_int(nt)) {
    if (nt == NumType::I32) {
      uint32_t x = a.u32();
      if (op == "CLZ") return Value::i32(static_cast<uint32_t>(std::countl_zero(x)));
      if (op == "CTZ") return Value::i32(static_cast<uint32_t>(std::countr_zero(x)));
      if (op == "POPCNT") return Value::i32(static_cast<uint32_t>(std::popcount(x)));
    } else {
      uint64_t x = a.u64();
      if (op == "CLZ") return Value::i64(static_cast<uint64_t>(std::countl_zero(x)));
      if (op == "CTZ") return Value::i64(static_cast<uint64_t>(std::countr_zero(x)));
      if (op == "POPCNT") return Value::i64(static_cast<uint64_t>(std::popcount(x)));
    }
    throw std::invalid_argument("unknown integer unop " + op);
  }
  // Float unops. Negation and absolute value are pure sign-bit operations
  // and never canonicalize; square root canonicalizes its NaN results.
  if (is_f32(nt)) {
    uint32_t b = a.u32();
    if (op == "FNEG") return Value::f32_bits(b ^ 0x80000000u);
    if (op == "FABS") return Value::f32_bits(b & 0x7fffffffu);
    if (op == "FSQRT") return Value::f32(canon32(std::sqrt(a.as_f32())));
  } else {
    uint64_t b = a.u64();
    if (op == "FNEG") return Value::f64_bits(b ^ 0x8000000000000000ull);
    if (op == "FABS") return Value::f64_bits(b & 0x7fffffffffffffffull);
    if (op == "FSQRT") return Value::f64(canon64(std::sqrt(a.as_f64())));
  }
  throw std::invalid_argument("unknown float unop " + op);
}

std::optional<Value> numeric_binop(const std::string& op, NumType nt, Value a,
                                   Value b) {
  switch (nt) {
    case NumType::I32: {
      auto r = int_binop<uint32_t, int32_t>(op, a.u32(), b.u32());
      if (!r) return std::nullopt;
      return Value::i32(*r);
    }
    case NumType::I64: {
      auto r = int_binop<uint64_t, int64_t>(op, a.u64(), b.u64());
      if (!r) return std::nullopt;
      return Value::i64(*r);
    }
    case NumType::F32: {
      auto r = float_binop<float>(op, a.as_f32(), b.as_f32());
      if (!r) return std::nullopt;
      return Value::f32(canon32(*r));
    }
    case NumType::F64: {
      auto r = float_binop<double>(op, a.as_f64(), b.as_f64());
      if (!r) return std::nullopt;
      return Value::f64(canon64(*r));
    }
  }
  return std::nullopt;
}

Value numeric_testop(const std::string& op, NumType nt, Value a) {
  if (op == "EQZ") {
    if (nt == NumType::I32) return Value::i32(a.u32() == 0 ? 1 : 0);
    if (nt == NumType::I64) return Value::i32(a.u64() == 0 ? 1 : 0);
  }
  throw std::invalid_argument("unknown testop " + op);
}

Value numeric_relop(const std::string& op, NumType nt, Value a, Value b) {
  bool r;
  switch (nt) {
    case NumType::I32:
      r = int_relop(op, a.u32(), b.u32(), a.s32(), b.s32());
      break;
    case NumType::I64:
      r = int_relop(op, a.u64(), b.u64(), a.s64(), b.s64());
      break;
    case NumType::F32:
      r = float_relop<float>(op, a.as_f32(), b.as_f32());
      break;
    case NumType::F64:
      r = float_relop<double>(op, a.as_f64(), b.as_f64());
      break;
    default:
      throw std::invalid_argument("bad relop type");
  }
  return Value::i32(r ? 1 : 0);
}

bool unop_exists(const std::string& op, NumType nt) {
  return is_int(nt) ? contains(kIntUnops, op) : contains(kFloatUnops, op);
}
bool binop_exists(const std::string& op, NumType nt) {
  return is_int(nt) ? contains(kIntBinops, op) : contains(kFloatBinops, op);
}
bool testop_exists(const std::string& op, NumType nt) {
  return is_int(nt) && op == "EQZ";
}
bool relop_exists(const std::string& op, NumType nt) {
  return is_int(nt) ? contains(kIntRelops, op) : contains(kFloatRelops, op);
}

}  // namespace spectec::rt
