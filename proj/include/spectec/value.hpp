#pragma once

#include <bit>
#include <cstdint>
#include <string>
#include <vector>

namespace spectec::rt {

enum class NumType { I32, I64, F32, F64 };

const char* numtype_name(NumType t);        // "i32", ...
const char* numtype_ctor(NumType t);        // "I32", ... (DSL constructor)
bool numtype_from_ctor(const std::string& ctor, NumType& out);

// A runtime number. Integers are stored reduced modulo 2^32 / 2^64; floats
// keep their exact bit pattern.
struct Value {
  NumType type = NumType::I32;
  uint64_t bits = 0;

  static Value i32(uint32_t v) { return {NumType::I32, v}; }
  static Value i64(uint64_t v) { return {NumType::I64, v}; }
  static Value f32(float v) {
    return {NumType::F32, std::bit_cast<uint32_t>(v)};
  }
  static Value f64(double v) {
    return {NumType::F64, std::bit_cast<uint64_t>(v)};
  }
  static Value f32_bits(uint32_t b) { return {NumType::F32, b}; }
  static Value f64_bits(uint64_t b) { return {NumType::F64, b}; }
  static Value zero(NumType t) { return {t, 0}; }

  uint32_t u32() const { return static_cast<uint32_t>(bits); }
  uint64_t u64() const { return bits; }
  int32_t s32() const { return static_cast<int32_t>(u32()); }
  int64_t s64() const { return static_cast<int64_t>(bits); }
  float as_f32() const {
    return std::bit_cast<float>(static_cast<uint32_t>(bits));
  }
  double as_f64() const { return std::bit_cast<double>(bits); }

  bool operator==(const Value&) const = default;

  std::string to_string() const;  // "i32.const 7" style, bit-exact for floats
};

// Canonical quiet NaN (positive sign, quiet bit, zero payload).
inline constexpr uint32_t kCanonicalNan32 = 0x7fc00000u;
inline constexpr uint64_t kCanonicalNan64 = 0x7ff8000000000000ull;

struct TrapResult {
  bool trapped = false;
  std::vector<Value> values;

  static TrapResult trap() { return {true, {}}; }
  static TrapResult of(std::vector<Value> vs) { return {false, std::move(vs)}; }

  bool operator==(const TrapResult&) const = default;
  std::string to_string() const;
};

}  // namespace spectec::rt
