#include "spectec/value.hpp"

#include <cinttypes>
#include <cstdio>

namespace spectec::rt {

const char* numtype_name(NumType t) {
  switch (t) {
    case NumType::I32: return "i32";
    case NumType::I64: return "i64";
    case NumType::F32: return "f32";
    case NumType::F64: return "f64";
  }
  return "?";
}

const char* numtype_ctor(NumType t) {
  switch (t) {
    case NumType::I32: return "I32";
    case NumType::I64: return "I64";
    case NumType::F32: return "F32";
    case NumType::F64: return "F64";
  }
  return "?";
}

bool numtype_from_ctor(const std::string& ctor, NumType& out) {
  if (ctor == "I32") out = NumType::I32;
  else if (ctor == "I64") out = NumType::I64;
  else if (ctor == "F32") out = NumType::F32;
  else if (ctor == "F64") out = NumType::F64;
  else return false;
  return true;
}

std::string Value::to_string() const {
  char buf[64];
  switch (type) {
    case NumType::I32:
      snprintf(buf, sizeof buf, "i32.const %u", u32());
      break;
    case NumType::I64:
      snprintf(buf, sizeof buf, "i64.const %" PRIu64, u64());
      break;
    case NumType::F32:
      snprintf(buf, sizeof buf, "f32.const 0x%08x", u32());
      break;
    case NumType::F64:
      snprintf(buf, sizeof buf, "f64.const 0x%016" PRIx64, bits);
      break;
  }
  return buf;
}

std::string TrapResult::to_string() const {
  if (trapped) return "trap";
  std::string s = "[";
  for (size_t i = 0; i < values.size(); ++i) {
    if (i) s += ", ";
    s += values[i].to_string();
  }
  return s + "]";
}

}  // namespace spectec::rt
