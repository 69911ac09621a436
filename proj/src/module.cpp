#include "spectec/module.hpp"

namespace spectec::rt {

std::optional<NumType> blocktype_result(BlockType bt) {
  switch (bt) {
    case BlockType::None: return std::nullopt;
    case BlockType::I32: return NumType::I32;
    case BlockType::I64: return NumType::I64;
    case BlockType::F32: return NumType::F32;
    case BlockType::F64: return NumType::F64;
  }
  return std::nullopt;
}

const char* blocktype_ctor(BlockType bt) {
  switch (bt) {
    case BlockType::None: return "BT_NONE";
    case BlockType::I32: return "BT_I32";
    case BlockType::I64: return "BT_I64";
    case BlockType::F32: return "BT_F32";
    case BlockType::F64: return "BT_F64";
  }
  return "?";
}

}  // namespace spectec::rt
