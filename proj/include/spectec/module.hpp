#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "spectec/value.hpp"

// Neutral in-memory form of a text-format module, shared by the validator,
// the extracted interpreter, and the test oracle.
namespace spectec::rt {

enum class BlockType { None, I32, I64, F32, F64 };

std::optional<NumType> blocktype_result(BlockType bt);
const char* blocktype_ctor(BlockType bt);  // "BT_NONE", "BT_I32", ...

struct MwInstr {
  enum class Kind {
    Unreachable,
    Nop,
    Drop,
    Select,
    Const,
    Unop,
    Binop,
    Testop,
    Relop,
    LocalGet,
    LocalSet,
    LocalTee,
    GlobalGet,
    GlobalSet,
    Block,
    Loop,
    If,
    Br,
    BrIf,
    Return,
    Call,
  };

  Kind kind = Kind::Nop;
  NumType nt = NumType::I32;        // Const/Unop/Binop/Testop/Relop
  std::string op;                   // operator constructor name ("ADD", ...)
  Value cval;                       // Const
  uint32_t index = 0;               // locals/globals/labels/functions
  BlockType bt = BlockType::None;   // Block/Loop/If
  std::vector<MwInstr> body;        // Block/Loop/If then-branch
  std::vector<MwInstr> else_body;   // If else-branch
};

struct MwFunc {
  std::string id;           // "$name" as written, may be empty
  std::string export_name;  // may be empty
  std::vector<NumType> params;
  std::vector<NumType> results;
  std::vector<NumType> locals;
  std::vector<MwInstr> body;
};

struct MwGlobal {
  std::string id;
  NumType type = NumType::I32;
  bool mut = false;
  Value init;
};

struct MwModule {
  std::vector<MwFunc> funcs;
  std::vector<MwGlobal> globals;

  // export name -> function index
  std::map<std::string, uint32_t> exports;

  const MwFunc* find_export(const std::string& name) const {
    auto it = exports.find(name);
    return it == exports.end() ? nullptr : &funcs[it->second];
  }
};

}  // namespace spectec::rt
