#pragma once

#include <optional>
#include <string>
#include <vector>

#include "spectec/parser.hpp"

namespace spectec {

struct CoveredInstr {
  std::string ctor;                    // DSL constructor, e.g. "BINOP"
  std::vector<std::string> instances;  // text opcodes, e.g. "i32.add"
  bool value_form = false;  // executed as a value push, no reduction rule
};

struct CorpusManifest {
  std::string version;
  std::vector<std::string> files;  // relative to dir, concatenation order
  std::vector<CoveredInstr> covered;
  std::string symbols;  // relative path of the LaTeX symbol table, may be ""
  std::string dir;      // directory the manifest was loaded from
};

// Reads corpus/manifest.json style metadata. On failure returns nullopt and
// sets `error`.
std::optional<CorpusManifest> load_manifest(const std::string& path,
                                            std::string& error);

struct LoadedCorpus {
  el::Script script;  // all files concatenated in manifest order
  FileTable files;
  std::vector<Diagnostic> diags;

  bool ok() const { return !has_errors(diags); }
};

// Parses and concatenates the manifest's files; a missing file yields an
// E-FILE diagnostic. Spans keep pointing into the originating files.
LoadedCorpus load_corpus(const CorpusManifest& manifest);

// Same loader for an explicit file list (CLI input paths).
LoadedCorpus load_files(const std::vector<std::string>& paths);

}  // namespace spectec
