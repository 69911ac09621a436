#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include "spectec/animate.hpp"
#include "spectec/corpus.hpp"
#include "spectec/elaborate.hpp"

#ifndef SPECTEC_CORPUS_DIR
#define SPECTEC_CORPUS_DIR "corpus"
#endif
#ifndef SPECTEC_GOLDEN_DIR
#define SPECTEC_GOLDEN_DIR "tests/golden"
#endif

namespace testutil {

inline std::string corpus_dir() { return SPECTEC_CORPUS_DIR; }
inline std::string golden_dir() { return SPECTEC_GOLDEN_DIR; }

inline std::string read_file_or_die(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct CorpusFixture {
  spectec::LoadedCorpus corpus;
  spectec::il::Script il;
  spectec::AnimateResult anim;
};

// Parses, elaborates, and animates the embedded corpus exactly once.
const CorpusFixture& corpus_fixture();

// The suite files in deterministic order.
std::vector<std::string> suite_files();

}  // namespace testutil
