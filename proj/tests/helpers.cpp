#include "helpers.hpp"

#include <algorithm>
#include <filesystem>
#include <stdexcept>

namespace testutil {

const CorpusFixture& corpus_fixture() {
  static CorpusFixture* fixture = [] {
    auto* f = new CorpusFixture();
    std::string err;
    auto manifest =
        spectec::load_manifest(corpus_dir() + "/manifest.json", err);
    if (!manifest) throw std::runtime_error(err);
    f->corpus = spectec::load_corpus(*manifest);
    if (!f->corpus.ok())
      throw std::runtime_error("corpus does not parse cleanly");
    auto elab = spectec::elaborate(f->corpus.script);
    if (!elab.ok()) throw std::runtime_error("corpus does not elaborate");
    f->il = std::move(*elab.script);
    f->anim = spectec::animate(f->il);
    if (!f->anim.ok()) throw std::runtime_error("corpus does not animate");
    return f;
  }();
  return *fixture;
}

std::vector<std::string> suite_files() {
  std::vector<std::string> out;
  for (const auto& entry :
       std::filesystem::directory_iterator(corpus_dir() + "/suite")) {
    if (entry.path().extension() == ".minwast")
      out.push_back(entry.path().string());
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace testutil
