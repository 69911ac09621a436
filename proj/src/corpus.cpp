#include "spectec/corpus.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace spectec {
namespace {

std::optional<std::string> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string dirname_of(const std::string& path) {
  size_t slash = path.find_last_of('/');
  if (slash == std::string::npos) return ".";
  return path.substr(0, slash);
}

}  // namespace

std::optional<CorpusManifest> load_manifest(const std::string& path,
                                            std::string& error) {
  auto text = read_file(path);
  if (!text) {
    error = "cannot read manifest " + path;
    return std::nullopt;
  }
  nlohmann::json j = nlohmann::json::parse(*text, nullptr, false);
  if (j.is_discarded()) {
    error = "manifest " + path + " is not valid JSON";
    return std::nullopt;
  }
  CorpusManifest m;
  m.dir = dirname_of(path);
  m.version = j.value("version", "");
  if (!j.contains("files") || !j["files"].is_array()) {
    error = "manifest " + path + " lacks a files array";
    return std::nullopt;
  }
  for (const auto& f : j["files"]) m.files.push_back(f.get<std::string>());
  m.symbols = j.value("symbols", "");
  for (const auto& c : j.value("covered", nlohmann::json::array())) {
    CoveredInstr ci;
    ci.ctor = c.value("ctor", "");
    ci.value_form = c.value("value_form", false);
    for (const auto& inst : c.value("instances", nlohmann::json::array()))
      ci.instances.push_back(inst.get<std::string>());
    m.covered.push_back(std::move(ci));
  }
  return m;
}

LoadedCorpus load_corpus(const CorpusManifest& manifest) {
  std::vector<std::string> paths;
  for (const auto& f : manifest.files) paths.push_back(manifest.dir + "/" + f);
  return load_files(paths);
}

LoadedCorpus load_files(const std::vector<std::string>& paths) {
  LoadedCorpus out;
  for (const auto& path : paths) {
    auto text = read_file(path);
    if (!text) {
      out.diags.push_back(Diagnostic{Severity::Error, "E-FILE",
                                     "cannot read file " + path,
                                     SourceSpan{},
                                     {}});
      continue;
    }
    FileId id = out.files.add(path, std::move(*text));
    ParseResult r = parse_source(out.files.text(id), id);
    for (auto& d : r.diags) out.diags.push_back(std::move(d));
    for (auto& def : r.script.defs) out.script.defs.push_back(std::move(def));
  }
  sort_diagnostics(out.diags);
  return out;
}

}  // namespace spectec
