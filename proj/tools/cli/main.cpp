#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"

#include "spectec/animate.hpp"
#include "spectec/corpus.hpp"
#include "spectec/elaborate.hpp"
#include "spectec/harness.hpp"
#include "spectec/latex.hpp"
#include "spectec/minwast.hpp"
#include "spectec/prose.hpp"
#include "spectec/report.hpp"
#include "spectec/runtime.hpp"
#include "spectec/validate.hpp"

namespace {

using namespace spectec;

constexpr int kExitOk = 0;
constexpr int kExitCheck = 1;  // check/test failures in the input
constexpr int kExitUsage = 2;  // usage or infrastructure problems

bool use_color() {
  const char* env = std::getenv("SPECTEC_COLOR");
  if (env && std::string(env) == "never") return false;
  if (env && std::string(env) != "auto" && std::string(env) != "never")
    return false;
  return isatty(2);
}

void print_diags(const std::vector<Diagnostic>& diags, const FileTable& files,
                 bool as_json) {
  bool color = use_color();
  for (const auto& d : diags) {
    if (as_json) {
      nlohmann::json j;
      j["severity"] = d.severity == Severity::Error ? "error" : "warning";
      j["code"] = d.code;
      j["message"] = d.message;
      if (d.span.file >= 0 && d.span.file < files.size()) {
        j["file"] = files.name(d.span.file);
        j["line"] = d.span.line_start;
        j["col"] = d.span.col_start;
      }
      std::cerr << j.dump() << "\n";
    } else {
      std::cerr << format_diagnostic(d, files, color) << "\n";
    }
  }
}

struct PipelineOptions {
  std::vector<std::string> paths;
  std::string manifest_path;
  bool json_diags = false;
};

struct Pipeline {
  LoadedCorpus corpus;
  std::optional<CorpusManifest> manifest;
  ElabResult elab;
  AnimateResult anim;
  bool animated = false;
};

// Returns the exit code to use, or kExitOk when the requested stages all
// succeeded.
int run_pipeline(const PipelineOptions& opt, bool need_animation,
                 Pipeline& out) {
  if (!opt.manifest_path.empty()) {
    std::string err;
    out.manifest = load_manifest(opt.manifest_path, err);
    if (!out.manifest) {
      std::cerr << "error: " << err << "\n";
      return kExitUsage;
    }
    out.corpus = load_corpus(*out.manifest);
  } else {
    if (opt.paths.empty()) {
      std::cerr << "error: no input files\n";
      return kExitUsage;
    }
    out.corpus = load_files(opt.paths);
  }
  for (const auto& d : out.corpus.diags)
    if (d.code == "E-FILE") {
      print_diags(out.corpus.diags, out.corpus.files, opt.json_diags);
      return kExitUsage;
    }
  if (!out.corpus.ok()) {
    print_diags(out.corpus.diags, out.corpus.files, opt.json_diags);
    return kExitCheck;
  }
  out.elab = elaborate(out.corpus.script);
  print_diags(out.elab.diags, out.corpus.files, opt.json_diags);
  if (!out.elab.ok()) return kExitCheck;
  if (need_animation) {
    out.anim = animate(*out.elab.script);
    out.animated = true;
    if (!out.anim.ok()) {
      for (const auto& e : out.anim.errors) {
        Diagnostic d{Severity::Error, "E-ANIMATE",
                     e.rule_id + ": " + e.message, e.span, {}};
        print_diags({d}, out.corpus.files, opt.json_diags);
      }
      return kExitCheck;
    }
  }
  return kExitOk;
}

bool write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    std::cerr << "error: cannot write " << path << "\n";
    return false;
  }
  out << content;
  return true;
}

std::optional<rt::Value> parse_cli_value(rt::NumType t, const std::string& s) {
  try {
    switch (t) {
      case rt::NumType::I32:
        return rt::Value::i32(
            static_cast<uint32_t>(std::stoll(s, nullptr, 0)));
      case rt::NumType::I64:
        return rt::Value::i64(static_cast<uint64_t>(std::stoll(s, nullptr, 0)));
      case rt::NumType::F32:
        if (s == "nan") return rt::Value::f32_bits(rt::kCanonicalNan32);
        return rt::Value::f32(std::stof(s));
      case rt::NumType::F64:
        if (s == "nan") return rt::Value::f64_bits(rt::kCanonicalNan64);
        return rt::Value::f64(std::stod(s));
    }
  } catch (...) {
  }
  return std::nullopt;
}

// The extracted interpreter behind the harness's engine interface.
class AlEngine : public rt::Engine {
 public:
  explicit AlEngine(const rt::Interpreter& interp) : interp_(interp) {}

  std::string instantiate(const rt::MwModule& mod) override {
    auto errors = rt::validate(mod);
    if (!errors.empty()) return "validation failed: " + errors.front();
    config_ = rt::Config{};
    config_.store = interp_.instantiate(mod);
    return "";
  }

  rt::TrapResult invoke(const std::string& func,
                        const std::vector<rt::Value>& args) override {
    auto it = config_.store.exports.find(func);
    if (it == config_.store.exports.end())
      throw rt::ArgumentMismatch("unknown export " + func);
    return interp_.invoke(config_, it->second, args);
  }

  bool has_export(const std::string& func) override {
    return config_.store.exports.count(func) > 0;
  }

 private:
  const rt::Interpreter& interp_;
  rt::Config config_;
};

int cmd_check(const PipelineOptions& opt) {
  Pipeline p;
  int rc = run_pipeline(opt, false, p);
  if (rc != kExitOk) return rc;
  std::cerr << "ok: " << p.elab.script->syntaxes.size() << " syntax, "
            << p.elab.script->funcs.size() << " functions, "
            << p.elab.script->relations.size() << " relations, "
            << p.elab.script->recursion_groups.size()
            << " recursion groups\n";
  return kExitOk;
}

int cmd_latex(const PipelineOptions& opt, const std::string& out_path,
              std::string symbols_path) {
  Pipeline p;
  int rc = run_pipeline(opt, false, p);
  if (rc != kExitOk) return rc;

  render::SymbolTable symbols = render::SymbolTable::defaults();
  if (symbols_path.empty() && p.manifest && !p.manifest->symbols.empty())
    symbols_path = p.manifest->dir + "/" + p.manifest->symbols;
  if (!symbols_path.empty()) {
    std::string err;
    if (!symbols.load(symbols_path, err)) {
      std::cerr << "error: " << err << "\n";
      return kExitUsage;
    }
  }
  render::LatexDoc doc;
  try {
    doc = render::render_latex_checked(p.corpus.script, symbols,
                                       p.elab.diags);
  } catch (render::RenderRefused& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitCheck;
  }
  for (const auto& w : doc.warnings) std::cerr << "warning: " << w << "\n";
  if (!write_file(out_path, doc.full_document())) return kExitUsage;
  return kExitOk;
}

int cmd_prose(const PipelineOptions& opt, const std::string& out_path,
              bool plain) {
  Pipeline p;
  int rc = run_pipeline(opt, true, p);
  if (rc != kExitOk) return rc;
  for (const auto& a : p.anim.algorithms.algorithms) {
    auto violations = al::check_binding_soundness(a);
    if (!violations.empty()) {
      std::cerr << "error: algorithm " << a.instr_ctor
                << " is not binding-sound: " << violations.front() << "\n";
      return kExitCheck;
    }
  }
  render::ProseDoc doc = render::render_prose_all(p.anim.algorithms);
  if (!write_file(out_path, plain ? doc.to_text() : doc.to_rst()))
    return kExitUsage;
  return kExitOk;
}

int cmd_animate(const PipelineOptions& opt, const std::string& out_path) {
  Pipeline p;
  int rc = run_pipeline(opt, true, p);
  if (rc != kExitOk) return rc;
  std::string dump = al::dump(p.anim.algorithms);
  if (out_path.empty() || out_path == "-") {
    std::cout << dump;
    return kExitOk;
  }
  if (!write_file(out_path, dump)) return kExitUsage;
  return kExitOk;
}

int cmd_run(const PipelineOptions& opt, const std::string& module_path,
            const std::string& func, const std::vector<std::string>& raw_args) {
  Pipeline p;
  int rc = run_pipeline(opt, true, p);
  if (rc != kExitOk) return rc;

  std::ifstream in(module_path, std::ios::binary);
  if (!in) {
    std::cerr << "error: cannot read module " << module_path << "\n";
    return kExitUsage;
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  auto parsed = rt::parse_module_text(ss.str());
  if (auto* err = std::get_if<rt::WastError>(&parsed)) {
    std::cerr << module_path << ":" << err->line << ":" << err->col
              << ": error: " << err->message << "\n";
    return kExitUsage;
  }
  auto& mod = std::get<rt::MwModule>(parsed);
  auto verrors = rt::validate(mod);
  if (!verrors.empty()) {
    std::cerr << "error: validation failed: " << verrors.front() << "\n";
    return kExitUsage;
  }
  const rt::MwFunc* fn = mod.find_export(func);
  if (!fn) {
    std::cerr << "error: no export \"" << func << "\"\n";
    return kExitUsage;
  }
  if (raw_args.size() != fn->params.size()) {
    std::cerr << "error: \"" << func << "\" expects " << fn->params.size()
              << " argument(s), got " << raw_args.size() << "\n";
    return kExitUsage;
  }
  std::vector<rt::Value> args;
  for (size_t i = 0; i < raw_args.size(); ++i) {
    auto v = parse_cli_value(fn->params[i], raw_args[i]);
    if (!v) {
      std::cerr << "error: bad argument '" << raw_args[i] << "' for "
                << rt::numtype_name(fn->params[i]) << "\n";
      return kExitUsage;
    }
    args.push_back(*v);
  }

  rt::Interpreter interp(*p.elab.script, p.anim.algorithms);
  rt::Config config;
  config.store = interp.instantiate(mod);
  rt::TrapResult result =
      interp.invoke(config, config.store.exports.at(func), args);
  if (result.trapped) {
    std::cout << "trap\n";
  } else {
    for (const auto& v : result.values) std::cout << v.to_string() << "\n";
    if (result.values.empty()) std::cout << "(no results)\n";
  }
  return kExitOk;
}

int cmd_test(const PipelineOptions& opt,
             const std::vector<std::string>& suite_paths, bool json,
             const std::string& report_path, unsigned jobs) {
  Pipeline p;
  int rc = run_pipeline(opt, true, p);
  if (rc != kExitOk) return rc == kExitCheck ? kExitUsage : rc;
  if (suite_paths.empty()) {
    std::cerr << "error: no test scripts given\n";
    return kExitUsage;
  }

  rt::Interpreter interp(*p.elab.script, p.anim.algorithms);

  // Parse all scripts up front; a parse failure is an infrastructure error.
  std::vector<rt::TestScript> scripts(suite_paths.size());
  for (size_t i = 0; i < suite_paths.size(); ++i) {
    std::ifstream in(suite_paths[i], std::ios::binary);
    if (!in) {
      std::cerr << "error: cannot read " << suite_paths[i] << "\n";
      return kExitUsage;
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    auto parsed = rt::parse_test_script(ss.str());
    if (auto* err = std::get_if<rt::WastError>(&parsed)) {
      std::cerr << suite_paths[i] << ":" << err->line << ":" << err->col
                << ": error: " << err->message << "\n";
      return kExitUsage;
    }
    scripts[i] = std::move(std::get<rt::TestScript>(parsed));
  }

  auto t0 = std::chrono::steady_clock::now();
  RunReport report;
  report.files.resize(suite_paths.size());

  // One configuration per test file; files may run concurrently.
  std::mutex next_mutex;
  size_t next = 0;
  auto worker = [&]() {
    for (;;) {
      size_t i;
      {
        std::lock_guard<std::mutex> lock(next_mutex);
        if (next >= suite_paths.size()) return;
        i = next++;
      }
      AlEngine engine(interp);
      report.files[i] =
          rt::run_test_script(scripts[i], engine, suite_paths[i]);
    }
  };
  unsigned n = std::max(1u, jobs);
  if (n == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < n; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  report.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();

  bool infra = false;
  for (const auto& f : report.files) {
    if (!f.infra_error.empty()) {
      std::cerr << "error: " << f.infra_error << "\n";
      infra = true;
    }
    for (const auto& fail : f.failures) {
      std::cerr << f.file << ": command #" << fail.command_index << " "
                << fail.command << "\n  expected: " << fail.expected
                << "\n  actual:   " << fail.actual << "\n";
    }
  }
  if (json) {
    std::cout << report.to_json() << "\n";
  } else {
    std::cout << report.summary() << "\n";
  }
  if (!report_path.empty() && !write_file(report_path, report.to_json() + "\n"))
    return kExitUsage;
  if (infra) return kExitUsage;
  return report.ok() ? kExitOk : kExitCheck;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "spectec: checks a Wasm-subset specification DSL and generates LaTeX, "
      "prose, an algorithmic form, and an executable interpreter from it"};
  app.require_subcommand(1);

  PipelineOptions opt;

  auto add_inputs = [&](CLI::App* cmd) {
    cmd->add_option("files", opt.paths, ".spectec source files");
    cmd->add_option("--manifest", opt.manifest_path,
                    "corpus manifest (alternative to listing files)");
  };

  auto* check = app.add_subcommand("check", "parse and elaborate");
  add_inputs(check);
  check->add_flag("--json", opt.json_diags, "diagnostics as JSON lines");

  std::string out_path;
  std::string symbols_path;
  auto* latex = app.add_subcommand("latex", "generate the formal LaTeX spec");
  add_inputs(latex);
  latex->add_option("-o,--output", out_path, "output .tex path")->required();
  latex->add_option("--symbols", symbols_path, "symbol prettification table");

  bool plain = false;
  auto* prose = app.add_subcommand("prose", "generate prose pseudocode");
  add_inputs(prose);
  prose->add_option("-o,--output", out_path, "output .rst path")->required();
  prose->add_flag("--plain", plain, "plain text instead of reStructuredText");

  std::string al_out;
  auto* animate_cmd =
      app.add_subcommand("animate", "dump the algorithmic form");
  add_inputs(animate_cmd);
  animate_cmd->add_option("-o,--output,--dump-al", al_out,
                          "output path ('-' for stdout)");

  std::string module_path, invoke_name;
  std::vector<std::string> invoke_args;
  auto* run = app.add_subcommand("run", "execute one exported function");
  add_inputs(run);
  run->add_option("-m,--module", module_path, "module (.minwast)")->required();
  run->add_option("-f,--invoke", invoke_name, "export to call")->required();
  run->add_option("-a,--args", invoke_args, "arguments");

  std::vector<std::string> suite_paths;
  bool json_report = false;
  std::string report_path;
  unsigned jobs = 1;
  auto* test = app.add_subcommand("test", "run conformance scripts");
  add_inputs(test);
  test->add_option("--suite", suite_paths, "test scripts (.minwast)");
  test->add_flag("--json", json_report, "print the report as JSON");
  test->add_option("-o,--report", report_path, "also write the JSON report");
  test->add_option("--jobs", jobs, "parallel test files");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  }

  try {
    if (check->parsed()) return cmd_check(opt);
    if (latex->parsed()) return cmd_latex(opt, out_path, symbols_path);
    if (prose->parsed()) return cmd_prose(opt, out_path, plain);
    if (animate_cmd->parsed()) return cmd_animate(opt, al_out);
    if (run->parsed())
      return cmd_run(opt, module_path, invoke_name, invoke_args);
    if (test->parsed())
      return cmd_test(opt, suite_paths, json_report, report_path, jobs);
  } catch (const rt::InterpreterBug& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
