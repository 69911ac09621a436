#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace spectec {

// Identifies a file registered in a FileTable.
using FileId = int;

// Half-open is awkward for diagnostics; spans are inclusive, 1-based.
struct SourceSpan {
  FileId file = -1;
  int line_start = 0;
  int col_start = 0;
  int line_end = 0;
  int col_end = 0;

  static SourceSpan join(const SourceSpan& a, const SourceSpan& b) {
    if (a.file < 0) return b;
    if (b.file < 0) return a;
    SourceSpan s = a;
    if (b.line_start < s.line_start ||
        (b.line_start == s.line_start && b.col_start < s.col_start)) {
      s.line_start = b.line_start;
      s.col_start = b.col_start;
    }
    if (b.line_end > s.line_end ||
        (b.line_end == s.line_end && b.col_end > s.col_end)) {
      s.line_end = b.line_end;
      s.col_end = b.col_end;
    }
    return s;
  }

  bool operator==(const SourceSpan&) const = default;
};

// Owns the text of every input file so spans can be resolved back to text.
class FileTable {
 public:
  FileId add(std::string name, std::string text) {
    names_.push_back(std::move(name));
    texts_.push_back(std::move(text));
    return static_cast<FileId>(names_.size()) - 1;
  }

  const std::string& name(FileId id) const { return names_.at(id); }
  const std::string& text(FileId id) const { return texts_.at(id); }
  int size() const { return static_cast<int>(names_.size()); }

  // Text covered by an inclusive span. Used by span-soundness checks and
  // diagnostic snippets.
  std::string_view slice(const SourceSpan& span) const;

 private:
  std::vector<std::string> names_;
  std::vector<std::string> texts_;
};

enum class Severity { Error, Warning };

struct DiagnosticNote {
  std::string message;
  SourceSpan span;
};

struct Diagnostic {
  Severity severity = Severity::Error;
  std::string code;  // stable, e.g. "E-ARITY"
  std::string message;
  SourceSpan span;
  std::vector<DiagnosticNote> notes;
};

// Stable ordering for reporting: (file, line, col, code).
void sort_diagnostics(std::vector<Diagnostic>& diags);

bool has_errors(const std::vector<Diagnostic>& diags);

// "file:line:col: severity[code]: message" rendering; color per
// SPECTEC_COLOR when `color` is true.
std::string format_diagnostic(const Diagnostic& d, const FileTable& files,
                              bool color = false);

}  // namespace spectec
