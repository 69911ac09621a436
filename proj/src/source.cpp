#include "spectec/source.hpp"

#include <algorithm>
#include <sstream>

namespace spectec {

std::string_view FileTable::slice(const SourceSpan& span) const {
  if (span.file < 0 || span.file >= size()) return {};
  const std::string& text = texts_[span.file];
  // Walk to (line_start, col_start) and (line_end, col_end).
  size_t begin = std::string::npos, end = std::string::npos;
  int line = 1, col = 1;
  for (size_t i = 0; i <= text.size(); ++i) {
    if (line == span.line_start && col == span.col_start &&
        begin == std::string::npos) {
      begin = i;
    }
    if (line == span.line_end && col == span.col_end) {
      end = i + 1;
      break;
    }
    if (i == text.size()) break;
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  if (begin == std::string::npos || end == std::string::npos || end <= begin)
    return {};
  return std::string_view(text).substr(begin, end - begin);
}

void sort_diagnostics(std::vector<Diagnostic>& diags) {
  std::stable_sort(diags.begin(), diags.end(),
                   [](const Diagnostic& a, const Diagnostic& b) {
                     auto ka = std::tuple(a.span.file, a.span.line_start,
                                          a.span.col_start, a.code);
                     auto kb = std::tuple(b.span.file, b.span.line_start,
                                          b.span.col_start, b.code);
                     return ka < kb;
                   });
}

bool has_errors(const std::vector<Diagnostic>& diags) {
  return std::any_of(diags.begin(), diags.end(), [](const Diagnostic& d) {
    return d.severity == Severity::Error;
  });
}

std::string format_diagnostic(const Diagnostic& d, const FileTable& files,
                              bool color) {
  const char* sev = d.severity == Severity::Error ? "error" : "warning";
  const char* sev_color = d.severity == Severity::Error ? "\x1b[31m" : "\x1b[33m";
  std::ostringstream os;
  if (d.span.file >= 0 && d.span.file < files.size())
    os << files.name(d.span.file) << ':' << d.span.line_start << ':'
       << d.span.col_start << ": ";
  if (color) os << sev_color;
  os << sev << '[' << d.code << ']';
  if (color) os << "\x1b[0m";
  os << ": " << d.message;
  for (const auto& note : d.notes) {
    os << '\n';
    if (note.span.file >= 0 && note.span.file < files.size())
      os << files.name(note.span.file) << ':' << note.span.line_start << ':'
         << note.span.col_start << ": ";
    os << "note: " << note.message;
  }
  return os.str();
}

}  // namespace spectec
