#pragma once

#include <string>
#include <vector>

namespace spectec {

struct AssertionFailure {
  size_t command_index = 0;  // position in the test script
  std::string command;       // rendered action
  std::string expected;
  std::string actual;
};

struct FileReport {
  std::string file;
  int passed = 0;
  int failed = 0;
  int trapped_as_expected = 0;
  double wall_seconds = 0;
  std::vector<AssertionFailure> failures;
  std::string infra_error;  // non-empty: the file could not be run at all

  int total() const { return passed + failed; }
};

struct RunReport {
  std::vector<FileReport> files;
  double wall_seconds = 0;

  int passed() const;
  int failed() const;
  int total() const { return passed() + failed(); }
  bool ok() const;

  // "<passed>/<total> assertions passed in <t>s"
  std::string summary() const;
  // Schema documented in docs/report-schema.md. Wall-clock fields are the
  // only parts that vary between identical runs.
  std::string to_json() const;
};

}  // namespace spectec
