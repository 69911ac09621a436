#pragma once

#include <string>
#include <vector>

#include "spectec/al.hpp"

namespace spectec::render {

struct ProseStep {
  std::string text;
  std::vector<ProseStep> substeps;
};

struct ProseFragment {
  std::string instr_ctor;
  std::string anchor;   // def-exec-<name>
  std::string heading;  // lowercased instruction name with parameters
  std::vector<ProseStep> steps;
};

struct ProseDoc {
  std::vector<ProseFragment> fragments;

  std::string to_rst() const;
  std::string to_text() const;
};

// Fixed template per algorithm instruction; the templates are the only
// source of prose wording. The algorithm must be binding-sound.
ProseFragment render_prose(const al::Algorithm& algorithm);

ProseDoc render_prose_all(const al::AlgorithmSet& algorithms);

std::string fragment_to_rst(const ProseFragment& fragment);
std::string fragment_to_text(const ProseFragment& fragment);

}  // namespace spectec::render
