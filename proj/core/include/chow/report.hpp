#pragma once

#include <string>
#include <vector>

#include "chow/config.hpp"

namespace chow {

struct DegreeRow {
  int m = 0;
  MixedGroup value;
  std::string via;  // which computation produced the value
};

// Everything a run produces, mode-independent.  Renderers below are pure:
// the same report always produces byte-identical text and JSON, so nothing
// here may depend on wall time or addresses.
struct Report {
  Mode mode = Mode::Divisor;
  int dimension = 0;
  bool determinate = false;
  std::string rule;
  HypothesisChecklist hypotheses;
  std::vector<FgAbGroup> gamma;  // H^t of the dual complex, t ascending
  std::size_t components = 0;
  bool has_page = false;
  Page e2;
  std::vector<DegreeRow> degrees;  // descending m
  bool has_sequences = false;
  SequenceReport sequences;
  std::vector<std::string> caveats;
  std::string dot;  // 1-skeleton export; empty when there is no dual complex
};

Report run(const Config& config);

std::string render_text(const Report& report);
std::string render_machine_json(const Report& report);

}  // namespace chow
