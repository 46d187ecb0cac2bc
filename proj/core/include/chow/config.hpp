#pragma once

#include <map>
#include <optional>
#include <string>

#include "chow/chowcalc.hpp"

namespace chow {

enum class Mode { Divisor, Variety, Surface, Smooth2Res };

std::string mode_name(Mode m);

struct OutputPaths {
  std::optional<std::string> text;
  std::optional<std::string> json;
  std::optional<std::string> dot;
};

// One fully validated run request.  Parsing is strict: unknown keys are
// rejected, every matrix entry must be a JSON integer, and which keys are
// legal depends on the mode.
struct Config {
  Mode mode = Mode::Divisor;
  ResolutionData data;  // divisor, variety and surface modes
  std::optional<PresentedGroup> resolution_pic;
  std::map<std::string, IntMatrix> resolution_restrictions;
  std::optional<Smooth2ResInput> smooth;  // smooth_2resolution mode
  OutputPaths outputs;
};

// ParseError for text that is not JSON, SchemaError for JSON of the wrong
// shape, ConsistencyError for well-shaped input that contradicts itself.
Config parse_config(const std::string& text);
Config load_config(const std::string& path);

}  // namespace chow
