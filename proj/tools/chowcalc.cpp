// chowcalc: codimension-one cohomological chow groups of a projective
// variety with isolated singularities, from combinatorial resolution data.
//
// Exit codes: 0 success, 2 bad input, 3 hypotheses of the implemented
// criteria fail (outputs are still written), 4 internal error.

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "chow/errors.hpp"
#include "chow/report.hpp"

namespace {

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) chow::fail(chow::ErrorCode::ConsistencyError,
                       "cannot open '" + path + "' for writing");
  out << content;
  if (!out) chow::fail(chow::ErrorCode::ConsistencyError,
                       "failed while writing '" + path + "'");
}

bool env_verbose() {
  const char* log = std::getenv("CHOWCALC_LOG");
  return log && *log && std::string(log) != "0" && std::string(log) != "off";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"codimension-one chow groups from resolution data"};
  app.require_subcommand(1);

  auto* run_cmd =
      app.add_subcommand("run", "compute the groups described by a JSON config");
  std::string config_path;
  std::string out_path, json_path, dot_path;
  bool verbose = false;
  run_cmd->add_option("config", config_path, "path to the JSON config")
      ->required();
  run_cmd->add_option("--out", out_path, "write the text report to this file");
  run_cmd->add_option("--json", json_path, "write the machine report to this file");
  run_cmd->add_option("--dot", dot_path,
                      "write the dual-complex 1-skeleton in DOT to this file");
  run_cmd->add_flag("--verbose", verbose, "log progress to stderr");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  verbose = verbose || env_verbose();

  try {
    const auto start = std::chrono::steady_clock::now();
    chow::Config config = chow::load_config(config_path);
    if (!out_path.empty()) config.outputs.text = out_path;
    if (!json_path.empty()) config.outputs.json = json_path;
    if (!dot_path.empty()) config.outputs.dot = dot_path;
    if (verbose)
      std::cerr << "chowcalc: loaded '" << config_path << "' (mode "
                << chow::mode_name(config.mode) << ")\n";

    const chow::Report report = chow::run(config);
    const std::string text = chow::render_text(report);

    std::cout << text;
    if (config.outputs.text) write_file(*config.outputs.text, text);
    if (config.outputs.json)
      write_file(*config.outputs.json, chow::render_machine_json(report));
    if (config.outputs.dot) {
      if (report.dot.empty())
        chow::fail(chow::ErrorCode::ConsistencyError,
                   "this mode has no dual complex to export as DOT");
      write_file(*config.outputs.dot, report.dot);
    }

    if (verbose) {
      const auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
          std::chrono::steady_clock::now() - start);
      std::cerr << "chowcalc: done in " << elapsed.count() << " ms\n";
    }
    if (!report.determinate) {
      std::cerr << "chowcalc: hypotheses of the implemented criteria fail; "
                   "see the caveats in the report\n";
      return 3;
    }
    return 0;
  } catch (const chow::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    if (e.code() == chow::ErrorCode::HypothesisFailed) return 3;
    return e.is_input_error() ? 2 : 4;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 4;
  }
}
