#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "choquet/inequalities.hpp"
#include "choquet/io.hpp"
#include "choquet/operators.hpp"
#include "choquet/params.hpp"

namespace choquet {

/// One CLI invocation. `selector` names the norm, check, theorem, demo or
/// generator kind, depending on the command.
struct ExperimentConfig {
  std::string command;  // content integral norm maximal riesz check estimate demo generate
  std::string selector;
  std::vector<std::string> inputs;  // function or set file; check: optional set file second
  ParamSet params;
  int depth = 8;
  int dim = 1;
  std::size_t samples = 500;
  std::uint64_t seed = 0;
  std::optional<CorpusSpec> corpus;  // absent: built from samples/seed/dim and `kind`
  std::string kind;                  // generator kind for check/generate corpora
  std::vector<int> depths;           // estimate / divergence levels; empty: {depth}
  WindowFamily family = WindowFamily::grid_aligned;
  RieszMethod method = RieszMethod::direct;
  std::size_t random_sets = 256;  // weak-norm formula batch per function
  int m = 4;                      // nonadditivity subdivision exponent
  bool control = false;           // divergence demo control family
  bool as_set = false;            // generate: emit the support as a CellSet
  std::string output;
  std::string format = "json";  // json | csv (ratio tables)
  bool deterministic = false;
  unsigned threads = 0;

  friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

Json to_json(const ExperimentConfig& config);
ExperimentConfig experiment_config_from_json(const Json& j);

/// Exit codes of run().
inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitUsage = 2;

/// Executes the config. Writes the full report to config.output (nothing
/// on error), a one-line summary to `out` and a one-line diagnostic to
/// `err` on failure.
int run(const ExperimentConfig& config, std::ostream& out, std::ostream& err);

}  // namespace choquet
