// choquet_lab: command-line front end for the choquet library.
//
//   choquet_lab content  --input set.json --d 0.5
//   choquet_lab norm     --input f.json --norm morrey --p 2 --q 1 --d 0.5
//   choquet_lab check    --check power_embedding --theta 2 --p 0.5 --d 0.25 --samples 500 --seed 42
//   choquet_lab estimate --theorem maximal_weak --d 0.5 --alpha 0.25 --r 0.6 --p 1 --depths 8,10
//   choquet_lab demo     --demo nonadditivity --m 4 --d 0.5 --depth 4

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "choquet/errors.hpp"
#include "choquet/runner.hpp"

namespace {

double parse_number(const std::string& name, const std::string& text) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size()) {
    throw choquet::UsageError("--" + name + ": expected a number (got '" + text + "')");
  }
  return v;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Choquet integrals, norms and inequality checks on dyadic grids"};
  app.set_version_flag("--version", "choquet_lab 1.0");

  std::string command;
  std::string config_path;
  std::vector<std::string> inputs;
  std::string output, format, family, method, kind, selector_norm, selector_check,
      selector_theorem, selector_demo;
  std::optional<int> depth, dim, m;
  std::optional<std::size_t> samples, random_sets;
  std::optional<std::uint64_t> seed;
  std::optional<unsigned> threads;
  std::vector<int> depths;
  bool deterministic = false, control = false, as_set = false;

  app.add_option("command", command,
                 "content | integral | norm | maximal | riesz | check | estimate | demo | generate")
      ->required();
  app.add_option("--config", config_path, "JSON experiment config; flags override its fields");
  app.add_option("--input", inputs, "Input file(s): function or set; check takes f then E");
  app.add_option("--output", output, "Report file (full report; nothing written on error)");
  app.add_option("--format", format, "json | csv (csv: estimate ratio tables)");

  const char* names[] = {"d", "delta", "p", "q", "r", "s", "alpha", "beta", "theta"};
  std::vector<std::string> raw(std::size(names));
  for (std::size_t i = 0; i < std::size(names); ++i) {
    app.add_option(std::string("--") + names[i], raw[i], std::string("Exponent ") + names[i] +
                                                             (std::string(names[i]) == "r" ? " (inf allowed)" : ""));
  }

  app.add_option("--depth", depth, "Grid depth L");
  app.add_option("--n", dim, "Grid dimension (1 or 2)");
  app.add_option("--samples", samples, "Corpus size for check / estimate");
  app.add_option("--seed", seed, "Corpus seed");
  app.add_option("--depths", depths, "Depth list for estimate / divergence")->delimiter(',');
  app.add_option("--family", family, "Window family for maximal: grid | dyadic");
  app.add_option("--method", method, "Riesz method: direct | fast");
  app.add_option("--kind", kind, "Generator kind: random_step | cantor | spike | power_law");
  app.add_option("--norm", selector_norm, "Norm: lp | weak | lorentz | morrey | weak_morrey");
  app.add_option("--check", selector_check, "Explicit check id, or weak_norm_formula");
  app.add_option("--theorem", selector_theorem, "Theorem id for estimate");
  app.add_option("--demo", selector_demo, "Demo: nonadditivity | divergence");
  app.add_option("--m", m, "Subdivision exponent for the nonadditivity demo");
  app.add_option("--random-sets", random_sets, "Random sets per function (weak_norm_formula)");
  app.add_option("--threads", threads, "Worker cap (also CHOQUET_LAB_THREADS)");
  app.add_flag("--control", control, "Divergence demo: constant control family");
  app.add_flag("--as-set", as_set, "generate: emit the support as a cell set");
  app.add_flag("--deterministic", deterministic, "Omit timestamps from reports");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return choquet::kExitUsage;
  }

  choquet::ExperimentConfig config;
  try {
    if (!config_path.empty()) {
      config = choquet::experiment_config_from_json(choquet::read_json_file(config_path));
    }
    config.command = command;
    for (std::size_t i = 0; i < raw.size(); ++i) {
      if (!raw[i].empty()) config.params.set(names[i], parse_number(names[i], raw[i]));
    }
    for (const std::string* s : {&selector_norm, &selector_check, &selector_theorem, &selector_demo}) {
      if (!s->empty()) config.selector = *s;
    }
    if (command == "generate" && !kind.empty() && config.selector.empty()) config.selector = kind;
    if (!inputs.empty()) config.inputs = inputs;
    if (!output.empty()) config.output = output;
    if (!format.empty()) config.format = format;
    if (!kind.empty()) config.kind = kind;
    if (!depths.empty()) config.depths = depths;
    if (depth) config.depth = *depth;
    if (dim) config.dim = *dim;
    if (samples) config.samples = *samples;
    if (seed) config.seed = *seed;
    if (m) config.m = *m;
    if (random_sets) config.random_sets = *random_sets;
    if (threads) config.threads = *threads;
    if (!family.empty()) {
      config.family = choquet::parse_window_family(family);
    }
    if (!method.empty()) config.method = choquet::parse_riesz_method(method);
    config.control = config.control || control;
    config.as_set = config.as_set || as_set;
    config.deterministic = config.deterministic || deterministic;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return choquet::kExitUsage;
  }
  return choquet::run(config, std::cout, std::cerr);
}
