#include "choquet/runner.hpp"

#include <chrono>
#include <ctime>
#include <limits>
#include <ostream>
#include <sstream>

#include "choquet/content.hpp"
#include "choquet/errors.hpp"
#include "choquet/norms.hpp"
#include "choquet/simd/kernels.hpp"

namespace choquet {

namespace {

constexpr const char* kReductionPolicy =
    "per-cell sums in fixed sequential order; vector dot products use a fixed 4-lane tree "
    "(within 1e-12 of the scalar order); maxima are order-independent";

std::string num(double v) {
  std::ostringstream os;
  os.precision(10);
  os << v;
  return os.str();
}

Json header(const ExperimentConfig& c) {
  Json h{{"tool", "choquet_lab"},
         {"command", c.command},
         {"kernels", std::string(simd::active_kernels().name)},
         {"reduction_policy", kReductionPolicy}};
  if (!c.deterministic) {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char stamp[32];
    std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", &tm);
    h["timestamp"] = stamp;
  }
  return h;
}

const std::string& input(const ExperimentConfig& c, std::size_t i, const char* what) {
  if (c.inputs.size() <= i) throw UsageError(std::string("--input: missing ") + what + " file");
  return c.inputs[i];
}

struct Outcome {
  std::string report;  // full file contents
  std::string summary;
  int code = kExitOk;
};

Outcome object_report(const ExperimentConfig& c, Json body, std::string summary) {
  body["header"] = header(c);
  return {body.dump(2) + "\n", std::move(summary), kExitOk};
}

Outcome run_content(const ExperimentConfig& c) {
  const CellSet set = load_cell_set(input(c, 0, "set"));
  const double d = c.params.get("d");
  const ContentValue v = dyadic_content(set, d);
  Json body{{"d", d},
            {"value", v.value},
            {"cells", set.count()},
            {"witness", to_json(std::span<const DyadicCube>(v.witness))}};
  return object_report(c, std::move(body),
                       "content d=" + num(d) + ": " + num(v.value) + " (" +
                           std::to_string(v.witness.size()) + " witness cubes)");
}

Outcome run_integral(const ExperimentConfig& c) {
  const GridFunction f = load_grid_function(input(c, 0, "function"));
  const double d = c.params.get("d");
  const double v = choquet_integral(f, d);
  return object_report(c, Json{{"d", d}, {"value", v}},
                       "choquet integral d=" + num(d) + ": " + num(v));
}

Outcome run_norm(const ExperimentConfig& c) {
  const GridFunction f = load_grid_function(input(c, 0, "function"));
  const ParamSet& ps = c.params;
  const double d = ps.get("d");
  const std::string& kind = c.selector.empty() ? std::string("lp") : c.selector;
  Json body{{"norm", kind}, {"params", to_json(ps)}};
  double value = 0.0;
  if (kind == "lp") {
    value = lp_norm(f, ps.get("p"), d);
  } else if (kind == "weak") {
    value = weak_norm(f, ps.get("p"), d);
  } else if (kind == "lorentz") {
    value = lorentz_norm(f, ps.get("p"), ps.get("r"), d);
  } else if (kind == "morrey" || kind == "weak_morrey") {
    const CubeSupremum s = kind == "morrey" ? morrey_norm_detail(f, ps.get("p"), ps.get("q"), d)
                                            : morrey_weak_norm_detail(f, ps.get("r"), ps.get("p"), d);
    value = s.value;
    body["witness"] = to_json(std::span<const DyadicCube>(&s.cube, 1));
  } else {
    throw UsageError("norm must be one of lp, weak, lorentz, morrey, weak_morrey (got '" + kind +
                     "')");
  }
  body["value"] = number_to_json(value);
  return object_report(c, std::move(body), kind + " norm: " + num(value));
}

Outcome run_operator(const ExperimentConfig& c) {
  const GridFunction f = load_grid_function(input(c, 0, "function"));
  const double alpha = c.params.get("alpha");
  const bool maximal = c.command == "maximal";
  const GridFunction g = maximal ? fractional_maximal(f, alpha, c.family)
                                 : riesz_potential(f, alpha, c.method);
  Json body = to_json(g);
  body["alpha"] = alpha;
  body[maximal ? "family" : "method"] =
      std::string(maximal ? to_string(c.family) : to_string(c.method));
  return object_report(c, std::move(body),
                       c.command + " alpha=" + num(alpha) + ": " + std::to_string(g.size()) +
                           " cells, max " + num(g.max()));
}

GeneratorSpec check_generator(const ExperimentConfig& c, std::size_t i) {
  if (c.corpus && !c.corpus->generators.empty()) {
    return c.corpus->generators[i % c.corpus->generators.size()];
  }
  GeneratorSpec spec;
  if (!c.kind.empty()) spec.kind = parse_generator_kind(c.kind);
  return spec;
}

Outcome run_check(const ExperimentConfig& c) {
  const std::string& id = c.selector;
  if (id.empty()) throw UsageError("--check: no check id given");
  const bool formula = id == "weak_norm_formula";
  const std::uint64_t seed = c.corpus ? c.corpus->seed : c.seed;
  Json results = Json::array();
  std::size_t passed = 0;
  double worst = 0.0;

  auto record = [&](CheckResult r, Json j) {
    passed += r.pass ? 1 : 0;
    if (r.ratio > worst) worst = r.ratio;
    results.push_back(std::move(j));
  };
  auto one = [&](const GridFunction& f, const CellSet* aux, std::uint64_t s,
                 const std::vector<CellSet>& sets) {
    if (formula) {
      WeakNormFormula w = check_weak_norm_formula(f, c.params.get("p"), c.params.get("q"),
                                                  c.params.get("d"), sets);
      w.result.seed = s;
      record(w.result, to_json(w));
    } else {
      CheckResult r = check_explicit(id, f, aux, c.params);
      r.seed = s;
      record(r, to_json(r));
    }
  };

  if (!formula) {
    bool known = false;
    for (auto k : explicit_check_ids()) known = known || k == id;
    if (!known) throw UsageError("unknown check '" + id + "'");
  }
  if (!c.inputs.empty()) {
    const GridFunction f = load_grid_function(c.inputs[0]);
    std::optional<CellSet> aux;
    if (c.inputs.size() > 1) aux = load_cell_set(c.inputs[1]);
    if (!formula && check_needs_set(id) && !aux) aux = CellSet::full(f.shape());
    std::vector<CellSet> sets;
    if (formula) sets = random_set_batch(seed, c.random_sets, f.shape());
    if (aux && formula) sets.push_back(*aux);
    one(f, aux ? &*aux : nullptr, seed, sets);
  } else {
    const std::size_t count = c.corpus ? c.corpus->count : c.samples;
    if (count == 0) throw UsageError("--samples must be > 0");
    const GridShape shape{c.corpus ? c.corpus->dim : c.dim, c.depth};
    shape.validate();
    for (std::size_t i = 0; i < count; ++i) {
      const std::uint64_t s = sample_seed(seed, i);
      const GridFunction f = generate(check_generator(c, i), s, shape);
      Rng rng(sample_seed(s, 0));
      const CellSet aux = random_cell_set(rng, shape);
      std::vector<CellSet> sets;
      if (formula) sets = random_set_batch(sample_seed(s, 1), c.random_sets, shape);
      one(f, &aux, s, sets);
    }
  }
  const std::size_t total = results.size();
  Outcome o;
  o.report = results.dump(2) + "\n";
  o.summary = "check " + id + ": " + std::to_string(passed) + "/" + std::to_string(total) +
              " pass, max ratio " + num(worst);
  o.code = passed == total ? kExitOk : kExitCheckFailed;
  return o;
}

Outcome run_estimate(const ExperimentConfig& c) {
  const std::string& id = c.selector;
  if (id.empty()) throw UsageError("--theorem: no theorem id given");
  CorpusSpec corpus = c.corpus ? *c.corpus : standard_corpus(c.samples, c.seed, c.dim);
  if (!c.corpus && !c.kind.empty()) {
    GeneratorSpec spec;
    spec.kind = parse_generator_kind(c.kind);
    corpus.generators = {spec};
  }
  const std::vector<int> depths = c.depths.empty() ? std::vector<int>{c.depth} : c.depths;
  const ConstantEstimate e = estimate_constant(id, corpus, c.params, depths, c.threads);
  std::string summary = "estimate " + id + ": max ratio " +
                        (e.max_ratio ? num(*e.max_ratio) : std::string("absent")) + " over " +
                        std::to_string(e.samples) + " samples";
  if (c.format == "csv") return {ratio_csv(e.rows, c.deterministic), summary, kExitOk};
  Json body = to_json(e);
  body["corpus"] = to_json(corpus);
  return object_report(c, std::move(body), summary);
}

Outcome run_demo(const ExperimentConfig& c) {
  const std::string& name = c.selector;
  if (name == "nonadditivity") {
    const NonadditivityReport r = nonadditivity_demo(c.m, c.params.get("d"), c.depth);
    return object_report(c, to_json(r),
                         "nonadditivity m=" + std::to_string(r.m) + " d=" + num(r.d) +
                             ": sum " + num(r.sum) + ", whole " + num(r.whole) + ", ratio " +
                             num(r.ratio));
  }
  if (name == "divergence") {
    const std::vector<int> levels = c.depths.empty() ? std::vector<int>{6, 8, 10} : c.depths;
    const DivergenceReport r = divergence_demo(levels, c.params.get("alpha"), c.control);
    std::string s = "divergence alpha=" + num(r.alpha) + (r.control ? " (control)" : "") + ":";
    for (std::size_t i = 0; i < r.levels.size(); ++i) {
      s += " L=" + std::to_string(r.levels[i]) + " " + num(r.ratios[i]);
    }
    return object_report(c, to_json(r), s);
  }
  throw UsageError("demo must be one of nonadditivity, divergence (got '" + name + "')");
}

Outcome run_generate(const ExperimentConfig& c) {
  GeneratorSpec spec;
  if (c.corpus && !c.corpus->generators.empty()) {
    spec = c.corpus->generators.front();
  } else {
    const std::string& kind = !c.selector.empty() ? c.selector : c.kind;
    if (kind.empty()) throw UsageError("--kind: no generator kind given");
    spec.kind = parse_generator_kind(kind);
  }
  const GridShape shape{c.dim, c.depth};
  const GridFunction f = generate(spec, c.seed, shape);
  Json body;
  std::string what;
  if (c.as_set) {
    CellSet set(shape);
    for (std::size_t i = 0; i < f.size(); ++i) {
      if (f[i] > 0.0) set.insert(i);
    }
    body = to_json(set);
    what = std::to_string(set.count()) + " occupied cells";
  } else {
    body = to_json(f);
    what = "max " + num(f.max());
  }
  body["generator"] = to_json(spec);
  body["seed"] = c.seed;
  return object_report(c, std::move(body),
                       "generate " + std::string(to_string(spec.kind)) + " n=" +
                           std::to_string(shape.dim) + " L=" + std::to_string(shape.depth) +
                           ": " + what);
}

Outcome dispatch(const ExperimentConfig& c) {
  if (c.format != "json" && c.format != "csv") {
    throw UsageError("--format must be json or csv (got '" + c.format + "')");
  }
  if (c.format == "csv" && c.command != "estimate") {
    throw UsageError("--format csv is only available for estimate ratio tables");
  }
  if (c.command == "content") return run_content(c);
  if (c.command == "integral") return run_integral(c);
  if (c.command == "norm") return run_norm(c);
  if (c.command == "maximal" || c.command == "riesz") return run_operator(c);
  if (c.command == "check") return run_check(c);
  if (c.command == "estimate") return run_estimate(c);
  if (c.command == "demo") return run_demo(c);
  if (c.command == "generate") return run_generate(c);
  throw UsageError("unknown command '" + c.command + "'");
}

}  // namespace

Json to_json(const ExperimentConfig& c) {
  Json j{{"command", c.command},
         {"selector", c.selector},
         {"inputs", c.inputs},
         {"params", to_json(c.params)},
         {"depth", c.depth},
         {"n", c.dim},
         {"samples", c.samples},
         {"seed", c.seed},
         {"kind", c.kind},
         {"depths", c.depths},
         {"family", std::string(to_string(c.family))},
         {"method", std::string(to_string(c.method))},
         {"random_sets", c.random_sets},
         {"m", c.m},
         {"control", c.control},
         {"as_set", c.as_set},
         {"output", c.output},
         {"format", c.format},
         {"deterministic", c.deterministic},
         {"threads", c.threads}};
  j["corpus"] = c.corpus ? to_json(*c.corpus) : Json(nullptr);
  return j;
}

ExperimentConfig experiment_config_from_json(const Json& j) {
  if (!j.is_object()) throw UsageError("config must be a JSON object");
  ExperimentConfig c;
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string& key = it.key();
    const Json& v = it.value();
    try {
      if (key == "command") c.command = v.get<std::string>();
      else if (key == "selector") c.selector = v.get<std::string>();
      else if (key == "inputs") c.inputs = v.get<std::vector<std::string>>();
      else if (key == "params") c.params = params_from_json(v);
      else if (key == "depth") c.depth = v.get<int>();
      else if (key == "n") c.dim = v.get<int>();
      else if (key == "samples") c.samples = v.get<std::size_t>();
      else if (key == "seed") c.seed = v.get<std::uint64_t>();
      else if (key == "kind") c.kind = v.get<std::string>();
      else if (key == "depths") c.depths = v.get<std::vector<int>>();
      else if (key == "family") c.family = parse_window_family(v.get<std::string>());
      else if (key == "method") c.method = parse_riesz_method(v.get<std::string>());
      else if (key == "random_sets") c.random_sets = v.get<std::size_t>();
      else if (key == "m") c.m = v.get<int>();
      else if (key == "control") c.control = v.get<bool>();
      else if (key == "as_set") c.as_set = v.get<bool>();
      else if (key == "output") c.output = v.get<std::string>();
      else if (key == "format") c.format = v.get<std::string>();
      else if (key == "deterministic") c.deterministic = v.get<bool>();
      else if (key == "threads") c.threads = v.get<unsigned>();
      else if (key == "corpus") {
        if (!v.is_null()) c.corpus = corpus_from_json(v);
      } else {
        throw UsageError("unknown config field '" + key + "'");
      }
    } catch (const Json::exception&) {
      throw UsageError("config field '" + key + "' has the wrong type");
    }
  }
  return c;
}

int run(const ExperimentConfig& config, std::ostream& out, std::ostream& err) {
  Outcome o;
  try {
    o = dispatch(config);
    if (!config.output.empty()) write_text_file(config.output, o.report);
  } catch (const std::invalid_argument& e) {  // ParameterError, ShapeError
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::length_error& e) {  // CapacityError
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Json::exception& e) {
    err << "error: malformed JSON: " << e.what() << '\n';
    return kExitUsage;
  }
  out << o.summary << '\n';
  return o.code;
}

}  // namespace choquet
