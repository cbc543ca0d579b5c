#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <optional>
#include <string>
#include <thread>

#include "choquet/errors.hpp"
#include "choquet/inequalities.hpp"
#include "choquet/norms.hpp"
#include "choquet/operators.hpp"

namespace choquet {

namespace {

// Corpus functions are drawn at this depth and refined, so one sample index
// names one function at every depth ≥ kBaseDepth.
constexpr int kBaseDepth = 6;

constexpr std::array<std::string_view, 14> kTheoremIds = {
    "maximal_weak",         "riesz_weak",          "riesz_strong",
    "maximal_morrey",       "riesz_morrey",        "maximal_strong",
    "maximal_endpoint",     "hl_weak_endpoint",    "hl_strong",
    "maximal_weak_offdiag", "maximal_morrey_offdiag", "riesz_morrey_offdiag",
    "testing_maximal",      "hedberg",
};

GridFunction refine(const GridFunction& coarse, int depth) {
  const GridShape from = coarse.shape();
  const GridShape to{from.dim, depth};
  if (depth == from.depth) return coarse;
  const int shift = depth - from.depth;
  const std::size_t side = to.side();
  std::vector<double> values(to.cells());
  for (std::size_t i = 0; i < values.size(); ++i) {
    std::size_t j;
    if (to.dim == 1) {
      j = i >> shift;
    } else {
      j = ((i / side) >> shift) * from.side() + ((i % side) >> shift);
    }
    values[i] = coarse[j];
  }
  return GridFunction(to, std::move(values));
}

// Exponents after admissibility checks and solving the balance equations.
struct Resolved {
  double n = 1, d = 0, p = 0, q = 0, r = 0, s = 0, alpha = 0, beta = 0, delta = 0;
};

struct Pair {
  double lhs = 0.0;
  double rhs = 0.0;
};

double solve_or_match(const ParamSet& ps, std::string_view name, double value,
                      const std::string& relation) {
  if (auto given = ps.find(name)) {
    require(exponents_match(*given, value),
            "exponents must satisfy " + relation + " (" + std::string(name) + "=" +
                std::to_string(value) + " expected)");
    return *given;
  }
  return value;
}

double alpha_bound(const Resolved& e) {
  return e.alpha > 0.0 ? e.d / e.alpha : std::numeric_limits<double>::infinity();
}

void require_dimension(const Resolved& e, bool strict_upper) {
  require(e.d > 0.0 && (strict_upper ? e.d < e.n : e.d <= e.n),
          strict_upper ? "d must satisfy 0 < d < n" : "d must satisfy 0 < d <= n");
}

Resolved resolve(std::string_view id, const ParamSet& ps, int dim) {
  Resolved e;
  e.n = dim;
  auto alpha_in = [&](bool positive) {
    e.alpha = ps.get("alpha");
    require((positive ? e.alpha > 0.0 : e.alpha >= 0.0) && e.alpha < e.n,
            positive ? "alpha must satisfy 0 < alpha < n" : "alpha must satisfy 0 <= alpha < n");
  };
  const std::string balance = "(d - alpha*r)/q = (d - alpha*p)/p";

  if (id == "maximal_weak" || id == "riesz_weak" || id == "riesz_strong" ||
      id == "maximal_morrey" || id == "riesz_morrey") {
    const bool riesz = id.starts_with("riesz");
    e.d = ps.get("d");
    require_dimension(e, riesz);
    alpha_in(riesz);
    e.r = ps.get("r");
    e.p = ps.get("p");
    const double lo = e.d / e.n;
    if (id == "maximal_weak") {
      require(lo <= e.r && e.r < e.p && e.p < alpha_bound(e), "need d/n <= r < p < d/alpha");
    } else if (id == "maximal_morrey") {
      require(lo < e.r && e.r <= e.p && e.p < alpha_bound(e), "need d/n < r <= p < d/alpha");
    } else {
      require(lo < e.r && e.r < e.p && e.p < alpha_bound(e), "need d/n < r < p < d/alpha");
    }
    e.delta = e.d - e.alpha * e.r;
    e.q = solve_or_match(ps, "q", e.p * e.delta / (e.d - e.alpha * e.p), balance);
    return e;
  }
  if (id == "maximal_strong") {
    e.d = ps.get("d");
    require_dimension(e, false);
    alpha_in(false);
    e.p = ps.get("p");
    require(e.d / e.n < e.p && e.p < alpha_bound(e), "need d/n < p < d/alpha");
    e.delta = e.d - e.alpha * e.p;
    return e;
  }
  if (id == "maximal_endpoint") {
    e.d = ps.get("d");
    require_dimension(e, false);
    alpha_in(false);
    e.p = e.d / e.n;
    e.delta = e.d - e.alpha * e.p;
    return e;
  }
  if (id == "hl_weak_endpoint" || id == "hl_strong") {
    e.d = ps.get("d");
    require_dimension(e, true);
    if (id == "hl_weak_endpoint") {
      e.p = e.d / e.n;
    } else {
      e.p = ps.get("p");
      require(e.p > e.d / e.n, "p must satisfy p > d/n");
    }
    e.delta = e.d;
    return e;
  }
  if (id == "maximal_weak_offdiag") {
    e.d = ps.get("d");
    require_dimension(e, true);
    alpha_in(false);
    e.p = ps.get("p");
    require(e.d / e.n < e.p && e.p < alpha_bound(e), "need d/n < p < d/alpha");
    const double gap = e.d / e.p - e.alpha;
    if (ps.q) {
      e.q = *ps.q;
      e.delta = solve_or_match(ps, "delta", e.q * gap, "delta/q = d/p - alpha");
    } else {
      e.delta = ps.get("delta");
      e.q = e.delta / gap;
    }
    require(e.q > e.p, "q must satisfy q > p");
    require(e.delta > 0.0 && e.delta < e.n, "delta must satisfy 0 < delta < n");
    return e;
  }
  if (id == "maximal_morrey_offdiag") {
    e.d = ps.get("d");
    require_dimension(e, false);
    alpha_in(false);
    e.r = ps.get("r");
    e.p = ps.get("p");
    require(e.d / e.n < e.r && e.r <= e.p && e.p < alpha_bound(e), "need d/n < r <= p < d/alpha");
    const double gap = e.d / e.p - e.alpha;
    if (ps.q) {
      e.q = *ps.q;
      e.delta = solve_or_match(ps, "delta", e.q * gap, "delta/q = d/p - alpha");
    } else {
      e.delta = ps.get("delta");
      e.q = e.delta / gap;
    }
    e.s = solve_or_match(ps, "s", e.delta / (e.d / e.r - e.alpha), "delta/s = d/r - alpha");
    require(e.q >= e.p, "q must satisfy q >= p");
    require(e.s >= e.r, "s must satisfy s >= r");
    require(e.delta > 0.0 && e.delta <= e.n, "delta must satisfy 0 < delta <= n");
    require(e.delta >= e.d - e.alpha * e.r * (1.0 + 1e-12), "delta must satisfy delta >= d - alpha*r");
    return e;
  }
  if (id == "riesz_morrey_offdiag") {
    e.d = ps.get("d");
    require_dimension(e, false);
    alpha_in(true);
    e.r = ps.get("r");
    e.p = ps.get("p");
    require(e.d / e.n < e.r && e.r <= e.p, "need d/n < r <= p");
    require(e.alpha * e.p < e.d, "need alpha*p < d so that q is finite");
    e.q = solve_or_match(ps, "q", 1.0 / (1.0 / e.p - e.alpha / e.d), "1/q = 1/p - alpha/d");
    e.s = solve_or_match(ps, "s", e.r * e.q / e.p, "s/q = r/p");
    e.delta = e.d;
    return e;
  }
  if (id == "testing_maximal") {
    e.d = ps.get("d");
    require_dimension(e, true);
    alpha_in(false);
    e.p = ps.get("p");
    require(e.p > 0.0 && e.p <= 1.0, "p must satisfy 0 < p <= 1");
    e.delta = ps.delta ? *ps.delta : e.d - e.alpha * e.p;
    require(e.delta > 0.0 && e.delta < e.n, "delta must satisfy 0 < delta < n");
    e.q = ps.q ? *ps.q : e.p;
    require(e.q >= e.p, "q must satisfy q >= p");
    return e;
  }
  if (id == "hedberg") {
    e.q = hedberg_exponent_q(ps, dim);
    e.d = ps.get("d");
    e.p = ps.get("p");
    e.alpha = ps.get("alpha");
    e.beta = ps.get("beta");
    return e;
  }
  throw UsageError("unknown theorem '" + std::string(id) + "'");
}

void store(ParamSet& out, const Resolved& e, std::string_view id) {
  out.d = e.d;
  out.p = e.p;
  if (e.q > 0.0) out.q = e.q;
  if (e.r > 0.0) out.r = e.r;
  if (e.s > 0.0) out.s = e.s;
  if (id != "hedberg") out.delta = e.delta;
  if (e.alpha > 0.0 || out.alpha) out.alpha = e.alpha;
  if (id == "hedberg") out.beta = e.beta;
}

Pair evaluate(std::string_view id, const Resolved& e, const GridFunction& f) {
  if (id == "maximal_weak") {
    return {weak_norm(fractional_maximal(f, e.alpha), e.q, e.delta), weak_norm(f, e.p, e.d)};
  }
  if (id == "riesz_weak") {
    return {weak_norm(riesz_potential(f, e.alpha), e.q, e.delta), weak_norm(f, e.p, e.d)};
  }
  if (id == "riesz_strong") {
    return {lp_norm(riesz_potential(f, e.alpha), e.q, e.delta), lp_norm(f, e.p, e.d)};
  }
  if (id == "maximal_morrey") {
    return {morrey_norm(fractional_maximal(f, e.alpha), e.q, e.r, e.delta),
            morrey_norm(f, e.p, e.r, e.d)};
  }
  if (id == "riesz_morrey") {
    return {morrey_norm(riesz_potential(f, e.alpha), e.q, e.r, e.delta),
            morrey_norm(f, e.p, e.r, e.d)};
  }
  if (id == "maximal_strong") {
    return {lp_norm(fractional_maximal(f, e.alpha), e.p, e.delta), lp_norm(f, e.p, e.d)};
  }
  if (id == "maximal_endpoint") {
    return {weak_norm(fractional_maximal(f, e.alpha), e.p, e.delta), lp_norm(f, e.p, e.d)};
  }
  if (id == "hl_weak_endpoint") {
    return {weak_norm(fractional_maximal(f, 0.0), e.p, e.d), lp_norm(f, e.p, e.d)};
  }
  if (id == "hl_strong") {
    return {lp_norm(fractional_maximal(f, 0.0), e.p, e.d), lp_norm(f, e.p, e.d)};
  }
  if (id == "maximal_weak_offdiag") {
    return {weak_norm(fractional_maximal(f, e.alpha), e.q, e.delta), weak_norm(f, e.p, e.d)};
  }
  if (id == "maximal_morrey_offdiag") {
    return {morrey_norm(fractional_maximal(f, e.alpha), e.q, e.s, e.delta),
            morrey_norm(f, e.p, e.r, e.d)};
  }
  if (id == "riesz_morrey_offdiag") {
    return {morrey_norm(riesz_potential(f, e.alpha), e.q, e.s, e.d),
            morrey_norm(f, e.p, e.r, e.d)};
  }
  throw UsageError("unknown theorem '" + std::string(id) + "'");
}

struct Slot {
  std::optional<double> ratio;
  std::string kind;
};

std::optional<double> ratio_or_skip(const Pair& pair) {
  if (!(pair.rhs > 0.0)) return std::nullopt;
  return pair.lhs / pair.rhs;
}

Slot run_sample(std::string_view id, const Resolved& e, const CorpusSpec& corpus,
                std::size_t index, int depth, const ParamSet& params) {
  const std::uint64_t seed = sample_seed(corpus.seed, index);
  const GridShape shape{corpus.dim, depth};
  Slot slot;
  if (id == "testing_maximal") {
    Rng rng(seed);
    const DyadicCube cube = random_cube(rng, corpus.dim, 0, std::min(kBaseDepth, depth));
    const GridFunction chi = GridFunction::indicator(CellSet::from_cube(shape, cube));
    const double lhs = lp_norm(fractional_maximal(chi, e.alpha), e.q, e.delta);
    // ‖χ_Q‖_{L^p(H^d)} = ℓ(Q)^{d/p}.
    slot.ratio = ratio_or_skip({lhs, std::exp2(-cube.level * e.d / e.p)});
    slot.kind = "cube level " + std::to_string(cube.level) + " index " +
                std::to_string(cube.flat());
    return slot;
  }
  const GeneratorSpec& spec = corpus.generators[index % corpus.generators.size()];
  slot.kind = std::string(to_string(spec.kind));
  const GridFunction f =
      refine(generate(spec, seed, GridShape{corpus.dim, std::min(kBaseDepth, depth)}), depth);
  if (id == "hedberg") {
    const HedbergBound bound = hedberg_bound(f, params);
    const GridFunction potential = riesz_potential(f, e.alpha);
    std::optional<double> worst;
    for (std::size_t i = 0; i < f.size(); ++i) {
      const HedbergTerms& t = bound.cells[i];
      if (t.degenerate || !(t.rhs > 0.0)) continue;
      const double ratio = potential[i] / t.rhs;
      if (!worst || ratio > *worst) worst = ratio;
    }
    slot.ratio = worst;
    return slot;
  }
  slot.ratio = ratio_or_skip(evaluate(id, e, f));
  return slot;
}

}  // namespace

std::span<const std::string_view> theorem_ids() { return kTheoremIds; }

CorpusSpec standard_corpus(std::size_t count, std::uint64_t seed, int dim) {
  CorpusSpec c;
  c.count = count;
  c.seed = seed;
  c.dim = dim;

  GeneratorSpec step;
  step.kind = GeneratorKind::random_step;
  GeneratorSpec coarse_step = step;
  coarse_step.piece_level = 3;
  coarse_step.zero_fraction = 0.5;
  coarse_step.high = 4.0;

  GeneratorSpec cantor;
  cantor.kind = GeneratorKind::cantor;
  GeneratorSpec cantor_mid = cantor;
  cantor_mid.keep = {1, 2};
  cantor_mid.height = 2.0;

  GeneratorSpec spike;
  spike.kind = GeneratorKind::spike;
  GeneratorSpec spike_wide = spike;
  spike_wide.width_level = 3;
  spike_wide.location = (std::size_t{1} << (dim * kBaseDepth)) / 3;

  GeneratorSpec power;
  power.kind = GeneratorKind::power_law;
  power.exponent = 0.5;
  GeneratorSpec power_steep = power;
  power_steep.exponent = 1.0;

  c.generators = {step, cantor, spike, power, coarse_step, cantor_mid, spike_wide, power_steep};
  return c;
}

unsigned worker_count(unsigned requested) {
  unsigned n = requested != 0 ? requested : std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("CHOQUET_LAB_THREADS")) {
    char* end = nullptr;
    const long cap = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && cap > 0) n = std::min<unsigned>(n, static_cast<unsigned>(cap));
  }
  return std::max(1u, n);
}

ConstantEstimate estimate_constant(std::string_view theorem_id, const CorpusSpec& corpus,
                                   const ParamSet& params, std::span<const int> depths,
                                   unsigned threads) {
  if (corpus.count == 0) throw UsageError("corpus is empty (count = 0)");
  if (theorem_id != "testing_maximal" && corpus.generators.empty()) {
    throw UsageError("corpus has no generators");
  }
  if (depths.empty()) throw UsageError("no depths configured");
  for (const auto& g : corpus.generators) validate(g);
  for (int depth : depths) GridShape{corpus.dim, depth}.validate();
  const Resolved e = resolve(theorem_id, params, corpus.dim);

  ConstantEstimate out;
  out.theorem_id = std::string(theorem_id);
  out.params = params;
  store(out.params, e, theorem_id);

  const std::size_t jobs = corpus.count * depths.size();
  std::vector<Slot> slots(jobs);
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t j = next++; j < jobs; j = next++) {
      slots[j] = run_sample(theorem_id, e, corpus, j / depths.size(), depths[j % depths.size()],
                            params);
    }
  };
  const unsigned workers =
      static_cast<unsigned>(std::min<std::size_t>(worker_count(threads), jobs));
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
  }

  for (int depth : depths) out.per_level[depth] = std::nullopt;
  for (std::size_t j = 0; j < jobs; ++j) {
    const std::size_t index = j / depths.size();
    const int depth = depths[j % depths.size()];
    const Slot& s = slots[j];
    if (!s.ratio) continue;
    ++out.samples;
    RatioSample row{out.theorem_id, depth, index, sample_seed(corpus.seed, index), s.kind,
                    *s.ratio};
    auto& level = out.per_level[depth];
    if (!level || *s.ratio > *level) level = *s.ratio;
    if (!out.max_ratio || *s.ratio > *out.max_ratio) {
      out.max_ratio = *s.ratio;
      out.argmax = "sample " + std::to_string(index) + " (" + s.kind + ", seed " +
                   std::to_string(row.seed) + ") at L=" + std::to_string(depth);
    }
    out.rows.push_back(std::move(row));
  }
  return out;
}

}  // namespace choquet
