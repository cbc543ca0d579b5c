#pragma once

// Executable verdicts for inequalities between the norms and operators:
// explicit-constant checks (pass/fail with a fixed slack), empirical
// constant sweeps for bounds that hold only up to an unspecified constant,
// and two counterexample demonstrations.

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "choquet/generators.hpp"
#include "choquet/grid.hpp"
#include "choquet/params.hpp"

namespace choquet {

/// Additive slack, scaled by max(lhs, rhs, 1).
inline constexpr double kCheckSlack = 1e-9;

struct CheckResult {
  std::string check_id;
  ParamSet params;
  double lhs = 0.0;
  double rhs = 0.0;
  double constant = 1.0;
  double ratio = 0.0;  // lhs / rhs; 0 when both vanish, +inf when only rhs does
  bool pass = false;
  std::string witness;
  std::string note;
  std::uint64_t seed = 0;
};

/// lhs ≤ constant·rhs + slack·max(lhs, rhs, 1).
bool holds_with_slack(double lhs, double rhs, double constant, double slack = kCheckSlack);

/// Identifiers accepted by check_explicit.
std::span<const std::string_view> explicit_check_ids();
/// True when the check quantifies over a set E (aux required).
bool check_needs_set(std::string_view check_id);

/// Dispatches one explicit-constant inequality on (f, E). Throws
/// ParameterError naming the violated admissibility constraint.
///
///   power_embedding            ‖f‖_{L^{θp}(H^{θd})} ≤ θ^{1/(θp)} ‖f‖_{L^p(H^d)}, 1 ≤ θ ≤ n/d
///   chebyshev                  ‖f‖_{wL^p} ≤ ‖f‖_{L^p}
///   weak_embedding             ‖f‖_{wL^{θp}(H^{θd})} ≤ ‖f‖_{wL^p(H^d)}
///   kolmogorov                 H(E)^{1/p-1/q} ‖fχ_E‖_{L^q} ≤ (q/(p-q))^{1/p} ‖fχ_E‖_{wL^p}
///   kolmogorov_lorentz         same left side vs ‖fχ_E‖_{L^{p,r}}, p < r ≤ ∞
///   kolmogorov_lorentz_mid     same left side vs ‖fχ_E‖_{L^{p,r}}, q ≤ r ≤ p
///   weak_morrey_domination     ‖f‖_{M^r_q} ≤ C ‖f‖_{M^r_{p,∞}}, q < p ≤ r
///   morrey_weak_bound          ‖f‖_{M^r_{p,∞}} ≤ ‖f‖_{M^r_p}
///   morrey_lp_identity         ‖f‖_{M^p_p} = ‖f‖_{L^p}
///   morrey_weak_embedding      ‖f‖_{M^p_q} ≤ C ‖f‖_{wL^p}, q < p
///   morrey_inclusion           ‖f‖_{M^p_q} ≤ ‖f‖_{M^p_r}, q ≤ r ≤ p
///   morrey_dimension_embedding ‖f‖_{M^{θp}_{θq}(H^{θd})} ≤ θ^{1/(θq)} ‖f‖_{M^p_q(H^d)}
///   pointwise_power            (M_α f)^p ≤ M_{αp}(f^p) at every cell, p ≥ 1, αp < n
///   lorentz_weak_identity      ‖f‖_{L^{p,∞}} = ‖f‖_{wL^p}
///   lorentz_lp_identity        p^{1/p} ‖f‖_{L^{p,p}} = ‖f‖_{L^p}
///
/// Where only a ≲ bound is known, `constant` is the explicit constant that
/// the layer-cake argument yields (see kolmogorov_constant_sharp).
CheckResult check_explicit(std::string_view check_id, const GridFunction& f, const CellSet* aux,
                           const ParamSet& params);

/// Displayed constant of the weak-norm formula, (q/(p-q))^{1/p}.
double kolmogorov_constant_displayed(double p, double q);
/// Constant produced by optimizing the layer-cake cutoff exactly,
/// (p/(p-q))^{1/q}; attained in the limit by truncated power functions.
double kolmogorov_constant_sharp(double p, double q);
/// Optimized-cutoff constant against L^{p,r}, p < r ≤ ∞.
double kolmogorov_lorentz_constant(double p, double q, double r);

struct WeakNormFormula {
  CheckResult result;       // lhs = S, rhs = weak norm, constant = displayed
  double weak = 0.0;
  double level_sup = 0.0;   // sup over upper level sets {f ≥ v_k}
  double threshold = 0.0;   // v_k attaining level_sup
  double random_sup = 0.0;  // sup over the random batch
  double sup = 0.0;         // S = max(level_sup, random_sup)
  bool lower_pass = false;  // weak ≤ level_sup
  bool upper_pass = false;  // S ≤ displayed constant · weak
  double sharp_constant = 0.0;
  bool sharp_upper_pass = false;  // S ≤ sharp constant · weak
};

/// Sandwich weak ≤ S ≤ C·weak for S = sup_E H(E)^{1/p-1/q} ‖fχ_E‖_{L^q},
/// with E ranging over the level sets of f and the given random sets.
WeakNormFormula check_weak_norm_formula(const GridFunction& f, double p, double q, double d,
                                        std::span<const CellSet> random_sets);

/// Batch of random sets for the weak-norm formula.
std::vector<CellSet> random_set_batch(std::uint64_t seed, std::size_t count, GridShape shape);

// ---------------------------------------------------------------------------
// Empirical constants.

struct CorpusSpec {
  std::vector<GeneratorSpec> generators;  // sample i uses generators[i % size]
  std::size_t count = 0;
  std::uint64_t seed = 0;
  int dim = 1;

  friend bool operator==(const CorpusSpec&, const CorpusSpec&) = default;
};

/// Mixed corpus of coarse random steps, Cantor indicators, unit-mass spikes
/// and truncated power laws, all fixed at resolution 2^-6 or coarser so the
/// same sample index describes the same function at every depth ≥ 6.
CorpusSpec standard_corpus(std::size_t count, std::uint64_t seed, int dim = 1);

struct RatioSample {
  std::string theorem_id;
  int depth = 0;
  std::size_t index = 0;
  std::uint64_t seed = 0;
  std::string kind;
  double ratio = 0.0;
};

struct ConstantEstimate {
  std::string theorem_id;
  ParamSet params;
  std::size_t samples = 0;               // ratios actually evaluated
  std::optional<double> max_ratio;       // absent when every sample was skipped
  std::string argmax;
  std::map<int, std::optional<double>> per_level;
  std::vector<RatioSample> rows;         // ordered by (index, depth)
};

/// Identifiers accepted by estimate_constant.
std::span<const std::string_view> theorem_ids();

/// Ratios lhs/rhs of a ≲ bound over the corpus at each depth. Samples with
/// rhs = 0 are skipped. Never a pass/fail verdict.
///
///   maximal_weak            ‖M_α f‖_{wL^q(H^{d-αr})} / ‖f‖_{wL^p(H^d)}, d/n ≤ r < p < d/α
///   riesz_weak              ‖I_α f‖_{wL^q(H^{d-αr})} / ‖f‖_{wL^p(H^d)}, 0<d<n, d/n < r < p < d/α
///   riesz_strong            ‖I_α f‖_{L^q(H^{d-αr})} / ‖f‖_{L^p(H^d)}, same
///   maximal_morrey          ‖M_α f‖_{M^q_r(H^{d-αr})} / ‖f‖_{M^p_r(H^d)}, d/n < r ≤ p < d/α
///   riesz_morrey            ‖I_α f‖_{M^q_r(H^{d-αr})} / ‖f‖_{M^p_r(H^d)}, 0<d<n, r < p
///     (all five with (d-αr)/q = (d-αp)/p; q is solved when unset)
///   maximal_strong          ‖M_α f‖_{L^p(H^{d-αp})} / ‖f‖_{L^p(H^d)}, d/n < p < d/α
///   maximal_endpoint        ‖M_α f‖_{wL^{d/n}(H^{d-αd/n})} / ‖f‖_{L^{d/n}(H^d)}
///   hl_weak_endpoint        ‖M f‖_{wL^{d/n}(H^d)} / ‖f‖_{L^{d/n}(H^d)}, 0 < d < n
///   hl_strong               ‖M f‖_{L^p(H^d)} / ‖f‖_{L^p(H^d)}, p > d/n
///   maximal_weak_offdiag    ‖M_α f‖_{wL^q(H^δ)} / ‖f‖_{wL^p(H^d)}, q > p, δ/q = d/p - α
///   maximal_morrey_offdiag  ‖M_α f‖_{M^q_s(H^δ)} / ‖f‖_{M^p_r(H^d)},
///                           δ/q = d/p - α, δ/s = d/r - α
///   riesz_morrey_offdiag    ‖I_α f‖_{M^q_s(H^d)} / ‖f‖_{M^p_r(H^d)},
///                           1/q = 1/p - α/d, s/q = r/p
///   testing_maximal         ‖M_α χ_Q‖_{L^q(H^δ)} / ‖χ_Q‖_{L^p(H^d)} over random
///                           dyadic cubes Q, δ = d - αp
///   hedberg                 max_x |I_α f(x)| / hedberg rhs (the implicit constant)
ConstantEstimate estimate_constant(std::string_view theorem_id, const CorpusSpec& corpus,
                                   const ParamSet& params, std::span<const int> depths,
                                   unsigned threads = 0);

// ---------------------------------------------------------------------------
// Demonstrations.

struct NonadditivityReport {
  int m = 0;
  double d = 0.0;
  double sum = 0.0;    // Σ_j ∫_{Q_j} 1 dH^d over the 2^m equal subintervals
  double whole = 0.0;  // ∫_{[0,1)} 1 dH^d
  double ratio = 0.0;
};

/// Splitting [0,1) into 2^m dyadic intervals multiplies the Choquet
/// integral of f ≡ 1 by 2^{m(1-d)}. depth -1 means L = m.
NonadditivityReport nonadditivity_demo(int m, double d, int depth = -1);

struct DivergenceReport {
  double alpha = 0.0;
  bool control = false;
  std::vector<int> levels;
  std::vector<double> lhs;     // ‖M_α f_L‖_{wL^1(H^{1-α})}
  std::vector<double> rhs;     // ‖f_L‖_{wL^1(H^1)}
  std::vector<double> ratios;  // lhs / rhs
};

/// f_L = min(1/x, 2^L) at cell centers (f ≡ 1 when `control`), n = 1.
DivergenceReport divergence_demo(std::span<const int> levels, double alpha, bool control = false);

// ---------------------------------------------------------------------------

/// Worker count: CHOQUET_LAB_THREADS if set, else hardware concurrency.
unsigned worker_count(unsigned requested = 0);

}  // namespace choquet
