#pragma once

// Layer-cake integrals against dyadic content and the norm family built on
// them. For a step function every level set {f > t} equals {f ≥ v_k} for t
// in [v_{k-1}, v_k), so all integrals reduce to finite sums over the
// distinct positive values v_1 < … < v_m and the contents c_k of their
// upper level sets.

#include <cstddef>
#include <vector>

#include "choquet/content.hpp"
#include "choquet/grid.hpp"

namespace choquet {

struct LevelSetProfile {
  double d = 0.0;
  std::vector<double> thresholds;  // ascending, positive, distinct
  std::vector<double> contents;    // content of {f ≥ thresholds[k]}, non-increasing

  std::size_t size() const { return thresholds.size(); }
};

/// Contents of all upper level sets. Cells are switched on in decreasing
/// order of value, so the whole profile costs O(N·L) after sorting.
LevelSetProfile level_set_profile(const GridFunction& f, double d);

/// ∫ f dH^d = Σ (v_k - v_{k-1}) c_k.
double choquet_integral(const LevelSetProfile& profile);
double choquet_integral(const GridFunction& f, double d);

/// (∫ f^p dH^d)^{1/p}.
double lp_norm(const LevelSetProfile& profile, double p);
double lp_norm(const GridFunction& f, double p, double d);

/// sup_t t·H^d({f > t})^{1/p} = max_k v_k c_k^{1/p}.
double weak_norm(const LevelSetProfile& profile, double p);
double weak_norm(const GridFunction& f, double p, double d);

/// Index k attaining the weak norm (size() when f ≡ 0).
std::size_t weak_norm_argmax(const LevelSetProfile& profile, double p);

/// Lorentz quasinorm L^{p,r}; r = +inf gives the weak norm.
double lorentz_norm(const LevelSetProfile& profile, double p, double r);
double lorentz_norm(const GridFunction& f, double p, double r, double d);

struct CubeSupremum {
  double value = 0.0;
  DyadicCube cube;  // first maximizer in level order (coarsest)
};

/// sup over dyadic Q of ℓ(Q)^{d/p - d/q} (∫_Q f^q dH^d)^{1/q}, 0 < q ≤ p.
CubeSupremum morrey_norm_detail(const GridFunction& f, double p, double q, double d);
double morrey_norm(const GridFunction& f, double p, double q, double d);

/// sup over dyadic Q of ℓ(Q)^{d/r - d/p} ‖f χ_Q‖_{wL^p(H^d)}, 0 < p ≤ r.
CubeSupremum morrey_weak_norm_detail(const GridFunction& f, double r, double p, double d);
double morrey_weak_norm(const GridFunction& f, double r, double p, double d);

}  // namespace choquet
