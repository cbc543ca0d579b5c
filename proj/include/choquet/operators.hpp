#pragma once

// Fractional maximal operator and Riesz potential on grid functions
// (f extended by zero outside [0,1)^n), and the Hedberg-type pointwise bound
// for the Riesz potential.

#include <cstddef>
#include <string_view>
#include <vector>

#include "choquet/grid.hpp"
#include "choquet/params.hpp"

namespace choquet {

enum class WindowFamily {
  grid_aligned,  // every cube with corners and side on the 2^-L lattice
  dyadic,        // tree cubes only
};

enum class RieszMethod { direct, fast };

WindowFamily parse_window_family(std::string_view name);
RieszMethod parse_riesz_method(std::string_view name);
std::string_view to_string(WindowFamily family);
std::string_view to_string(RieszMethod method);

/// M_α f at every cell center: max over family cubes Q containing the
/// cell of ℓ(Q)^{α-n} ∫_Q f. Window integrals come from compensated prefix
/// sums, so every candidate is accurate to a few ulps of its own size.
/// Throws ParameterError unless 0 ≤ α < n.
GridFunction fractional_maximal(const GridFunction& f, double alpha,
                                WindowFamily family = WindowFamily::grid_aligned);

/// I_α f at every cell center: Σ_j w_ij f_j with w_ij = |x_i - y_j|^{α-n} h^n
/// off the diagonal and the exact kernel integral over the cell (1D) or an
/// equal-area disc (2D) on it. `fast` uses FFT convolution of the same
/// weights. Throws ParameterError unless 0 < α < n.
GridFunction riesz_potential(const GridFunction& f, double alpha,
                             RieszMethod method = RieszMethod::direct);

/// Self-cell weight of the discrete Riesz kernel.
double riesz_self_weight(const GridShape& shape, double alpha);

struct HedbergTerms {
  double rhs = 0.0;      // (d/p-α)^{p/q-1} (α-β)^{-p/q} N^{1-p/q} M_β f(x)^{p/q}
  double near = 0.0;     // r^{α-β} M_β f(x) / (α-β) at the balance radius
  double far = 0.0;      // r^{α-d/p} N / (d/p-α) at the balance radius
  double radius = 0.0;   // balance radius (0 when degenerate)
  double maximal = 0.0;  // M_β f(x)
  bool degenerate = false;  // M_β f(x) = 0 or N = 0
};

struct HedbergBound {
  double morrey = 0.0;  // N = ‖f‖_{M^p_{d/n}(H^d)}
  double q = 0.0;
  std::vector<HedbergTerms> cells;
};

/// Validates 0 ≤ β < α < n, d/n ≤ p < q, αp < d and
/// (d - βp)/q = (d - αp)/p. When params.q is unset it is solved from the
/// balance equation.
double hedberg_exponent_q(const ParamSet& params, int dim);

/// Right side of the Hedberg-type bound at every cell.
HedbergBound hedberg_bound(const GridFunction& f, const ParamSet& params);

/// Same at one cell.
HedbergTerms hedberg_rhs(const GridFunction& f, std::size_t cell, const ParamSet& params);

namespace reference {

/// Grid-aligned M_α f via one monotone-deque sliding maximum per window
/// size. Independent route used to check the sweep kernel.
GridFunction fractional_maximal_by_size(const GridFunction& f, double alpha);

/// Exhaustive enumeration of grid-aligned windows (small grids only).
GridFunction fractional_maximal_brute(const GridFunction& f, double alpha);

}  // namespace reference

}  // namespace choquet
