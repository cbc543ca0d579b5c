#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

#include "choquet/grid.hpp"
#include "choquet/rng.hpp"

namespace choquet {

enum class GeneratorKind { random_step, cantor, spike, power_law };

GeneratorKind parse_generator_kind(std::string_view name);
std::string_view to_string(GeneratorKind kind);

/// Deterministic test-function families. Every family is defined on a
/// resolution-independent scale (coarse pieces, fixed Cantor depth, fixed
/// spike width) unless a parameter ties it to the grid depth, so the same
/// seed at two depths yields the same function sampled twice.
struct GeneratorSpec {
  GeneratorKind kind = GeneratorKind::random_step;

  // random_step: i.i.d. uniform values on the dyadic cubes of piece_level,
  // each zeroed with probability zero_fraction.
  double low = 0.0;
  double high = 1.0;
  int piece_level = 5;
  double zero_fraction = 0.25;

  // cantor: keep the listed quarters (of 4) of every kept interval, once
  // per double level, to cantor_depth (-1: largest even depth ≤ L). In 2D
  // the product set C×C. Function value `height` on the set.
  std::vector<int> keep = {0, 3};
  int cantor_depth = -1;
  double height = 1.0;

  // spike: `spike_height` on the level-`width_level` dyadic cube holding
  // cell `location`. Defaults: width_level = L, unit mass.
  double spike_height = -1.0;
  std::size_t location = 0;
  int width_level = -1;

  // power_law: min(|x|^{-exponent}, cutoff) at cell centers; cutoff
  // defaults to 2^L.
  double exponent = 1.0;
  double cutoff = -1.0;

  friend bool operator==(const GeneratorSpec&, const GeneratorSpec&) = default;
};

/// Throws ParameterError on an invalid spec.
void validate(const GeneratorSpec& spec);

GridFunction generate(const GeneratorSpec& spec, std::uint64_t seed, GridShape shape);

/// The Cantor-type set of a cantor spec.
CellSet generate_cantor_set(const GeneratorSpec& spec, GridShape shape);

/// Nonempty random set: scattered cells, a union of dyadic cubes, or a
/// random run of cells, chosen at random.
CellSet random_cell_set(Rng& rng, GridShape shape);

/// Random dyadic cube of level in [min_level, max_level].
DyadicCube random_cube(Rng& rng, int dim, int min_level, int max_level);

}  // namespace choquet
