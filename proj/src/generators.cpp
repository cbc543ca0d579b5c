#include "choquet/generators.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "choquet/errors.hpp"

namespace choquet {

GeneratorKind parse_generator_kind(std::string_view name) {
  if (name == "random_step") return GeneratorKind::random_step;
  if (name == "cantor") return GeneratorKind::cantor;
  if (name == "spike") return GeneratorKind::spike;
  if (name == "power_law") return GeneratorKind::power_law;
  throw ParameterError("kind must be one of random_step, cantor, spike, power_law (got '" +
                       std::string(name) + "')");
}

std::string_view to_string(GeneratorKind kind) {
  switch (kind) {
    case GeneratorKind::random_step: return "random_step";
    case GeneratorKind::cantor: return "cantor";
    case GeneratorKind::spike: return "spike";
    case GeneratorKind::power_law: return "power_law";
  }
  return "random_step";
}

void validate(const GeneratorSpec& spec) {
  switch (spec.kind) {
    case GeneratorKind::random_step:
      if (!(spec.low >= 0.0) || !(spec.high >= spec.low) || !std::isfinite(spec.high)) {
        throw ParameterError("random_step needs 0 <= low <= high");
      }
      if (spec.piece_level < 0) throw ParameterError("piece_level must be >= 0");
      if (!(spec.zero_fraction >= 0.0 && spec.zero_fraction <= 1.0)) {
        throw ParameterError("zero_fraction must be in [0, 1]");
      }
      break;
    case GeneratorKind::cantor:
      if (spec.keep.empty()) throw ParameterError("cantor keep pattern must be nonempty");
      for (int k : spec.keep) {
        if (k < 0 || k > 3) throw ParameterError("cantor keep entries must be in 0..3");
      }
      if (spec.cantor_depth != -1 && (spec.cantor_depth < 0 || spec.cantor_depth % 2 != 0)) {
        throw ParameterError("cantor_depth must be even (or -1 for the grid depth)");
      }
      if (!(spec.height >= 0.0) || !std::isfinite(spec.height)) {
        throw ParameterError("height must be finite and non-negative");
      }
      break;
    case GeneratorKind::spike:
      if (spec.spike_height != -1.0 && !(spec.spike_height >= 0.0)) {
        throw ParameterError("spike height must be non-negative");
      }
      break;
    case GeneratorKind::power_law:
      if (!(spec.exponent >= 0.0)) throw ParameterError("power_law exponent must be >= 0");
      if (spec.cutoff != -1.0 && !(spec.cutoff > 0.0)) {
        throw ParameterError("power_law cutoff must be > 0");
      }
      break;
  }
}

namespace {

std::vector<bool> cantor_1d(const std::vector<int>& keep, int depth, int grid_depth) {
  // Intervals at the current depth as a bitmap over 2^depth_so_far cells.
  std::vector<bool> cur{true};
  for (int level = 0; level < depth; level += 2) {
    std::vector<bool> next(cur.size() * 4, false);
    for (std::size_t i = 0; i < cur.size(); ++i) {
      if (!cur[i]) continue;
      for (int k : keep) next[4 * i + static_cast<std::size_t>(k)] = true;
    }
    cur = std::move(next);
  }
  const std::size_t up = std::size_t{1} << (grid_depth - depth);
  std::vector<bool> out(cur.size() * up, false);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = cur[i / up];
  return out;
}

}  // namespace

CellSet generate_cantor_set(const GeneratorSpec& spec, GridShape shape) {
  validate(spec);
  shape.validate();
  int depth = spec.cantor_depth == -1 ? shape.depth : spec.cantor_depth;
  depth = std::min(depth, shape.depth);
  depth -= depth % 2;
  const auto line = cantor_1d(spec.keep, depth, shape.depth);
  CellSet set(shape);
  const std::size_t side = shape.side();
  for (std::size_t i = 0; i < set.size(); ++i) {
    const bool in = shape.dim == 1 ? line[i] : (line[i / side] && line[i % side]);
    if (in) set.insert(i);
  }
  return set;
}

GridFunction generate(const GeneratorSpec& spec, std::uint64_t seed, GridShape shape) {
  validate(spec);
  shape.validate();
  Rng rng(seed);
  GridFunction f(shape);
  const std::size_t side = shape.side();
  switch (spec.kind) {
    case GeneratorKind::random_step: {
      const int level = std::min(spec.piece_level, shape.depth);
      const std::size_t pieces = std::size_t{1} << (shape.dim * level);
      std::vector<double> value(pieces);
      for (auto& v : value) {
        const bool zero = rng.chance(spec.zero_fraction);
        const double x = rng.uniform(spec.low, spec.high);
        v = zero ? 0.0 : x;
      }
      const int shift = shape.depth - level;
      for (std::size_t i = 0; i < f.size(); ++i) {
        std::size_t piece;
        if (shape.dim == 1) {
          piece = i >> shift;
        } else {
          piece = ((i / side) >> shift << level) + ((i % side) >> shift);
        }
        f.set(i, value[piece]);
      }
      break;
    }
    case GeneratorKind::cantor:
      f = GridFunction::indicator(generate_cantor_set(spec, shape), spec.height);
      break;
    case GeneratorKind::spike: {
      if (spec.location >= f.size()) throw ParameterError("spike location out of range");
      const int level = spec.width_level == -1 ? shape.depth : std::min(spec.width_level, shape.depth);
      const double height = spec.spike_height == -1.0
                                ? std::exp2(static_cast<double>(shape.dim * level))
                                : spec.spike_height;
      const int shift = shape.depth - level;
      DyadicCube q{shape.dim, level, {0, 0}};
      if (shape.dim == 1) {
        q.index[0] = static_cast<std::uint32_t>(spec.location >> shift);
      } else {
        q.index[0] = static_cast<std::uint32_t>((spec.location / side) >> shift);
        q.index[1] = static_cast<std::uint32_t>((spec.location % side) >> shift);
      }
      f = GridFunction::indicator(CellSet::from_cube(shape, q), height);
      break;
    }
    case GeneratorKind::power_law: {
      const double cutoff =
          spec.cutoff == -1.0 ? std::exp2(static_cast<double>(shape.depth)) : spec.cutoff;
      for (std::size_t i = 0; i < f.size(); ++i) {
        const auto x = cell_center(shape, i);
        const double r = shape.dim == 1 ? x[0] : std::hypot(x[0], x[1]);
        f.set(i, std::min(std::pow(r, -spec.exponent), cutoff));
      }
      break;
    }
  }
  return f;
}

DyadicCube random_cube(Rng& rng, int dim, int min_level, int max_level) {
  const int level =
      min_level + static_cast<int>(rng.below(static_cast<std::uint64_t>(max_level - min_level + 1)));
  const std::size_t count = std::size_t{1} << (dim * level);
  return DyadicCube::from_flat(dim, level, rng.below(count));
}

CellSet random_cell_set(Rng& rng, GridShape shape) {
  CellSet set(shape);
  const std::size_t n = set.size();
  switch (rng.below(3)) {
    case 0: {
      const double density = rng.uniform(0.05, 0.9);
      for (std::size_t i = 0; i < n; ++i) {
        if (rng.chance(density)) set.insert(i);
      }
      break;
    }
    case 1: {
      const int cubes = 1 + static_cast<int>(rng.below(4));
      for (int c = 0; c < cubes; ++c) {
        const DyadicCube q = random_cube(rng, shape.dim, 0, shape.depth);
        set = set.united(CellSet::from_cube(shape, q));
      }
      break;
    }
    default: {
      const std::size_t a = rng.below(n);
      const std::size_t len = 1 + rng.below(n - a);
      for (std::size_t i = a; i < a + len; ++i) set.insert(i);
      break;
    }
  }
  if (set.is_empty()) set.insert(rng.below(n));
  return set;
}

}  // namespace choquet
