#include <cmath>
#include <string>

#include "choquet/errors.hpp"
#include "choquet/norms.hpp"
#include "choquet/operators.hpp"

namespace choquet {

double hedberg_exponent_q(const ParamSet& params, int dim) {
  const double n = static_cast<double>(dim);
  const double d = params.get("d");
  const double p = params.get("p");
  const double alpha = params.get("alpha");
  const double beta = params.get("beta");
  require(d > 0.0 && d <= n, "d must satisfy 0 < d <= n");
  require(beta >= 0.0 && beta < alpha && alpha < n, "need 0 <= beta < alpha < n");
  require(p >= d / n, "p must satisfy p >= d/n");
  require(alpha * p < d, "need alpha*p < d so that d/p - alpha > 0");
  const double q = p * (d - beta * p) / (d - alpha * p);
  if (params.q) {
    require(*params.q > p, "q must satisfy q > p (p = q excluded)");
    require(exponents_match(*params.q, q),
            "exponents must satisfy (d - beta*p)/q = (d - alpha*p)/p (q=" +
                std::to_string(q) + " expected)");
    return *params.q;
  }
  return q;
}

HedbergBound hedberg_bound(const GridFunction& f, const ParamSet& params) {
  const int dim = f.shape().dim;
  const double q = hedberg_exponent_q(params, dim);
  const double d = params.get("d");
  const double p = params.get("p");
  const double alpha = params.get("alpha");
  const double beta = params.get("beta");
  const double gap_far = d / p - alpha;
  const double gap_near = alpha - beta;
  const double ratio = p / q;

  HedbergBound out;
  out.q = q;
  out.morrey = morrey_norm(f, p, d / static_cast<double>(dim), d);
  const GridFunction maximal = fractional_maximal(f, beta, WindowFamily::grid_aligned);
  out.cells.resize(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    HedbergTerms& t = out.cells[i];
    t.maximal = maximal[i];
    if (t.maximal == 0.0 || out.morrey == 0.0) {
      t.degenerate = true;
      continue;
    }
    t.rhs = std::pow(gap_far, ratio - 1.0) * std::pow(gap_near, -ratio) *
            std::pow(out.morrey, 1.0 - ratio) * std::pow(t.maximal, ratio);
    // Balance of r^{α-β} M/(α-β) against r^{α-d/p} N/(d/p-α).
    t.radius = std::pow(out.morrey * gap_near / (gap_far * t.maximal), 1.0 / (d / p - beta));
    t.near = std::pow(t.radius, gap_near) * t.maximal / gap_near;
    t.far = std::pow(t.radius, -gap_far) * out.morrey / gap_far;
  }
  return out;
}

HedbergTerms hedberg_rhs(const GridFunction& f, std::size_t cell, const ParamSet& params) {
  if (cell >= f.size()) throw ShapeError("cell index out of range");
  return hedberg_bound(f, params).cells[cell];
}

}  // namespace choquet
