#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>

#include "choquet/content.hpp"
#include "choquet/errors.hpp"
#include "choquet/inequalities.hpp"
#include "choquet/norms.hpp"
#include "choquet/operators.hpp"

namespace choquet {

bool holds_with_slack(double lhs, double rhs, double constant, double slack) {
  const double scale = std::max({std::abs(lhs), std::abs(rhs), 1.0});
  return lhs <= constant * rhs + slack * scale;
}

namespace {

constexpr std::array<std::string_view, 15> kCheckIds = {
    "power_embedding",        "chebyshev",
    "weak_embedding",         "kolmogorov",
    "kolmogorov_lorentz",     "kolmogorov_lorentz_mid",
    "weak_morrey_domination", "morrey_weak_bound",
    "morrey_lp_identity",     "morrey_weak_embedding",
    "morrey_inclusion",       "morrey_dimension_embedding",
    "pointwise_power",        "lorentz_weak_identity",
    "lorentz_lp_identity",
};

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

std::string describe(const DyadicCube& q) {
  std::string s = "cube level " + std::to_string(q.level) + " index [" + std::to_string(q.index[0]);
  if (q.dim == 2) s += ", " + std::to_string(q.index[1]);
  return s + "]";
}

double ratio_of(double lhs, double rhs) {
  if (rhs > 0.0) return lhs / rhs;
  return lhs == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
}

CheckResult finish(CheckResult r, double lhs, double rhs, double constant) {
  r.lhs = lhs;
  r.rhs = rhs;
  r.constant = constant;
  r.ratio = ratio_of(lhs, rhs);
  r.pass = holds_with_slack(lhs, rhs, constant);
  return r;
}

CheckResult finish_identity(CheckResult r, double lhs, double rhs) {
  r.lhs = lhs;
  r.rhs = rhs;
  r.constant = 1.0;
  r.ratio = ratio_of(lhs, rhs);
  r.pass = holds_with_slack(lhs, rhs, 1.0) && holds_with_slack(rhs, lhs, 1.0);
  return r;
}

struct Exponents {
  const ParamSet& ps;
  int dim;
  double n() const { return static_cast<double>(dim); }
  double d() const {
    const double d = ps.get("d");
    require(d > 0.0 && d <= n(), "d must satisfy 0 < d <= n");
    return d;
  }
  double positive(const char* name) const {
    const double v = ps.get(name);
    require(v > 0.0, std::string(name) + " must be > 0");
    return v;
  }
  double theta(double d) const {
    const double t = ps.get("theta");
    require(t >= 1.0 && t * d <= n() * (1.0 + 1e-12), "theta must satisfy 1 <= theta <= n/d");
    return t;
  }
};

// H(E)^{1/p-1/q} (∫_E f^q dH^d)^{1/q}.
double local_lq(const GridFunction& f, const CellSet& e, double p, double q, double d) {
  const double content = dyadic_content(e, d, false).value;
  require(content > 0.0, "set E must be nonempty");
  return std::pow(content, 1.0 / p - 1.0 / q) * lp_norm(restrict(f, e), q, d);
}

const CellSet& need_set(const CellSet* aux, std::string_view id) {
  if (aux == nullptr) throw UsageError("check " + std::string(id) + " needs a set E (aux)");
  return *aux;
}

}  // namespace

std::span<const std::string_view> explicit_check_ids() { return kCheckIds; }

bool check_needs_set(std::string_view id) {
  return id == "kolmogorov" || id == "kolmogorov_lorentz" || id == "kolmogorov_lorentz_mid";
}

double kolmogorov_constant_displayed(double p, double q) { return std::pow(q / (p - q), 1.0 / p); }

double kolmogorov_constant_sharp(double p, double q) { return std::pow(p / (p - q), 1.0 / q); }

double kolmogorov_lorentz_constant(double p, double q, double r) {
  const double k = std::isinf(r) ? 1.0 / (p - q)
                                 : std::pow((r - p) / (r * (p - q)), (r - p) / r);
  return kolmogorov_constant_sharp(p, q) * std::pow(k * (p - q), 1.0 / p);
}

CheckResult check_explicit(std::string_view id, const GridFunction& f, const CellSet* aux,
                           const ParamSet& params) {
  const Exponents ex{params, f.shape().dim};
  CheckResult r;
  r.check_id = std::string(id);
  r.params = params;

  if (id == "power_embedding") {
    const double d = ex.d();
    const double p = ex.positive("p");
    const double t = ex.theta(d);
    return finish(r, lp_norm(f, t * p, std::min(t * d, ex.n())), lp_norm(f, p, d),
                  std::pow(t, 1.0 / (t * p)));
  }
  if (id == "chebyshev") {
    const double d = ex.d();
    const double p = ex.positive("p");
    const auto profile = level_set_profile(f, d);
    return finish(r, weak_norm(profile, p), lp_norm(profile, p), 1.0);
  }
  if (id == "weak_embedding") {
    const double d = ex.d();
    const double p = ex.positive("p");
    const double t = ex.theta(d);
    return finish(r, weak_norm(f, t * p, std::min(t * d, ex.n())), weak_norm(f, p, d), 1.0);
  }
  if (id == "kolmogorov" || id == "kolmogorov_lorentz" || id == "kolmogorov_lorentz_mid") {
    const CellSet& e = need_set(aux, id);
    const double d = ex.d();
    const double p = ex.positive("p");
    const double q = ex.positive("q");
    require(q < p, "q must satisfy 0 < q < p");
    const double lhs = local_lq(f, e, p, q, d);
    const GridFunction fe = restrict(f, e);
    if (id == "kolmogorov") {
      r = finish(r, lhs, weak_norm(fe, p, d), kolmogorov_constant_displayed(p, q));
      const double sharp = kolmogorov_constant_sharp(p, q);
      r.note = "layer-cake constant (p/(p-q))^(1/q) = " + fmt(sharp) + ": " +
               (holds_with_slack(r.lhs, r.rhs, sharp) ? "holds" : "fails");
      return r;
    }
    const double rr = params.get("r");
    if (id == "kolmogorov_lorentz") {
      require(rr > p, "r must satisfy p < r <= inf");
      return finish(r, lhs, lorentz_norm(fe, p, rr, d), kolmogorov_lorentz_constant(p, q, rr));
    }
    require(q <= rr && rr <= p, "r must satisfy q <= r <= p");
    r = finish(r, lhs, lorentz_norm(fe, p, rr, d),
               std::pow(2.0, 1.0 / q) * std::pow(q, 1.0 / rr));
    r.note = "right side uses L^{p,r}; the displayed statement names L^{p,q}";
    return r;
  }
  if (id == "weak_morrey_domination") {
    const double d = ex.d();
    const double q = ex.positive("q");
    const double p = ex.positive("p");
    const double rr = ex.positive("r");
    require(q < p && p <= rr, "exponents must satisfy 0 < q < p <= r");
    const auto lhs = morrey_norm_detail(f, rr, q, d);
    r = finish(r, lhs.value, morrey_weak_norm(f, rr, p, d), kolmogorov_constant_sharp(p, q));
    r.witness = describe(lhs.cube);
    return r;
  }
  if (id == "morrey_weak_bound") {
    const double d = ex.d();
    const double p = ex.positive("p");
    const double rr = ex.positive("r");
    require(p <= rr, "p must satisfy p <= r");
    const auto lhs = morrey_weak_norm_detail(f, rr, p, d);
    r = finish(r, lhs.value, morrey_norm(f, rr, p, d), 1.0);
    r.witness = describe(lhs.cube);
    return r;
  }
  if (id == "morrey_lp_identity") {
    const double d = ex.d();
    const double p = ex.positive("p");
    return finish_identity(r, morrey_norm(f, p, p, d), lp_norm(f, p, d));
  }
  if (id == "morrey_weak_embedding") {
    const double d = ex.d();
    const double p = ex.positive("p");
    const double q = ex.positive("q");
    require(q < p, "q must satisfy 0 < q < p");
    const auto lhs = morrey_norm_detail(f, p, q, d);
    r = finish(r, lhs.value, weak_norm(f, p, d), kolmogorov_constant_sharp(p, q));
    r.witness = describe(lhs.cube);
    return r;
  }
  if (id == "morrey_inclusion") {
    const double d = ex.d();
    const double p = ex.positive("p");
    const double q = ex.positive("q");
    const double rr = ex.positive("r");
    require(q <= rr && rr <= p, "exponents must satisfy 0 < q <= r <= p");
    const auto lhs = morrey_norm_detail(f, p, q, d);
    r = finish(r, lhs.value, morrey_norm(f, p, rr, d), 1.0);
    r.witness = describe(lhs.cube);
    return r;
  }
  if (id == "morrey_dimension_embedding") {
    const double d = ex.d();
    const double p = ex.positive("p");
    const double q = ex.positive("q");
    require(q <= p, "q must satisfy q <= p");
    const double t = ex.theta(d);
    const auto lhs = morrey_norm_detail(f, t * p, t * q, std::min(t * d, ex.n()));
    r = finish(r, lhs.value, morrey_norm(f, p, q, d), std::pow(t, 1.0 / (t * q)));
    r.witness = describe(lhs.cube);
    return r;
  }
  if (id == "pointwise_power") {
    const double alpha = params.get("alpha");
    const double p = params.get("p");
    require(p >= 1.0, "p must satisfy p >= 1");
    require(alpha >= 0.0 && alpha * p < ex.n(), "alpha must satisfy 0 <= alpha, alpha*p < n");
    const GridFunction m1 = fractional_maximal(f, alpha);
    const GridFunction m2 = fractional_maximal(f.power(p), alpha * p);
    std::size_t worst = 0;
    double worst_excess = -std::numeric_limits<double>::infinity();
    bool all = true;
    for (std::size_t i = 0; i < f.size(); ++i) {
      const double lhs = std::pow(m1[i], p);
      const double rhs = m2[i];
      const double scale = std::max({lhs, rhs, 1.0});
      // Per-cell tolerance 1e-12 relative; the inequality is Jensen per window.
      if (!holds_with_slack(lhs, rhs, 1.0, 1e-12)) all = false;
      const double excess = (lhs - rhs) / scale;
      if (excess > worst_excess) {
        worst_excess = excess;
        worst = i;
      }
    }
    const double lhs = std::pow(m1[worst], p);
    r = finish(r, lhs, m2[worst], 1.0);
    r.pass = all;
    r.witness = "cell " + std::to_string(worst);
    return r;
  }
  if (id == "lorentz_weak_identity") {
    const double d = ex.d();
    const double p = ex.positive("p");
    const auto profile = level_set_profile(f, d);
    return finish_identity(r, lorentz_norm(profile, p, std::numeric_limits<double>::infinity()),
                           weak_norm(profile, p));
  }
  if (id == "lorentz_lp_identity") {
    const double d = ex.d();
    const double p = ex.positive("p");
    const auto profile = level_set_profile(f, d);
    return finish_identity(r, lorentz_norm(profile, p, p) * std::pow(p, 1.0 / p),
                           lp_norm(profile, p));
  }
  throw UsageError("unknown check '" + std::string(id) + "'");
}

std::vector<CellSet> random_set_batch(std::uint64_t seed, std::size_t count, GridShape shape) {
  Rng rng(seed);
  std::vector<CellSet> sets;
  sets.reserve(count);
  for (std::size_t i = 0; i < count; ++i) sets.push_back(random_cell_set(rng, shape));
  return sets;
}

WeakNormFormula check_weak_norm_formula(const GridFunction& f, double p, double q, double d,
                                        std::span<const CellSet> random_sets) {
  validate_content_dimension(d, f.shape().dim);
  require(p > 0.0 && q > 0.0 && q < p, "exponents must satisfy 0 < q < p");
  WeakNormFormula out;
  const auto profile = level_set_profile(f, d);
  out.weak = weak_norm(profile, p);

  // Level sets E_k = {f ≥ v_k}: ∫_{E_k} f^q = v_k^q c_k + Σ_{j>k} (v_j^q - v_{j-1}^q) c_j.
  const std::size_t m = profile.size();
  double tail = 0.0;
  for (std::size_t k = m; k-- > 0;) {
    const double vq = std::pow(profile.thresholds[k], q);
    const double integral = vq * profile.contents[k] + tail;
    const double value =
        std::pow(profile.contents[k], 1.0 / p - 1.0 / q) * std::pow(integral, 1.0 / q);
    if (value >= out.level_sup) {
      out.level_sup = value;
      out.threshold = profile.thresholds[k];
    }
    if (k > 0) tail += (vq - std::pow(profile.thresholds[k - 1], q)) * profile.contents[k];
  }
  for (const auto& e : random_sets) {
    if (e.is_empty()) continue;
    out.random_sup = std::max(out.random_sup, local_lq(f, e, p, q, d));
  }
  out.sup = std::max(out.level_sup, out.random_sup);

  const double displayed = kolmogorov_constant_displayed(p, q);
  out.sharp_constant = kolmogorov_constant_sharp(p, q);
  out.lower_pass = holds_with_slack(out.weak, out.level_sup, 1.0);
  out.upper_pass = holds_with_slack(out.sup, out.weak, displayed);
  out.sharp_upper_pass = holds_with_slack(out.sup, out.weak, out.sharp_constant);

  CheckResult& r = out.result;
  r.check_id = "weak_norm_formula";
  r.params.p = p;
  r.params.q = q;
  r.params.d = d;
  r.lhs = out.sup;
  r.rhs = out.weak;
  r.constant = displayed;
  r.ratio = ratio_of(out.sup, out.weak);
  r.pass = out.lower_pass && out.upper_pass;
  r.witness = "level-set sup " + fmt(out.level_sup) + " at threshold " + fmt(out.threshold) +
              "; random-set sup " + fmt(out.random_sup) + " over " +
              std::to_string(random_sets.size()) + " sets";
  r.note = std::string("lower bound ") + (out.lower_pass ? "holds" : "fails") +
           "; upper bound with (q/(p-q))^(1/p) " + (out.upper_pass ? "holds" : "fails") +
           "; with (p/(p-q))^(1/q) = " + fmt(out.sharp_constant) + " " +
           (out.sharp_upper_pass ? "holds" : "fails");
  return out;
}

}  // namespace choquet
