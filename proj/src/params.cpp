#include "choquet/params.hpp"

#include <algorithm>
#include <cmath>

#include "choquet/errors.hpp"

namespace choquet {
namespace {

template <typename Self>
auto* field(Self& ps, std::string_view name) {
  if (name == "d") return &ps.d;
  if (name == "delta") return &ps.delta;
  if (name == "p") return &ps.p;
  if (name == "q") return &ps.q;
  if (name == "r") return &ps.r;
  if (name == "s") return &ps.s;
  if (name == "alpha") return &ps.alpha;
  if (name == "beta") return &ps.beta;
  if (name == "theta") return &ps.theta;
  throw ParameterError("unknown parameter '" + std::string(name) + "'");
}

}  // namespace

std::optional<double> ParamSet::find(std::string_view name) const { return *field(*this, name); }

double ParamSet::get(std::string_view name) const {
  const auto v = find(name);
  if (!v) throw ParameterError("parameter '" + std::string(name) + "' is required");
  return *v;
}

void ParamSet::set(std::string_view name, double value) { *field(*this, name) = value; }

void require(bool ok, const std::string& message) {
  if (!ok) throw ParameterError(message);
}

bool exponents_match(double a, double b, double rel) {
  return std::abs(a - b) <= rel * std::max({std::abs(a), std::abs(b), 1.0});
}

}  // namespace choquet
