#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace choquet {

/// Exponent tuple. Each check or experiment reads the fields it needs and
/// validates its own admissibility constraints.
struct ParamSet {
  std::optional<double> d;
  std::optional<double> delta;
  std::optional<double> p;
  std::optional<double> q;
  std::optional<double> r;
  std::optional<double> s;
  std::optional<double> alpha;
  std::optional<double> beta;
  std::optional<double> theta;

  /// Value of a named field; ParameterError if unset. r accepts +inf.
  double get(std::string_view name) const;
  std::optional<double> find(std::string_view name) const;
  void set(std::string_view name, double value);

  friend bool operator==(const ParamSet&, const ParamSet&) = default;
};

/// Throws ParameterError carrying `message` unless `ok`.
void require(bool ok, const std::string& message);

/// Relative equality used for the balance equations between exponents.
bool exponents_match(double a, double b, double rel = 1e-9);

}  // namespace choquet
