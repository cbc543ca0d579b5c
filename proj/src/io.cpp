#include "choquet/io.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <limits>
#include <sstream>

#include "choquet/errors.hpp"

namespace choquet {

namespace {

constexpr std::string_view kParamNames[] = {"d", "delta", "p", "q", "r",
                                            "s", "alpha", "beta", "theta"};

const Json& field(const Json& j, const std::string& name) {
  if (!j.is_object()) throw UsageError("expected a JSON object holding '" + name + "'");
  const auto it = j.find(name);
  if (it == j.end()) throw UsageError("missing field '" + name + "'");
  return *it;
}

template <typename T>
T integer_field(const Json& j, const std::string& name) {
  const Json& v = field(j, name);
  if (!v.is_number_integer()) throw UsageError("field '" + name + "' must be an integer");
  return v.get<T>();
}

std::string string_field(const Json& j, const std::string& name) {
  const Json& v = field(j, name);
  if (!v.is_string()) throw UsageError("field '" + name + "' must be a string");
  return v.get<std::string>();
}

GridShape shape_from_json(const Json& j) {
  GridShape shape{integer_field<int>(j, "n"), integer_field<int>(j, "L")};
  shape.validate();
  return shape;
}

Json optional_number(const std::optional<double>& v) {
  return v ? number_to_json(*v) : Json(nullptr);
}

std::optional<double> optional_from_json(const Json& j, const std::string& name) {
  if (j.is_null()) return std::nullopt;
  return number_from_json(j, name);
}

Json row_to_json(const RatioSample& r) {
  return Json{{"theorem_id", r.theorem_id}, {"L", r.depth}, {"index", r.index},
              {"seed", r.seed}, {"kind", r.kind}, {"ratio", number_to_json(r.ratio)}};
}

}  // namespace

Json number_to_json(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

double number_from_json(const Json& j, const std::string& name) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
  }
  throw UsageError("field '" + name + "' must be a number");
}

Json to_json(const CellSet& set) {
  Json cells = Json::array();
  for (std::size_t i = 0; i < set.size(); ++i) cells.push_back(set.contains(i) ? 1 : 0);
  return Json{{"n", set.shape().dim}, {"L", set.shape().depth}, {"cells", std::move(cells)}};
}

CellSet cell_set_from_json(const Json& j) {
  const GridShape shape = shape_from_json(j);
  const Json& cells = field(j, "cells");
  if (!cells.is_array()) throw UsageError("field 'cells' must be an array");
  if (cells.size() != shape.cells()) {
    throw ShapeError("field 'cells' has " + std::to_string(cells.size()) + " entries, expected " +
                     std::to_string(shape.cells()));
  }
  std::vector<std::uint8_t> occupancy(cells.size());
  for (std::size_t i = 0; i < cells.size(); ++i) {
    const Json& c = cells[i];
    if (!c.is_number_integer() || (c.get<int>() != 0 && c.get<int>() != 1)) {
      throw UsageError("field 'cells' entry " + std::to_string(i) + " must be 0 or 1");
    }
    occupancy[i] = static_cast<std::uint8_t>(c.get<int>());
  }
  return CellSet(shape, std::move(occupancy));
}

Json to_json(const GridFunction& f) {
  return Json{{"n", f.shape().dim}, {"L", f.shape().depth}, {"values", f.values()}};
}

GridFunction grid_function_from_json(const Json& j) {
  const GridShape shape = shape_from_json(j);
  const Json& values = field(j, "values");
  if (!values.is_array()) throw UsageError("field 'values' must be an array");
  if (values.size() != shape.cells()) {
    throw ShapeError("field 'values' has " + std::to_string(values.size()) +
                     " entries, expected " + std::to_string(shape.cells()));
  }
  std::vector<double> v(values.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!values[i].is_number()) {
      throw UsageError("field 'values' entry " + std::to_string(i) + " must be a number");
    }
    v[i] = values[i].get<double>();
  }
  return GridFunction(shape, std::move(v));
}

Json to_json(std::span<const DyadicCube> witness) {
  Json out = Json::array();
  for (const auto& q : witness) {
    Json index = Json::array();
    for (int a = 0; a < q.dim; ++a) index.push_back(q.index[a]);
    out.push_back(Json{{"level", q.level}, {"index", std::move(index)}});
  }
  return out;
}

std::vector<DyadicCube> witness_from_json(const Json& j) {
  if (!j.is_array()) throw UsageError("witness must be an array");
  std::vector<DyadicCube> out;
  for (const auto& e : j) {
    const Json& index = field(e, "index");
    if (!index.is_array() || index.empty() || index.size() > 2) {
      throw UsageError("field 'index' must hold 1 or 2 integers");
    }
    DyadicCube q{static_cast<int>(index.size()), integer_field<int>(e, "level"), {0, 0}};
    for (std::size_t a = 0; a < index.size(); ++a) q.index[a] = index[a].get<std::uint32_t>();
    out.push_back(q);
  }
  return out;
}

Json to_json(const ParamSet& params) {
  Json out = Json::object();
  for (auto name : kParamNames) {
    if (auto v = params.find(name)) out[std::string(name)] = number_to_json(*v);
  }
  return out;
}

ParamSet params_from_json(const Json& j) {
  if (!j.is_object()) throw UsageError("params must be a JSON object");
  ParamSet out;
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool known = false;
    for (auto name : kParamNames) known = known || it.key() == name;
    if (!known) throw UsageError("unknown parameter '" + it.key() + "'");
    out.set(it.key(), number_from_json(it.value(), it.key()));
  }
  return out;
}

Json to_json(const CheckResult& r) {
  Json out{{"check_id", r.check_id},
           {"params", to_json(r.params)},
           {"lhs", number_to_json(r.lhs)},
           {"rhs", number_to_json(r.rhs)},
           {"constant", number_to_json(r.constant)},
           {"ratio", number_to_json(r.ratio)},
           {"pass", r.pass},
           {"witness", r.witness},
           {"seed", r.seed}};
  if (!r.note.empty()) out["note"] = r.note;
  return out;
}

CheckResult check_result_from_json(const Json& j) {
  CheckResult r;
  r.check_id = string_field(j, "check_id");
  r.params = params_from_json(field(j, "params"));
  r.lhs = number_from_json(field(j, "lhs"), "lhs");
  r.rhs = number_from_json(field(j, "rhs"), "rhs");
  r.constant = number_from_json(field(j, "constant"), "constant");
  r.ratio = number_from_json(field(j, "ratio"), "ratio");
  const Json& pass = field(j, "pass");
  if (!pass.is_boolean()) throw UsageError("field 'pass' must be a boolean");
  r.pass = pass.get<bool>();
  r.witness = string_field(j, "witness");
  r.seed = integer_field<std::uint64_t>(j, "seed");
  if (j.contains("note")) r.note = string_field(j, "note");
  return r;
}

Json to_json(const WeakNormFormula& w) {
  Json out = to_json(w.result);
  out["weak"] = number_to_json(w.weak);
  out["level_sup"] = number_to_json(w.level_sup);
  out["threshold"] = number_to_json(w.threshold);
  out["random_sup"] = number_to_json(w.random_sup);
  out["lower_pass"] = w.lower_pass;
  out["upper_pass"] = w.upper_pass;
  out["sharp_constant"] = number_to_json(w.sharp_constant);
  out["sharp_upper_pass"] = w.sharp_upper_pass;
  return out;
}

Json to_json(const ConstantEstimate& e) {
  Json per_level = Json::object();
  for (const auto& [depth, ratio] : e.per_level) per_level[std::to_string(depth)] = optional_number(ratio);
  Json rows = Json::array();
  for (const auto& r : e.rows) rows.push_back(row_to_json(r));
  return Json{{"theorem_id", e.theorem_id},
              {"params", to_json(e.params)},
              {"samples", e.samples},
              {"max_ratio", optional_number(e.max_ratio)},
              {"argmax", e.argmax},
              {"per_level_ratios", std::move(per_level)},
              {"rows", std::move(rows)}};
}

ConstantEstimate constant_estimate_from_json(const Json& j) {
  ConstantEstimate e;
  e.theorem_id = string_field(j, "theorem_id");
  e.params = params_from_json(field(j, "params"));
  e.samples = integer_field<std::size_t>(j, "samples");
  e.max_ratio = optional_from_json(field(j, "max_ratio"), "max_ratio");
  e.argmax = string_field(j, "argmax");
  const Json& per_level = field(j, "per_level_ratios");
  if (!per_level.is_object()) throw UsageError("field 'per_level_ratios' must be an object");
  for (auto it = per_level.begin(); it != per_level.end(); ++it) {
    int depth = 0;
    try {
      depth = std::stoi(it.key());
    } catch (const std::exception&) {
      throw UsageError("field 'per_level_ratios' key '" + it.key() + "' is not a depth");
    }
    e.per_level[depth] = optional_from_json(it.value(), "per_level_ratios");
  }
  const Json& rows = field(j, "rows");
  if (!rows.is_array()) throw UsageError("field 'rows' must be an array");
  for (const auto& r : rows) {
    e.rows.push_back(RatioSample{string_field(r, "theorem_id"), integer_field<int>(r, "L"),
                                 integer_field<std::size_t>(r, "index"),
                                 integer_field<std::uint64_t>(r, "seed"), string_field(r, "kind"),
                                 number_from_json(field(r, "ratio"), "ratio")});
  }
  return e;
}

Json to_json(const NonadditivityReport& r) {
  return Json{{"demo", "nonadditivity"}, {"m", r.m},         {"d", r.d},
              {"sum", r.sum},            {"whole", r.whole}, {"ratio", r.ratio}};
}

Json to_json(const DivergenceReport& r) {
  return Json{{"demo", "divergence"}, {"alpha", r.alpha}, {"control", r.control},
              {"levels", r.levels},   {"lhs", r.lhs},     {"rhs", r.rhs},
              {"ratios", r.ratios}};
}

Json to_json(const GeneratorSpec& s) {
  return Json{{"kind", std::string(to_string(s.kind))},
              {"low", s.low},
              {"high", s.high},
              {"piece_level", s.piece_level},
              {"zero_fraction", s.zero_fraction},
              {"keep", s.keep},
              {"cantor_depth", s.cantor_depth},
              {"height", s.height},
              {"spike_height", s.spike_height},
              {"location", s.location},
              {"width_level", s.width_level},
              {"exponent", s.exponent},
              {"cutoff", s.cutoff}};
}

GeneratorSpec generator_spec_from_json(const Json& j) {
  GeneratorSpec s;
  s.kind = parse_generator_kind(string_field(j, "kind"));
  auto number = [&](const char* name, double& out) {
    if (j.contains(name)) out = number_from_json(j.at(name), name);
  };
  auto integer = [&](const char* name, auto& out) {
    if (j.contains(name)) out = integer_field<std::remove_reference_t<decltype(out)>>(j, name);
  };
  number("low", s.low);
  number("high", s.high);
  integer("piece_level", s.piece_level);
  number("zero_fraction", s.zero_fraction);
  if (j.contains("keep")) {
    const Json& keep = j.at("keep");
    if (!keep.is_array()) throw UsageError("field 'keep' must be an array");
    s.keep.clear();
    for (const auto& k : keep) {
      if (!k.is_number_integer()) throw UsageError("field 'keep' must hold integers");
      s.keep.push_back(k.get<int>());
    }
  }
  integer("cantor_depth", s.cantor_depth);
  number("height", s.height);
  number("spike_height", s.spike_height);
  integer("location", s.location);
  integer("width_level", s.width_level);
  number("exponent", s.exponent);
  number("cutoff", s.cutoff);
  validate(s);
  return s;
}

Json to_json(const CorpusSpec& c) {
  Json generators = Json::array();
  for (const auto& g : c.generators) generators.push_back(to_json(g));
  return Json{{"generators", std::move(generators)},
              {"count", c.count},
              {"seed", c.seed},
              {"n", c.dim}};
}

CorpusSpec corpus_from_json(const Json& j) {
  CorpusSpec c;
  const Json& generators = field(j, "generators");
  if (!generators.is_array()) throw UsageError("field 'generators' must be an array");
  for (const auto& g : generators) c.generators.push_back(generator_spec_from_json(g));
  c.count = integer_field<std::size_t>(j, "count");
  c.seed = integer_field<std::uint64_t>(j, "seed");
  c.dim = integer_field<int>(j, "n");
  return c;
}

std::string ratio_csv(std::span<const RatioSample> rows, bool deterministic) {
  std::ostringstream os;
  if (!deterministic) {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char stamp[32];
    std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", &tm);
    os << "# generated " << stamp << '\n';
  }
  os << "check_id,L,seed,ratio\n";
  for (const auto& r : rows) {
    // Same shortest round-trip form the JSON writer uses.
    os << r.theorem_id << ',' << r.depth << ',' << r.seed << ',' << Json(r.ratio).dump() << '\n';
  }
  return os.str();
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open input file '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw UsageError("malformed JSON in '" + path + "': " + e.what());
  }
}

void write_text_file(const std::string& path, const std::string& text) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw UsageError("cannot write output file '" + path + "'");
    out << text;
    out.flush();
    if (!out) throw UsageError("cannot write output file '" + path + "'");
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    std::remove(tmp.c_str());
    throw UsageError("cannot write output file '" + path + "'");
  }
}

CellSet load_cell_set(const std::string& path) { return cell_set_from_json(read_json_file(path)); }

GridFunction load_grid_function(const std::string& path) {
  return grid_function_from_json(read_json_file(path));
}

}  // namespace choquet
