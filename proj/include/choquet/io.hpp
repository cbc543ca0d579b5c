#pragma once

// JSON and CSV forms of grids, parameters and reports. Doubles are written
// in shortest round-trip form, so save → load is bit-exact; infinities are
// written as the strings "inf" / "-inf".

#include <span>
#include <string>
#include <vector>

#include "json.hpp"

#include "choquet/content.hpp"
#include "choquet/generators.hpp"
#include "choquet/grid.hpp"
#include "choquet/inequalities.hpp"
#include "choquet/params.hpp"

namespace choquet {

using Json = nlohmann::json;

Json to_json(const CellSet& set);
Json to_json(const GridFunction& f);
Json to_json(std::span<const DyadicCube> witness);
Json to_json(const ParamSet& params);
Json to_json(const CheckResult& result);
Json to_json(const WeakNormFormula& formula);
Json to_json(const ConstantEstimate& estimate);
Json to_json(const NonadditivityReport& report);
Json to_json(const DivergenceReport& report);
Json to_json(const GeneratorSpec& spec);
Json to_json(const CorpusSpec& corpus);

/// Parsers throw UsageError naming the offending field, ShapeError on a
/// length mismatch and ParameterError on invalid values.
CellSet cell_set_from_json(const Json& j);
GridFunction grid_function_from_json(const Json& j);
std::vector<DyadicCube> witness_from_json(const Json& j);
ParamSet params_from_json(const Json& j);
CheckResult check_result_from_json(const Json& j);
ConstantEstimate constant_estimate_from_json(const Json& j);
GeneratorSpec generator_spec_from_json(const Json& j);
CorpusSpec corpus_from_json(const Json& j);

/// Number or "inf"/"-inf".
Json number_to_json(double v);
double number_from_json(const Json& j, const std::string& field);

/// Ratio table with columns check_id, L, seed, ratio, ordered as given.
/// Unless deterministic, the first line is a "# generated <UTC time>" comment.
std::string ratio_csv(std::span<const RatioSample> rows, bool deterministic);

Json read_json_file(const std::string& path);
/// Writes atomically (temporary file, then rename).
void write_text_file(const std::string& path, const std::string& text);

CellSet load_cell_set(const std::string& path);
GridFunction load_grid_function(const std::string& path);

}  // namespace choquet
