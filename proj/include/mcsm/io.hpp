#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"
#include "mcsm/core_model.hpp"
#include "mcsm/ged.hpp"
#include "mcsm/graph.hpp"
#include "mcsm/mcs.hpp"
#include "mcsm/metric_space.hpp"
#include "mcsm/rational.hpp"

namespace mcsm::io {

using Json = nlohmann::json;  // std::map-backed: keys serialize sorted

/// Reads and parses a JSON file. Throws InputError on I/O or syntax errors.
Json load_json_file(const std::filesystem::path& path);

/// Accepts "p/q", "n" or a JSON integer.
Rational rational_from_json(const Json& value);
inline Json rational_to_json(const Rational& value) { return to_string(value); }

/// {"elements":[id...], "order":[[id,id]...], "size":{id:"p/q"}}.
FiniteMcsModel model_from_json(const Json& doc, bool close_order = false);
Json model_to_json(const FiniteMcsModel& model);

/// {"vertices":[{"id","label"}...], "edges":[{"u","v","label"}...]}.
/// Reserved (NUL-prefixed) labels, loops and duplicate edges are rejected.
LabeledGraph graph_from_json(const Json& doc);
Json graph_to_json(const LabeledGraph& g);

struct MetricTable {
  std::vector<std::string> points;
  std::vector<Rational> dist;  // row-major
};

/// {"points":[id...], "dist":[["p/q"...]...]} read without metric validation.
MetricTable metric_table_from_json(const Json& doc);

/// The same document, validated as a metric.
FiniteMetricSpace metric_space_from_json(const Json& doc);

/// {"epsV":name, "epsE":name, "vertexCost":{"a|b":"p/q"}, "edgeCost":{...}}.
/// The names given for epsV/epsE stand for the padding labels in keys.
EditCostTables costs_from_json(const Json& doc);

/// {label: "p/q"}.
LabelWeighting weights_from_json(const Json& doc);

Json report_to_json(const AxiomReport& report);

/// Graph files (*.json) in a directory, sorted by file name.
std::vector<std::filesystem::path> list_graph_files(const std::filesystem::path& dir);

}  // namespace mcsm::io
