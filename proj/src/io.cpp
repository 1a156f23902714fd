#include "mcsm/io.hpp"

#include <algorithm>
#include <fstream>
#include <set>

#include "mcsm/errors.hpp"

namespace mcsm::io {
namespace {

const Json& member(const Json& doc, const char* key, const char* where) {
  if (!doc.is_object()) throw InputError(std::string(where) + ": expected a JSON object");
  auto it = doc.find(key);
  if (it == doc.end()) {
    throw InputError(std::string(where) + ": missing \"" + key + "\"");
  }
  return *it;
}

std::string string_of(const Json& value, const char* what) {
  if (!value.is_string()) throw InputError(std::string(what) + " must be a string");
  return value.get<std::string>();
}

std::string user_label(const Json& value, const char* what) {
  auto label = string_of(value, what);
  if (is_reserved_label(label)) {
    throw InputError(std::string(what) + " uses a reserved label (leading NUL)");
  }
  return label;
}

const Json& array_of(const Json& value, const char* what) {
  if (!value.is_array()) throw InputError(std::string(what) + " must be an array");
  return value;
}

EditCostTables::Entries cost_entries(const Json& table, const std::string& eps_name,
                                     const std::string& eps_label, const char* what) {
  if (!table.is_object()) throw InputError(std::string(what) + " must be an object");
  EditCostTables::Entries out;
  auto resolve = [&](const std::string& name) {
    if (name == eps_name) return eps_label;
    if (is_reserved_label(name)) {
      throw InputError(std::string(what) + " uses a reserved label (leading NUL)");
    }
    return name;
  };
  for (const auto& [key, value] : table.items()) {
    const auto bar = key.find('|');
    if (bar == std::string::npos || key.find('|', bar + 1) != std::string::npos) {
      throw InputError(std::string(what) + " key \"" + key + "\" is not of the form a|b");
    }
    const auto a = resolve(key.substr(0, bar));
    const auto b = resolve(key.substr(bar + 1));
    if (!out.emplace(std::pair{a, b}, rational_from_json(value)).second) {
      throw InputError(std::string(what) + " key \"" + key + "\" given twice");
    }
  }
  return out;
}

}  // namespace

Json load_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw InputError(path.string() + ": " + e.what());
  }
}

Rational rational_from_json(const Json& value) {
  if (value.is_string()) return parse_rational(value.get<std::string>());
  if (value.is_number_integer()) return parse_rational(value.dump());
  throw InputError("expected a rational string, got " + value.dump());
}

FiniteMcsModel model_from_json(const Json& doc, bool close_order) {
  std::vector<std::string> elements;
  for (const auto& e : array_of(member(doc, "elements", "model"), "model elements")) {
    elements.push_back(string_of(e, "element id"));
  }
  std::vector<std::pair<std::string, std::string>> pairs;
  if (doc.contains("order")) {
    for (const auto& p : array_of(doc["order"], "model order")) {
      if (!p.is_array() || p.size() != 2) throw InputError("order pair must be [id, id]");
      pairs.emplace_back(string_of(p[0], "order id"), string_of(p[1], "order id"));
    }
  }
  const auto& size = member(doc, "size", "model");
  if (!size.is_object()) throw InputError("model size must be an object");
  std::vector<std::pair<std::string, Rational>> sizes;
  for (const auto& [id, value] : size.items()) sizes.emplace_back(id, rational_from_json(value));
  return FiniteMcsModel::from_pairs(std::move(elements), pairs, sizes, close_order);
}

Json model_to_json(const FiniteMcsModel& model) {
  Json doc = Json::object();
  doc["elements"] = model.elements();
  Json order = Json::array();
  Json size = Json::object();
  std::vector<ElementIndex> by_id(model.size());
  for (ElementIndex i = 0; i < model.size(); ++i) by_id[i] = i;
  std::sort(by_id.begin(), by_id.end(),
            [&](ElementIndex a, ElementIndex b) { return model.id(a) < model.id(b); });
  for (ElementIndex a : by_id) {
    for (ElementIndex b : by_id) {
      if (a != b && model.leq(a, b)) order.push_back(Json::array({model.id(a), model.id(b)}));
    }
    size[model.id(a)] = to_string(model.size_of(a));
  }
  doc["order"] = std::move(order);
  doc["size"] = std::move(size);
  return doc;
}

LabeledGraph graph_from_json(const Json& doc) {
  LabeledGraph g;
  for (const auto& v : array_of(member(doc, "vertices", "graph"), "graph vertices")) {
    g.add_vertex(string_of(member(v, "id", "vertex"), "vertex id"),
                 user_label(member(v, "label", "vertex"), "vertex label"));
  }
  if (doc.contains("edges")) {
    for (const auto& e : array_of(doc["edges"], "graph edges")) {
      g.add_edge(string_of(member(e, "u", "edge"), "edge endpoint"),
                 string_of(member(e, "v", "edge"), "edge endpoint"),
                 user_label(member(e, "label", "edge"), "edge label"));
    }
  }
  return g;
}

Json graph_to_json(const LabeledGraph& g) {
  Json vertices = Json::array();
  for (VertexIndex i = 0; i < g.vertex_count(); ++i) {
    vertices.push_back({{"id", g.vertex_id(i)}, {"label", g.vertex_label(i)}});
  }
  Json edges = Json::array();
  for (const auto& e : g.edges()) {
    edges.push_back({{"label", e.label}, {"u", g.vertex_id(e.u)}, {"v", g.vertex_id(e.v)}});
  }
  return Json{{"edges", std::move(edges)}, {"vertices", std::move(vertices)}};
}

MetricTable metric_table_from_json(const Json& doc) {
  MetricTable out;
  for (const auto& p : array_of(member(doc, "points", "metric space"), "points")) {
    out.points.push_back(user_label(p, "point id"));
  }
  const auto& rows = array_of(member(doc, "dist", "metric space"), "dist");
  if (rows.size() != out.points.size()) throw InputError("dist must have one row per point");
  for (const auto& row : rows) {
    if (!row.is_array() || row.size() != out.points.size()) {
      throw InputError("dist must be a square matrix");
    }
    for (const auto& v : row) out.dist.push_back(rational_from_json(v));
  }
  return out;
}

FiniteMetricSpace metric_space_from_json(const Json& doc) {
  auto table = metric_table_from_json(doc);
  return FiniteMetricSpace(std::move(table.points), std::move(table.dist));
}

EditCostTables costs_from_json(const Json& doc) {
  const auto eps_v = doc.contains("epsV") ? string_of(doc["epsV"], "epsV") : "epsV";
  const auto eps_e = doc.contains("epsE") ? string_of(doc["epsE"], "epsE") : "epsE";
  return EditCostTables::from_entries(
      cost_entries(member(doc, "vertexCost", "cost table"), eps_v, kEpsilonVertex, "vertexCost"),
      cost_entries(member(doc, "edgeCost", "cost table"), eps_e, kEpsilonEdge, "edgeCost"));
}

LabelWeighting weights_from_json(const Json& doc) {
  if (!doc.is_object()) throw InputError("weights must be an object {label: \"p/q\"}");
  LabelWeighting alpha;
  for (const auto& [label, value] : doc.items()) {
    if (is_reserved_label(label)) throw InputError("weights use a reserved label");
    alpha.set(label, rational_from_json(value));
  }
  return alpha;
}

Json report_to_json(const AxiomReport& report) {
  Json violations = Json::array();
  for (const auto& v : report.violations) {
    violations.push_back(
        {{"detail", v.detail}, {"tag", std::string(to_string(v.tag))}, {"witness", v.witness}});
  }
  return Json{{"passed", report.passed()}, {"violations", std::move(violations)}};
}

std::vector<std::filesystem::path> list_graph_files(const std::filesystem::path& dir) {
  std::error_code ec;
  if (!std::filesystem::is_directory(dir, ec)) {
    throw InputError(dir.string() + " is not a directory");
  }
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json") {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end(),
            [](const auto& a, const auto& b) { return a.filename() < b.filename(); });
  return files;
}

}  // namespace mcsm::io
