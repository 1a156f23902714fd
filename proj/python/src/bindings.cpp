#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <vector>

#include "mcsm/errors.hpp"
#include "mcsm/ged.hpp"
#include "mcsm/io.hpp"
#include "mcsm/mcs.hpp"
#include "mcsm/metric_space.hpp"

namespace py = pybind11;
using mcsm::io::Json;

namespace {

// JSON text in, JSON text out; the Python package converts both ends.

struct Params {
  mcsm::McsParams params;
  mcsm::FiniteMcsModel vertex_model;
  mcsm::FiniteMcsModel edge_model;
};

void load_params(Params& out, mcsm::GraphModelKind kind, const std::string& alpha,
                 const std::string& vertex_model, const std::string& edge_model,
                 const std::vector<mcsm::LabeledGraph>& graphs) {
  if (kind == mcsm::GraphModelKind::E) {
    if (vertex_model.empty() || edge_model.empty())
      throw mcsm::InputError("kind E needs a vertex model and an edge model");
    out.vertex_model = mcsm::io::model_from_json(Json::parse(vertex_model));
    out.edge_model = mcsm::io::model_from_json(Json::parse(edge_model));
    out.params.models = {&out.vertex_model, &out.edge_model};
  } else if (alpha.empty()) {
    out.params.alpha = mcsm::LabelWeighting::uniform(graphs);
  } else {
    out.params.alpha = mcsm::io::weights_from_json(Json::parse(alpha));
  }
}

std::vector<mcsm::LabeledGraph> parse_graphs(const std::string& g1, const std::string& g2) {
  return {mcsm::io::graph_from_json(Json::parse(g1)), mcsm::io::graph_from_json(Json::parse(g2))};
}

Json ids_of(const mcsm::LabeledGraph& host, const mcsm::Embedding& emb) {
  Json out = Json::array();
  for (auto v : emb.vertex_map) out.push_back(host.vertex_id(v));
  return out;
}

std::string distance(const std::string& g1, const std::string& g2, const std::string& kind_text,
                     const std::string& metric_text, const std::string& alpha,
                     const std::string& vertex_model, const std::string& edge_model) {
  const auto graphs = parse_graphs(g1, g2);
  const auto kind = mcsm::parse_graph_model_kind(kind_text);
  Params p;
  load_params(p, kind, alpha, vertex_model, edge_model, graphs);
  const auto result = mcsm::mcs_solve(kind, graphs[0], graphs[1], p.params);
  const auto d = mcsm::metric_value(mcsm::parse_metric_kind(metric_text),
                                    mcsm::graph_size(kind, graphs[0], p.params),
                                    mcsm::graph_size(kind, graphs[1], p.params), result.best_size);
  return Json{{"bestSize", mcsm::to_string(result.best_size)},
              {"distance", mcsm::to_string(d)},
              {"witnessCount", result.witnesses.size()}}
      .dump();
}

std::string mcs(const std::string& g1, const std::string& g2, const std::string& kind_text,
                const std::string& alpha, const std::string& vertex_model,
                const std::string& edge_model, bool brute_force) {
  const auto graphs = parse_graphs(g1, g2);
  const auto kind = mcsm::parse_graph_model_kind(kind_text);
  Params p;
  load_params(p, kind, alpha, vertex_model, edge_model, graphs);
  const auto result = brute_force ? mcsm::mcs_brute_force(kind, graphs[0], graphs[1], p.params)
                                  : mcsm::mcs_solve(kind, graphs[0], graphs[1], p.params);
  Json witnesses = Json::array();
  for (const auto& w : result.witnesses)
    witnesses.push_back({{"graph", mcsm::io::graph_to_json(w.common)},
                         {"intoG1", ids_of(graphs[0], w.into_g1)},
                         {"intoG2", ids_of(graphs[1], w.into_g2)}});
  return Json{{"bestSize", mcsm::to_string(result.best_size)},
              {"nodesExplored", result.nodes_explored},
              {"witnesses", std::move(witnesses)}}
      .dump();
}

std::string check_model(const std::string& model_text, bool close_order) {
  const auto model = mcsm::io::model_from_json(Json::parse(model_text), close_order);
  bool passed = true;
  auto run = [&](auto&& check) -> Json {
    try {
      const mcsm::AxiomReport report = check();
      passed = passed && report.passed();
      return mcsm::io::report_to_json(report);
    } catch (const mcsm::ModelViolation& e) {
      passed = false;
      return {{"error", e.what()}, {"passed", false}};
    }
  };
  Json doc;
  doc["axioms"] = run([&] { return mcsm::check_axioms(model); });
  doc["aux"] = run([&] { return mcsm::check_aux_inequality(model); });
  Json metrics = Json::object();
  for (auto kind : mcsm::kAllMetricKinds)
    metrics[std::string(mcsm::to_string(kind))] = run([&] { return mcsm::check_metric_laws(model, kind); });
  doc["metrics"] = std::move(metrics);
  doc["passed"] = passed;
  return doc.dump();
}

std::string metric_to_model(const std::string& space_text, const std::string& theta) {
  const auto space = mcsm::io::metric_space_from_json(Json::parse(space_text));
  const auto derived = mcsm::build_model(space, mcsm::parse_rational(theta));
  const auto recovery = mcsm::verify_recovery(space, derived);
  auto axioms = mcsm::check_axioms(derived.model);
  if (axioms.passed()) axioms.merge(mcsm::check_aux_inequality(derived.model));
  return Json{{"axioms", mcsm::io::report_to_json(axioms)},
              {"model", mcsm::io::model_to_json(derived.model)},
              {"passed", recovery.passed() && axioms.passed()},
              {"recovery", mcsm::io::report_to_json(recovery)}}
      .dump();
}

mcsm::EditCostTables parse_costs(const std::string& text) {
  const auto costs = mcsm::io::costs_from_json(Json::parse(text));
  const auto report = mcsm::validate_cost_metric(costs);
  if (!report.passed()) {
    const auto& v = report.violations.front();
    std::string witness;
    for (const auto& w : v.witness) witness += (witness.empty() ? "" : ", ") + w;
    throw mcsm::InputError("edit costs violate " + std::string(mcsm::to_string(v.tag)) + " at (" +
                           witness + "): " + v.detail);
  }
  return costs;
}

std::string ged(const std::string& g1_text, const std::string& g2_text, const std::string& costs_text) {
  const auto graphs = parse_graphs(g1_text, g2_text);
  const auto result = mcsm::ged_brute_force(graphs[0], graphs[1], parse_costs(costs_text));
  const auto c1 = mcsm::completion(graphs[0], result.completion_size);
  const auto c2 = mcsm::completion(graphs[1], result.completion_size);
  Json mapping = Json::array();
  for (std::size_t v = 0; v < result.best_bijection.size(); ++v)
    mapping.push_back(Json::array({c1.vertex_id(v), c2.vertex_id(result.best_bijection[v])}));
  return Json{{"bijectionsScanned", result.bijections_scanned},
              {"completionSize", result.completion_size},
              {"distance", mcsm::to_string(result.distance)},
              {"mapping", std::move(mapping)}}
      .dump();
}

std::string verify_ged(const std::string& g1_text, const std::string& g2_text,
                       const std::string& costs_text, std::size_t n) {
  const auto graphs = parse_graphs(g1_text, g2_text);
  const auto ctx = mcsm::build_correspondence(n, parse_costs(costs_text));
  const auto r = mcsm::verify_ged_correspondence(ctx, graphs[0], graphs[1]);
  return Json{{"bijectionsChecked", r.bijections_checked},
              {"commonSize", mcsm::to_string(r.common_size)},
              {"equal", r.equal},
              {"ged", mcsm::to_string(r.ged)},
              {"identityFailures", r.identity_failures},
              {"modelDistance", mcsm::to_string(r.model_distance)},
              {"passed", r.passed()},
              {"size1", mcsm::to_string(r.size1)},
              {"size2", mcsm::to_string(r.size2)}}
      .dump();
}

}  // namespace

PYBIND11_MODULE(_mcsm, m) {
  m.doc() = "Maximum common subelement models and graph distances";

  py::register_exception<mcsm::InputError>(m, "InputError", PyExc_ValueError);
  py::register_exception<mcsm::CapExceeded>(m, "CapExceeded", PyExc_RuntimeError);
  py::register_exception<mcsm::ModelViolation>(m, "ModelViolation", PyExc_ValueError);

  m.def("distance", &distance, py::arg("g1"), py::arg("g2"), py::arg("kind"), py::arg("metric"),
        py::arg("alpha"), py::arg("vertex_model"), py::arg("edge_model"));
  m.def("mcs", &mcs, py::arg("g1"), py::arg("g2"), py::arg("kind"), py::arg("alpha"),
        py::arg("vertex_model"), py::arg("edge_model"), py::arg("brute_force"));
  m.def("check_model", &check_model, py::arg("model"), py::arg("close_order"));
  m.def("metric_to_model", &metric_to_model, py::arg("space"), py::arg("theta"));
  m.def("ged", &ged, py::arg("g1"), py::arg("g2"), py::arg("costs"));
  m.def("verify_ged", &verify_ged, py::arg("g1"), py::arg("g2"), py::arg("costs"), py::arg("n"));
}
