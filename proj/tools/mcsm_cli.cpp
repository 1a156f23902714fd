#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "mcsm/errors.hpp"
#include "mcsm/ged.hpp"
#include "mcsm/io.hpp"
#include "mcsm/mcs.hpp"
#include "mcsm/metric_space.hpp"

namespace fs = std::filesystem;
using mcsm::io::Json;

namespace {

constexpr int kExitInput = 2;
constexpr int kExitCap = 3;
constexpr int kExitModel = 4;

constexpr std::size_t kHardVertexCap = 16;
constexpr std::size_t kHardElementCap = 256;

struct Config {
  std::string format = "json";
  std::uint64_t seed = 0;
  std::size_t cap_vertices = mcsm::kDefaultSolverVertexCap;
  std::size_t cap_elements = mcsm::kDefaultElementCap;
  bool close_order = false;
};

struct SolverOptions {
  std::string kind = "S";
  std::string metric = "da";
  std::string alpha = "uniform";
  std::string vertex_model;
  std::string edge_model;
};

// Owns the label models that McsParams points into.
struct LoadedParams {
  mcsm::McsParams params;
  mcsm::FiniteMcsModel vertex_model;
  mcsm::FiniteMcsModel edge_model;
};

void load_params(LoadedParams& out, const SolverOptions& opts, const Config& cfg,
                 std::span<const mcsm::LabeledGraph> graphs) {
  out.params.vertex_cap = cfg.cap_vertices;
  const auto kind = mcsm::parse_graph_model_kind(opts.kind);
  if (kind == mcsm::GraphModelKind::E) {
    if (opts.vertex_model.empty() || opts.edge_model.empty()) {
      throw mcsm::InputError("kind E needs --vertex-model and --edge-model");
    }
    out.vertex_model =
        mcsm::io::model_from_json(mcsm::io::load_json_file(opts.vertex_model), cfg.close_order);
    out.edge_model =
        mcsm::io::model_from_json(mcsm::io::load_json_file(opts.edge_model), cfg.close_order);
    out.params.models = {&out.vertex_model, &out.edge_model};
  } else if (opts.alpha == "uniform") {
    out.params.alpha = mcsm::LabelWeighting::uniform(graphs);
  } else {
    out.params.alpha = mcsm::io::weights_from_json(mcsm::io::load_json_file(opts.alpha));
  }
}

mcsm::LabeledGraph load_graph(const std::string& path) {
  try {
    return mcsm::io::graph_from_json(mcsm::io::load_json_file(path));
  } catch (const mcsm::InputError& e) {
    const std::string what = e.what();
    if (what.rfind(path, 0) == 0) throw;
    throw mcsm::InputError(path + ": " + what);
  }
}

std::string tsv_cell(const Json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

void emit(const Json& doc, const Config& cfg) {
  if (cfg.format == "json") {
    std::cout << doc.dump(2) << '\n';
    return;
  }
  if (doc.contains("matrix") && doc.contains("files")) {
    std::cout << "file";
    for (const auto& f : doc["files"]) std::cout << '\t' << tsv_cell(f);
    std::cout << '\n';
    for (std::size_t i = 0; i < doc["matrix"].size(); ++i) {
      std::cout << tsv_cell(doc["files"][i]);
      for (const auto& cell : doc["matrix"][i]) std::cout << '\t' << tsv_cell(cell);
      std::cout << '\n';
    }
    return;
  }
  for (const auto& [key, value] : doc.items()) std::cout << key << '\t' << tsv_cell(value) << '\n';
}

int cmd_dist(const Config& cfg, const SolverOptions& opts, const std::string& p1,
             const std::string& p2) {
  const std::vector<mcsm::LabeledGraph> graphs{load_graph(p1), load_graph(p2)};
  LoadedParams lp;
  load_params(lp, opts, cfg, graphs);
  const auto kind = mcsm::parse_graph_model_kind(opts.kind);
  const auto metric = mcsm::parse_metric_kind(opts.metric);
  const auto result = mcsm::mcs_solve(kind, graphs[0], graphs[1], lp.params);
  const auto distance = mcsm::metric_value(
      metric, mcsm::graph_size(kind, graphs[0], lp.params),
      mcsm::graph_size(kind, graphs[1], lp.params), result.best_size);
  emit({{"bestSize", mcsm::to_string(result.best_size)},
        {"distance", mcsm::to_string(distance)},
        {"witnessCount", result.witnesses.size()}},
       cfg);
  return 0;
}

int cmd_matrix(const Config& cfg, const SolverOptions& opts, const std::string& dir) {
  const auto files = mcsm::io::list_graph_files(dir);
  if (files.empty()) throw mcsm::InputError("no *.json graph files in " + dir);
  std::vector<mcsm::LabeledGraph> graphs;
  Json names = Json::array();
  for (const auto& f : files) {
    graphs.push_back(load_graph(f.string()));
    names.push_back(f.filename().string());
  }
  LoadedParams lp;
  load_params(lp, opts, cfg, graphs);
  const auto matrix = mcsm::distance_matrix(mcsm::parse_graph_model_kind(opts.kind),
                                            mcsm::parse_metric_kind(opts.metric), graphs,
                                            lp.params);
  Json rows = Json::array();
  for (const auto& row : matrix) {
    Json r = Json::array();
    for (const auto& v : row) r.push_back(mcsm::to_string(v));
    rows.push_back(std::move(r));
  }
  emit({{"files", std::move(names)}, {"matrix", std::move(rows)}}, cfg);
  return 0;
}

Json embedding_ids(const mcsm::LabeledGraph& host, const mcsm::Embedding& emb) {
  Json out = Json::array();
  for (auto v : emb.vertex_map) out.push_back(host.vertex_id(v));
  return out;
}

int cmd_mcs(const Config& cfg, const SolverOptions& opts, const std::string& p1,
            const std::string& p2, bool brute_force) {
  const std::vector<mcsm::LabeledGraph> graphs{load_graph(p1), load_graph(p2)};
  LoadedParams lp;
  load_params(lp, opts, cfg, graphs);
  const auto kind = mcsm::parse_graph_model_kind(opts.kind);
  const auto result = brute_force ? mcsm::mcs_brute_force(kind, graphs[0], graphs[1], lp.params)
                                  : mcsm::mcs_solve(kind, graphs[0], graphs[1], lp.params);
  Json witnesses = Json::array();
  for (const auto& w : result.witnesses) {
    witnesses.push_back({{"graph", mcsm::io::graph_to_json(w.common)},
                         {"intoG1", embedding_ids(graphs[0], w.into_g1)},
                         {"intoG2", embedding_ids(graphs[1], w.into_g2)}});
  }
  emit({{"bestSize", mcsm::to_string(result.best_size)},
        {"nodesExplored", result.nodes_explored},
        {"witnesses", std::move(witnesses)}},
       cfg);
  return 0;
}

int cmd_check_model(const Config& cfg, const std::string& path) {
  const auto model =
      mcsm::io::model_from_json(mcsm::io::load_json_file(path), cfg.close_order);
  bool passed = true;
  // The aux and metric checks need s' on every pair; without it they report an error.
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
  doc["axioms"] = run([&] { return mcsm::check_axioms(model, cfg.cap_elements); });
  doc["aux"] = run([&] { return mcsm::check_aux_inequality(model, cfg.cap_elements); });
  Json metrics = Json::object();
  for (auto kind : mcsm::kAllMetricKinds) {
    metrics[std::string(mcsm::to_string(kind))] =
        run([&] { return mcsm::check_metric_laws(model, kind, cfg.cap_elements); });
  }
  doc["metrics"] = std::move(metrics);
  doc["passed"] = passed;
  emit(doc, cfg);
  if (!passed) std::cerr << "model violates at least one law\n";
  return passed ? 0 : kExitModel;
}

int cmd_metric2model(const Config& cfg, const std::string& path, const std::string& theta_text,
                     bool check) {
  const auto space = mcsm::io::metric_space_from_json(mcsm::io::load_json_file(path));
  const auto derived = mcsm::build_model(space, mcsm::parse_rational(theta_text));
  const auto recovery = mcsm::verify_recovery(space, derived);
  bool passed = recovery.passed();
  Json doc{{"model", mcsm::io::model_to_json(derived.model)},
           {"recovery", mcsm::io::report_to_json(recovery)}};
  if (check) {
    auto report = mcsm::check_axioms(derived.model, cfg.cap_elements);
    report.merge(mcsm::check_aux_inequality(derived.model, cfg.cap_elements));
    passed = passed && report.passed();
    doc["axioms"] = mcsm::io::report_to_json(report);
  }
  doc["passed"] = passed;
  emit(doc, cfg);
  return passed ? 0 : kExitModel;
}

mcsm::EditCostTables load_costs(const std::string& path) {
  const auto costs = mcsm::io::costs_from_json(mcsm::io::load_json_file(path));
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

int cmd_ged(const Config& cfg, const std::string& p1, const std::string& p2,
            const std::string& costs_path) {
  const auto g1 = load_graph(p1);
  const auto g2 = load_graph(p2);
  const auto result = mcsm::ged_brute_force(g1, g2, load_costs(costs_path));
  const auto c1 = mcsm::completion(g1, result.completion_size);
  const auto c2 = mcsm::completion(g2, result.completion_size);
  Json mapping = Json::array();
  for (std::size_t v = 0; v < result.best_bijection.size(); ++v) {
    mapping.push_back(Json::array({c1.vertex_id(v), c2.vertex_id(result.best_bijection[v])}));
  }
  emit({{"bijectionsScanned", result.bijections_scanned},
        {"completionSize", result.completion_size},
        {"distance", mcsm::to_string(result.distance)},
        {"mapping", std::move(mapping)}},
       cfg);
  return 0;
}

int cmd_verify_ged(const Config& cfg, std::size_t n, const std::string& costs_path,
                   const std::string& dir, std::size_t sample) {
  const auto costs = load_costs(costs_path);
  const auto ctx = mcsm::build_correspondence(n, costs);

  std::vector<mcsm::LabeledGraph> graphs;
  std::vector<std::string> names;
  if (dir.empty()) {
    std::vector<std::string> vlabels;
    std::vector<std::string> elabels;
    for (const auto& l : costs.vertex_labels())
      if (!mcsm::is_reserved_label(l)) vlabels.push_back(l);
    for (const auto& l : costs.edge_labels())
      if (!mcsm::is_reserved_label(l)) elabels.push_back(l);
    graphs = mcsm::enumerate_graph_universe(n, vlabels, elabels);
    for (std::size_t i = 0; i < graphs.size(); ++i) names.push_back("#" + std::to_string(i));
  } else {
    for (const auto& f : mcsm::io::list_graph_files(dir)) {
      graphs.push_back(load_graph(f.string()));
      names.push_back(f.filename().string());
    }
  }

  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < graphs.size(); ++i)
    for (std::size_t j = i; j < graphs.size(); ++j) pairs.emplace_back(i, j);
  if (sample > 0 && sample < pairs.size()) {
    std::mt19937_64 rng(cfg.seed);
    std::shuffle(pairs.begin(), pairs.end(), rng);
    pairs.resize(sample);
    std::sort(pairs.begin(), pairs.end());
  }

  bool all = true;
  std::uint64_t bijections = 0;
  Json failures = Json::array();
  for (const auto& [i, j] : pairs) {
    const auto report = mcsm::verify_ged_correspondence(ctx, graphs[i], graphs[j]);
    bijections += report.bijections_checked;
    if (!report.passed()) {
      all = false;
      failures.push_back({{"g1", names[i]},
                          {"g2", names[j]},
                          {"ged", mcsm::to_string(report.ged)},
                          {"identityFailures", report.identity_failures},
                          {"modelDistance", mcsm::to_string(report.model_distance)}});
    }
  }
  emit({{"allEqual", all},
        {"bijectionsChecked", bijections},
        {"failures", std::move(failures)},
        {"graphs", graphs.size()},
        {"pairsChecked", pairs.size()}},
       cfg);
  return all ? 0 : kExitModel;
}

void add_solver_options(CLI::App* sub, SolverOptions& opts, bool with_metric) {
  sub->add_option("--kind", opts.kind, "Graph model: S, I or E")
      ->check(CLI::IsMember({"S", "I", "E"}));
  if (with_metric) {
    sub->add_option("--metric", opts.metric, "Metric: da, db, dc or dd")
        ->check(CLI::IsMember({"da", "db", "dc", "dd"}));
  }
  sub->add_option("--alpha", opts.alpha, "Label weights: 'uniform' or a weights JSON file");
  sub->add_option("--vertex-model", opts.vertex_model, "Vertex label model JSON (kind E)");
  sub->add_option("--edge-model", opts.edge_model, "Edge label model JSON (kind E)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Maximum common subelement models, graph distances and edit distance"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand
  Config cfg;
  app.add_option("--format", cfg.format, "Output format")
      ->check(CLI::IsMember({"json", "tsv"}));
  app.add_option("--seed", cfg.seed, "Seed for sampled checks");
  app.add_option("--cap-vertices", cfg.cap_vertices, "Solver vertex cap")
      ->check(CLI::Range(std::size_t{0}, kHardVertexCap));
  app.add_option("--cap-elements", cfg.cap_elements, "Model element cap for exhaustive checks")
      ->check(CLI::Range(std::size_t{0}, kHardElementCap));
  app.add_flag("--close-order", cfg.close_order, "Transitively close model orders on load");

  SolverOptions solver;
  std::string path1;
  std::string path2;
  std::string path3;

  auto* dist = app.add_subcommand("dist", "Distance between two graphs");
  add_solver_options(dist, solver, true);
  dist->add_option("g1", path1)->required();
  dist->add_option("g2", path2)->required();

  auto* matrix = app.add_subcommand("matrix", "Distance matrix over a directory of graphs");
  add_solver_options(matrix, solver, true);
  matrix->add_option("dir", path1)->required();

  bool brute_force = false;
  auto* mcs = app.add_subcommand("mcs", "Maximum common subgraphs of two graphs");
  add_solver_options(mcs, solver, false);
  mcs->add_flag("--brute-force", brute_force, "Use the exhaustive reference solver");
  mcs->add_option("g1", path1)->required();
  mcs->add_option("g2", path2)->required();

  auto* check_model = app.add_subcommand("check-model", "Check the axioms of a finite model");
  check_model->add_option("model", path1)->required();

  std::string theta = "1";
  bool check = false;
  auto* m2m = app.add_subcommand("metric2model", "Build a model from a finite metric space");
  m2m->add_option("space", path1)->required();
  m2m->add_option("--theta", theta, "Positive offset added to every point size");
  m2m->add_flag("--check", check, "Also run the exhaustive axiom checks");

  auto* ged = app.add_subcommand("ged", "Exact graph edit distance");
  ged->add_option("g1", path1)->required();
  ged->add_option("g2", path2)->required();
  ged->add_option("costs", path3)->required();

  std::size_t n = 2;
  std::size_t sample = 0;
  auto* verify = app.add_subcommand(
      "verify-ged", "Compare edit distance with the corresponding model distance");
  verify->add_option("--n", n, "Maximum vertex count of the graphs");
  verify->add_option("costs", path3)->required();
  verify->add_option("graphs", path1, "Directory of graphs (default: every graph up to n)");
  verify->add_option("--sample", sample, "Check this many seeded random pairs only");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInput;
  }

  try {
    if (*dist) return cmd_dist(cfg, solver, path1, path2);
    if (*matrix) return cmd_matrix(cfg, solver, path1);
    if (*mcs) return cmd_mcs(cfg, solver, path1, path2, brute_force);
    if (*check_model) return cmd_check_model(cfg, path1);
    if (*m2m) return cmd_metric2model(cfg, path1, theta, check);
    if (*ged) return cmd_ged(cfg, path1, path2, path3);
    if (*verify) return cmd_verify_ged(cfg, n, path3, path1, sample);
  } catch (const mcsm::InputError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kExitInput;
  } catch (const mcsm::CapExceeded& e) {
    std::cerr << "cap exceeded: " << e.what() << '\n';
    return kExitCap;
  } catch (const mcsm::ModelViolation& e) {
    std::cerr << "model violation: " << e.what() << '\n';
    return kExitModel;
  }
  return 1;
}
