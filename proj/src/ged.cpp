#include "mcsm/ged.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "mcsm/errors.hpp"

namespace mcsm {
namespace {

struct DenseTable {
  std::vector<std::string> labels;
  std::vector<Rational> table;
};

DenseTable densify(const EditCostTables::Entries& entries, const std::string& epsilon,
                   const char* what) {
  std::set<std::string> labels{epsilon};
  for (const auto& [key, cost] : entries) {
    labels.insert(key.first);
    labels.insert(key.second);
  }
  DenseTable out{{labels.begin(), labels.end()}, {}};
  const std::size_t n = out.labels.size();
  out.table.assign(n * n, Rational(0));
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      const auto& la = out.labels[a];
      const auto& lb = out.labels[b];
      auto it = entries.find({la, lb});
      if (it == entries.end()) it = entries.find({lb, la});
      if (it == entries.end()) {
        if (a == b) continue;
        throw InputError(std::string("missing ") + what + " cost for pair '" +
                         display_label(la) + "|" + display_label(lb) + "'");
      }
      Rational cost = it->second;
      cost.canonicalize();
      if (cost < 0) {
        throw InputError(std::string("negative ") + what + " cost for pair '" +
                         display_label(la) + "|" + display_label(lb) + "'");
      }
      out.table[a * n + b] = std::move(cost);
    }
  }
  return out;
}

std::size_t label_position(const std::vector<std::string>& labels, const std::string& label,
                           const char* what) {
  auto it = std::lower_bound(labels.begin(), labels.end(), label);
  if (it == labels.end() || *it != label) {
    throw InputError(std::string("no ") + what + " cost entry for label '" +
                     display_label(label) + "'");
  }
  return static_cast<std::size_t>(it - labels.begin());
}

std::vector<std::string> display_all(const std::vector<std::string>& labels) {
  std::vector<std::string> out;
  for (const auto& l : labels) out.push_back(display_label(l));
  return out;
}

void require_ordinary_labels(const LabeledGraph& g) {
  for (VertexIndex i = 0; i < g.vertex_count(); ++i)
    if (is_reserved_label(g.vertex_label(i)))
      throw InputError("graph uses a reserved epsilon label on vertex '" + g.vertex_id(i) + "'");
  for (const auto& e : g.edges())
    if (is_reserved_label(e.label)) throw InputError("graph uses a reserved epsilon edge label");
}

std::vector<Rational> meet_table(const FiniteMcsModel& model) {
  const std::size_t m = model.size();
  std::vector<Rational> table(m * m);
  for (ElementIndex a = 0; a < m; ++a)
    for (ElementIndex b = a; b < m; ++b) {
      table[a * m + b] = max_common_size(model, a, b);
      table[b * m + a] = table[a * m + b];
    }
  return table;
}

void require_complete_domain_graph(const GedCorrespondence& ctx, const LabeledGraph& x) {
  const std::size_t k = ctx.completion_size();
  if (x.vertex_count() != k || x.edge_count() != k * (k - 1) / 2) {
    throw InputError("expected a complete graph on " + std::to_string(k) + " vertices");
  }
}

}  // namespace

std::string display_label(const std::string& label) {
  if (label == kEpsilonVertex) return "epsV";
  if (label == kEpsilonEdge) return "epsE";
  return label;
}

EditCostTables EditCostTables::from_entries(const Entries& vertex, const Entries& edge) {
  EditCostTables out;
  auto v = densify(vertex, kEpsilonVertex, "vertex");
  auto e = densify(edge, kEpsilonEdge, "edge");
  out.vlabels_ = std::move(v.labels);
  out.vtable_ = std::move(v.table);
  out.elabels_ = std::move(e.labels);
  out.etable_ = std::move(e.table);
  return out;
}

EditCostTables EditCostTables::discrete(const std::vector<std::string>& vertex_labels,
                                        const std::vector<std::string>& edge_labels) {
  auto entries = [](std::vector<std::string> labels, const std::string& epsilon) {
    labels.push_back(epsilon);
    Entries out;
    for (const auto& a : labels)
      for (const auto& b : labels) out[{a, b}] = a == b ? 0 : 1;
    return out;
  };
  return from_entries(entries(vertex_labels, kEpsilonVertex), entries(edge_labels, kEpsilonEdge));
}

const Rational& EditCostTables::vertex(const std::string& a, const std::string& b) const {
  const auto n = vlabels_.size();
  return vtable_[label_position(vlabels_, a, "vertex") * n + label_position(vlabels_, b, "vertex")];
}

const Rational& EditCostTables::edge(const std::string& a, const std::string& b) const {
  const auto n = elabels_.size();
  return etable_[label_position(elabels_, a, "edge") * n + label_position(elabels_, b, "edge")];
}

AxiomReport validate_cost_metric(const EditCostTables& costs) {
  auto report = check_metric_table(display_all(costs.vertex_labels()), costs.vertex_table());
  for (auto& v : report.violations) v.detail = "vertex costs: " + v.detail;
  auto edge = check_metric_table(display_all(costs.edge_labels()), costs.edge_table());
  for (auto& v : edge.violations) v.detail = "edge costs: " + v.detail;
  report.merge(edge);
  return report;
}

Rational edit_cost(const LabeledGraph& completed1, const LabeledGraph& completed2,
                   const EditCostTables& costs, const std::vector<VertexIndex>& bijection) {
  const std::size_t n = completed1.vertex_count();
  Rational total = 0;
  for (VertexIndex v = 0; v < n; ++v) {
    total += costs.vertex(completed1.vertex_label(v), completed2.vertex_label(bijection[v]));
  }
  for (VertexIndex a = 0; a < n; ++a) {
    for (VertexIndex b = a + 1; b < n; ++b) {
      total += costs.edge(*completed1.edge_label(a, b),
                          *completed2.edge_label(bijection[a], bijection[b]));
    }
  }
  return total;
}

GedResult ged_brute_force(const LabeledGraph& g1, const LabeledGraph& g2,
                          const EditCostTables& costs,
                          std::optional<std::size_t> completion_size) {
  require_ordinary_labels(g1);
  require_ordinary_labels(g2);
  const std::size_t k = completion_size.value_or(g1.vertex_count() + g2.vertex_count());
  if (k < g1.vertex_count() || k < g2.vertex_count()) {
    throw InputError("completion size below a graph's vertex count");
  }
  if (k > kMaxGedCompletion) {
    throw CapExceeded("completion too large for bijection enumeration", k, kMaxGedCompletion);
  }
  const auto c1 = completion(g1, k);
  const auto c2 = completion(g2, k);

  GedResult result;
  result.completion_size = k;
  std::vector<VertexIndex> f(k);
  std::iota(f.begin(), f.end(), 0);
  do {
    ++result.bijections_scanned;
    Rational cost = edit_cost(c1, c2, costs, f);
    if (result.bijections_scanned == 1 || cost < result.distance) {
      result.distance = std::move(cost);
      result.best_bijection = f;
    }
  } while (std::next_permutation(f.begin(), f.end()));
  return result;
}

GedCorrespondence::GedCorrespondence(std::size_t n, EditCostTables costs,
                                     const Rational& theta_offset,
                                     const CorrespondenceCaps& caps)
    : n_(n), costs_(std::move(costs)) {
  if (costs_.vertex_labels().size() > caps.vertex_labels) {
    throw CapExceeded("too many vertex labels for the derived label model",
                      costs_.vertex_labels().size(), caps.vertex_labels);
  }
  if (costs_.edge_labels().size() > caps.edge_labels) {
    throw CapExceeded("too many edge labels for the derived label model",
                      costs_.edge_labels().size(), caps.edge_labels);
  }
  if (2 * n_ > caps.completion) {
    throw CapExceeded("completion too large for bijection enumeration", 2 * n_,
                      caps.completion);
  }
  const auto report = validate_cost_metric(costs_);
  if (!report.passed()) {
    const auto& v = report.violations.front();
    std::string witness;
    for (const auto& w : v.witness) witness += (witness.empty() ? "" : ", ") + w;
    throw InputError("edit costs are not a metric: " + std::string(to_string(v.tag)) + " at (" +
                     witness + "): " + v.detail);
  }
  vertex_model_ = build_model(FiniteMetricSpace(costs_.vertex_labels(), costs_.vertex_table()),
                              theta_offset);
  edge_model_ = build_model(FiniteMetricSpace(costs_.edge_labels(), costs_.edge_table()),
                            theta_offset);
  vertex_meet_ = meet_table(vertex_model_.model);
  edge_meet_ = meet_table(edge_model_.model);
}

LabeledGraph GedCorrespondence::embed(const LabeledGraph& g) const {
  if (g.vertex_count() > n_) {
    throw InputError("graph has " + std::to_string(g.vertex_count()) +
                     " vertices, correspondence built for at most " + std::to_string(n_));
  }
  require_ordinary_labels(g);
  return completion(g, completion_size());
}

Rational GedCorrespondence::size(const LabeledGraph& x) const { return size_ges(x, models()); }

const Rational& GedCorrespondence::vertex_meet(const std::string& a, const std::string& b) const {
  const auto& m = vertex_model_.model;
  return vertex_meet_[m.index_of(a) * m.size() + m.index_of(b)];
}

const Rational& GedCorrespondence::edge_meet(const std::string& a, const std::string& b) const {
  const auto& m = edge_model_.model;
  return edge_meet_[m.index_of(a) * m.size() + m.index_of(b)];
}

GedCorrespondence build_correspondence(std::size_t n, const EditCostTables& costs,
                                       const Rational& theta_offset,
                                       const CorrespondenceCaps& caps) {
  return GedCorrespondence(n, costs, theta_offset, caps);
}

Rational meet_size(const GedCorrespondence& ctx, const LabeledGraph& x1, const LabeledGraph& x2,
                   const std::vector<VertexIndex>& bijection) {
  const std::size_t k = x1.vertex_count();
  Rational total = 0;
  for (VertexIndex v = 0; v < k; ++v) {
    total += ctx.vertex_meet(x1.vertex_label(v), x2.vertex_label(bijection[v]));
  }
  for (VertexIndex a = 0; a < k; ++a)
    for (VertexIndex b = a + 1; b < k; ++b)
      total += ctx.edge_meet(*x1.edge_label(a, b), *x2.edge_label(bijection[a], bijection[b]));
  return total;
}

CompleteMcsResult mcs_size_on_complete(const GedCorrespondence& ctx, const LabeledGraph& x1,
                                       const LabeledGraph& x2) {
  require_complete_domain_graph(ctx, x1);
  require_complete_domain_graph(ctx, x2);
  CompleteMcsResult result;
  std::vector<VertexIndex> f(x1.vertex_count());
  std::iota(f.begin(), f.end(), 0);
  do {
    ++result.bijections_scanned;
    Rational s = meet_size(ctx, x1, x2, f);
    if (result.bijections_scanned == 1 || s > result.size) {
      result.size = std::move(s);
      result.best_bijection = f;
    }
  } while (std::next_permutation(f.begin(), f.end()));
  return result;
}

GedCorrespondenceReport verify_ged_correspondence(const GedCorrespondence& ctx, const LabeledGraph& g1,
                               const LabeledGraph& g2) {
  GedCorrespondenceReport report;
  report.ged_result = ged_brute_force(g1, g2, ctx.costs());
  report.ged = report.ged_result.distance;

  const auto x1 = ctx.embed(g1);
  const auto x2 = ctx.embed(g2);
  report.size1 = ctx.size(x1);
  report.size2 = ctx.size(x2);
  report.mcs_result = mcs_size_on_complete(ctx, x1, x2);
  report.common_size = report.mcs_result.size;
  report.model_distance = report.size1 + report.size2 - 2 * report.common_size;
  report.equal = report.model_distance == report.ged;

  std::vector<VertexIndex> f(x1.vertex_count());
  std::iota(f.begin(), f.end(), 0);
  do {
    ++report.bijections_checked;
    const Rational cost = edit_cost(x1, x2, ctx.costs(), f);
    const Rational via_model = report.size1 + report.size2 - 2 * meet_size(ctx, x1, x2, f);
    if (cost != via_model) {
      if (report.identity_failures++ == 0) report.first_identity_failure = f;
    }
  } while (std::next_permutation(f.begin(), f.end()));
  return report;
}

}  // namespace mcsm
