#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mcsm/core_model.hpp"
#include "mcsm/graph.hpp"
#include "mcsm/metric_space.hpp"
#include "mcsm/rational.hpp"

namespace mcsm {

/// Label-pair edit costs. Vertex labels include kEpsilonVertex and edge
/// labels include kEpsilonEdge; both tables are dense over their label sets.
class EditCostTables {
 public:
  using Entries = std::map<std::pair<std::string, std::string>, Rational>;

  EditCostTables() = default;

  /// Builds dense tables from explicit entries. An entry (a, b) also fills
  /// (b, a) unless (b, a) is given separately; missing diagonal entries are 0.
  /// The epsilon labels are always part of the label sets. Throws InputError
  /// on a missing off-diagonal pair or a negative cost.
  static EditCostTables from_entries(const Entries& vertex, const Entries& edge);

  /// Cost 0 between equal labels and 1 otherwise, epsilon labels included.
  static EditCostTables discrete(const std::vector<std::string>& vertex_labels,
                                 const std::vector<std::string>& edge_labels);

  /// Throw InputError for labels outside the table.
  const Rational& vertex(const std::string& a, const std::string& b) const;
  const Rational& edge(const std::string& a, const std::string& b) const;

  /// Sorted, with the epsilon label first.
  const std::vector<std::string>& vertex_labels() const noexcept { return vlabels_; }
  const std::vector<std::string>& edge_labels() const noexcept { return elabels_; }
  const std::vector<Rational>& vertex_table() const noexcept { return vtable_; }
  const std::vector<Rational>& edge_table() const noexcept { return etable_; }

 private:
  std::vector<std::string> vlabels_;
  std::vector<std::string> elabels_;
  std::vector<Rational> vtable_;
  std::vector<Rational> etable_;
};

/// Printable form of a label; the reserved epsilon labels become "epsV"/"epsE".
std::string display_label(const std::string& label);

/// M1-M4 on both augmented label sets.
AxiomReport validate_cost_metric(const EditCostTables& costs);

inline constexpr std::size_t kMaxGedCompletion = 7;

struct GedResult {
  Rational distance;
  /// Completed-g1 vertex position -> completed-g2 vertex position.
  std::vector<VertexIndex> best_bijection;
  std::uint64_t bijections_scanned = 0;
  std::size_t completion_size = 0;
};

/// c(f) for one bijection between two completed (complete, equal-order) graphs.
Rational edit_cost(const LabeledGraph& completed1, const LabeledGraph& completed2,
                   const EditCostTables& costs, const std::vector<VertexIndex>& bijection);

/// Exact GED: completes both graphs to `completion_size` vertices (default
/// |V1| + |V2|) and scans every bijection. The witness is the lexicographically
/// least optimal bijection.
GedResult ged_brute_force(const LabeledGraph& g1, const LabeledGraph& g2,
                          const EditCostTables& costs,
                          std::optional<std::size_t> completion_size = std::nullopt);

struct CorrespondenceCaps {
  std::size_t vertex_labels = 4;  // including epsilon
  std::size_t edge_labels = 3;    // including epsilon
  std::size_t completion = 6;     // 2n
};

/// The MCS model in which edit distance becomes d_a: label models derived
/// from the cost metrics, complete graphs on 2n vertices as elements, and
/// graph completion as the embedding.
class GedCorrespondence {
 public:
  GedCorrespondence(std::size_t n, EditCostTables costs, const Rational& theta_offset,
                    const CorrespondenceCaps& caps);

  std::size_t n() const noexcept { return n_; }
  std::size_t completion_size() const noexcept { return 2 * n_; }
  const EditCostTables& costs() const noexcept { return costs_; }
  const DerivedModel& vertex_model() const noexcept { return vertex_model_; }
  const DerivedModel& edge_model() const noexcept { return edge_model_; }
  LabelModels models() const { return {&vertex_model_.model, &edge_model_.model}; }

  /// Completion to 2n vertices. Throws InputError above n vertices.
  LabeledGraph embed(const LabeledGraph& g) const;

  /// s_GES of a domain element.
  Rational size(const LabeledGraph& x) const;

  /// Memoized label-model s' values (by label identifier).
  const Rational& vertex_meet(const std::string& a, const std::string& b) const;
  const Rational& edge_meet(const std::string& a, const std::string& b) const;

 private:
  std::size_t n_;
  EditCostTables costs_;
  DerivedModel vertex_model_;
  DerivedModel edge_model_;
  std::vector<Rational> vertex_meet_;
  std::vector<Rational> edge_meet_;
};

/// Throws InputError unless the costs are metrics; CapExceeded on caps.
GedCorrespondence build_correspondence(std::size_t n, const EditCostTables& costs,
                                       const Rational& theta_offset = Rational(1),
                                       const CorrespondenceCaps& caps = {});

struct CompleteMcsResult {
  Rational size;
  std::vector<VertexIndex> best_bijection;
  std::uint64_t bijections_scanned = 0;
};

/// Size of the best per-bijection meet of two complete domain graphs.
Rational meet_size(const GedCorrespondence& ctx, const LabeledGraph& x1,
                   const LabeledGraph& x2, const std::vector<VertexIndex>& bijection);

/// s' of two complete 2n-vertex graphs: the best meet over all bijections.
CompleteMcsResult mcs_size_on_complete(const GedCorrespondence& ctx, const LabeledGraph& x1,
                                       const LabeledGraph& x2);

struct GedCorrespondenceReport {
  bool equal = false;
  Rational ged;
  Rational model_distance;  // s(x1) + s(x2) - 2 s'(x1, x2)
  Rational size1;
  Rational size2;
  Rational common_size;
  GedResult ged_result;
  CompleteMcsResult mcs_result;
  std::uint64_t bijections_checked = 0;
  std::uint64_t identity_failures = 0;
  std::vector<VertexIndex> first_identity_failure;

  bool passed() const noexcept { return equal && identity_failures == 0; }
};

/// Computes edit distance and the model-side d_a independently and also
/// checks c(f) = s(x1) + s(x2) - 2 s(x_f) for every bijection f.
GedCorrespondenceReport verify_ged_correspondence(const GedCorrespondence& ctx, const LabeledGraph& g1,
                               const LabeledGraph& g2);

}  // namespace mcsm
