#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mcsm/core_model.hpp"
#include "mcsm/rational.hpp"

namespace mcsm {

using VertexIndex = std::size_t;

/// Reserved padding labels used by graph completion. User-facing parsers
/// reject any label that starts with a NUL byte, so these are always fresh.
inline const std::string kEpsilonVertex{"\0V", 2};
inline const std::string kEpsilonEdge{"\0E", 2};

bool is_reserved_label(std::string_view label);

struct GraphEdge {
  VertexIndex u;  // u < v
  VertexIndex v;
  std::string label;
};

/// Finite undirected simple graph with one label per vertex and per edge.
class LabeledGraph {
 public:
  /// Throws InputError on a duplicate vertex id.
  VertexIndex add_vertex(std::string id, std::string label);
  /// Throws InputError on unknown endpoints, self-loops and duplicate edges.
  void add_edge(std::string_view u, std::string_view v, std::string label);
  void add_edge_at(VertexIndex u, VertexIndex v, std::string label);

  std::size_t vertex_count() const noexcept { return ids_.size(); }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  bool empty() const noexcept { return ids_.empty(); }

  const std::string& vertex_id(VertexIndex i) const { return ids_.at(i); }
  const std::string& vertex_label(VertexIndex i) const { return labels_.at(i); }
  std::optional<VertexIndex> find_vertex(std::string_view id) const;

  bool has_edge(VertexIndex a, VertexIndex b) const {
    return adjacency_[a * ids_.size() + b] >= 0;
  }
  /// nullptr when {a, b} is not an edge.
  const std::string* edge_label(VertexIndex a, VertexIndex b) const;
  const std::vector<GraphEdge>& edges() const noexcept { return edges_; }
  std::size_t degree(VertexIndex i) const;

 private:
  std::vector<std::string> ids_;
  std::vector<std::string> labels_;
  std::vector<GraphEdge> edges_;
  std::vector<int> adjacency_;  // n*n, edge index or -1
};

/// Strictly positive weight per label (vertex and edge labels share one map).
class LabelWeighting {
 public:
  LabelWeighting() = default;

  /// Throws InputError unless weight > 0.
  void set(std::string label, Rational weight);
  /// Throws InputError naming the label when it has no weight.
  const Rational& weight(std::string_view label) const;
  bool contains(std::string_view label) const;
  const std::map<std::string, Rational, std::less<>>& weights() const noexcept {
    return weights_;
  }

  /// Weight 1 for every vertex and edge label that occurs in `graphs`.
  static LabelWeighting uniform(std::span<const LabeledGraph> graphs);

 private:
  std::map<std::string, Rational, std::less<>> weights_;
};

enum class EmbeddingKind { Subgraph, Induced, Extended };

/// Injective map from pattern vertex positions to host vertex positions.
struct Embedding {
  std::vector<VertexIndex> vertex_map;
  EmbeddingKind kind = EmbeddingKind::Subgraph;
};

/// Label orders for extended-subgraph matching.
struct LabelModels {
  const FiniteMcsModel* vertex = nullptr;
  const FiniteMcsModel* edge = nullptr;
};

/// Lexicographically least isomorphism, if any.
std::optional<Embedding> find_isomorphism(const LabeledGraph& g1, const LabeledGraph& g2);
/// Lexicographically least subgraph embedding of `pattern` into `host`.
std::optional<Embedding> find_subgraph_embedding(const LabeledGraph& pattern,
                                                 const LabeledGraph& host);
std::optional<Embedding> find_induced_embedding(const LabeledGraph& pattern,
                                                const LabeledGraph& host);
/// Throws InputError if a label of either graph is missing from its model.
std::optional<Embedding> find_extended_embedding(const LabeledGraph& pattern,
                                                 const LabeledGraph& host,
                                                 const LabelModels& models);

inline bool is_isomorphic(const LabeledGraph& g1, const LabeledGraph& g2) {
  return find_isomorphism(g1, g2).has_value();
}
inline bool subgraph_isomorphic(const LabeledGraph& pattern, const LabeledGraph& host) {
  return find_subgraph_embedding(pattern, host).has_value();
}
inline bool induced_subgraph_isomorphic(const LabeledGraph& pattern,
                                        const LabeledGraph& host) {
  return find_induced_embedding(pattern, host).has_value();
}
inline bool extended_subgraph_isomorphic(const LabeledGraph& pattern,
                                         const LabeledGraph& host,
                                         const LabelModels& models) {
  return find_extended_embedding(pattern, host, models).has_value();
}

/// Replays an embedding against its kind's structure and label conditions.
/// `models` is only consulted for Extended embeddings.
bool validate_embedding(const LabeledGraph& pattern, const LabeledGraph& host,
                        const Embedding& embedding, const LabelModels& models = {});

/// Pads `g` to `n` vertices and all [V']^2 edges; new vertices get `eps_v`,
/// new edges `eps_e`. Throws InputError if n < |V|.
LabeledGraph completion(const LabeledGraph& g, std::size_t n,
                        const std::string& eps_v = kEpsilonVertex,
                        const std::string& eps_e = kEpsilonEdge);

/// Weighted vertices plus weighted edges (subgraph model size).
Rational size_gve(const LabeledGraph& g, const LabelWeighting& alpha);
/// Weighted vertices only (induced model size).
Rational size_gv(const LabeledGraph& g, const LabelWeighting& alpha);
/// Sum of nested label-model sizes (extended model size).
Rational size_ges(const LabeledGraph& g, const LabelModels& models);

/// Throws InputError unless both models are present and every size is > 0.
void require_positive_label_models(const LabelModels& models);

inline constexpr std::size_t kDefaultCanonicalCap = 10;

/// Byte string that is equal for two graphs iff they are isomorphic.
/// Throws CapExceeded above `cap` vertices.
std::string canonical_form(const LabeledGraph& g, std::size_t cap = kDefaultCanonicalCap);

inline constexpr std::size_t kMaxUniverseVertices = 5;

/// One representative per isomorphism class of every graph with at most
/// `max_vertices` vertices over the given labels, ordered by vertex count and
/// then canonical form. Vertex ids are "v0", "v1", ...
std::vector<LabeledGraph> enumerate_graph_universe(std::size_t max_vertices,
                                                   const std::vector<std::string>& vertex_labels,
                                                   const std::vector<std::string>& edge_labels);

}  // namespace mcsm
