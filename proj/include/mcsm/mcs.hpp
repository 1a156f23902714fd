#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mcsm/core_model.hpp"
#include "mcsm/graph.hpp"
#include "mcsm/rational.hpp"

namespace mcsm {

/// Which graph order and size function a computation uses.
enum class GraphModelKind {
  S,  // subgraph order, weighted vertices + edges
  I,  // induced-subgraph order, weighted vertices
  E,  // extended-subgraph order, nested label-model sizes
};

GraphModelKind parse_graph_model_kind(std::string_view text);
std::string_view to_string(GraphModelKind kind);

inline constexpr std::size_t kBruteForceVertexCap = 6;
inline constexpr std::size_t kDefaultSolverVertexCap = 12;
inline constexpr std::size_t kDefaultWitnessCap = 16;

struct McsParams {
  LabelWeighting alpha;  // kinds S and I
  LabelModels models;    // kind E
  std::size_t vertex_cap = kDefaultSolverVertexCap;
  std::size_t witness_cap = kDefaultWitnessCap;
};

struct McsWitness {
  LabeledGraph common;
  Embedding into_g1;
  Embedding into_g2;
  std::string canonical;
};

struct McsResult {
  Rational best_size;
  /// Distinct up to isomorphism, sorted by canonical form, at most witness_cap.
  std::vector<McsWitness> witnesses;
  std::uint64_t nodes_explored = 0;
};

/// The kind's size function applied to one graph.
Rational graph_size(GraphModelKind kind, const LabeledGraph& g, const McsParams& params);

/// The kind's order relation: pattern below host.
bool graph_leq(GraphModelKind kind, const LabeledGraph& pattern, const LabeledGraph& host,
               const McsParams& params);

/// Reference solver: enumerates every (induced) subgraph of g1 and tests it
/// against g2. Both graphs must have at most kBruteForceVertexCap vertices.
McsResult mcs_brute_force(GraphModelKind kind, const LabeledGraph& g1,
                          const LabeledGraph& g2, const McsParams& params);

/// Exact solver. Kind I runs a maximum weighted clique search on the labeled
/// modular product; kinds S and E branch and bound over partial vertex maps.
McsResult mcs_solve(GraphModelKind kind, const LabeledGraph& g1, const LabeledGraph& g2,
                    const McsParams& params);

Rational graph_distance(GraphModelKind kind, MetricKind metric, const LabeledGraph& g1,
                        const LabeledGraph& g2, const McsParams& params);

/// Symmetric matrix of graph_distance over all pairs. Errors carry the pair.
std::vector<std::vector<Rational>> distance_matrix(GraphModelKind kind, MetricKind metric,
                                                   std::span<const LabeledGraph> graphs,
                                                   const McsParams& params);

}  // namespace mcsm
