#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <tuple>
#include <vector>

#include "mcsm/core_model.hpp"
#include "mcsm/graph.hpp"
#include "mcsm/mcs.hpp"
#include "mcsm/rational.hpp"

namespace testing_support {

using mcsm::LabeledGraph;
using mcsm::Rational;
using mcsm::VertexIndex;

struct EdgeSpec {
  VertexIndex u;
  VertexIndex v;
  std::string label;
};

inline LabeledGraph make_graph(const std::vector<std::string>& vertex_labels,
                               const std::vector<EdgeSpec>& edges = {}) {
  LabeledGraph g;
  for (std::size_t i = 0; i < vertex_labels.size(); ++i) {
    g.add_vertex("v" + std::to_string(i), vertex_labels[i]);
  }
  for (const auto& e : edges) g.add_edge_at(e.u, e.v, e.label);
  return g;
}

inline LabeledGraph path(std::size_t n, const std::string& vl = "a", const std::string& el = "x") {
  std::vector<EdgeSpec> edges;
  for (VertexIndex i = 0; i + 1 < n; ++i) edges.push_back({i, i + 1, el});
  return make_graph(std::vector<std::string>(n, vl), edges);
}

inline LabeledGraph complete(std::size_t n, const std::string& vl = "a",
                             const std::string& el = "x") {
  std::vector<EdgeSpec> edges;
  for (VertexIndex i = 0; i < n; ++i)
    for (VertexIndex j = i + 1; j < n; ++j) edges.push_back({i, j, el});
  return make_graph(std::vector<std::string>(n, vl), edges);
}

/// Same graph with vertices inserted in the order given by `perm`.
inline LabeledGraph permuted(const LabeledGraph& g, const std::vector<VertexIndex>& perm) {
  LabeledGraph out;
  for (auto v : perm) out.add_vertex(g.vertex_id(v), g.vertex_label(v));
  std::vector<VertexIndex> pos(perm.size());
  for (std::size_t i = 0; i < perm.size(); ++i) pos[perm[i]] = i;
  for (const auto& e : g.edges()) out.add_edge_at(pos[e.u], pos[e.v], e.label);
  return out;
}

inline LabeledGraph random_graph(std::mt19937_64& rng, std::size_t max_vertices,
                                 const std::vector<std::string>& vlabels,
                                 const std::vector<std::string>& elabels,
                                 double edge_probability = 0.5) {
  std::uniform_int_distribution<std::size_t> nv(0, max_vertices);
  std::uniform_int_distribution<std::size_t> pick_v(0, vlabels.size() - 1);
  std::uniform_int_distribution<std::size_t> pick_e(0, elabels.size() - 1);
  std::bernoulli_distribution coin(edge_probability);
  const std::size_t n = nv(rng);
  LabeledGraph g;
  for (std::size_t i = 0; i < n; ++i) g.add_vertex("v" + std::to_string(i), vlabels[pick_v(rng)]);
  for (VertexIndex i = 0; i < n; ++i)
    for (VertexIndex j = i + 1; j < n; ++j)
      if (coin(rng)) g.add_edge_at(i, j, elabels[pick_e(rng)]);
  return g;
}

constexpr VertexIndex kUnmapped = static_cast<VertexIndex>(-1);

/// Calls `visit` with every partial injective map V1 -> V2 (kUnmapped marks
/// an unmapped vertex). Exponential; for tiny graphs only.
inline void for_each_partial_map(std::size_t n1, std::size_t n2,
                                 const std::function<void(const std::vector<VertexIndex>&)>& visit) {
  std::vector<VertexIndex> map(n1, kUnmapped);
  std::vector<bool> used(n2, false);
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == n1) {
      visit(map);
      return;
    }
    map[i] = kUnmapped;
    rec(i + 1);
    for (VertexIndex w = 0; w < n2; ++w) {
      if (used[w]) continue;
      used[w] = true;
      map[i] = w;
      rec(i + 1);
      used[w] = false;
    }
    map[i] = kUnmapped;
  };
  rec(0);
}

/// Naive relation check: some total injective map of pattern into host
/// satisfies `ok` (called with the full map).
inline bool exists_total_map(const LabeledGraph& pattern, const LabeledGraph& host,
                             const std::function<bool(const std::vector<VertexIndex>&)>& ok) {
  bool found = false;
  for_each_partial_map(pattern.vertex_count(), host.vertex_count(),
                       [&](const std::vector<VertexIndex>& m) {
                         if (found) return;
                         if (std::find(m.begin(), m.end(), kUnmapped) != m.end()) return;
                         found = ok(m);
                       });
  return found;
}

inline bool naive_subgraph(const LabeledGraph& p, const LabeledGraph& h, bool induced) {
  return exists_total_map(p, h, [&](const std::vector<VertexIndex>& m) {
    for (VertexIndex v = 0; v < p.vertex_count(); ++v)
      if (p.vertex_label(v) != h.vertex_label(m[v])) return false;
    for (VertexIndex a = 0; a < p.vertex_count(); ++a)
      for (VertexIndex b = a + 1; b < p.vertex_count(); ++b) {
        const auto* lp = p.edge_label(a, b);
        const auto* lh = h.edge_label(m[a], m[b]);
        if (lp && (!lh || *lp != *lh)) return false;
        if (induced && !lp && lh) return false;
      }
    return true;
  });
}

inline bool naive_isomorphic(const LabeledGraph& g1, const LabeledGraph& g2) {
  return g1.vertex_count() == g2.vertex_count() && g1.edge_count() == g2.edge_count() &&
         naive_subgraph(g1, g2, true);
}

/// Best common-subelement size for the kind, maximized over partial injective
/// maps. Under a fixed vertex correspondence the best common graph keeps
/// every compatible vertex and edge, so this equals s'.
inline Rational oracle_best_size(mcsm::GraphModelKind kind, const LabeledGraph& g1,
                                 const LabeledGraph& g2, const mcsm::McsParams& params) {
  using mcsm::GraphModelKind;
  std::function<Rational(const std::string&, const std::string&)> vmeet;
  std::function<Rational(const std::string&, const std::string&)> emeet;
  if (kind == GraphModelKind::E) {
    vmeet = [&](const std::string& a, const std::string& b) {
      const auto& m = *params.models.vertex;
      return mcsm::max_common_size(m, m.index_of(a), m.index_of(b));
    };
    emeet = [&](const std::string& a, const std::string& b) {
      const auto& m = *params.models.edge;
      return mcsm::max_common_size(m, m.index_of(a), m.index_of(b));
    };
  } else {
    vmeet = [&](const std::string& a, const std::string& b) {
      return a == b ? params.alpha.weight(a) : Rational(-1);
    };
    emeet = [&](const std::string& a, const std::string& b) {
      if (a != b) return Rational(-1);
      return kind == GraphModelKind::S ? params.alpha.weight(a) : Rational(0);
    };
  }
  Rational best = 0;
  for_each_partial_map(g1.vertex_count(), g2.vertex_count(), [&](const std::vector<VertexIndex>& m) {
    Rational total = 0;
    for (VertexIndex v = 0; v < m.size(); ++v) {
      if (m[v] == kUnmapped) continue;
      const Rational s = vmeet(g1.vertex_label(v), g2.vertex_label(m[v]));
      if (s < 0) return;
      total += s;
    }
    for (VertexIndex a = 0; a < m.size(); ++a)
      for (VertexIndex b = a + 1; b < m.size(); ++b) {
        if (m[a] == kUnmapped || m[b] == kUnmapped) continue;
        const auto* l1 = g1.edge_label(a, b);
        const auto* l2 = g2.edge_label(m[a], m[b]);
        if (l1 && l2) {
          const Rational s = emeet(*l1, *l2);
          if (s >= 0) {
            total += s;
          } else if (kind == GraphModelKind::I) {
            return;  // induced: a mismatched edge label forbids the pair
          }
        } else if (kind == GraphModelKind::I && (l1 || l2)) {
          return;
        }
      }
    if (total > best) best = total;
  });
  return best;
}

/// Chain label model: ids[0] <= ids[1] <= ... with the given sizes.
inline mcsm::FiniteMcsModel chain_model(const std::vector<std::string>& ids,
                                        const std::vector<Rational>& sizes) {
  std::vector<std::pair<std::string, std::string>> pairs;
  std::vector<std::pair<std::string, Rational>> named;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    named.emplace_back(ids[i], sizes[i]);
    for (std::size_t j = i + 1; j < ids.size(); ++j) pairs.emplace_back(ids[i], ids[j]);
  }
  return mcsm::FiniteMcsModel::from_pairs(ids, pairs, named);
}

/// Power-set model on {1..n} with subset size = sum of element weights.
/// Element ids look like "{}", "{1}", "{1,3}".
inline mcsm::FiniteMcsModel weighted_power_set(const std::vector<Rational>& weights) {
  const std::size_t n = weights.size();
  std::vector<std::string> ids;
  std::vector<Rational> sizes;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    std::string id = "{";
    Rational s = 0;
    for (std::size_t i = 0; i < n; ++i)
      if (mask & (1u << i)) {
        if (id.size() > 1) id += ',';
        id += std::to_string(i + 1);
        s += weights[i];
      }
    ids.push_back(id + "}");
    sizes.push_back(s);
  }
  const std::size_t m = ids.size();
  std::vector<char> order(m * m);
  for (std::uint32_t a = 0; a < m; ++a)
    for (std::uint32_t b = 0; b < m; ++b) order[a * m + b] = (a & b) == a;
  return mcsm::FiniteMcsModel(ids, order, sizes);
}

inline mcsm::FiniteMcsModel power_set(std::size_t n) {
  return weighted_power_set(std::vector<Rational>(n, Rational(1)));
}

}  // namespace testing_support
