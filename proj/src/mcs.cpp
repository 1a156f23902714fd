#include "mcsm/mcs.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <utility>

#include "mcsm/errors.hpp"

namespace mcsm {

GraphModelKind parse_graph_model_kind(std::string_view text) {
  if (text == "S" || text == "s") return GraphModelKind::S;
  if (text == "I" || text == "i") return GraphModelKind::I;
  if (text == "E" || text == "e") return GraphModelKind::E;
  throw InputError("unknown graph model kind '" + std::string(text) + "' (expected S, I or E)");
}

std::string_view to_string(GraphModelKind kind) {
  switch (kind) {
    case GraphModelKind::S: return "S";
    case GraphModelKind::I: return "I";
    case GraphModelKind::E: return "E";
  }
  return "?";
}

Rational graph_size(GraphModelKind kind, const LabeledGraph& g, const McsParams& params) {
  switch (kind) {
    case GraphModelKind::S: return size_gve(g, params.alpha);
    case GraphModelKind::I: return size_gv(g, params.alpha);
    case GraphModelKind::E: return size_ges(g, params.models);
  }
  throw ContractViolation("unknown graph model kind");
}

bool graph_leq(GraphModelKind kind, const LabeledGraph& pattern, const LabeledGraph& host,
               const McsParams& params) {
  switch (kind) {
    case GraphModelKind::S: return subgraph_isomorphic(pattern, host);
    case GraphModelKind::I: return induced_subgraph_isomorphic(pattern, host);
    case GraphModelKind::E: return extended_subgraph_isomorphic(pattern, host, params.models);
  }
  throw ContractViolation("unknown graph model kind");
}

namespace {

EmbeddingKind embedding_kind(GraphModelKind kind) {
  switch (kind) {
    case GraphModelKind::S: return EmbeddingKind::Subgraph;
    case GraphModelKind::I: return EmbeddingKind::Induced;
    case GraphModelKind::E: return EmbeddingKind::Extended;
  }
  return EmbeddingKind::Subgraph;
}

// Keeps the maximum size seen and the distinct (up to isomorphism) witnesses
// attaining it; only the `cap` smallest canonical forms are retained.
class WitnessCollector {
 public:
  WitnessCollector(std::size_t cap, std::size_t canonical_cap)
      : cap_(cap), canonical_cap_(canonical_cap) {}

  const std::optional<Rational>& best() const { return best_; }

  bool worse_than_best(const Rational& bound) const { return best_ && bound < *best_; }

  void offer(const Rational& size, const std::function<McsWitness()>& make) {
    if (best_ && size < *best_) return;
    if (!best_ || size > *best_) {
      best_ = size;
      by_form_.clear();
    }
    if (cap_ == 0) return;
    McsWitness w = make();
    w.canonical = canonical_form(w.common, canonical_cap_);
    if (by_form_.size() == cap_ && w.canonical >= by_form_.rbegin()->first) return;
    by_form_.emplace(w.canonical, std::move(w));
    if (by_form_.size() > cap_) by_form_.erase(std::prev(by_form_.end()));
  }

  McsResult finish(std::uint64_t nodes) {
    McsResult r;
    r.best_size = best_.value_or(Rational(0));
    for (auto& [form, w] : by_form_) r.witnesses.push_back(std::move(w));
    r.nodes_explored = nodes;
    return r;
  }

 private:
  std::size_t cap_;
  std::size_t canonical_cap_;
  std::optional<Rational> best_;
  std::map<std::string, McsWitness> by_form_;
};

// Label-pair s' and first mcs member for the extended model, memoized.
class LabelMeet {
 public:
  explicit LabelMeet(const FiniteMcsModel& model) : model_(model) {}

  const std::pair<Rational, std::string>& operator()(const std::string& a,
                                                      const std::string& b) {
    auto key = std::make_pair(a, b);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    const auto ia = model_.index_of(a);
    const auto ib = model_.index_of(b);
    const auto members = max_common_subelements(model_, ia, ib);
    auto value = std::make_pair(model_.size_of(members.front()), model_.id(members.front()));
    return memo_.emplace(std::move(key), std::move(value)).first->second;
  }

 private:
  const FiniteMcsModel& model_;
  std::map<std::pair<std::string, std::string>, std::pair<Rational, std::string>> memo_;
};

void require_within(const LabeledGraph& g1, const LabeledGraph& g2, std::size_t cap,
                    const char* what) {
  const std::size_t n = std::max(g1.vertex_count(), g2.vertex_count());
  if (n > cap) throw CapExceeded(what, n, cap);
}

std::size_t canonical_cap_for(const McsParams& params) {
  return std::max({kDefaultCanonicalCap, params.vertex_cap, kBruteForceVertexCap});
}

// Builds the common graph of a partial vertex map phi (g1 -> g2, sorted by
// g1 vertex) under `kind`. Every compatible shared edge is kept, which is
// what any maximizer must do because all weights are positive.
McsWitness witness_from_map(GraphModelKind kind, const LabeledGraph& g1,
                            const LabeledGraph& g2,
                            const std::vector<std::pair<VertexIndex, VertexIndex>>& phi,
                            LabelMeet* vmeet, LabelMeet* emeet) {
  McsWitness w;
  w.into_g1.kind = embedding_kind(kind);
  w.into_g2.kind = embedding_kind(kind);
  for (const auto& [u, v] : phi) {
    std::string label = kind == GraphModelKind::E
                            ? (*vmeet)(g1.vertex_label(u), g2.vertex_label(v)).second
                            : g1.vertex_label(u);
    w.common.add_vertex(g1.vertex_id(u), std::move(label));
    w.into_g1.vertex_map.push_back(u);
    w.into_g2.vertex_map.push_back(v);
  }
  for (std::size_t i = 0; i < phi.size(); ++i) {
    for (std::size_t j = i + 1; j < phi.size(); ++j) {
      const std::string* e1 = g1.edge_label(phi[i].first, phi[j].first);
      const std::string* e2 = g2.edge_label(phi[i].second, phi[j].second);
      if (!e1 || !e2) continue;
      if (kind == GraphModelKind::E) {
        w.common.add_edge_at(i, j, (*emeet)(*e1, *e2).second);
      } else if (*e1 == *e2) {
        w.common.add_edge_at(i, j, *e1);
      }
    }
  }
  return w;
}

LabeledGraph vertex_subset(const LabeledGraph& g, unsigned mask) {
  LabeledGraph h;
  for (VertexIndex i = 0; i < g.vertex_count(); ++i)
    if (mask & (1u << i)) h.add_vertex(g.vertex_id(i), g.vertex_label(i));
  return h;
}

std::vector<VertexIndex> mask_members(unsigned mask, std::size_t n) {
  std::vector<VertexIndex> out;
  for (VertexIndex i = 0; i < n; ++i)
    if (mask & (1u << i)) out.push_back(i);
  return out;
}

// Every injective edge-preserving map of `pattern` into `host`, labels ignored.
void for_each_structural_embedding(const LabeledGraph& pattern, const LabeledGraph& host,
                                   const std::function<void(const std::vector<VertexIndex>&)>& fn) {
  std::vector<VertexIndex> map(pattern.vertex_count());
  std::vector<bool> used(host.vertex_count(), false);
  std::function<void(VertexIndex)> rec = [&](VertexIndex k) {
    if (k == pattern.vertex_count()) {
      fn(map);
      return;
    }
    for (VertexIndex h = 0; h < host.vertex_count(); ++h) {
      if (used[h]) continue;
      bool ok = true;
      for (VertexIndex j = 0; j < k && ok; ++j) {
        if (pattern.has_edge(j, k) && !host.has_edge(map[j], h)) ok = false;
      }
      if (!ok) continue;
      map[k] = h;
      used[h] = true;
      rec(k + 1);
      used[h] = false;
    }
  };
  rec(0);
}

McsResult brute_force_labeled(GraphModelKind kind, const LabeledGraph& g1,
                              const LabeledGraph& g2, const McsParams& params) {
  WitnessCollector collector(params.witness_cap, canonical_cap_for(params));
  std::uint64_t nodes = 0;
  const std::size_t n1 = g1.vertex_count();
  for (unsigned mask = 0; mask < (1u << n1); ++mask) {
    const auto members = mask_members(mask, n1);
    std::vector<std::pair<std::size_t, std::size_t>> inside;  // local indices
    for (std::size_t i = 0; i < members.size(); ++i)
      for (std::size_t j = i + 1; j < members.size(); ++j)
        if (g1.has_edge(members[i], members[j])) inside.emplace_back(i, j);

    const bool induced = kind == GraphModelKind::I;
    const unsigned edge_masks = induced ? 1u : (1u << inside.size());
    for (unsigned emask = 0; emask < edge_masks; ++emask) {
      ++nodes;
      LabeledGraph h = vertex_subset(g1, mask);
      for (std::size_t k = 0; k < inside.size(); ++k) {
        if (induced || (emask & (1u << k))) {
          const auto [i, j] = inside[k];
          h.add_edge_at(i, j, *g1.edge_label(members[i], members[j]));
        }
      }
      auto into_g2 = induced ? find_induced_embedding(h, g2) : find_subgraph_embedding(h, g2);
      if (!into_g2) continue;
      const Rational size = graph_size(kind, h, params);
      collector.offer(size, [&] {
        McsWitness w;
        w.common = h;
        w.into_g1 = Embedding{members, embedding_kind(kind)};
        w.into_g2 = *into_g2;
        return w;
      });
    }
  }
  return collector.finish(nodes);
}

// Enumerate unlabeled subgraphs of g1, all their structural embeddings into
// g2, and relabel every matched vertex and edge with a maximum common label.
McsResult brute_force_extended(const LabeledGraph& g1, const LabeledGraph& g2,
                               const McsParams& params) {
  const auto& vm = *params.models.vertex;
  const auto& em = *params.models.edge;
  WitnessCollector collector(params.witness_cap, canonical_cap_for(params));
  std::uint64_t nodes = 0;
  const std::size_t n1 = g1.vertex_count();
  for (unsigned mask = 0; mask < (1u << n1); ++mask) {
    const auto members = mask_members(mask, n1);
    std::vector<std::pair<std::size_t, std::size_t>> inside;
    for (std::size_t i = 0; i < members.size(); ++i)
      for (std::size_t j = i + 1; j < members.size(); ++j)
        if (g1.has_edge(members[i], members[j])) inside.emplace_back(i, j);

    for (unsigned emask = 0; emask < (1u << inside.size()); ++emask) {
      LabeledGraph shape;
      for (std::size_t i = 0; i < members.size(); ++i) shape.add_vertex(std::to_string(i), "");
      for (std::size_t k = 0; k < inside.size(); ++k)
        if (emask & (1u << k)) shape.add_edge_at(inside[k].first, inside[k].second, "");

      for_each_structural_embedding(shape, g2, [&](const std::vector<VertexIndex>& psi) {
        ++nodes;
        LabeledGraph common;
        Rational size = 0;
        for (std::size_t i = 0; i < members.size(); ++i) {
          const auto best = max_common_subelements(vm, vm.index_of(g1.vertex_label(members[i])),
                                                   vm.index_of(g2.vertex_label(psi[i])));
          size += vm.size_of(best.front());
          common.add_vertex(g1.vertex_id(members[i]), vm.id(best.front()));
        }
        for (std::size_t k = 0; k < inside.size(); ++k) {
          if (!(emask & (1u << k))) continue;
          const auto [i, j] = inside[k];
          const auto best = max_common_subelements(
              em, em.index_of(*g1.edge_label(members[i], members[j])),
              em.index_of(*g2.edge_label(psi[i], psi[j])));
          size += em.size_of(best.front());
          common.add_edge_at(i, j, em.id(best.front()));
        }
        collector.offer(size, [&] {
          McsWitness w;
          w.common = common;
          w.into_g1 = Embedding{members, EmbeddingKind::Extended};
          w.into_g2 = Embedding{psi, EmbeddingKind::Extended};
          return w;
        });
      });
    }
  }
  return collector.finish(nodes);
}

// Branch and bound over partial maps g1 -> g2 for kinds S and E. Vertices of
// g1 are decided in index order; each is mapped to an unused g2 vertex
// (ascending) or left out. Ties with the incumbent are explored so that every
// maximizer is seen.
class PartialMapSearch {
 public:
  PartialMapSearch(GraphModelKind kind, const LabeledGraph& g1, const LabeledGraph& g2,
                   const McsParams& params)
      : kind_(kind),
        g1_(g1),
        g2_(g2),
        params_(params),
        n1_(g1.vertex_count()),
        n2_(g2.vertex_count()),
        collector_(params.witness_cap, canonical_cap_for(params)) {
    if (kind == GraphModelKind::E) {
      vmeet_.emplace(*params.models.vertex);
      emeet_.emplace(*params.models.edge);
    }
    vweight_.assign(n1_ * n2_, std::nullopt);
    vmax_.assign(n1_, Rational(0));
    for (VertexIndex u = 0; u < n1_; ++u)
      for (VertexIndex v = 0; v < n2_; ++v) {
        auto w = vertex_weight(u, v);
        if (w && *w > vmax_[u]) vmax_[u] = *w;
        vweight_[u * n2_ + v] = std::move(w);
      }
    const auto& e1 = g1.edges();
    const auto& e2 = g2.edges();
    emax_.assign(e1.size(), Rational(0));
    for (std::size_t a = 0; a < e1.size(); ++a)
      for (std::size_t b = 0; b < e2.size(); ++b)
        if (auto w = edge_weight(e1[a].label, e2[b].label); w && *w > emax_[a]) emax_[a] = *w;
    phi_.assign(n1_, kUnmapped);
    used_.assign(n2_, false);
  }

  McsResult run() {
    recurse(0, Rational(0));
    return collector_.finish(nodes_);
  }

 private:
  static constexpr VertexIndex kUnmapped = static_cast<VertexIndex>(-1);

  std::optional<Rational> vertex_weight(VertexIndex u, VertexIndex v) {
    if (kind_ == GraphModelKind::E) {
      return (*vmeet_)(g1_.vertex_label(u), g2_.vertex_label(v)).first;
    }
    if (g1_.vertex_label(u) != g2_.vertex_label(v)) return std::nullopt;
    return params_.alpha.weight(g1_.vertex_label(u));
  }

  std::optional<Rational> edge_weight(const std::string& l1, const std::string& l2) {
    if (kind_ == GraphModelKind::E) return (*emeet_)(l1, l2).first;
    if (l1 != l2) return std::nullopt;
    return params_.alpha.weight(l1);
  }

  Rational bound_from(VertexIndex k) const {
    Rational bound = 0;
    for (VertexIndex u = k; u < n1_; ++u) bound += vmax_[u];
    const auto& e1 = g1_.edges();
    for (std::size_t a = 0; a < e1.size(); ++a) {
      const auto hi = e1[a].v;  // u < v, so v is decided last
      if (hi < k) continue;
      if (e1[a].u < k && phi_[e1[a].u] == kUnmapped) continue;
      bound += emax_[a];
    }
    return bound;
  }

  void recurse(VertexIndex k, const Rational& current) {
    ++nodes_;
    if (k == n1_) {
      collector_.offer(current, [&] {
        std::vector<std::pair<VertexIndex, VertexIndex>> pairs;
        for (VertexIndex u = 0; u < n1_; ++u)
          if (phi_[u] != kUnmapped) pairs.emplace_back(u, phi_[u]);
        return witness_from_map(kind_, g1_, g2_, pairs, vmeet_ ? &*vmeet_ : nullptr,
                                emeet_ ? &*emeet_ : nullptr);
      });
      return;
    }
    if (collector_.worse_than_best(current + bound_from(k))) return;

    for (VertexIndex v = 0; v < n2_; ++v) {
      const auto& vw = vweight_[k * n2_ + v];
      if (used_[v] || !vw) continue;
      Rational gain = *vw;
      for (VertexIndex j = 0; j < k; ++j) {
        if (phi_[j] == kUnmapped) continue;
        const std::string* e1 = g1_.edge_label(j, k);
        const std::string* e2 = g2_.edge_label(phi_[j], v);
        if (!e1 || !e2) continue;
        if (auto ew = edge_weight(*e1, *e2)) gain += *ew;
      }
      phi_[k] = v;
      used_[v] = true;
      recurse(k + 1, current + gain);
      used_[v] = false;
      phi_[k] = kUnmapped;
    }
    recurse(k + 1, current);
  }

  GraphModelKind kind_;
  const LabeledGraph& g1_;
  const LabeledGraph& g2_;
  const McsParams& params_;
  std::size_t n1_;
  std::size_t n2_;
  WitnessCollector collector_;
  std::optional<LabelMeet> vmeet_;
  std::optional<LabelMeet> emeet_;
  std::vector<std::optional<Rational>> vweight_;
  std::vector<Rational> vmax_;
  std::vector<Rational> emax_;
  std::vector<VertexIndex> phi_;
  std::vector<bool> used_;
  std::uint64_t nodes_ = 0;
};

// Maximum weighted clique on the labeled modular product of g1 and g2.
// Product vertices are label-compatible pairs (u, v); two pairs are adjacent
// when they are disjoint and agree on edge presence and edge label.
class ModularProductClique {
 public:
  ModularProductClique(const LabeledGraph& g1, const LabeledGraph& g2, const McsParams& params)
      : g1_(g1), g2_(g2), collector_(params.witness_cap, canonical_cap_for(params)) {
    for (VertexIndex u = 0; u < g1.vertex_count(); ++u)
      for (VertexIndex v = 0; v < g2.vertex_count(); ++v)
        if (g1.vertex_label(u) == g2.vertex_label(v)) {
          nodes_.push_back({u, v});
          weights_.push_back(params.alpha.weight(g1.vertex_label(u)));
        }
    const std::size_t m = nodes_.size();
    adjacent_.assign(m * m, 0);
    for (std::size_t a = 0; a < m; ++a)
      for (std::size_t b = a + 1; b < m; ++b) {
        const auto [u1, v1] = nodes_[a];
        const auto [u2, v2] = nodes_[b];
        if (u1 == u2 || v1 == v2) continue;
        const std::string* e1 = g1.edge_label(u1, u2);
        const std::string* e2 = g2.edge_label(v1, v2);
        const bool ok = (!e1 && !e2) || (e1 && e2 && *e1 == *e2);
        adjacent_[a * m + b] = adjacent_[b * m + a] = ok ? 1 : 0;
      }
  }

  McsResult run() {
    std::vector<std::size_t> candidates(nodes_.size());
    for (std::size_t i = 0; i < candidates.size(); ++i) candidates[i] = i;
    expand(candidates, Rational(0));
    return collector_.finish(explored_);
  }

 private:
  // A clique uses each g1 vertex and each g2 vertex at most once, so the
  // candidates can add at most the weight of their distinct g1 (resp. g2)
  // vertices.
  Rational bound(const std::vector<std::size_t>& candidates) const {
    std::map<VertexIndex, Rational> by_u;
    std::map<VertexIndex, Rational> by_v;
    for (auto c : candidates) {
      by_u.emplace(nodes_[c].first, weights_[c]);
      auto [it, fresh] = by_v.emplace(nodes_[c].second, weights_[c]);
      if (!fresh && weights_[c] > it->second) it->second = weights_[c];
    }
    Rational su = 0, sv = 0;
    for (const auto& [u, w] : by_u) su += w;
    for (const auto& [v, w] : by_v) sv += w;
    return su < sv ? su : sv;
  }

  void expand(const std::vector<std::size_t>& candidates, const Rational& current) {
    ++explored_;
    if (candidates.empty()) {
      collector_.offer(current, [&] {
        std::vector<std::pair<VertexIndex, VertexIndex>> pairs;
        for (auto c : clique_) pairs.push_back(nodes_[c]);
        std::sort(pairs.begin(), pairs.end());
        return witness_from_map(GraphModelKind::I, g1_, g2_, pairs, nullptr, nullptr);
      });
      return;
    }
    if (collector_.worse_than_best(current + bound(candidates))) return;
    const std::size_t m = nodes_.size();
    for (std::size_t i = 0; i < candidates.size(); ++i) {
      const auto c = candidates[i];
      std::vector<std::size_t> next;
      for (std::size_t j = i + 1; j < candidates.size(); ++j)
        if (adjacent_[c * m + candidates[j]]) next.push_back(candidates[j]);
      clique_.push_back(c);
      expand(next, current + weights_[c]);
      clique_.pop_back();
      std::vector<std::size_t> rest(candidates.begin() + static_cast<std::ptrdiff_t>(i) + 1,
                                    candidates.end());
      if (collector_.worse_than_best(current + bound(rest))) break;
    }
  }

  const LabeledGraph& g1_;
  const LabeledGraph& g2_;
  WitnessCollector collector_;
  std::vector<std::pair<VertexIndex, VertexIndex>> nodes_;
  std::vector<Rational> weights_;
  std::vector<char> adjacent_;
  std::vector<std::size_t> clique_;
  std::uint64_t explored_ = 0;
};

}  // namespace

McsResult mcs_brute_force(GraphModelKind kind, const LabeledGraph& g1, const LabeledGraph& g2,
                          const McsParams& params) {
  require_within(g1, g2, kBruteForceVertexCap, "graph too large for brute-force MCS");
  graph_size(kind, g1, params);  // validates weights / label models up front
  graph_size(kind, g2, params);
  if (kind == GraphModelKind::E) return brute_force_extended(g1, g2, params);
  return brute_force_labeled(kind, g1, g2, params);
}

McsResult mcs_solve(GraphModelKind kind, const LabeledGraph& g1, const LabeledGraph& g2,
                    const McsParams& params) {
  require_within(g1, g2, params.vertex_cap, "graph too large for the MCS solver");
  graph_size(kind, g1, params);
  graph_size(kind, g2, params);
  if (kind == GraphModelKind::I) return ModularProductClique(g1, g2, params).run();
  return PartialMapSearch(kind, g1, g2, params).run();
}

Rational graph_distance(GraphModelKind kind, MetricKind metric, const LabeledGraph& g1,
                        const LabeledGraph& g2, const McsParams& params) {
  const auto result = mcs_solve(kind, g1, g2, params);
  return metric_value(metric, graph_size(kind, g1, params), graph_size(kind, g2, params),
                      result.best_size);
}

std::vector<std::vector<Rational>> distance_matrix(GraphModelKind kind, MetricKind metric,
                                                   std::span<const LabeledGraph> graphs,
                                                   const McsParams& params) {
  const std::size_t n = graphs.size();
  std::vector<std::vector<Rational>> matrix(n, std::vector<Rational>(n, Rational(0)));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const std::string where =
          "pair (" + std::to_string(i) + ", " + std::to_string(j) + "): ";
      try {
        matrix[i][j] = graph_distance(kind, metric, graphs[i], graphs[j], params);
      } catch (const CapExceeded& e) {
        throw e.with_context(where);
      } catch (const InputError& e) {
        throw InputError(where + e.what());
      } catch (const ModelViolation& e) {
        throw ModelViolation(where + e.what());
      }
      matrix[j][i] = matrix[i][j];
    }
  }
  return matrix;
}

}  // namespace mcsm
