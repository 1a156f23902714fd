#include "mcsm/graph.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <set>
#include <tuple>

#include "mcsm/errors.hpp"

namespace mcsm {

bool is_reserved_label(std::string_view label) {
  return !label.empty() && label.front() == '\0';
}

VertexIndex LabeledGraph::add_vertex(std::string id, std::string label) {
  if (find_vertex(id)) throw InputError("duplicate vertex id '" + id + "'");
  const std::size_t n = ids_.size();
  std::vector<int> grown((n + 1) * (n + 1), -1);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) grown[a * (n + 1) + b] = adjacency_[a * n + b];
  adjacency_ = std::move(grown);
  ids_.push_back(std::move(id));
  labels_.push_back(std::move(label));
  return n;
}

void LabeledGraph::add_edge(std::string_view u, std::string_view v, std::string label) {
  auto a = find_vertex(u);
  auto b = find_vertex(v);
  if (!a) throw InputError("edge endpoint '" + std::string(u) + "' is not a vertex");
  if (!b) throw InputError("edge endpoint '" + std::string(v) + "' is not a vertex");
  add_edge_at(*a, *b, std::move(label));
}

void LabeledGraph::add_edge_at(VertexIndex u, VertexIndex v, std::string label) {
  const std::size_t n = ids_.size();
  if (u >= n || v >= n) throw InputError("edge endpoint out of range");
  if (u == v) throw InputError("self-loop on vertex '" + ids_[u] + "'");
  if (has_edge(u, v)) {
    throw InputError("duplicate edge {" + ids_[u] + ", " + ids_[v] + "}");
  }
  if (u > v) std::swap(u, v);
  const int e = static_cast<int>(edges_.size());
  edges_.push_back({u, v, std::move(label)});
  adjacency_[u * n + v] = e;
  adjacency_[v * n + u] = e;
}

std::optional<VertexIndex> LabeledGraph::find_vertex(std::string_view id) const {
  auto it = std::find(ids_.begin(), ids_.end(), id);
  if (it == ids_.end()) return std::nullopt;
  return static_cast<VertexIndex>(it - ids_.begin());
}

const std::string* LabeledGraph::edge_label(VertexIndex a, VertexIndex b) const {
  const int e = adjacency_[a * ids_.size() + b];
  return e < 0 ? nullptr : &edges_[static_cast<std::size_t>(e)].label;
}

std::size_t LabeledGraph::degree(VertexIndex i) const {
  std::size_t d = 0;
  for (VertexIndex j = 0; j < ids_.size(); ++j) d += has_edge(i, j) ? 1 : 0;
  return d;
}

void LabelWeighting::set(std::string label, Rational weight) {
  weight.canonicalize();
  if (weight <= 0) {
    throw InputError("weight for label '" + label + "' must be positive, got " +
                     to_string(weight));
  }
  weights_[std::move(label)] = std::move(weight);
}

const Rational& LabelWeighting::weight(std::string_view label) const {
  auto it = weights_.find(label);
  if (it == weights_.end()) {
    throw InputError("missing weight for label '" + std::string(label) + "'");
  }
  return it->second;
}

bool LabelWeighting::contains(std::string_view label) const {
  return weights_.find(label) != weights_.end();
}

LabelWeighting LabelWeighting::uniform(std::span<const LabeledGraph> graphs) {
  LabelWeighting alpha;
  for (const auto& g : graphs) {
    for (VertexIndex i = 0; i < g.vertex_count(); ++i) alpha.set(g.vertex_label(i), 1);
    for (const auto& e : g.edges()) alpha.set(e.label, 1);
  }
  return alpha;
}

namespace {

// Backtracking matcher over pattern vertices in index order with host
// candidates ascending, so the first hit is the lexicographically least map.
template <class VertexOk, class EdgeOk>
class Matcher {
 public:
  Matcher(const LabeledGraph& pattern, const LabeledGraph& host, bool induced,
          VertexOk vertex_ok, EdgeOk edge_ok)
      : pattern_(pattern),
        host_(host),
        induced_(induced),
        vertex_ok_(vertex_ok),
        edge_ok_(edge_ok),
        map_(pattern.vertex_count()),
        used_(host.vertex_count(), false) {}

  std::optional<std::vector<VertexIndex>> run() {
    if (pattern_.vertex_count() > host_.vertex_count()) return std::nullopt;
    if (pattern_.edge_count() > host_.edge_count()) return std::nullopt;
    if (extend(0)) return map_;
    return std::nullopt;
  }

 private:
  bool extend(VertexIndex k) {
    if (k == pattern_.vertex_count()) return true;
    for (VertexIndex h = 0; h < host_.vertex_count(); ++h) {
      if (used_[h] || !vertex_ok_(k, h)) continue;
      if (!consistent(k, h)) continue;
      map_[k] = h;
      used_[h] = true;
      if (extend(k + 1)) return true;
      used_[h] = false;
    }
    return false;
  }

  bool consistent(VertexIndex k, VertexIndex h) const {
    for (VertexIndex j = 0; j < k; ++j) {
      const std::string* pe = pattern_.edge_label(j, k);
      const std::string* he = host_.edge_label(map_[j], h);
      if (pe) {
        if (!he || !edge_ok_(*pe, *he)) return false;
      } else if (induced_ && he) {
        return false;
      }
    }
    return true;
  }

  const LabeledGraph& pattern_;
  const LabeledGraph& host_;
  bool induced_;
  VertexOk vertex_ok_;
  EdgeOk edge_ok_;
  std::vector<VertexIndex> map_;
  std::vector<bool> used_;
};

template <class VertexOk, class EdgeOk>
std::optional<Embedding> match(const LabeledGraph& pattern, const LabeledGraph& host,
                               bool induced, EmbeddingKind kind, VertexOk vok, EdgeOk eok) {
  Matcher<VertexOk, EdgeOk> m(pattern, host, induced, vok, eok);
  if (auto map = m.run()) return Embedding{std::move(*map), kind};
  return std::nullopt;
}

auto equal_labels(const LabeledGraph& pattern, const LabeledGraph& host) {
  return [&pattern, &host](VertexIndex p, VertexIndex h) {
    return pattern.vertex_label(p) == host.vertex_label(h);
  };
}

bool same_label(const std::string& a, const std::string& b) { return a == b; }

void require_labels_in(const LabeledGraph& g, const LabelModels& models) {
  if (!models.vertex || !models.edge) throw InputError("extended matching needs label models");
  for (VertexIndex i = 0; i < g.vertex_count(); ++i) {
    if (!models.vertex->find(g.vertex_label(i))) {
      throw InputError("vertex label '" + g.vertex_label(i) + "' not in vertex label model");
    }
  }
  for (const auto& e : g.edges()) {
    if (!models.edge->find(e.label)) {
      throw InputError("edge label '" + e.label + "' not in edge label model");
    }
  }
}

}  // namespace

std::optional<Embedding> find_isomorphism(const LabeledGraph& g1, const LabeledGraph& g2) {
  if (g1.vertex_count() != g2.vertex_count() || g1.edge_count() != g2.edge_count()) {
    return std::nullopt;
  }
  // Equal edge counts plus preserved edges and non-edges make the map a bijection on E.
  return match(g1, g2, true, EmbeddingKind::Induced, equal_labels(g1, g2), same_label);
}

std::optional<Embedding> find_subgraph_embedding(const LabeledGraph& pattern,
                                                 const LabeledGraph& host) {
  return match(pattern, host, false, EmbeddingKind::Subgraph, equal_labels(pattern, host),
               same_label);
}

std::optional<Embedding> find_induced_embedding(const LabeledGraph& pattern,
                                                const LabeledGraph& host) {
  return match(pattern, host, true, EmbeddingKind::Induced, equal_labels(pattern, host),
               same_label);
}

std::optional<Embedding> find_extended_embedding(const LabeledGraph& pattern,
                                                 const LabeledGraph& host,
                                                 const LabelModels& models) {
  require_labels_in(pattern, models);
  require_labels_in(host, models);
  const auto& vm = *models.vertex;
  const auto& em = *models.edge;
  auto vok = [&](VertexIndex p, VertexIndex h) {
    return vm.leq(vm.index_of(pattern.vertex_label(p)), vm.index_of(host.vertex_label(h)));
  };
  auto eok = [&](const std::string& pl, const std::string& hl) {
    return em.leq(em.index_of(pl), em.index_of(hl));
  };
  return match(pattern, host, false, EmbeddingKind::Extended, vok, eok);
}

bool validate_embedding(const LabeledGraph& pattern, const LabeledGraph& host,
                        const Embedding& embedding, const LabelModels& models) {
  const auto& map = embedding.vertex_map;
  if (map.size() != pattern.vertex_count()) return false;
  std::vector<bool> used(host.vertex_count(), false);
  for (auto h : map) {
    if (h >= host.vertex_count() || used[h]) return false;
    used[h] = true;
  }
  const bool extended = embedding.kind == EmbeddingKind::Extended;
  if (extended) {
    require_labels_in(pattern, models);
    require_labels_in(host, models);
  }
  auto vertex_ok = [&](const std::string& p, const std::string& h) {
    if (!extended) return p == h;
    return models.vertex->leq(models.vertex->index_of(p), models.vertex->index_of(h));
  };
  auto edge_ok = [&](const std::string& p, const std::string& h) {
    if (!extended) return p == h;
    return models.edge->leq(models.edge->index_of(p), models.edge->index_of(h));
  };
  for (VertexIndex v = 0; v < pattern.vertex_count(); ++v) {
    if (!vertex_ok(pattern.vertex_label(v), host.vertex_label(map[v]))) return false;
  }
  for (VertexIndex a = 0; a < pattern.vertex_count(); ++a) {
    for (VertexIndex b = a + 1; b < pattern.vertex_count(); ++b) {
      const std::string* pe = pattern.edge_label(a, b);
      const std::string* he = host.edge_label(map[a], map[b]);
      if (pe && (!he || !edge_ok(*pe, *he))) return false;
      if (!pe && he && embedding.kind == EmbeddingKind::Induced) return false;
    }
  }
  return true;
}

LabeledGraph completion(const LabeledGraph& g, std::size_t n, const std::string& eps_v,
                        const std::string& eps_e) {
  if (n < g.vertex_count()) {
    throw InputError("completion size " + std::to_string(n) + " is below vertex count " +
                     std::to_string(g.vertex_count()));
  }
  LabeledGraph out;
  for (VertexIndex i = 0; i < g.vertex_count(); ++i) {
    out.add_vertex(g.vertex_id(i), g.vertex_label(i));
  }
  std::size_t counter = 0;
  while (out.vertex_count() < n) {
    std::string id = "_pad" + std::to_string(counter++);
    if (!out.find_vertex(id)) out.add_vertex(std::move(id), eps_v);
  }
  for (VertexIndex a = 0; a < n; ++a) {
    for (VertexIndex b = a + 1; b < n; ++b) {
      const std::string* label =
          (a < g.vertex_count() && b < g.vertex_count()) ? g.edge_label(a, b) : nullptr;
      out.add_edge_at(a, b, label ? *label : eps_e);
    }
  }
  return out;
}

Rational size_gve(const LabeledGraph& g, const LabelWeighting& alpha) {
  Rational total = 0;
  for (VertexIndex i = 0; i < g.vertex_count(); ++i) total += alpha.weight(g.vertex_label(i));
  for (const auto& e : g.edges()) total += alpha.weight(e.label);
  return total;
}

Rational size_gv(const LabeledGraph& g, const LabelWeighting& alpha) {
  Rational total = 0;
  for (VertexIndex i = 0; i < g.vertex_count(); ++i) total += alpha.weight(g.vertex_label(i));
  return total;
}

void require_positive_label_models(const LabelModels& models) {
  if (!models.vertex || !models.edge) throw InputError("extended model needs label models");
  for (const FiniteMcsModel* m : {models.vertex, models.edge}) {
    for (ElementIndex i = 0; i < m->size(); ++i) {
      if (m->size_of(i) <= 0) {
        throw InputError("label model size of '" + m->id(i) + "' must be positive");
      }
    }
  }
}

Rational size_ges(const LabeledGraph& g, const LabelModels& models) {
  require_positive_label_models(models);
  require_labels_in(g, models);
  Rational total = 0;
  for (VertexIndex i = 0; i < g.vertex_count(); ++i) {
    total += models.vertex->size_of(models.vertex->index_of(g.vertex_label(i)));
  }
  for (const auto& e : g.edges()) {
    total += models.edge->size_of(models.edge->index_of(e.label));
  }
  return total;
}

namespace {

// Exhaustive canonical labeling. Vertices are partitioned into cells by a
// label/degree/neighbourhood invariant; positions are filled cell by cell and
// the lexicographically least adjacency encoding over all cell-respecting
// orders wins. Prefixes that already exceed the best are pruned.
class Canonicalizer {
 public:
  explicit Canonicalizer(const LabeledGraph& g) : n_(g.vertex_count()) {
    std::vector<std::string> vl, el;
    for (VertexIndex i = 0; i < n_; ++i) vl.push_back(g.vertex_label(i));
    for (const auto& e : g.edges()) el.push_back(e.label);
    std::sort(vl.begin(), vl.end());
    vl.erase(std::unique(vl.begin(), vl.end()), vl.end());
    std::sort(el.begin(), el.end());
    el.erase(std::unique(el.begin(), el.end()), el.end());
    auto rank = [](const std::vector<std::string>& sorted, const std::string& s) {
      return static_cast<int>(std::lower_bound(sorted.begin(), sorted.end(), s) -
                              sorted.begin());
    };
    vcode_.resize(n_);
    for (VertexIndex i = 0; i < n_; ++i) vcode_[i] = rank(vl, g.vertex_label(i));
    ecode_.assign(n_ * n_, 0);
    for (const auto& e : g.edges()) {
      const int c = rank(el, e.label) + 1;
      ecode_[e.u * n_ + e.v] = c;
      ecode_[e.v * n_ + e.u] = c;
    }

    using Invariant = std::tuple<int, std::size_t, std::vector<std::pair<int, int>>>;
    std::vector<Invariant> inv(n_);
    for (VertexIndex i = 0; i < n_; ++i) {
      std::vector<std::pair<int, int>> nb;
      for (VertexIndex j = 0; j < n_; ++j)
        if (ecode_[i * n_ + j]) nb.emplace_back(ecode_[i * n_ + j], vcode_[j]);
      std::sort(nb.begin(), nb.end());
      inv[i] = {vcode_[i], nb.size(), std::move(nb)};
    }
    std::vector<VertexIndex> order(n_);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](VertexIndex a, VertexIndex b) { return inv[a] < inv[b]; });
    cell_of_.resize(n_);
    int cell = -1;
    for (std::size_t p = 0; p < n_; ++p) {
      if (p == 0 || inv[order[p]] != inv[order[p - 1]]) ++cell;
      cell_of_[order[p]] = cell;
      position_cell_.push_back(cell);
    }

    // Twins (same label, identical edges to every third vertex) are
    // interchangeable, so only the first unused twin is ever tried.
    twin_of_.resize(n_);
    for (VertexIndex v = 0; v < n_; ++v) {
      twin_of_[v] = v;
      for (VertexIndex u = 0; u < v; ++u) {
        if (twin_of_[u] == u && are_twins(u, v)) {
          twin_of_[v] = u;
          break;
        }
      }
    }
  }

  std::vector<VertexIndex> run() {
    placed_.clear();
    used_.assign(n_, false);
    current_.clear();
    search(kNotBetter);
    return best_order_;
  }

 private:
  static constexpr std::uint64_t kNotBetter = ~std::uint64_t{0};

  // `better_since` is the best-version at which the current prefix became
  // strictly smaller than the best; a later best (found below us) shares the
  // prefix, so comparisons resume.
  void search(std::uint64_t better_since) {
    const std::size_t p = placed_.size();
    if (p == n_) {
      best_ = current_;
      best_order_ = placed_;
      ++version_;
      return;
    }
    for (VertexIndex v = 0; v < n_; ++v) {
      if (used_[v] || cell_of_[v] != position_cell_[p]) continue;
      if (has_unused_earlier_twin(v)) continue;
      const std::size_t mark = current_.size();
      current_.push_back(vcode_[v]);
      for (std::size_t q = 0; q < p; ++q) current_.push_back(ecode_[placed_[q] * n_ + v]);
      std::uint64_t next = better_since == version_ ? better_since : kNotBetter;
      if (next == kNotBetter && !best_.empty()) {
        const auto cmp = std::lexicographical_compare_three_way(
            current_.begin() + static_cast<std::ptrdiff_t>(mark), current_.end(),
            best_.begin() + static_cast<std::ptrdiff_t>(mark),
            best_.begin() + static_cast<std::ptrdiff_t>(current_.size()));
        if (cmp > 0) {
          current_.resize(mark);
          continue;
        }
        if (cmp < 0) next = version_;
      }
      placed_.push_back(v);
      used_[v] = true;
      search(next);
      used_[v] = false;
      placed_.pop_back();
      current_.resize(mark);
    }
  }

  bool are_twins(VertexIndex u, VertexIndex v) const {
    if (vcode_[u] != vcode_[v]) return false;
    for (VertexIndex w = 0; w < n_; ++w) {
      if (w != u && w != v && ecode_[u * n_ + w] != ecode_[v * n_ + w]) return false;
    }
    return true;
  }

  bool has_unused_earlier_twin(VertexIndex v) const {
    for (VertexIndex u = 0; u < v; ++u) {
      if (!used_[u] && twin_of_[u] == twin_of_[v]) return true;
    }
    return false;
  }

  std::size_t n_;
  std::vector<int> vcode_;
  std::vector<int> ecode_;
  std::vector<int> cell_of_;
  std::vector<int> position_cell_;
  std::vector<VertexIndex> twin_of_;
  std::vector<VertexIndex> placed_;
  std::vector<bool> used_;
  std::vector<int> current_;
  std::vector<int> best_;
  std::vector<VertexIndex> best_order_;
  std::uint64_t version_ = 0;
};

void append_token(std::string& out, const std::string& s) {
  out += std::to_string(s.size());
  out += ':';
  out += s;
}

}  // namespace

std::string canonical_form(const LabeledGraph& g, std::size_t cap) {
  if (g.vertex_count() > cap) {
    throw CapExceeded("graph too large for exhaustive canonicalization", g.vertex_count(),
                      cap);
  }
  const auto order = Canonicalizer(g).run();
  std::string out = std::to_string(order.size()) + ";";
  for (auto v : order) append_token(out, g.vertex_label(v));
  for (std::size_t a = 0; a < order.size(); ++a) {
    for (std::size_t b = a + 1; b < order.size(); ++b) {
      const std::string* label = g.edge_label(order[a], order[b]);
      if (label) {
        append_token(out, *label);
      } else {
        out += '-';
      }
    }
  }
  return out;
}

std::vector<LabeledGraph> enumerate_graph_universe(std::size_t max_vertices,
                                                   const std::vector<std::string>& vertex_labels,
                                                   const std::vector<std::string>& edge_labels) {
  if (max_vertices > kMaxUniverseVertices) {
    throw CapExceeded("graph universe too large to enumerate", max_vertices,
                      kMaxUniverseVertices);
  }
  if (max_vertices > 0 && vertex_labels.empty()) {
    throw InputError("graph universe needs at least one vertex label");
  }
  std::vector<std::pair<std::string, LabeledGraph>> found;
  std::set<std::string> seen;
  for (std::size_t n = 0; n <= max_vertices; ++n) {
    std::vector<std::pair<VertexIndex, VertexIndex>> pairs;
    for (VertexIndex a = 0; a < n; ++a)
      for (VertexIndex b = a + 1; b < n; ++b) pairs.emplace_back(a, b);
    // Mixed-radix counters: one digit per vertex, one per vertex pair (0 = no edge).
    std::vector<std::size_t> digits(n + pairs.size(), 0);
    std::vector<std::size_t> radix(n, vertex_labels.size());
    radix.resize(digits.size(), edge_labels.size() + 1);
    while (true) {
      LabeledGraph g;
      for (VertexIndex v = 0; v < n; ++v) {
        g.add_vertex("v" + std::to_string(v), vertex_labels[digits[v]]);
      }
      for (std::size_t k = 0; k < pairs.size(); ++k) {
        if (digits[n + k]) g.add_edge_at(pairs[k].first, pairs[k].second,
                                         edge_labels[digits[n + k] - 1]);
      }
      auto key = canonical_form(g);
      if (seen.insert(key).second) found.emplace_back(std::move(key), std::move(g));
      std::size_t i = 0;
      while (i < digits.size() && ++digits[i] == radix[i]) digits[i++] = 0;
      if (i == digits.size()) break;
    }
  }
  std::stable_sort(found.begin(), found.end(), [](const auto& a, const auto& b) {
    return std::pair(a.second.vertex_count(), a.first) <
           std::pair(b.second.vertex_count(), b.first);
  });
  std::vector<LabeledGraph> out;
  for (auto& [key, g] : found) out.push_back(std::move(g));
  return out;
}

}  // namespace mcsm
