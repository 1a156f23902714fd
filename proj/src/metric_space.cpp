#include "mcsm/metric_space.hpp"

#include <algorithm>
#include <numeric>

#include "mcsm/errors.hpp"

namespace mcsm {

AxiomReport check_metric_table(const std::vector<std::string>& points,
                               const std::vector<Rational>& table) {
  const std::size_t n = points.size();
  if (table.size() != n * n) throw InputError("distance table shape does not match points");
  auto d = [&](std::size_t a, std::size_t b) -> const Rational& { return table[a * n + b]; };
  AxiomReport report;
  auto add = [&](AxiomTag tag, std::vector<std::string> witness, std::string detail) {
    report.violations.push_back({tag, std::move(witness), std::move(detail)});
  };

  [&] {
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        if ((a == b && d(a, b) != 0) || d(a, b) < 0) {
          add(AxiomTag::M1, {points[a], points[b]}, "d=" + to_string(d(a, b)));
          return;
        }
  }();
  [&] {
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = a + 1; b < n; ++b)
        if (d(a, b) != d(b, a)) {
          add(AxiomTag::M2, {points[a], points[b]},
              to_string(d(a, b)) + " != " + to_string(d(b, a)));
          return;
        }
  }();
  [&] {
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        for (std::size_t c = 0; c < n; ++c)
          if (d(a, c) > d(a, b) + d(b, c)) {
            add(AxiomTag::M3, {points[a], points[b], points[c]},
                to_string(d(a, c)) + " > " + to_string(d(a, b)) + " + " + to_string(d(b, c)));
            return;
          }
  }();
  [&] {
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        if (a != b && d(a, b) == 0) {
          add(AxiomTag::M4, {points[a], points[b]}, "distinct points at distance 0");
          return;
        }
  }();
  return report;
}

FiniteMetricSpace::FiniteMetricSpace(std::vector<std::string> points, std::vector<Rational> dist)
    : points_(std::move(points)), dist_(std::move(dist)) {
  auto sorted = points_;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw InputError("duplicate point identifier");
  }
  for (auto& v : dist_) v.canonicalize();
  const auto report = check_metric_table(points_, dist_);
  if (!report.passed()) {
    const auto& v = report.violations.front();
    std::string witness;
    for (const auto& w : v.witness) witness += (witness.empty() ? "" : ", ") + w;
    throw InputError("distance table violates " + std::string(to_string(v.tag)) + " at (" +
                     witness + "): " + v.detail);
  }
}

namespace {

std::vector<PointPair> all_pairs(std::size_t n) {
  std::vector<PointPair> pairs;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b) pairs.emplace_back(a, b);
  return pairs;
}

std::size_t find_root(std::vector<std::size_t>& parent, std::size_t x) {
  while (parent[x] != x) x = parent[x] = parent[parent[x]];
  return x;
}

bool touches(const EdgeSet& edges, std::size_t point) {
  return std::any_of(edges.begin(), edges.end(),
                     [&](const PointPair& e) { return e.first == point || e.second == point; });
}

// a is a superset of b (both sorted).
bool contains_all(const EdgeSet& a, const EdgeSet& b) {
  return std::includes(a.begin(), a.end(), b.begin(), b.end());
}

}  // namespace

std::vector<EdgeSet> enumerate_connected_edge_subsets(std::size_t point_count) {
  if (point_count > kMaxDerivedPoints) {
    throw CapExceeded("too many points for connected edge-set enumeration", point_count,
                      kMaxDerivedPoints);
  }
  const auto pairs = all_pairs(point_count);
  std::vector<EdgeSet> out;
  const std::uint32_t total = 1u << pairs.size();
  for (std::uint32_t mask = 1; mask < total; ++mask) {
    std::vector<std::size_t> parent(point_count);
    std::iota(parent.begin(), parent.end(), 0);
    std::vector<bool> touched(point_count, false);
    EdgeSet edges;
    for (std::size_t k = 0; k < pairs.size(); ++k) {
      if (!(mask & (1u << k))) continue;
      const auto [a, b] = pairs[k];
      edges.push_back(pairs[k]);
      touched[a] = touched[b] = true;
      parent[find_root(parent, a)] = find_root(parent, b);
    }
    std::size_t roots = 0;
    for (std::size_t p = 0; p < point_count; ++p)
      if (touched[p] && find_root(parent, p) == p) ++roots;
    if (roots == 1) out.push_back(std::move(edges));
  }
  return out;
}

std::string edge_set_id(const std::vector<std::string>& points, const EdgeSet& edges) {
  std::string id = "{";
  for (std::size_t k = 0; k < edges.size(); ++k) {
    if (k) id += ',';
    id += points[edges[k].first] + "|" + points[edges[k].second];
  }
  return id + "}";
}

DerivedModel build_model(const FiniteMetricSpace& space, const Rational& theta) {
  if (theta <= 0) throw InputError("theta must be positive, got " + to_string(theta));
  const std::size_t n = space.size();
  const auto& points = space.points();

  Rational half_total = 0;
  for (const auto& [a, b] : all_pairs(n)) half_total += space.distance(a, b);
  half_total /= 2;
  const Rational top = theta + half_total;

  DerivedModel out;
  std::vector<std::string> ids;
  std::vector<Rational> sizes;
  for (std::size_t p = 0; p < n; ++p) {
    out.elements.push_back({DerivedElement::Kind::Point, p, {}});
    ids.push_back(points[p]);
    sizes.push_back(top);
  }
  if (n >= 2) {
    for (auto& edges : enumerate_connected_edge_subsets(n)) {
      Rational removed = 0;
      for (const auto& [a, b] : edges) removed += space.distance(a, b);
      ids.push_back(edge_set_id(points, edges));
      sizes.push_back(top - removed / 2);
      out.elements.push_back({DerivedElement::Kind::EdgeSet, 0, std::move(edges)});
    }
  }

  const std::size_t m = out.elements.size();
  std::vector<char> order(m * m, 0);
  for (std::size_t i = 0; i < m; ++i) {
    const auto& x = out.elements[i];
    for (std::size_t j = 0; j < m; ++j) {
      const auto& y = out.elements[j];
      bool below = i == j;
      if (x.kind == DerivedElement::Kind::EdgeSet) {
        if (y.kind == DerivedElement::Kind::Point) {
          below = touches(x.edges, y.point);
        } else {
          below = contains_all(x.edges, y.edges);
        }
      }
      order[i * m + j] = below ? 1 : 0;
    }
  }
  try {
    out.model = FiniteMcsModel(std::move(ids), std::move(order), std::move(sizes));
  } catch (const InputError& e) {
    throw InputError(std::string("derived model: ") + e.what());
  }
  return out;
}

AxiomReport verify_recovery(const FiniteMetricSpace& space, const DerivedModel& derived) {
  const auto& model = derived.model;
  const auto& points = space.points();
  AxiomReport report;
  for (std::size_t a = 0; a < space.size(); ++a) {
    for (std::size_t b = a; b < space.size(); ++b) {
      const auto ia = model.index_of(points[a]);
      const auto ib = model.index_of(points[b]);
      const Rational recovered =
          model.size_of(ia) + model.size_of(ib) - 2 * max_common_size(model, ia, ib);
      if (recovered != space.distance(a, b)) {
        report.violations.push_back(
            {AxiomTag::Recovery, {points[a], points[b]},
             "recovered " + to_string(recovered) + " != " + to_string(space.distance(a, b))});
        continue;
      }
      if (a == b) continue;
      const auto single = model.find(edge_set_id(points, {{a, b}}));
      const auto best = max_common_subelements(model, ia, ib);
      if (!single || std::find(best.begin(), best.end(), *single) == best.end()) {
        report.violations.push_back({AxiomTag::Recovery,
                                     {points[a], points[b]},
                                     "single-edge set is not a maximum common subelement"});
      }
    }
  }
  return report;
}

}  // namespace mcsm
