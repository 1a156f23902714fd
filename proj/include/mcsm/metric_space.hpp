#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "mcsm/core_model.hpp"
#include "mcsm/rational.hpp"

namespace mcsm {

/// Exact M1-M4 check (plus non-negativity, reported as M1) of a dense
/// distance table over `points`. Witnesses use point identifiers.
AxiomReport check_metric_table(const std::vector<std::string>& points,
                               const std::vector<Rational>& table);

/// A finite point set with an exact distance table that is a metric.
class FiniteMetricSpace {
 public:
  FiniteMetricSpace() = default;
  /// `dist` is row-major n*n. Throws InputError naming the first violated
  /// axiom and its witness when the table is not a metric.
  FiniteMetricSpace(std::vector<std::string> points, std::vector<Rational> dist);

  std::size_t size() const noexcept { return points_.size(); }
  const std::vector<std::string>& points() const noexcept { return points_; }
  const Rational& distance(std::size_t a, std::size_t b) const {
    return dist_[a * points_.size() + b];
  }

 private:
  std::vector<std::string> points_;
  std::vector<Rational> dist_;
};

inline constexpr std::size_t kMaxDerivedPoints = 6;

/// Unordered pair of point positions, first < second.
using PointPair = std::pair<std::size_t, std::size_t>;

/// Nonempty set of edges of the complete graph on the points whose
/// endpoints induce a connected subgraph; sorted.
using EdgeSet = std::vector<PointPair>;

/// Either a single point or a connected edge set.
struct DerivedElement {
  enum class Kind { Point, EdgeSet };
  Kind kind = Kind::Point;
  std::size_t point = 0;
  EdgeSet edges;
};

/// Every connected nonempty edge subset of K_n, ordered by bitmask over the
/// lexicographically ordered pairs. Throws CapExceeded above kMaxDerivedPoints.
std::vector<EdgeSet> enumerate_connected_edge_subsets(std::size_t point_count);

struct DerivedModel {
  FiniteMcsModel model;
  /// Aligned with model element positions: points first, then edge sets.
  std::vector<DerivedElement> elements;
};

/// Identifier used for an edge set element, e.g. "{a|b,b|c}".
std::string edge_set_id(const std::vector<std::string>& points, const EdgeSet& edges);

/// Builds the MCS model over points plus connected edge sets. Points get
/// size R = theta + (sum of all distances)/2; an edge set x gets
/// R - (sum of distances over x)/2. Edge sets sit below the points they touch
/// and below each of their subsets. Throws InputError unless theta > 0.
DerivedModel build_model(const FiniteMetricSpace& space, const Rational& theta = Rational(1));

/// For every point pair checks d = s(a) + s(b) - 2 s'({a, b}) and that the
/// single-edge set {{a, b}} is a maximum common subelement. Violations are
/// tagged RECOVERY.
AxiomReport verify_recovery(const FiniteMetricSpace& space, const DerivedModel& derived);

}  // namespace mcsm
