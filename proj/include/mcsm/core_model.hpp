#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "mcsm/rational.hpp"

namespace mcsm {

using ElementIndex = std::size_t;

/// An explicitly enumerated (X, order, size) triple.
///
/// Elements are addressed by position; identifiers are unique strings. The
/// order is stored as a dense relation table and is taken as given: nothing
/// is closed implicitly by the raw constructor, so a broken relation can be
/// represented and then diagnosed by check_axioms.
class FiniteMcsModel {
 public:
  FiniteMcsModel() = default;

  /// Raw constructor. `order` is row-major n*n, order[i*n+j] != 0 iff i <= j.
  /// Throws InputError on duplicate ids, shape mismatch, or negative sizes.
  FiniteMcsModel(std::vector<std::string> elements, std::vector<char> order,
                 std::vector<Rational> sizes);

  /// Builds from identifier pairs. The reflexive closure is always added;
  /// the transitive closure only when `close_transitively` is set.
  static FiniteMcsModel from_pairs(
      std::vector<std::string> elements,
      const std::vector<std::pair<std::string, std::string>>& pairs,
      const std::vector<std::pair<std::string, Rational>>& sizes,
      bool close_transitively = false);

  std::size_t size() const noexcept { return elements_.size(); }
  const std::vector<std::string>& elements() const noexcept { return elements_; }
  const std::string& id(ElementIndex i) const { return elements_.at(i); }

  /// Throws InputError for an unknown identifier.
  ElementIndex index_of(std::string_view id) const;
  std::optional<ElementIndex> find(std::string_view id) const;

  bool leq(ElementIndex a, ElementIndex b) const {
    return order_[a * elements_.size() + b] != 0;
  }
  const Rational& size_of(ElementIndex i) const { return sizes_.at(i); }
  const std::vector<Rational>& sizes() const noexcept { return sizes_; }

  /// Copies with one entry changed; used to build mutated fixtures.
  FiniteMcsModel with_size(ElementIndex i, Rational value) const;
  FiniteMcsModel with_order(ElementIndex a, ElementIndex b, bool related) const;

 private:
  std::vector<std::string> elements_;
  std::vector<char> order_;
  std::vector<Rational> sizes_;
  std::unordered_map<std::string, ElementIndex> index_;
};

enum class MetricKind {
  SymmetricDifference,  // d_a
  MaxMinusCommon,       // d_b
  NormalizedMax,        // d_c
  NormalizedUnion,      // d_d
};

inline constexpr MetricKind kAllMetricKinds[] = {
    MetricKind::SymmetricDifference, MetricKind::MaxMinusCommon,
    MetricKind::NormalizedMax, MetricKind::NormalizedUnion};

/// Accepts "da".."dd" (also "a".."d"). Throws InputError otherwise.
MetricKind parse_metric_kind(std::string_view text);
std::string_view to_string(MetricKind kind);

enum class AxiomTag { R1, R2, R3, S1, S2, A1p, A2, M1, M2, M3, M4, Aux, Recovery };

std::string_view to_string(AxiomTag tag);

struct Violation {
  AxiomTag tag;
  std::vector<std::string> witness;
  std::string detail;
};

struct AxiomReport {
  std::vector<Violation> violations;

  bool passed() const noexcept { return violations.empty(); }
  bool has(AxiomTag tag) const;
  void merge(const AxiomReport& other);
};

inline constexpr std::size_t kDefaultElementCap = 64;

/// { x : x <= y for every y in subset }, in element order. An empty subset
/// yields every element.
std::vector<ElementIndex> common_subelements(const FiniteMcsModel& model,
                                             const std::vector<ElementIndex>& subset);

/// s'({x1, x2}). Throws ModelViolation if the pair has no common subelement.
Rational max_common_size(const FiniteMcsModel& model, ElementIndex x1, ElementIndex x2);

/// mcs({x1, x2}), sorted by identifier.
std::vector<ElementIndex> max_common_subelements(const FiniteMcsModel& model,
                                                 ElementIndex x1, ElementIndex x2);

/// The four distance formulas on raw sizes. Throws ContractViolation unless
/// 0 <= s12 <= min(s1, s2).
Rational metric_value(MetricKind kind, const Rational& s1, const Rational& s2,
                      const Rational& s12);

Rational distance(const FiniteMcsModel& model, MetricKind kind, ElementIndex x1,
                  ElementIndex x2);

/// Exhaustive R1-R3, S1-S2, A1' and A2 check. Reports the lexicographically
/// smallest witness (by element position) for each failed axiom.
AxiomReport check_axioms(const FiniteMcsModel& model,
                         std::size_t cap = kDefaultElementCap);

/// Exhaustive M1-M4 check of `distance` for one metric kind.
AxiomReport check_metric_laws(const FiniteMcsModel& model, MetricKind kind,
                              std::size_t cap = kDefaultElementCap);

/// s'(x1,x2) + s'(x2,x3) <= s(x2) + s'(x1,x3) over every ordered triple.
AxiomReport check_aux_inequality(const FiniteMcsModel& model,
                                 std::size_t cap = kDefaultElementCap);

/// The unique minimum-size element. Throws ModelViolation when the minimum is
/// shared or the minimum is not below every element.
ElementIndex min_size_element(const FiniteMcsModel& model);

}  // namespace mcsm
