#include "mcsm/core_model.hpp"

#include <algorithm>

#include "mcsm/errors.hpp"

namespace mcsm {
namespace {

void require_index(const FiniteMcsModel& model, ElementIndex i) {
  if (i >= model.size()) {
    throw InputError("element index " + std::to_string(i) + " out of range");
  }
}

void require_cap(const FiniteMcsModel& model, std::size_t cap) {
  if (model.size() > cap) {
    throw CapExceeded("model has too many elements for exhaustive checking",
                      model.size(), cap);
  }
}

std::optional<Rational> pair_max_common(const FiniteMcsModel& model, ElementIndex a,
                                        ElementIndex b) {
  std::optional<Rational> best;
  for (ElementIndex x = 0; x < model.size(); ++x) {
    if (model.leq(x, a) && model.leq(x, b)) {
      if (!best || model.size_of(x) > *best) best = model.size_of(x);
    }
  }
  return best;
}

// Row-major table of s' for every ordered pair; nullopt where cs is empty.
std::vector<std::optional<Rational>> max_common_table(const FiniteMcsModel& model) {
  const std::size_t n = model.size();
  std::vector<std::optional<Rational>> table(n * n);
  for (ElementIndex a = 0; a < n; ++a) {
    for (ElementIndex b = a; b < n; ++b) {
      table[a * n + b] = pair_max_common(model, a, b);
      table[b * n + a] = table[a * n + b];
    }
  }
  return table;
}

std::vector<std::string> ids(const FiniteMcsModel& model,
                             std::initializer_list<ElementIndex> idx) {
  std::vector<std::string> out;
  out.reserve(idx.size());
  for (auto i : idx) out.push_back(model.id(i));
  return out;
}

}  // namespace

FiniteMcsModel::FiniteMcsModel(std::vector<std::string> elements, std::vector<char> order,
                               std::vector<Rational> sizes)
    : elements_(std::move(elements)), order_(std::move(order)), sizes_(std::move(sizes)) {
  const std::size_t n = elements_.size();
  if (order_.size() != n * n) throw InputError("order table shape does not match elements");
  if (sizes_.size() != n) throw InputError("size table shape does not match elements");
  for (ElementIndex i = 0; i < n; ++i) {
    if (!index_.emplace(elements_[i], i).second) {
      throw InputError("duplicate element identifier '" + elements_[i] + "'");
    }
    sizes_[i].canonicalize();
    if (sizes_[i] < 0) {
      throw InputError("negative size for element '" + elements_[i] + "'");
    }
  }
}

FiniteMcsModel FiniteMcsModel::from_pairs(
    std::vector<std::string> elements,
    const std::vector<std::pair<std::string, std::string>>& pairs,
    const std::vector<std::pair<std::string, Rational>>& sizes, bool close_transitively) {
  const std::size_t n = elements.size();
  std::unordered_map<std::string, ElementIndex> index;
  for (ElementIndex i = 0; i < n; ++i) {
    if (!index.emplace(elements[i], i).second) {
      throw InputError("duplicate element identifier '" + elements[i] + "'");
    }
  }
  auto lookup = [&](const std::string& id) {
    auto it = index.find(id);
    if (it == index.end()) throw InputError("unknown element identifier '" + id + "'");
    return it->second;
  };

  std::vector<char> order(n * n, 0);
  for (ElementIndex i = 0; i < n; ++i) order[i * n + i] = 1;
  for (const auto& [a, b] : pairs) order[lookup(a) * n + lookup(b)] = 1;
  if (close_transitively) {
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t i = 0; i < n; ++i)
        if (order[i * n + k])
          for (std::size_t j = 0; j < n; ++j)
            if (order[k * n + j]) order[i * n + j] = 1;
  }

  std::vector<std::optional<Rational>> assigned(n);
  for (const auto& [id, value] : sizes) {
    auto i = lookup(id);
    if (assigned[i]) throw InputError("size given twice for '" + id + "'");
    assigned[i] = value;
  }
  std::vector<Rational> size_values;
  size_values.reserve(n);
  for (ElementIndex i = 0; i < n; ++i) {
    if (!assigned[i]) throw InputError("missing size for '" + elements[i] + "'");
    size_values.push_back(*assigned[i]);
  }
  return FiniteMcsModel(std::move(elements), std::move(order), std::move(size_values));
}

ElementIndex FiniteMcsModel::index_of(std::string_view id) const {
  if (auto i = find(id)) return *i;
  throw InputError("unknown element identifier '" + std::string(id) + "'");
}

std::optional<ElementIndex> FiniteMcsModel::find(std::string_view id) const {
  auto it = index_.find(std::string(id));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

FiniteMcsModel FiniteMcsModel::with_size(ElementIndex i, Rational value) const {
  auto sizes = sizes_;
  sizes.at(i) = std::move(value);
  return FiniteMcsModel(elements_, order_, std::move(sizes));
}

FiniteMcsModel FiniteMcsModel::with_order(ElementIndex a, ElementIndex b, bool related) const {
  auto order = order_;
  order.at(a * elements_.size() + b) = related ? 1 : 0;
  return FiniteMcsModel(elements_, std::move(order), sizes_);
}

MetricKind parse_metric_kind(std::string_view text) {
  if (text == "da" || text == "a") return MetricKind::SymmetricDifference;
  if (text == "db" || text == "b") return MetricKind::MaxMinusCommon;
  if (text == "dc" || text == "c") return MetricKind::NormalizedMax;
  if (text == "dd" || text == "d") return MetricKind::NormalizedUnion;
  throw InputError("unknown metric '" + std::string(text) + "' (expected da, db, dc or dd)");
}

std::string_view to_string(MetricKind kind) {
  switch (kind) {
    case MetricKind::SymmetricDifference: return "da";
    case MetricKind::MaxMinusCommon: return "db";
    case MetricKind::NormalizedMax: return "dc";
    case MetricKind::NormalizedUnion: return "dd";
  }
  return "?";
}

std::string_view to_string(AxiomTag tag) {
  switch (tag) {
    case AxiomTag::R1: return "R1";
    case AxiomTag::R2: return "R2";
    case AxiomTag::R3: return "R3";
    case AxiomTag::S1: return "S1";
    case AxiomTag::S2: return "S2";
    case AxiomTag::A1p: return "A1'";
    case AxiomTag::A2: return "A2";
    case AxiomTag::M1: return "M1";
    case AxiomTag::M2: return "M2";
    case AxiomTag::M3: return "M3";
    case AxiomTag::M4: return "M4";
    case AxiomTag::Aux: return "AUX";
    case AxiomTag::Recovery: return "RECOVERY";
  }
  return "?";
}

bool AxiomReport::has(AxiomTag tag) const {
  return std::any_of(violations.begin(), violations.end(),
                     [tag](const Violation& v) { return v.tag == tag; });
}

void AxiomReport::merge(const AxiomReport& other) {
  violations.insert(violations.end(), other.violations.begin(), other.violations.end());
}

std::vector<ElementIndex> common_subelements(const FiniteMcsModel& model,
                                             const std::vector<ElementIndex>& subset) {
  for (auto y : subset) require_index(model, y);
  std::vector<ElementIndex> out;
  for (ElementIndex x = 0; x < model.size(); ++x) {
    if (std::all_of(subset.begin(), subset.end(),
                    [&](ElementIndex y) { return model.leq(x, y); })) {
      out.push_back(x);
    }
  }
  return out;
}

Rational max_common_size(const FiniteMcsModel& model, ElementIndex x1, ElementIndex x2) {
  require_index(model, x1);
  require_index(model, x2);
  auto best = pair_max_common(model, x1, x2);
  if (!best) {
    throw ModelViolation("A1 fails: '" + model.id(x1) + "' and '" + model.id(x2) +
                         "' have no common subelement");
  }
  return *best;
}

std::vector<ElementIndex> max_common_subelements(const FiniteMcsModel& model,
                                                 ElementIndex x1, ElementIndex x2) {
  const Rational best = max_common_size(model, x1, x2);
  std::vector<ElementIndex> out;
  for (auto x : common_subelements(model, {x1, x2})) {
    if (model.size_of(x) == best) out.push_back(x);
  }
  std::sort(out.begin(), out.end(),
            [&](ElementIndex a, ElementIndex b) { return model.id(a) < model.id(b); });
  return out;
}

Rational metric_value(MetricKind kind, const Rational& s1, const Rational& s2,
                      const Rational& s12) {
  if (s12 < 0 || s12 > s1 || s12 > s2) {
    throw ContractViolation("common size " + to_string(s12) + " outside [0, min(" +
                            to_string(s1) + ", " + to_string(s2) + ")]");
  }
  const Rational mx = s1 > s2 ? s1 : s2;
  switch (kind) {
    case MetricKind::SymmetricDifference:
      return Rational(s1 + s2 - 2 * s12);
    case MetricKind::MaxMinusCommon:
      return Rational(mx - s12);
    case MetricKind::NormalizedMax:
      if (s1 == 0 && s2 == 0) return Rational(0);
      return Rational(1 - s12 / mx);
    case MetricKind::NormalizedUnion:
      if (s1 == 0 && s2 == 0) return Rational(0);
      return Rational(1 - s12 / (s1 + s2 - s12));
  }
  throw ContractViolation("unknown metric kind");
}

Rational distance(const FiniteMcsModel& model, MetricKind kind, ElementIndex x1,
                  ElementIndex x2) {
  return metric_value(kind, model.size_of(x1), model.size_of(x2),
                      max_common_size(model, x1, x2));
}

AxiomReport check_axioms(const FiniteMcsModel& model, std::size_t cap) {
  require_cap(model, cap);
  const std::size_t n = model.size();
  AxiomReport report;
  auto add = [&](AxiomTag tag, std::vector<std::string> witness, std::string detail = {}) {
    report.violations.push_back({tag, std::move(witness), std::move(detail)});
  };
  const auto& s = model.sizes();

  for (ElementIndex i = 0; i < n; ++i) {
    if (!model.leq(i, i)) {
      add(AxiomTag::R1, ids(model, {i}), "not below itself");
      break;
    }
  }

  [&] {
    for (ElementIndex i = 0; i < n; ++i)
      for (ElementIndex j = 0; j < n; ++j)
        if (model.leq(i, j))
          for (ElementIndex k = 0; k < n; ++k)
            if (model.leq(j, k) && !model.leq(i, k)) {
              add(AxiomTag::R2, ids(model, {i, j, k}), "first <= second <= third but not first <= third");
              return;
            }
  }();

  [&] {
    for (ElementIndex i = 0; i < n; ++i)
      for (ElementIndex j = 0; j < n; ++j)
        if (i != j && model.leq(i, j) && model.leq(j, i)) {
          add(AxiomTag::R3, ids(model, {i, j}), "distinct elements below each other");
          return;
        }
  }();

  [&] {
    for (ElementIndex i = 0; i < n; ++i)
      for (ElementIndex j = 0; j < n; ++j)
        if (model.leq(i, j) && s[i] > s[j]) {
          add(AxiomTag::S1, ids(model, {i, j}),
              "s=" + to_string(s[i]) + " > " + to_string(s[j]));
          return;
        }
  }();

  [&] {
    for (ElementIndex i = 0; i < n; ++i)
      for (ElementIndex j = 0; j < n; ++j)
        if (i != j && model.leq(i, j) && s[i] == s[j]) {
          add(AxiomTag::S2, ids(model, {i, j}), "equal size " + to_string(s[i]));
          return;
        }
  }();

  const auto common = max_common_table(model);
  [&] {
    for (ElementIndex i = 0; i < n; ++i)
      for (ElementIndex j = 0; j < n; ++j)
        if (!common[i * n + j]) {
          add(AxiomTag::A1p, ids(model, {i, j}), "no common subelement");
          return;
        }
  }();

  // Some x12 in cs({x1,x2}) satisfies the bound iff the largest one does.
  [&] {
    for (ElementIndex a = 0; a < n; ++a)
      for (ElementIndex b = 0; b < n; ++b) {
        const auto& c = common[a * n + b];
        if (!c) continue;
        const Rational need = s[a] + s[b] - *c;
        for (ElementIndex x = 0; x < n; ++x)
          if (model.leq(a, x) && model.leq(b, x) && s[x] < need) {
            add(AxiomTag::A2, ids(model, {a, b, x}),
                "s(x)=" + to_string(s[x]) + " < " + to_string(need));
            return;
          }
      }
  }();

  return report;
}

AxiomReport check_metric_laws(const FiniteMcsModel& model, MetricKind kind,
                              std::size_t cap) {
  require_cap(model, cap);
  const std::size_t n = model.size();
  const auto common = max_common_table(model);
  std::vector<Rational> d(n * n);
  for (ElementIndex i = 0; i < n; ++i)
    for (ElementIndex j = 0; j < n; ++j) {
      const auto& c = common[i * n + j];
      if (!c) {
        throw ModelViolation("A1 fails for '" + model.id(i) + "', '" + model.id(j) + "'");
      }
      try {
        d[i * n + j] = metric_value(kind, model.size_of(i), model.size_of(j), *c);
      } catch (const ContractViolation& e) {
        throw ModelViolation(std::string("size function violates S1: ") + e.what());
      }
    }

  AxiomReport report;
  auto add = [&](AxiomTag tag, std::vector<std::string> witness, std::string detail) {
    report.violations.push_back({tag, std::move(witness), std::move(detail)});
  };
  for (ElementIndex i = 0; i < n; ++i) {
    if (d[i * n + i] != 0) {
      add(AxiomTag::M1, ids(model, {i}), "d=" + to_string(d[i * n + i]));
      break;
    }
  }
  [&] {
    for (ElementIndex i = 0; i < n; ++i)
      for (ElementIndex j = 0; j < n; ++j)
        if (d[i * n + j] != d[j * n + i]) {
          add(AxiomTag::M2, ids(model, {i, j}), "");
          return;
        }
  }();
  [&] {
    for (ElementIndex i = 0; i < n; ++i)
      for (ElementIndex j = 0; j < n; ++j)
        for (ElementIndex k = 0; k < n; ++k)
          if (d[i * n + k] > d[i * n + j] + d[j * n + k]) {
            add(AxiomTag::M3, ids(model, {i, j, k}),
                to_string(d[i * n + k]) + " > " + to_string(d[i * n + j]) + " + " +
                    to_string(d[j * n + k]));
            return;
          }
  }();
  [&] {
    for (ElementIndex i = 0; i < n; ++i)
      for (ElementIndex j = 0; j < n; ++j)
        if (i != j && d[i * n + j] == 0) {
          add(AxiomTag::M4, ids(model, {i, j}), "distinct elements at distance 0");
          return;
        }
  }();
  return report;
}

AxiomReport check_aux_inequality(const FiniteMcsModel& model, std::size_t cap) {
  require_cap(model, cap);
  const std::size_t n = model.size();
  const auto common = max_common_table(model);
  AxiomReport report;
  for (ElementIndex a = 0; a < n; ++a)
    for (ElementIndex b = 0; b < n; ++b)
      for (ElementIndex c = 0; c < n; ++c) {
        const auto& ab = common[a * n + b];
        const auto& bc = common[b * n + c];
        const auto& ac = common[a * n + c];
        if (!ab || !bc || !ac) {
          throw ModelViolation("A1 fails; auxiliary inequality undefined");
        }
        if (*ab + *bc > model.size_of(b) + *ac) {
          report.violations.push_back(
              {AxiomTag::Aux, ids(model, {a, b, c}),
               to_string(*ab + *bc) + " > " + to_string(model.size_of(b) + *ac)});
          return report;
        }
      }
  return report;
}

ElementIndex min_size_element(const FiniteMcsModel& model) {
  if (model.size() == 0) throw ModelViolation("empty model has no minimum");
  ElementIndex best = 0;
  for (ElementIndex i = 1; i < model.size(); ++i)
    if (model.size_of(i) < model.size_of(best)) best = i;
  for (ElementIndex i = 0; i < model.size(); ++i) {
    if (i != best && model.size_of(i) == model.size_of(best)) {
      throw ModelViolation("minimum size shared by '" + model.id(best) + "' and '" +
                           model.id(i) + "'");
    }
    if (!model.leq(best, i)) {
      throw ModelViolation("minimum '" + model.id(best) + "' is not below '" +
                           model.id(i) + "'");
    }
  }
  return best;
}

}  // namespace mcsm
