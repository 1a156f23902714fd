// Acceptance harness: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "mcsm/core_model.hpp"
#include "mcsm/errors.hpp"
#include "mcsm/ged.hpp"
#include "mcsm/graph.hpp"
#include "mcsm/io.hpp"
#include "mcsm/mcs.hpp"
#include "mcsm/metric_space.hpp"
#include "support.hpp"

using mcsm::GraphModelKind;
using mcsm::LabeledGraph;
using mcsm::MetricKind;
using mcsm::Rational;
namespace ts = testing_support;

namespace {

const std::string kFixtures = MCSM_FIXTURES;

struct Outcome {
  bool ok = true;
  std::string note;
};

// Keeps the first failure message, counts the rest.
class Failures {
 public:
  void add(const std::string& what) {
    if (count_++ == 0) first_ = what;
  }
  Outcome outcome(const std::string& summary) const {
    if (count_ == 0) return {true, summary};
    return {false, summary + "; " + std::to_string(count_) + " failure(s), first: " + first_};
  }

 private:
  std::size_t count_ = 0;
  std::string first_;
};

std::string str(const Rational& q) { return q.get_str(); }

constexpr GraphModelKind kKinds[] = {GraphModelKind::S, GraphModelKind::I, GraphModelKind::E};

// Fixed label models for kind E: vertex chain z <= a <= b, one edge label.
struct Fixture {
  mcsm::FiniteMcsModel vertex = ts::chain_model({"z", "a", "b"}, {1, 2, 3});
  mcsm::FiniteMcsModel edge = ts::chain_model({"x"}, {1});
  mcsm::McsParams params;
  Fixture() {
    params.alpha.set("a", 1);
    params.alpha.set("b", 1);
    params.alpha.set("x", 1);
    params.models = {&vertex, &edge};
  }
};

Outcome metric_laws_on_random_triples() {
  Fixture fx;
  std::mt19937_64 rng(20240601);
  Failures f;
  std::size_t checks = 0;
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<LabeledGraph> g;
    for (int k = 0; k < 3; ++k) g.push_back(ts::random_graph(rng, 5, {"a", "b"}, {"x"}));
    for (auto kind : kKinds)
      for (auto metric : mcsm::kAllMetricKinds) {
        Rational d[3][3];
        for (int i = 0; i < 3; ++i)
          for (int j = 0; j < 3; ++j) d[i][j] = mcsm::graph_distance(kind, metric, g[i], g[j], fx.params);
        const std::string where = "trial " + std::to_string(trial) + " kind " +
                                  std::string(mcsm::to_string(kind)) + " " +
                                  std::string(mcsm::to_string(metric));
        for (int i = 0; i < 3; ++i) {
          if (d[i][i] != 0) f.add(where + ": M1");
          for (int j = 0; j < 3; ++j) {
            ++checks;
            if (d[i][j] < 0) f.add(where + ": M1 negative");
            if (d[i][j] != d[j][i]) f.add(where + ": M2");
            if ((d[i][j] == 0) != ts::naive_isomorphic(g[i], g[j])) f.add(where + ": M4");
            for (int k = 0; k < 3; ++k)
              if (d[i][k] > d[i][j] + d[j][k]) f.add(where + ": M3");
          }
        }
      }
  }
  return f.outcome(std::to_string(checks) + " ordered pairs over 200 triples x 3 kinds x 4 metrics");
}

Outcome literature_values() {
  Failures f;
  const auto k3 = ts::complete(3);
  const auto p3 = ts::path(3);
  const auto p2 = ts::path(2);
  mcsm::McsParams params;
  params.alpha.set("a", 1);
  params.alpha.set("x", 1);
  auto expect = [&](GraphModelKind kind, MetricKind metric, const LabeledGraph& g1,
                    const LabeledGraph& g2, const Rational& want) {
    const Rational got = mcsm::graph_distance(kind, metric, g1, g2, params);
    const Rational s1 = mcsm::graph_size(kind, g1, params);
    const Rational s2 = mcsm::graph_size(kind, g2, params);
    const Rational oracle = mcsm::metric_value(metric, s1, s2, ts::oracle_best_size(kind, g1, g2, params));
    if (got != want || oracle != want)
      f.add(std::string(mcsm::to_string(metric)) + " got " + str(got) + " oracle " + str(oracle) +
            " want " + str(want));
  };
  expect(GraphModelKind::I, MetricKind::NormalizedMax, k3, p3, Rational(1, 3));
  expect(GraphModelKind::I, MetricKind::NormalizedUnion, k3, p3, Rational(1, 2));
  expect(GraphModelKind::S, MetricKind::SymmetricDifference, p2, p3, Rational(2));
  return f.outcome("K3/P3 induced dc=1/3 dd=1/2, P2/P3 subgraph da=2");
}

Outcome solver_matches_brute_force() {
  Fixture fx;
  const auto universe = mcsm::enumerate_graph_universe(4, {"a", "b"}, {"x"});
  Failures f;
  std::size_t pairs = 0;
  for (auto kind : kKinds)
    for (std::size_t i = 0; i < universe.size(); ++i)
      for (std::size_t j = 0; j < universe.size(); ++j) {
        ++pairs;
        const auto fast = mcsm::mcs_solve(kind, universe[i], universe[j], fx.params).best_size;
        const auto slow = mcsm::mcs_brute_force(kind, universe[i], universe[j], fx.params).best_size;
        if (fast != slow)
          f.add("kind " + std::string(mcsm::to_string(kind)) + " pair (" + std::to_string(i) + ", " +
                std::to_string(j) + "): " + str(fast) + " vs " + str(slow));
      }
  return f.outcome(std::to_string(universe.size()) + " graphs, " + std::to_string(pairs) +
                   " ordered pairs over 3 kinds");
}

mcsm::FiniteMetricSpace random_metric_space(std::mt19937_64& rng, std::size_t n, bool banded) {
  std::vector<Rational> d(n * n, 0);
  std::uniform_int_distribution<int> num(1, 12);
  std::uniform_int_distribution<int> den(1, 5);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b) {
      Rational w(num(rng), den(rng));
      w.canonicalize();
      // Values in [1, 2] always satisfy the triangle inequality.
      if (banded) w = 1 + (w - Rational(mpz_class(w.get_num() / w.get_den())));
      d[a * n + b] = d[b * n + a] = w;
    }
  if (!banded)
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
          if (d[a * n + k] + d[k * n + b] < d[a * n + b]) d[a * n + b] = d[a * n + k] + d[k * n + b];
  std::vector<std::string> points;
  for (std::size_t i = 0; i < n; ++i) points.push_back(std::string(1, static_cast<char>('p' + i)));
  return mcsm::FiniteMetricSpace(points, d);
}

Outcome metric_spaces_become_models() {
  std::mt19937_64 rng(77);
  Failures f;
  std::size_t elements = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 2 + trial % 3;
    const auto space = random_metric_space(rng, n, trial % 2 == 0);
    const auto derived = mcsm::build_model(space, Rational(1 + trial % 4, 2));
    const auto& m = derived.model;
    elements += m.size();
    const std::string where = "space " + std::to_string(trial);
    auto report = mcsm::check_axioms(m);
    if (report.passed()) report.merge(mcsm::check_aux_inequality(m));
    report.merge(mcsm::verify_recovery(space, derived));
    if (!report.passed())
      f.add(where + ": " + std::string(mcsm::to_string(report.violations.front().tag)));
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) {
        const auto ia = m.index_of(space.points()[a]);
        const auto ib = m.index_of(space.points()[b]);
        if (report.passed() &&
            mcsm::distance(m, MetricKind::SymmetricDifference, ia, ib) != space.distance(a, b))
          f.add(where + ": recovered distance differs");
      }
  }
  return f.outcome("50 spaces, " + std::to_string(elements) + " model elements");
}

// Every labeled graph on at most two vertices, not reduced up to isomorphism.
std::vector<LabeledGraph> graphs_up_to_two_vertices() {
  std::vector<LabeledGraph> out{LabeledGraph{}};
  for (const char* a : {"a", "b"}) out.push_back(ts::make_graph({a}, {}));
  for (const char* a : {"a", "b"})
    for (const char* b : {"a", "b"}) {
      out.push_back(ts::make_graph({a, b}, {}));
      out.push_back(ts::make_graph({a, b}, {{0, 1, "x"}}));
    }
  return out;
}

Outcome ged_correspondence() {
  const auto costs = mcsm::EditCostTables::discrete({"a", "b"}, {"x"});
  const auto ctx = mcsm::build_correspondence(2, costs);
  const auto graphs = graphs_up_to_two_vertices();
  Failures f;
  std::uint64_t bijections = 0;
  for (std::size_t i = 0; i < graphs.size(); ++i)
    for (std::size_t j = 0; j < graphs.size(); ++j) {
      const auto r = mcsm::verify_ged_correspondence(ctx, graphs[i], graphs[j]);
      bijections += r.bijections_checked;
      if (!r.passed())
        f.add("pair (" + std::to_string(i) + ", " + std::to_string(j) + "): ged " + str(r.ged) +
              " model " + str(r.model_distance) + ", identity failures " +
              std::to_string(r.identity_failures));
    }
  return f.outcome(std::to_string(graphs.size() * graphs.size()) + " pairs, " +
                   std::to_string(bijections) + " bijections");
}

// Number of differing entries between a mutation and its base.
std::size_t model_changes(const mcsm::FiniteMcsModel& a, const mcsm::FiniteMcsModel& b) {
  if (a.elements() != b.elements()) return 99;
  std::size_t n = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a.size_of(i) != b.size_of(i)) ++n;
    for (std::size_t j = 0; j < a.size(); ++j)
      if (a.leq(i, j) != b.leq(i, j)) ++n;
  }
  return n;
}

std::size_t table_changes(const mcsm::io::MetricTable& a, const mcsm::io::MetricTable& b) {
  if (a.points != b.points) return 99;
  std::size_t n = 0;
  for (std::size_t k = 0; k < a.dist.size(); ++k)
    if (a.dist[k] != b.dist[k]) ++n;
  return n;
}

Outcome mutation_fixtures() {
  const std::string dir = kFixtures + "/mutations/";
  const auto manifest = mcsm::io::load_json_file(dir + "manifest.json");
  Failures f;
  std::size_t count = 0;
  for (const auto& entry : manifest.at("mutations")) {
    ++count;
    const std::string file = entry.at("file");
    const std::string expect = entry.at("expect");
    const auto doc = mcsm::io::load_json_file(dir + file);
    const auto base_doc = mcsm::io::load_json_file(dir + std::string(entry.at("base")));
    mcsm::AxiomReport base_report;
    mcsm::AxiomReport report;
    std::size_t changes = 0;
    if (entry.at("type") == "model") {
      const auto m = mcsm::io::model_from_json(doc);
      const auto base = mcsm::io::model_from_json(base_doc);
      base_report = mcsm::check_axioms(base);
      report = mcsm::check_axioms(m);
      changes = model_changes(base, m);
    } else {
      const auto t = mcsm::io::metric_table_from_json(doc);
      const auto base = mcsm::io::metric_table_from_json(base_doc);
      base_report = mcsm::check_metric_table(base.points, base.dist);
      report = mcsm::check_metric_table(t.points, t.dist);
      changes = table_changes(base, t);
    }
    if (!base_report.passed()) f.add(file + ": base fails");
    if (changes != 1) f.add(file + ": " + std::to_string(changes) + " entries changed");
    bool named = false;
    for (const auto& v : report.violations) named |= mcsm::to_string(v.tag) == expect;
    if (!named) f.add(file + ": expected " + expect);
  }
  return f.outcome(std::to_string(count) + " single-entry mutations");
}

Outcome size_functions_are_monotone() {
  Fixture fx;
  const auto universe = mcsm::enumerate_graph_universe(4, {"a", "b"}, {"x"});
  // A skewed weighting next to the uniform one.
  mcsm::McsParams skewed = fx.params;
  skewed.alpha = mcsm::LabelWeighting{};
  skewed.alpha.set("a", Rational(1, 3));
  skewed.alpha.set("b", Rational(5, 2));
  skewed.alpha.set("x", Rational(1, 7));
  Failures f;
  std::size_t related = 0;
  for (const auto* params : {&fx.params, &skewed})
    for (auto kind : kKinds) {
      std::vector<Rational> sizes;
      for (const auto& g : universe) sizes.push_back(mcsm::graph_size(kind, g, *params));
      for (std::size_t i = 0; i < universe.size(); ++i)
        for (std::size_t j = 0; j < universe.size(); ++j) {
          if (!mcsm::graph_leq(kind, universe[i], universe[j], *params)) continue;
          ++related;
          const std::string where = "kind " + std::string(mcsm::to_string(kind)) + " pair (" +
                                    std::to_string(i) + ", " + std::to_string(j) + ")";
          if (sizes[i] > sizes[j]) f.add(where + ": S1");
          // Universe entries are pairwise non-isomorphic.
          if (i != j && sizes[i] >= sizes[j]) f.add(where + ": S2");
        }
    }
  return f.outcome(std::to_string(universe.size()) + " graphs, " + std::to_string(related) +
                   " related pairs over 3 kinds x 2 weightings");
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<Outcome()> run;
    double limit_seconds;
  };
  const std::vector<Criterion> criteria = {
      {"metric laws on random graph triples", metric_laws_on_random_triples, 120},
      {"literature distance values", literature_values, 60},
      {"solver agrees with brute force on the 4-vertex universe", solver_matches_brute_force, 600},
      {"metric spaces become valid models with exact recovery", metric_spaces_become_models, 300},
      {"edit distance equals model distance on 2-vertex graphs", ged_correspondence, 300},
      {"mutation fixtures name the broken axiom", mutation_fixtures, 60},
      {"size functions are monotone on the 4-vertex universe", size_functions_are_monotone, 600},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = criteria[i].run();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs > criteria[i].limit_seconds) {
      out.ok = false;
      out.note += "; exceeded time limit";
    }
    if (!out.ok) ++failed;
    char timing[32];
    std::snprintf(timing, sizeof timing, "%.2fs", secs);
    std::cout << (out.ok ? "PASS" : "FAIL") << " [" << (i + 1) << "] " << criteria[i].name << " ("
              << out.note << ", " << timing << ")\n";
  }
  std::cout << (failed == 0 ? "ALL PASS" : std::to_string(failed) + " FAILED") << "\n";
  return failed == 0 ? 0 : 1;
}
