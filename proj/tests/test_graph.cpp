#include <gtest/gtest.h>

#include <numeric>
#include <random>

#include "mcsm/errors.hpp"
#include "mcsm/graph.hpp"
#include "support.hpp"

using mcsm::LabeledGraph;
using mcsm::Rational;
using mcsm::VertexIndex;
using namespace testing_support;

namespace {

// First total map in lexicographic order accepted by `ok`.
std::optional<std::vector<VertexIndex>> first_map(
    const LabeledGraph& p, const LabeledGraph& h,
    const std::function<bool(const std::vector<VertexIndex>&)>& ok) {
  std::optional<std::vector<VertexIndex>> found;
  for_each_partial_map(p.vertex_count(), h.vertex_count(), [&](const std::vector<VertexIndex>& m) {
    if (found || std::find(m.begin(), m.end(), kUnmapped) != m.end()) return;
    if (ok(m)) found = m;
  });
  return found;
}

bool extended_ok(const LabeledGraph& p, const LabeledGraph& h, const mcsm::LabelModels& models,
                 const std::vector<VertexIndex>& m) {
  const auto& vm = *models.vertex;
  const auto& em = *models.edge;
  for (VertexIndex v = 0; v < p.vertex_count(); ++v)
    if (!vm.leq(vm.index_of(p.vertex_label(v)), vm.index_of(h.vertex_label(m[v])))) return false;
  for (const auto& e : p.edges()) {
    const auto* hl = h.edge_label(m[e.u], m[e.v]);
    if (!hl || !em.leq(em.index_of(e.label), em.index_of(*hl))) return false;
  }
  return true;
}

std::vector<VertexIndex> random_perm(std::mt19937_64& rng, std::size_t n) {
  std::vector<VertexIndex> p(n);
  std::iota(p.begin(), p.end(), 0);
  std::shuffle(p.begin(), p.end(), rng);
  return p;
}

}  // namespace

TEST(LabeledGraph, BuildsAndQueries) {
  auto g = path(3);
  EXPECT_EQ(g.vertex_count(), 3u);
  EXPECT_EQ(g.edge_count(), 2u);
  EXPECT_TRUE(g.has_edge(1, 0));
  EXPECT_FALSE(g.has_edge(0, 2));
  ASSERT_NE(g.edge_label(2, 1), nullptr);
  EXPECT_EQ(*g.edge_label(2, 1), "x");
  EXPECT_EQ(g.edge_label(0, 2), nullptr);
  EXPECT_EQ(g.degree(1), 2u);
  EXPECT_EQ(g.find_vertex("v2"), std::optional<VertexIndex>(2));
  EXPECT_FALSE(g.find_vertex("zz").has_value());
  EXPECT_TRUE(LabeledGraph{}.empty());
}

TEST(LabeledGraph, RejectsMalformedStructure) {
  LabeledGraph g;
  g.add_vertex("u", "a");
  g.add_vertex("w", "a");
  EXPECT_THROW(g.add_vertex("u", "b"), mcsm::InputError);
  EXPECT_THROW(g.add_edge("u", "u", "x"), mcsm::InputError);
  EXPECT_THROW(g.add_edge("u", "q", "x"), mcsm::InputError);
  g.add_edge("u", "w", "x");
  EXPECT_THROW(g.add_edge("w", "u", "y"), mcsm::InputError);
}

TEST(LabelWeighting, ValidatesAndNamesMissingLabels) {
  mcsm::LabelWeighting alpha;
  EXPECT_THROW(alpha.set("a", 0), mcsm::InputError);
  EXPECT_THROW(alpha.set("a", -1), mcsm::InputError);
  alpha.set("a", Rational(3, 2));
  EXPECT_EQ(alpha.weight("a"), Rational(3, 2));
  try {
    alpha.weight("zebra");
    FAIL() << "expected InputError";
  } catch (const mcsm::InputError& e) {
    EXPECT_NE(std::string(e.what()).find("zebra"), std::string::npos);
  }
  const std::vector<LabeledGraph> graphs{path(2, "a", "x"), make_graph({"b"})};
  const auto uniform = mcsm::LabelWeighting::uniform(graphs);
  EXPECT_EQ(uniform.weights().size(), 3u);
  EXPECT_EQ(uniform.weight("b"), 1);
  EXPECT_EQ(uniform.weight("x"), 1);
}

TEST(Isomorphism, PermutedCopiesAndNearMisses) {
  const auto p3 = path(3);
  EXPECT_TRUE(mcsm::is_isomorphic(p3, permuted(p3, {2, 0, 1})));
  EXPECT_FALSE(mcsm::is_isomorphic(p3, complete(3)));
  EXPECT_FALSE(mcsm::is_isomorphic(p3, path(3, "b")));
  EXPECT_FALSE(mcsm::is_isomorphic(p3, path(3, "a", "y")));
  EXPECT_TRUE(mcsm::is_isomorphic(LabeledGraph{}, LabeledGraph{}));
}

TEST(Embeddings, KnownCases) {
  EXPECT_TRUE(mcsm::subgraph_isomorphic(path(3), complete(3)));
  EXPECT_FALSE(mcsm::induced_subgraph_isomorphic(path(3), complete(3)));
  EXPECT_TRUE(mcsm::induced_subgraph_isomorphic(path(2), path(3)));
  EXPECT_TRUE(mcsm::subgraph_isomorphic(LabeledGraph{}, path(2)));
  EXPECT_FALSE(mcsm::subgraph_isomorphic(path(4), path(3)));
}

TEST(Embeddings, AgreeWithNaiveEnumerationAndReturnLeastMap) {
  std::mt19937_64 rng(3);
  const std::vector<std::string> vl{"a", "b"};
  const std::vector<std::string> el{"x", "y"};
  for (int trial = 0; trial < 400; ++trial) {
    const auto p = random_graph(rng, 4, vl, el, 0.5);
    const auto h = random_graph(rng, 5, vl, el, 0.6);
    for (bool induced : {false, true}) {
      const auto expect = first_map(p, h, [&](const std::vector<VertexIndex>& m) {
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
      const auto got = induced ? mcsm::find_induced_embedding(p, h)
                               : mcsm::find_subgraph_embedding(p, h);
      ASSERT_EQ(got.has_value(), expect.has_value()) << "trial " << trial;
      if (got) {
        EXPECT_EQ(got->vertex_map, *expect);
        EXPECT_TRUE(mcsm::validate_embedding(p, h, *got));
      }
    }
  }
}

TEST(Embeddings, ExtendedFollowsLabelOrders) {
  const auto vm = chain_model({"c", "a", "b"}, {1, 2, 3});
  const auto em = chain_model({"y", "x"}, {1, 2});
  const mcsm::LabelModels models{&vm, &em};
  const auto low = make_graph({"c", "a"}, {{0, 1, "y"}});
  const auto high = make_graph({"b", "b"}, {{0, 1, "x"}});
  EXPECT_TRUE(mcsm::extended_subgraph_isomorphic(low, high, models));
  EXPECT_FALSE(mcsm::extended_subgraph_isomorphic(high, low, models));
  EXPECT_THROW(mcsm::find_extended_embedding(make_graph({"q"}), high, models), mcsm::InputError);

  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 300; ++trial) {
    const auto p = random_graph(rng, 4, {"c", "a", "b"}, {"y", "x"});
    const auto h = random_graph(rng, 5, {"c", "a", "b"}, {"y", "x"});
    const auto expect = first_map(p, h, [&](const std::vector<VertexIndex>& m) {
      return extended_ok(p, h, models, m);
    });
    const auto got = mcsm::find_extended_embedding(p, h, models);
    ASSERT_EQ(got.has_value(), expect.has_value());
    if (got) {
      EXPECT_EQ(got->vertex_map, *expect);
      EXPECT_TRUE(mcsm::validate_embedding(p, h, *got, models));
    }
  }
}

TEST(Embeddings, ValidateRejectsBrokenMaps) {
  const auto p = path(2);
  const auto h = path(3);
  mcsm::Embedding good{{0, 1}, mcsm::EmbeddingKind::Subgraph};
  EXPECT_TRUE(mcsm::validate_embedding(p, h, good));
  mcsm::Embedding not_edge{{0, 2}, mcsm::EmbeddingKind::Subgraph};
  EXPECT_FALSE(mcsm::validate_embedding(p, h, not_edge));
  mcsm::Embedding not_injective{{1, 1}, mcsm::EmbeddingKind::Subgraph};
  EXPECT_FALSE(mcsm::validate_embedding(p, h, not_injective));
  mcsm::Embedding wrong_length{{0}, mcsm::EmbeddingKind::Subgraph};
  EXPECT_FALSE(mcsm::validate_embedding(p, h, wrong_length));
}

TEST(CanonicalForm, InvariantUnderRelabelingAndSeparatesNonIsomorphic) {
  std::mt19937_64 rng(9);
  const std::vector<std::string> vl{"a", "b"};
  const std::vector<std::string> el{"x", "y"};
  for (int trial = 0; trial < 300; ++trial) {
    const auto g = random_graph(rng, 6, vl, el);
    EXPECT_EQ(mcsm::canonical_form(g), mcsm::canonical_form(permuted(g, random_perm(rng, g.vertex_count()))));
    const auto h = random_graph(rng, 4, vl, {"x"});
    const auto k = random_graph(rng, 4, vl, {"x"});
    EXPECT_EQ(mcsm::canonical_form(h) == mcsm::canonical_form(k), naive_isomorphic(h, k));
    EXPECT_EQ(mcsm::is_isomorphic(h, k), naive_isomorphic(h, k));
  }
}

TEST(CanonicalForm, HandlesSymmetricGraphsAndCap) {
  EXPECT_EQ(mcsm::canonical_form(complete(8)), mcsm::canonical_form(complete(8)));
  EXPECT_NE(mcsm::canonical_form(complete(4)), mcsm::canonical_form(path(4)));
  EXPECT_THROW(mcsm::canonical_form(path(11)), mcsm::CapExceeded);
  // Labels that look like separators must not collide.
  EXPECT_NE(mcsm::canonical_form(make_graph({"a;b"})), mcsm::canonical_form(make_graph({"a", "b"})));
}

TEST(Completion, PadsWithEpsilonLabels) {
  const auto g = path(2);
  const auto c = mcsm::completion(g, 4);
  EXPECT_EQ(c.vertex_count(), 4u);
  EXPECT_EQ(c.edge_count(), 6u);
  EXPECT_EQ(c.vertex_label(0), "a");
  EXPECT_EQ(c.vertex_label(3), mcsm::kEpsilonVertex);
  EXPECT_EQ(*c.edge_label(0, 1), "x");
  EXPECT_EQ(*c.edge_label(0, 2), mcsm::kEpsilonEdge);
  EXPECT_TRUE(mcsm::is_reserved_label(mcsm::kEpsilonVertex));
  EXPECT_FALSE(mcsm::is_reserved_label("epsV"));
  EXPECT_THROW(mcsm::completion(g, 1), mcsm::InputError);
  EXPECT_TRUE(mcsm::is_isomorphic(mcsm::completion(c, 4), c));
}

TEST(SizeFunctions, WeightedSums) {
  mcsm::LabelWeighting alpha;
  alpha.set("a", 2);
  alpha.set("x", Rational(1, 3));
  EXPECT_EQ(mcsm::size_gve(path(3), alpha), Rational(2 * 3) + Rational(2, 3));
  EXPECT_EQ(mcsm::size_gv(path(3), alpha), 6);
  EXPECT_EQ(mcsm::size_gve(LabeledGraph{}, alpha), 0);

  const auto vm = chain_model({"c", "a"}, {1, 2});
  const auto em = chain_model({"x"}, {Rational(1, 2)});
  const mcsm::LabelModels models{&vm, &em};
  EXPECT_EQ(mcsm::size_ges(make_graph({"c", "a"}, {{0, 1, "x"}}), models), Rational(7, 2));

  const auto zero = chain_model({"z", "a"}, {0, 1});
  EXPECT_THROW(mcsm::require_positive_label_models({&zero, &em}), mcsm::InputError);
  EXPECT_THROW(mcsm::require_positive_label_models({&vm, nullptr}), mcsm::InputError);
}

TEST(GraphUniverse, OneRepresentativePerClass) {
  const auto universe = mcsm::enumerate_graph_universe(3, {"a", "b"}, {"x"});
  // Naive count: dedupe every labeled graph on up to three vertices.
  std::vector<LabeledGraph> classes;
  for (std::size_t n = 0; n <= 3; ++n) {
    const std::size_t pairs = n * (n - (n > 0)) / 2;
    for (std::uint32_t vmask = 0; vmask < (1u << n); ++vmask)
      for (std::uint32_t emask = 0; emask < (1u << pairs); ++emask) {
        std::vector<std::string> labels;
        for (std::size_t v = 0; v < n; ++v) labels.push_back(vmask & (1u << v) ? "b" : "a");
        std::vector<EdgeSpec> edges;
        std::size_t k = 0;
        for (VertexIndex a = 0; a < n; ++a)
          for (VertexIndex b = a + 1; b < n; ++b, ++k)
            if (emask & (1u << k)) edges.push_back({a, b, "x"});
        auto g = make_graph(labels, edges);
        if (std::none_of(classes.begin(), classes.end(),
                         [&](const LabeledGraph& c) { return naive_isomorphic(c, g); })) {
          classes.push_back(std::move(g));
        }
      }
  }
  EXPECT_EQ(universe.size(), classes.size());
  for (std::size_t i = 0; i < universe.size(); ++i) {
    if (i > 0) EXPECT_LE(universe[i - 1].vertex_count(), universe[i].vertex_count());
    for (std::size_t j = i + 1; j < universe.size(); ++j) {
      EXPECT_FALSE(naive_isomorphic(universe[i], universe[j]));
    }
  }
  EXPECT_THROW(mcsm::enumerate_graph_universe(6, {"a"}, {"x"}), mcsm::CapExceeded);
}
