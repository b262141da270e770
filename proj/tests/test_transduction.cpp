#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "parindex/lab.hpp"
#include "parindex/transduction.hpp"

using namespace parindex;

namespace {

ParityGraph loop(Priority p) { return ParityGraph(1, {Edge{0, 0, p}}, Index{0, std::max<Priority>(p, 1)}); }

ParityGraph reachable_part(const ParityGraph& g) {
  return g.restricted(forward_reachable(g, VertexSet::of(g.vertex_universe(), std::vector<int>{0}))).compacted().graph;
}

}  // namespace

TEST_CASE("transduction game on single loops") {
  CHECK(eve_wins_reg(loop(2), Index{1, 2}, 0, 0));
  for (Index j : {Index{1, 2}, Index{1, 4}, Index{2, 4}, Index{0, 3}})
    for (std::size_t n = 0; n <= 2; ++n) CHECK_FALSE(eve_wins_reg(loop(1), j, n, 0));
}

TEST_CASE("product size stays within the configuration count") {
  std::mt19937_64 rng(47);
  for (int round = 0; round < 30; ++round) {
    ParityGraph g = oracle::random_graph(rng, 4, 3, 0.3);
    for (std::size_t n = 0; n <= 2; ++n) {
      RegProduct p = reg_product(g, Index{1, 4}, n);
      std::size_t moves = 0;
      for (VertexId v : p.game.graph.vertices())
        if (p.decode[v].phase == RegPhase::Move) ++moves;
      const double regs = static_cast<double>(p.register_count);
      const double bound = static_cast<double>(g.vertices().size()) *
                           std::pow(static_cast<double>(p.i_index.hi + 1), regs) *
                           std::pow(static_cast<double>(n + 1), regs * static_cast<double>(p.odd_i.size()));
      CHECK(static_cast<double>(moves) <= bound);
      CHECK(moves >= g.vertices().size());
    }
  }
}

TEST_CASE("Adam wins the transduction game on graphs that are not even") {
  std::mt19937_64 rng(53);
  int tested = 0;
  while (tested < 60) {
    ParityGraph g = reachable_part(oracle::random_graph(rng, 5, 3, 0.3));
    if (!oracle::has_odd_simple_cycle(g)) continue;
    ++tested;
    for (Index j : {Index{1, 2}, Index{1, 4}})
      for (std::size_t n = 0; n <= 1; ++n) CHECK_FALSE(eve_wins_reg(g, j, n, 0));
  }
}

TEST_CASE("more counter room only helps Eve") {
  std::mt19937_64 rng(59);
  for (int round = 0; round < 40; ++round) {
    ParityGraph g = reachable_part(oracle::random_graph(rng, 4, 4, 0.3));
    for (std::size_t n = 0; n <= 1; ++n)
      if (eve_wins_reg(g, Index{1, 2}, n, 0)) CHECK(eve_wins_reg(g, Index{1, 2}, n + 1, 0));
  }
}

TEST_CASE("bound check on fixed pairs") {
  ParityGraph g(2, {Edge{0, 1, 0}, Edge{1, 0, 0}}, Index{0, 2});
  LabellingPair evens(g, {2, 0}, Index{0, 2}, {2, 1}, Index{1, 2});
  for (std::size_t n = 0; n <= 3; ++n) CHECK(n_bound_check(evens, n).bounded);

  LabellingPair one_edge(g, {1, 2}, Index{0, 2}, {2, 2}, Index{1, 2});
  BoundCheck b = n_bound_check(one_edge, 0);
  CHECK_FALSE(b.bounded);
  REQUIRE(b.counterexample);
  CHECK(oracle::valid_segmented_path(one_edge, *b.counterexample, 0));
}

TEST_CASE("bound check agrees with path enumeration") {
  std::mt19937_64 rng(61);
  std::uniform_int_distribution<Priority> li(0, 3), lj(1, 2);
  for (int round = 0; round < 300; ++round) {
    ParityGraph g = oracle::random_graph(rng, 4, 0, 0.3);
    std::vector<Priority> a(g.edge_universe()), b(g.edge_universe());
    for (EdgeId e = 0; e < g.edge_universe(); ++e) {
      a[e] = li(rng);
      b[e] = lj(rng);
    }
    LabellingPair pair(g, a, Index{0, 4}, b, Index{1, 2});
    for (std::size_t n = 0; n <= 2; ++n) {
      BoundCheck r = n_bound_check(pair, n);
      const std::size_t len = (n + 1) * g.vertices().size() * 5 * 2;
      CHECK(r.bounded == !oracle::unbounded_by_enumeration(pair, n, len));
      if (!r.bounded) {
        REQUIRE(r.counterexample);
        CHECK(oracle::valid_segmented_path(pair, *r.counterexample, n));
      }
    }
  }
}

TEST_CASE("strategies from bounded pairs win") {
  ParityGraph g(2, {Edge{0, 1, 0}, Edge{1, 0, 0}, Edge{1, 1, 0}}, Index{0, 2});
  LabellingPair same(g, {2, 0, 2}, Index{0, 2}, {2, 1, 2}, Index{1, 2});
  CHECK(strategy_from_bounded_pair(same, 0).verified);

  GenParams p;
  for (int round = 0; round < 40; ++round) {
    p.seed = 900 + round;
    p.index_j = round % 2 ? Index{1, 4} : Index{1, 2};
    const std::size_t n = round % 3;
    LabellingPair pair = random_bounded_pair(p, n);
    RegStrategy s = strategy_from_bounded_pair(pair, n);
    CHECK(s.verified);
    CHECK(verify_winning(s.product.game, s.strategy, s.region));
  }
}

TEST_CASE("strategies from decompositions win") {
  AttractorDecomposition leaf_d = build_ad(loop(2), 2);
  RegStrategy leaf = synth_from_ad(loop(2), leaf_d, 1);
  CHECK(leaf.registers_used == 1);
  CHECK(leaf.verified);

  // one child per loop, shape (()())
  ParityGraph two(2, {Edge{0, 0, 0}, Edge{1, 1, 0}}, Index{0, 2});
  AttractorDecomposition d;
  d.level = 2;
  d.top_edges = EdgeSet(2);
  d.top_attractor = VertexSet(2);
  for (int v = 0; v < 2; ++v) {
    AttractorDecomposition leaf;
    leaf.top_edges = EdgeSet::of(2, std::vector<int>{v});
    leaf.top_attractor = VertexSet::of(2, std::vector<int>{v});
    const VertexSet s = VertexSet::of(2, std::vector<int>{v});
    d.children.push_back({s, s, leaf});
  }
  REQUIRE(validate_ad(two, d).valid);
  RegStrategy s = synth_from_ad(two, d, 1);
  CHECK(s.registers_used == 2);
  CHECK(s.verified);
  CHECK(eve_wins_reg(two, Index{1, 4}, 2, 0));

  GenParams p;
  p.vertex_count = 5;
  for (int round = 0; round < 40; ++round) {
    p.seed = 1300 + round;
    ParityGraph g = random_even_graph(p);
    AttractorDecomposition ad = build_ad(g, default_level(g));
    RegStrategy r = synth_from_ad(g, ad, 1 + round % 2);
    CHECK(r.registers_used == n_strahler(tree_shape(ad), 1 + round % 2));
    CHECK(r.verified);
  }
}

TEST_CASE("J starting at zero is shifted without changing the winner") {
  std::mt19937_64 rng(67);
  for (int round = 0; round < 30; ++round) {
    ParityGraph g = reachable_part(oracle::random_graph(rng, 4, 3, 0.3));
    CHECK(eve_wins_reg(g, Index{0, 3}, 1, 0) == eve_wins_reg(g, Index{2, 5}, 1, 0));
    CHECK(eve_wins_reg(g, Index{3, 4}, 1, 0) == eve_wins_reg(g, Index{1, 2}, 1, 0));
  }
}

TEST_CASE("state cap is enforced") {
  RegOptions tiny;
  tiny.cap = 3;
  ParityGraph g(2, {Edge{0, 1, 1}, Edge{1, 0, 2}}, Index{0, 2});
  try {
    reg_product(g, Index{1, 4}, 2, tiny);
    FAIL("expected StateExplosion");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::StateExplosion);
  }
}
