#include <doctest.h>

#include <functional>
#include <random>

#include "oracles.hpp"
#include "parindex/lab.hpp"

using namespace parindex;

namespace {

ParityGraph loop(Priority p) { return ParityGraph(1, {Edge{0, 0, p}}, Index{0, std::max<Priority>(p, 1)}); }

ParityGame random_small_game(std::mt19937_64& rng, std::size_t max_v, Priority max_p) {
  ParityGraph g = oracle::random_graph(rng, max_v, max_p, 0.3);
  std::vector<Player> owners(g.vertex_universe());
  std::bernoulli_distribution coin(0.5);
  for (auto& o : owners) o = coin(rng) ? Player::Eve : Player::Adam;
  return ParityGame(g, owners);
}

// Can `player` force a visit to targets from v within depth moves?
bool forces(const ParityGame& game, const VertexSet& targets, Player player, VertexId v, std::size_t depth) {
  if (targets.contains(v)) return true;
  if (depth == 0) return false;
  const bool mine = game.owner_of(v) == player;
  bool any = false, all = true;
  game.graph.for_each_out(v, [&](EdgeId e) {
    const bool ok = forces(game, targets, player, game.graph.edge(e).target, depth - 1);
    any |= ok;
    all &= ok;
  });
  return mine ? any : all;
}

}  // namespace

TEST_CASE("restrict keeps the identity and flags dead ends") {
  ParityGraph two(2, {Edge{0, 1, 1}, Edge{1, 0, 2}}, Index{0, 2});
  Restriction all = restrict(two, two.vertices());
  CHECK(all.graph.edges() == two.edges());
  CHECK(all.terminal.empty());

  Restriction one = restrict(two, VertexSet::of(2, std::vector<int>{0}));
  CHECK(one.graph.vertices().size() == 1);
  CHECK(one.graph.edges().empty());
  REQUIRE(one.terminal.size() == 1);
  CHECK(one.terminal[0] == 0);
}

TEST_CASE("restrict matches a plain edge filter") {
  std::mt19937_64 rng(7);
  for (int round = 0; round < 50; ++round) {
    ParityGraph g = oracle::random_graph(rng, 10, 4, 0.3);
    VertexSet keep(g.vertex_universe());
    std::bernoulli_distribution coin(0.6);
    for (VertexId v : g.vertices())
      if (coin(rng)) keep.insert(v);
    std::size_t expected = 0;
    for (EdgeId e : g.edges())
      if (keep.contains(g.edge(e).source) && keep.contains(g.edge(e).target)) ++expected;
    CHECK(restrict(g, keep).graph.edges().size() == expected);
  }
}

TEST_CASE("edge attractor on small examples") {
  ParityGraph one = loop(0);
  CHECK(attractor_edges(one, one.edges()) == one.vertices());

  // a -> b is a's only edge, b can stay on its own loop forever
  ParityGraph g(2, {Edge{0, 1, 0}, Edge{1, 1, 0}, Edge{1, 0, 0}}, Index{0, 1});
  VertexSet r = attractor_edges(g, EdgeSet::of(3, std::vector<int>{0}));
  CHECK(r.contains(0));
  CHECK_FALSE(r.contains(1));
  CHECK(attractor_edges(g, g.edges()) == g.vertices());
}

TEST_CASE("vertex attractor on small examples") {
  ParityGraph cyc(2, {Edge{0, 1, 0}, Edge{1, 0, 0}}, Index{0, 1});
  CHECK(attractor_vertices(cyc, VertexSet(2)).empty());
  CHECK(attractor_vertices(cyc, cyc.vertices()) == cyc.vertices());

  ParityGraph chain(3, {Edge{0, 1, 0}, Edge{1, 2, 0}, Edge{2, 2, 0}}, Index{0, 1});
  CHECK(attractor_vertices(chain, VertexSet::of(3, std::vector<int>{2})) == chain.vertices());
}

TEST_CASE("edge attractor is the complement of the escape set") {
  std::mt19937_64 rng(11);
  for (int round = 0; round < 200; ++round) {
    ParityGraph g = oracle::random_graph(rng, 8, 3, 0.3);
    EdgeSet targets(g.edge_universe());
    std::bernoulli_distribution coin(0.3);
    for (EdgeId e : g.edges())
      if (coin(rng)) targets.insert(e);
    CHECK(attractor_edges(g, targets) == g.vertices() - oracle::escape_set(g, targets));
  }
}

TEST_CASE("attractors are monotone and contain their vertex targets") {
  std::mt19937_64 rng(12);
  std::bernoulli_distribution coin(0.3);
  for (int round = 0; round < 200; ++round) {
    ParityGraph g = oracle::random_graph(rng, 8, 3, 0.3);
    VertexSet s(g.vertex_universe()), t(g.vertex_universe());
    for (VertexId v : g.vertices()) {
      if (coin(rng)) s.insert(v);
      if (coin(rng)) t.insert(v);
    }
    t |= s;
    VertexSet as = attractor_vertices(g, s);
    CHECK(s.subset_of(as));
    CHECK(as.subset_of(attractor_vertices(g, t)));

    EdgeSet es(g.edge_universe()), et(g.edge_universe());
    for (EdgeId e : g.edges()) {
      if (coin(rng)) es.insert(e);
      if (coin(rng)) et.insert(e);
    }
    et |= es;
    CHECK(attractor_edges(g, es).subset_of(attractor_edges(g, et)));
  }
}

TEST_CASE("player attractor agrees with bounded game-tree search") {
  std::mt19937_64 rng(13);
  for (int round = 0; round < 200; ++round) {
    ParityGame game = random_small_game(rng, 6, 3);
    VertexSet targets(game.graph.vertex_universe());
    std::bernoulli_distribution coin(0.3);
    for (VertexId v : game.graph.vertices())
      if (coin(rng)) targets.insert(v);
    for (Player p : {Player::Eve, Player::Adam}) {
      PlayerAttractor pa = player_attractor(game, targets, p);
      for (VertexId v : game.graph.vertices())
        CHECK(pa.region.contains(v) == forces(game, targets, p, v, game.graph.vertex_universe()));
      for (VertexId v : pa.region - targets)
        if (game.owner_of(v) == p) {
          REQUIRE(pa.strategy.defined(v));
          CHECK(pa.region.contains(game.graph.edge(pa.strategy.choice(v)).target));
        }
    }
  }
  ParityGame all = random_small_game(rng, 5, 2);
  CHECK(player_attractor(all, all.graph.vertices(), Player::Eve).region == all.graph.vertices());
}

TEST_CASE("is_even on single loops") {
  EvennessResult odd = is_even(loop(1));
  CHECK_FALSE(odd.even);
  REQUIRE(odd.witness);
  CHECK(odd.witness->cycle == std::vector<EdgeId>{0});
  CHECK(is_even(loop(2)).even);
}

TEST_CASE("is_even rejects terminal vertices") {
  ParityGraph dead(2, {Edge{0, 1, 0}}, Index{0, 1});
  try {
    is_even(dead);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::TerminalVertex);
  }
}

TEST_CASE("is_even agrees with simple-cycle enumeration and its lasso is odd") {
  std::mt19937_64 rng(17);
  for (int round = 0; round < 500; ++round) {
    ParityGraph g = oracle::random_graph(rng, 8, 4, 0.25);
    EvennessResult r = is_even(g);
    CHECK(r.even == !oracle::has_odd_simple_cycle(g));
    if (r.even) continue;
    REQUIRE(r.witness);
    const Lasso& l = *r.witness;
    REQUIRE_FALSE(l.cycle.empty());
    Priority top = 0;
    for (std::size_t k = 0; k < l.cycle.size(); ++k) {
      const Edge& e = g.edge(l.cycle[k]);
      top = std::max(top, e.priority);
      CHECK(g.edge(l.cycle[(k + 1) % l.cycle.size()]).source == e.target);
    }
    CHECK(top % 2 == 1);
    if (!l.stem.empty()) CHECK(g.edge(l.stem.back()).target == g.edge(l.cycle.front()).source);
  }
}

TEST_CASE("solve on one-vertex games") {
  ParityGame eve(loop(2), {Player::Eve});
  CHECK(solve(eve).eve_region.size() == 1);
  ParityGame adam(loop(1), {Player::Adam});
  CHECK(solve(adam).adam_region.size() == 1);
}

TEST_CASE("solve agrees with strategy enumeration and both strategies win") {
  std::mt19937_64 rng(19);
  for (int round = 0; round < 500; ++round) {
    ParityGame game = random_small_game(rng, 6, 4);
    Solution s = solve(game);
    CHECK((s.eve_region | s.adam_region) == game.graph.vertices());
    CHECK_FALSE(s.eve_region.intersects(s.adam_region));
    BruteRegions b = brute_solve(game);
    CHECK(s.eve_region == b.eve);
    CHECK(verify_winning(game, s.eve_strategy, s.eve_region, Player::Eve));
    CHECK(verify_winning(game, s.adam_strategy, s.adam_region, Player::Adam));
    CHECK(is_even(strategy_graph(game, s.eve_strategy, s.eve_region)).even);
  }
}

TEST_CASE("strategy graph keeps only the chosen edge") {
  ParityGame two_loops(ParityGraph(1, {Edge{0, 0, 1}, Edge{0, 0, 2}}, Index{0, 2}), {Player::Eve});
  PositionalStrategy sigma(1);
  sigma.set(0, 1);
  ParityGraph sg = strategy_graph(two_loops, sigma, two_loops.graph.vertices());
  CHECK(sg.edges().size() == 1);
  CHECK(sg.has_edge(1));
  CHECK(verify_winning(two_loops, sigma, two_loops.graph.vertices()));
  sigma.set(0, 0);
  CHECK_FALSE(verify_winning(two_loops, sigma, two_loops.graph.vertices()));
  CHECK(verify_winning(two_loops, sigma, VertexSet(1)));

  ParityGame adam(ParityGraph(2, {Edge{0, 1, 0}, Edge{1, 0, 2}, Edge{1, 1, 1}}, Index{0, 2}),
                  {Player::Adam, Player::Adam});
  CHECK(strategy_graph(adam, PositionalStrategy(2), adam.graph.vertices()).edges() == adam.graph.edges());
}

TEST_CASE("strategy graph rejects bad strategies") {
  ParityGame g(ParityGraph(2, {Edge{0, 1, 0}, Edge{0, 0, 2}, Edge{1, 1, 2}}, Index{0, 2}),
               {Player::Eve, Player::Eve});
  PositionalStrategy sigma(2);
  sigma.set(1, 2);
  auto code_of = [&](const VertexSet& region) {
    try {
      strategy_graph(g, sigma, region);
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::Undefined;
  };
  CHECK(code_of(g.graph.vertices()) == ErrorCode::UndefinedChoice);
  sigma.set(0, 0);
  CHECK(code_of(VertexSet::of(2, std::vector<int>{0})) == ErrorCode::StrategyEscapesRegion);
}
