#include <doctest.h>

#include <random>

#include "oracles.hpp"

using namespace parindex;

namespace {

NPTA accept_all() {
  NPTA a;
  a.alphabet_size = 2;
  a.state_count = 1;
  a.index = Index{0, 2};
  a.transitions = {Transition{0, 0, 0, 0, 2, 2}, Transition{0, 1, 0, 0, 2, 2}};
  return a;
}

NPTA reject_all() {
  NPTA a = accept_all();
  for (auto& t : a.transitions) t.left_priority = t.right_priority = 1;
  return a;
}

// Letter 1 occurs on every branch: state 0 waits (odd), state 1 has seen it (even).
NPTA b_on_every_branch() {
  NPTA a;
  a.alphabet_size = 2;
  a.state_count = 2;
  a.index = Index{1, 2};
  a.transitions = {Transition{0, 0, 0, 0, 1, 1}, Transition{0, 1, 1, 1, 2, 2}, Transition{1, 0, 1, 1, 2, 2},
                   Transition{1, 1, 1, 1, 2, 2}};
  return a;
}

RegularTree tree(std::vector<Letter> label, std::vector<std::uint32_t> left, std::vector<std::uint32_t> right) {
  RegularTree t;
  t.alphabet_size = 2;
  t.label = std::move(label);
  t.left = std::move(left);
  t.right = std::move(right);
  return t;
}

GuidingFunction identity_guide(const NPTA& a) {
  GuidingFunction g;
  g.table.assign(a.state_count, std::vector<int>(a.transitions.size(), -1));
  for (std::size_t t = 0; t < a.transitions.size(); ++t) g.table[a.transitions[t].state][t] = static_cast<int>(t);
  return g;
}

NPTA random_automaton(std::mt19937_64& rng) {
  std::uniform_int_distribution<StateId> states(1, 2);
  NPTA a;
  a.alphabet_size = 2;
  a.state_count = states(rng);
  a.index = Index{0, 3};
  std::uniform_int_distribution<StateId> q(0, static_cast<StateId>(a.state_count - 1));
  std::uniform_int_distribution<Priority> p(0, 3);
  std::bernoulli_distribution twice(0.4);
  for (StateId s = 0; s < a.state_count; ++s)
    for (Letter x = 0; x < 2; ++x) {
      a.transitions.push_back(Transition{s, x, q(rng), q(rng), p(rng), p(rng)});
      if (twice(rng)) a.transitions.push_back(Transition{s, x, q(rng), q(rng), p(rng), p(rng)});
    }
  return a;
}

}  // namespace

TEST_CASE("acceptance game of trivial automata") {
  RegularTree one = tree({0}, {0}, {0});
  AcceptanceGame g = acceptance_game(accept_all(), one);
  CHECK(g.game.graph.vertices().size() <= 3);
  CHECK(membership(accept_all(), one));
  CHECK_FALSE(membership(reject_all(), one));
}

TEST_CASE("acceptance game size") {
  std::mt19937_64 rng(71);
  for (int round = 0; round < 30; ++round) {
    NPTA a = random_automaton(rng);
    for (const RegularTree& t : enumerate_regular_trees(2, 2)) {
      AcceptanceGame g = acceptance_game(a, t);
      CHECK(g.game.graph.vertex_universe() == t.node_count() * (a.state_count + a.transitions.size()));
    }
  }
}

TEST_CASE("membership of the every-branch automaton") {
  const NPTA a = b_on_every_branch();
  CHECK_FALSE(membership(a, tree({0}, {0}, {0})));
  CHECK(membership(a, tree({1}, {0}, {0})));
  CHECK_FALSE(membership(a, tree({0, 1}, {1, 1}, {0, 1})));
  CHECK(membership(a, tree({0, 1}, {1, 1}, {1, 1})));
  for (const RegularTree& t : enumerate_regular_trees(2, 2)) {
    CHECK(membership(accept_all(), t));
    CHECK_FALSE(membership(reject_all(), t));
  }
}

TEST_CASE("membership agrees with strategy enumeration") {
  std::mt19937_64 rng(73);
  for (int round = 0; round < 60; ++round) {
    NPTA a = random_automaton(rng);
    for (std::size_t nodes = 1; nodes <= 2; ++nodes)
      for (const RegularTree& t : enumerate_regular_trees(2, nodes))
        CHECK(membership(a, t) == oracle::accepts_by_enumeration(a, t));
  }
}

TEST_CASE("runs from winning and losing strategies") {
  const NPTA a = b_on_every_branch();
  for (const RegularTree& t : enumerate_regular_trees(2, 2)) {
    AcceptanceGame g = acceptance_game(a, t);
    Solution s = solve(g.game);
    const bool accepted = s.eve_region.contains(g.initial);
    PositionalStrategy sigma = accepted ? s.eve_strategy : PositionalStrategy(g.game.graph.vertex_universe());
    if (!accepted)
      for (VertexId v : g.game.graph.vertices())
        if (g.game.owner_of(v) == Player::Eve)
          g.game.graph.for_each_out(v, [&](EdgeId e) {
            if (!sigma.defined(v)) sigma.set(v, e);
          });
    RunGraph run = run_graph(a, t, g, sigma);
    CHECK(run.vertices.size() <= t.node_count() * a.state_count);
    CHECK(is_even(run.graph).even == accepted);
  }
}

TEST_CASE("identity guide reproduces the run") {
  const NPTA a = b_on_every_branch();
  const RegularTree t = tree({0, 1}, {1, 1}, {1, 1});
  AcceptanceGame g = acceptance_game(a, t);
  Solution s = solve(g.game);
  REQUIRE(s.eve_region.contains(g.initial));
  RunGraph run = run_graph(a, t, g, s.eve_strategy);
  GuidedRun guided = guided_run(identity_guide(a), a, a, t, run);
  CHECK(guided.run.vertices.size() == run.vertices.size());
  CHECK(is_even(guided.run.graph).even);
  for (std::size_t v = 0; v < guided.run.vertices.size(); ++v) {
    const RunVertex& mine = guided.run.vertices[v];
    const RunVertex& theirs = run.vertices[guided.guide_vertex[v]];
    CHECK(mine.node == theirs.node);
    CHECK(mine.state == theirs.state);
    CHECK(mine.transition == theirs.transition);
  }
}

TEST_CASE("identity guide gives a bounded pair") {
  const NPTA a = b_on_every_branch();
  for (const RegularTree& t : enumerate_regular_trees(2, 2)) {
    if (!membership(a, t)) continue;
    GuidedBound r = guided_pair_bound_check(a, a, identity_guide(a), t);
    CHECK(r.guided_accepting);
    CHECK(r.bounded);
  }
}

TEST_CASE("composition matches the transduction game") {
  std::mt19937_64 rng(79);
  const auto corpus = enumerate_regular_trees(2, 1);
  for (int round = 0; round < 15; ++round) {
    NPTA a = random_automaton(rng);
    a.state_count = 1;
    std::erase_if(a.transitions, [](const Transition& t) { return t.state != 0 || t.left != 0 || t.right != 0; });
    bool letters[2] = {false, false};
    for (const auto& t : a.transitions) letters[t.letter] = true;
    if (!letters[0] || !letters[1]) continue;
    for (std::size_t n = 0; n <= 1; ++n) {
      NPTA c = compose_transducer(a, Index{1, 2}, n);
      CHECK(c.index == Index{1, 2});
      for (const RegularTree& t : corpus) {
        AcceptanceGame g = acceptance_game(a, t);
        CHECK(membership(c, t) == eve_wins_reg(g.game, Index{1, 2}, n, g.initial));
      }
    }
  }
}

TEST_CASE("composition preserves even automata and rejecting ones") {
  const auto corpus = enumerate_regular_trees(2, 2);
  NPTA even = accept_all();
  NPTA c = compose_transducer(even, Index{1, 2}, 0);
  NPTA r = compose_transducer(reject_all(), Index{1, 2}, 0);
  for (const RegularTree& t : corpus) {
    CHECK(membership(c, t));
    CHECK_FALSE(membership(r, t));
  }
}

TEST_CASE("malformed automata are rejected") {
  NPTA a = accept_all();
  a.transitions.pop_back();
  CHECK_THROWS_AS(check_automaton(a), Error);
  NPTA wide = accept_all();
  wide.transitions[0].left_priority = 7;
  CHECK_THROWS_AS(check_automaton(wide), Error);
}
