#pragma once

#include <optional>
#include <vector>

#include "parindex/games.hpp"
#include "parindex/transduction.hpp"

namespace parindex {

using StateId = std::uint32_t;
using Letter = std::uint32_t;

struct Transition {
  StateId state = 0;
  Letter letter = 0;
  StateId left = 0;
  StateId right = 0;
  Priority left_priority = 0;
  Priority right_priority = 0;

  bool operator==(const Transition&) const = default;
};

/// Nondeterministic parity automaton over infinite binary trees.
struct NPTA {
  std::size_t alphabet_size = 0;
  std::size_t state_count = 0;
  StateId initial = 0;
  std::vector<Transition> transitions;
  Index index;
};

/// Finite rooted graph whose unfolding is an infinite binary tree.
struct RegularTree {
  std::size_t alphabet_size = 0;
  std::vector<Letter> label;
  std::vector<std::uint32_t> left;
  std::vector<std::uint32_t> right;
  std::uint32_t root = 0;

  std::size_t node_count() const { return label.size(); }
};

/// table[stateA][transitionB] = transition of A, or -1 where undefined.
struct GuidingFunction {
  std::vector<std::vector<int>> table;
};

/// Checks completeness and alphabet compatibility; throws IncompleteAutomaton / AlphabetMismatch / InvalidArgument.
void check_automaton(const NPTA& a);
void check_tree(const RegularTree& t);

struct AcceptanceGame {
  ParityGame game;
  std::size_t states = 0;
  std::size_t transitions = 0;
  VertexId initial = 0;

  VertexId eve_vertex(std::uint32_t node, StateId q) const {
    return static_cast<VertexId>(node * (states + transitions) + q);
  }
  VertexId adam_vertex(std::uint32_t node, std::size_t tr) const {
    return static_cast<VertexId>(node * (states + transitions) + states + tr);
  }
};

AcceptanceGame acceptance_game(const NPTA& a, const RegularTree& t);

bool membership(const NPTA& a, const RegularTree& t);

struct RunVertex {
  std::uint32_t node = 0;
  StateId state = 0;
  std::uint32_t transition = 0;
};

/// Run as a finite graph: vertex v has exactly the two edges 2v (left) and 2v+1 (right).
struct RunGraph {
  ParityGraph graph;
  std::vector<RunVertex> vertices;
  VertexId root = 0;
};

/// Run induced by a positional Eve strategy on the acceptance game.
RunGraph run_graph(const NPTA& a, const RegularTree& t, const AcceptanceGame& game, const PositionalStrategy& sigma);

struct GuidedRun {
  RunGraph run;
  std::vector<VertexId> guide_vertex;  // vertex of the guiding run each vertex follows
};

GuidedRun guided_run(const GuidingFunction& g, const NPTA& a, const NPTA& b, const RegularTree& t,
                     const RunGraph& run_b);

/// Automaton of index J accepting exactly the trees on which Eve wins Reg_J^n on the acceptance game of a.
NPTA compose_transducer(const NPTA& a, Index j, std::size_t n, const RegOptions& options = {});

struct GuidedBound {
  bool bounded = true;
  bool guided_accepting = true;
  std::size_t n = 0;
  std::optional<SegmentedPath> counterexample;
};

GuidedBound guided_pair_bound_check(const NPTA& a, const NPTA& b, const GuidingFunction& g, const RegularTree& t);

/// Every regular tree over the alphabet with exactly `nodes` graph nodes rooted at node 0.
std::vector<RegularTree> enumerate_regular_trees(std::size_t alphabet_size, std::size_t nodes);

}  // namespace parindex
