#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "parindex/automata.hpp"
#include "parindex/decomposition.hpp"
#include "parindex/games.hpp"
#include "parindex/ordered_tree.hpp"
#include "parindex/transduction.hpp"

namespace parindex {

struct GenParams {
  std::uint64_t seed = 1;
  std::size_t vertex_count = 6;   // upper bound; each instance draws its size in [1, vertex_count]
  Priority priority_cap = 4;
  double edge_density = 0.3;      // probability of each extra edge beyond the guaranteed successor
  Index index_j{1, 4};
  std::size_t counter_bound = 1;
  std::size_t instance_count = 500;  // per-check cap for the battery; 0 runs nothing
  bool planted = false;              // random_even_graph embeds a random universal-tree shape
  ResetRule reset = ResetRule::Liberal;
  std::size_t state_cap = 200'000;
  bool exact_size = false;           // use exactly vertex_count vertices
};

/// Independent seed for the salt-th sub-instance of seed.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t salt);

/// Random game without terminal vertices, deterministic in p.seed.
ParityGame random_game(const GenParams& p);

/// Eve's strategy graph on her winning region of a random game; even by construction.
ParityGraph random_even_graph(const GenParams& p);

/// Even graph whose canonical decomposition has exactly the given shape (levels 2*(depth-1) downwards).
ParityGraph planted_graph(const OrderedTree& shape);

/// Even labelling pair on a random graph with label_i n-bound by label_j; index_i is [0, priority_cap].
LabellingPair random_bounded_pair(const GenParams& p, std::size_t n);

struct BruteRegions {
  VertexSet eve;
  VertexSet adam;
};

/// Exact winning regions by enumerating Eve's positional strategies.
BruteRegions brute_solve(const ParityGame& game, std::size_t cap = 1'000'000);

/// Exhaustive backtracking test of whether t embeds into host (order-preserving, child to child).
bool embeds_exhaustive(const OrderedTree& t, const OrderedTree& host);

struct CheckFailure {
  std::size_t instance = 0;
  std::string message;
  std::string counterexample;  // manifest text, replayable with the CLI
};

struct CheckResult {
  std::string name;
  std::size_t instances = 0;
  std::vector<CheckFailure> failures;
  double seconds = 0;
  double time_limit = 0;  // 0 means none
  bool passed() const { return failures.empty() && (time_limit == 0 || seconds <= time_limit); }
};

struct TheoremReport {
  std::vector<CheckResult> checks;
  bool passed() const;
  std::string summary_table() const;
  std::string to_text() const;  // structured manifest text
};

/// Names of the battery checks in order.
const std::vector<std::string>& battery_checks();

/// Runs one check of the battery by name at the scale of p.
CheckResult run_check(const std::string& name, const GenParams& p);

/// Runs every battery check; empty report when p.instance_count is 0.
TheoremReport run_theorem_battery(const GenParams& p);

/// Greedy vertex then edge deletion while `fails` keeps holding and no vertex loses all successors.
ParityGame shrink_game(const ParityGame& game, const std::function<bool(const ParityGame&)>& fails);

}  // namespace parindex
