#pragma once

// Brute-force reference implementations used only by the tests. None of them
// calls the library routine it is compared against.

#include <cstdint>
#include <random>
#include <vector>

#include "parindex/automata.hpp"
#include "parindex/decomposition.hpp"
#include "parindex/games.hpp"
#include "parindex/ordered_tree.hpp"

namespace oracle {

using namespace parindex;

/// Enumerates simple cycles of the active part of g; true if one has an odd maximum.
bool has_odd_simple_cycle(const ParityGraph& g);

/// Vertices from which some infinite path avoids `targets`, as a greatest fixpoint.
VertexSet escape_set(const ParityGraph& g, const EdgeSet& targets);

/// Enumerates every path of up to max_len edges, cutting a new segment as soon as the current one
/// holds both an i-labelled and a j-labelled edge; true if n+1 segments are found.
bool unbounded_by_enumeration(const LabellingPair& pair, std::size_t n, std::size_t max_len);

/// Checks that a reported witness really is n+1 consecutive segments dominated by (i, j).
bool valid_segmented_path(const LabellingPair& pair, const SegmentedPath& p, std::size_t n);

/// Largest k such that the complete (n+1)-ary tree with k levels is a topological minor of t.
std::size_t strahler_by_minors(const OrderedTree& t, std::size_t n);

std::uint64_t catalan(std::size_t k);

/// Number of order-preserving child-to-child embeddings of t into host.
std::uint64_t count_embeddings(const OrderedTree& t, const OrderedTree& host);

/// Small random graph with out-degree >= 1 everywhere.
ParityGraph random_graph(std::mt19937_64& rng, std::size_t max_vertices, Priority max_priority, double density);

/// Membership by enumerating Eve's positional strategies in the acceptance game.
bool accepts_by_enumeration(const NPTA& a, const RegularTree& t);

}  // namespace oracle
