#pragma once

#include <optional>
#include <string>
#include <vector>

#include "parindex/games.hpp"
#include "parindex/ordered_tree.hpp"

namespace parindex {

/// Attractor decomposition of level h. Children hold (S_i, A_i, D_i) in order.
/// A childless decomposition, or one of level 0, is the base case (H, V).
struct AttractorDecomposition {
  struct Child;

  Priority level = 0;
  EdgeSet top_edges;
  VertexSet top_attractor;
  std::vector<Child> children;
};

struct AttractorDecomposition::Child {
  VertexSet subgame;
  VertexSet attractor;
  AttractorDecomposition sub;
};

AttractorDecomposition build_ad(const ParityGraph& g, Priority h);

/// Smallest even number >= the maximal priority of g.
Priority default_level(const ParityGraph& g);

struct AdCheck {
  bool valid = true;
  std::string clause;       // first violated clause
  std::string path;         // child path, e.g. "root/1/0"
  std::string witness;      // offending vertex or edge
};

AdCheck validate_ad(const ParityGraph& g, const AttractorDecomposition& d);

bool ad_reachability_check(const ParityGraph& g, const AttractorDecomposition& d);

OrderedTree tree_shape(const AttractorDecomposition& d);

bool is_tight(const ParityGraph& g, const AttractorDecomposition& d);

std::vector<VertexSet> attr_partition(const ParityGraph& g, const std::vector<VertexSet>& parts);

struct AdPiece {
  VertexSet subgame;
  AttractorDecomposition sub;
};

AttractorDecomposition join_ads(const ParityGraph& g, Priority h, const std::vector<AdPiece>& pieces);

/// The (S_k, D_k) pieces of a decomposition, the inverse of join_ads.
std::vector<AdPiece> dismantle(const AttractorDecomposition& d);

/// One graph with two edge labellings; the graph's own priorities are ignored.
struct LabellingPair {
  ParityGraph graph;
  std::vector<Priority> label_i;  // indexed by edge id over the universe
  Index index_i;
  std::vector<Priority> label_j;
  Index index_j;

  LabellingPair() = default;
  LabellingPair(ParityGraph g, std::vector<Priority> li, Index ii, std::vector<Priority> lj, Index ij);

  ParityGraph view_i() const { return graph.relabelled(label_i, index_i); }
  ParityGraph view_j() const { return graph.relabelled(label_j, index_j); }
};

struct MemoryProduct {
  LabellingPair pair;                    // over product states
  std::vector<VertexId> base_vertex;     // per state
  std::vector<std::uint64_t> memory;     // flag word per state
  std::vector<EdgeId> base_edge;         // per product edge
  std::vector<VertexId> initial;         // state (v, cleared) for every base vertex v
  std::size_t flag_count = 0;
};

inline constexpr std::size_t kDefaultStateCap = 2'000'000;

MemoryProduct memory_product(const LabellingPair& pair, std::size_t cap = kDefaultStateCap);

/// Decomposition of the memory product (priorities from label_i) whose (n+1)-Strahler number is at most j;
/// throws NotBounded / NotEven / PreconditionFailed.
struct BoundedPairDecomposition {
  MemoryProduct product;
  ParityGraph graph;  // product graph with label_i priorities
  AttractorDecomposition decomposition;
};

BoundedPairDecomposition ad_from_bounded_pair(const LabellingPair& pair, std::size_t n, std::size_t j,
                                              std::size_t cap = kDefaultStateCap);

/// Same construction on the pair itself, without the memory product.
AttractorDecomposition ad_from_bounded_graph(const LabellingPair& pair, std::size_t n, std::size_t j);

}  // namespace parindex
