#pragma once

#include <memory>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "parindex/types.hpp"

namespace parindex {

struct Edge {
  VertexId source = 0;
  VertexId target = 0;
  Priority priority = 0;

  bool operator==(const Edge&) const = default;
};

/// Edge-labelled directed graph over the id universe [0, vertex_universe()).
///
/// A graph carries an active vertex set and an active edge set; restricting a
/// graph narrows both sets and keeps every id stable, so vertex and edge ids
/// remain meaningful across subgraphs, strategies and decompositions.
/// Every active edge has both endpoints active.
class ParityGraph {
 public:
  ParityGraph() = default;
  ParityGraph(std::size_t vertex_count, std::vector<Edge> edges, Index index);

  std::size_t vertex_universe() const { return vertices_.universe(); }
  std::size_t edge_universe() const { return topo_ ? topo_->edges.size() : 0; }

  const VertexSet& vertices() const { return vertices_; }
  const EdgeSet& edges() const { return edges_; }
  bool has_vertex(VertexId v) const { return vertices_.contains(v); }
  bool has_edge(EdgeId e) const { return edges_.contains(e); }

  const Edge& edge(EdgeId e) const { return topo_->edges[e]; }
  Priority priority(EdgeId e) const { return topo_->edges[e].priority; }
  Index index() const { return index_; }

  /// Outgoing edge ids of v in the universe, including inactive ones.
  std::span<const EdgeId> out_all(VertexId v) const;
  std::span<const EdgeId> in_all(VertexId v) const;

  template <class F>
  void for_each_out(VertexId v, F&& f) const {
    for (EdgeId e : out_all(v))
      if (edges_.contains(e)) f(e);
  }
  template <class F>
  void for_each_in(VertexId v, F&& f) const {
    for (EdgeId e : in_all(v))
      if (edges_.contains(e)) f(e);
  }

  std::size_t out_degree(VertexId v) const;

  /// Active edges with both endpoints in keep (keep is intersected with the active vertices).
  ParityGraph restricted(const VertexSet& keep) const;
  /// Same vertices, active edges minus drop.
  ParityGraph without_edges(const EdgeSet& drop) const;
  /// Same vertices, active edges intersected with keep.
  ParityGraph with_edges_only(const EdgeSet& keep) const;

  std::vector<VertexId> terminal_vertices() const;
  bool has_terminal_vertices() const;
  /// Maximal active edge priority, 0 for an edgeless graph.
  Priority max_priority() const;

  /// Copy of this graph with the active part renumbered densely; `original[i]` is the old id of new vertex i.
  struct Compacted;
  Compacted compacted() const;

  /// Same topology with new edge priorities (indexed by edge id over the universe).
  ParityGraph relabelled(const std::vector<Priority>& priorities, Index index) const;

 private:
  struct Topology {
    std::vector<Edge> edges;
    std::vector<std::uint32_t> out_offsets, in_offsets;
    std::vector<EdgeId> out_edges, in_edges;
  };
  std::shared_ptr<const Topology> topo_;
  VertexSet vertices_;
  EdgeSet edges_;
  Index index_;
};

struct ParityGraph::Compacted {
  ParityGraph graph;
  std::vector<VertexId> original_vertex;
  std::vector<EdgeId> original_edge;
};

enum class Player : std::uint8_t { Eve = 0, Adam = 1 };

inline Player opponent(Player p) { return p == Player::Eve ? Player::Adam : Player::Eve; }

struct ParityGame {
  ParityGraph graph;
  std::vector<Player> owner;  // indexed over the vertex universe

  ParityGame() = default;
  ParityGame(ParityGraph g, std::vector<Player> owners);

  Player owner_of(VertexId v) const { return owner[v]; }
};

/// Graph seen as a game where Adam owns every vertex.
ParityGame adam_only(const ParityGraph& g);

class PositionalStrategy {
 public:
  PositionalStrategy() = default;
  explicit PositionalStrategy(std::size_t vertex_universe) : choice_(vertex_universe, kNoEdge) {}

  bool defined(VertexId v) const { return v < choice_.size() && choice_[v] != kNoEdge; }
  EdgeId choice(VertexId v) const { return v < choice_.size() ? choice_[v] : kNoEdge; }
  void set(VertexId v, EdgeId e) { choice_[v] = e; }
  void clear(VertexId v) { choice_[v] = kNoEdge; }
  std::size_t universe() const { return choice_.size(); }

  bool operator==(const PositionalStrategy&) const = default;

 private:
  std::vector<EdgeId> choice_;
};

/// Finite witness of an infinite play: follow stem once, then repeat cycle forever.
struct Lasso {
  std::vector<EdgeId> stem;
  std::vector<EdgeId> cycle;
};

class NotEvenError : public Error {
 public:
  NotEvenError(const std::string& what, Lasso witness) : Error(ErrorCode::NotEven, what), witness_(std::move(witness)) {}
  const Lasso& witness() const { return witness_; }

 private:
  Lasso witness_;
};

/// Throws NotEvenError carrying the odd lasso unless g is even.
void require_even(const ParityGraph& g, const std::string& what);

/// Result of restrict(): the subgraph plus the vertices it left without successors.
struct Restriction {
  ParityGraph graph;
  std::vector<VertexId> terminal;
};

Restriction restrict(const ParityGraph& g, const VertexSet& keep);

/// Vertices from which every infinite path traverses an edge of targets.
VertexSet attractor_edges(const ParityGraph& g, const EdgeSet& targets);
/// Vertices from which every infinite path visits a vertex of targets (targets included).
VertexSet attractor_vertices(const ParityGraph& g, const VertexSet& targets);

struct PlayerAttractor {
  VertexSet region;
  PositionalStrategy strategy;
};

/// Vertices from which `player` can force a visit to targets, with a positional reaching strategy.
PlayerAttractor player_attractor(const ParityGame& game, const VertexSet& targets, Player player);

struct EvennessResult {
  bool even = true;
  std::optional<Lasso> witness;  // present iff !even
};

/// Checks that every cycle has an even maximal priority; throws TerminalVertex on dead ends.
EvennessResult is_even(const ParityGraph& g);

struct Solution {
  VertexSet eve_region;
  VertexSet adam_region;
  PositionalStrategy eve_strategy;
  PositionalStrategy adam_strategy;
};

Solution solve(const ParityGame& game);

/// One-player graph left after fixing `player`'s positional choices inside region.
ParityGraph strategy_graph(const ParityGame& game, const PositionalStrategy& sigma,
                           const VertexSet& region, Player player = Player::Eve);

/// True iff sigma wins for `player` from every vertex of region.
bool verify_winning(const ParityGame& game, const PositionalStrategy& sigma,
                    const VertexSet& region, Player player = Player::Eve);

/// Strongly connected component id per vertex (universe-indexed, inactive vertices get -1),
/// using only active edges accepted by keep_edge.
template <class Pred>
std::vector<int> scc_ids(const ParityGraph& g, Pred&& keep_edge);

std::vector<int> scc_ids(const ParityGraph& g);

/// Vertices of `from` plus everything reachable from them via active edges.
VertexSet forward_reachable(const ParityGraph& g, const VertexSet& from);
/// Vertices that can reach `to` via active edges (to included).
VertexSet backward_reachable(const ParityGraph& g, const VertexSet& to);

}  // namespace parindex

#include "parindex/detail/scc.hpp"
