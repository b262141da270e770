#include "parindex/games.hpp"

#include <algorithm>
#include <deque>
#include <numeric>

namespace parindex {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::TerminalVertex: return "TerminalVertex";
    case ErrorCode::StrategyEscapesRegion: return "StrategyEscapesRegion";
    case ErrorCode::UndefinedChoice: return "UndefinedChoice";
    case ErrorCode::NotEven: return "NotEven";
    case ErrorCode::PriorityOutOfRange: return "PriorityOutOfRange";
    case ErrorCode::OverlappingParts: return "OverlappingParts";
    case ErrorCode::HypothesisViolated: return "HypothesisViolated";
    case ErrorCode::StateExplosion: return "StateExplosion";
    case ErrorCode::NotBounded: return "NotBounded";
    case ErrorCode::PreconditionFailed: return "PreconditionFailed";
    case ErrorCode::InvalidDecomposition: return "InvalidDecomposition";
    case ErrorCode::AlphabetMismatch: return "AlphabetMismatch";
    case ErrorCode::IncompleteAutomaton: return "IncompleteAutomaton";
    case ErrorCode::IncompatibleGuide: return "IncompatibleGuide";
    case ErrorCode::NoAcceptingRun: return "NoAcceptingRun";
    case ErrorCode::ExhaustedRetries: return "ExhaustedRetries";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::DanglingSuccessor: return "DanglingSuccessor";
    case ErrorCode::EmptyGame: return "EmptyGame";
    case ErrorCode::EmptyIndex: return "EmptyIndex";
    case ErrorCode::Undefined: return "Undefined";
  }
  return "Unknown";
}

Index make_index(Priority lo, Priority hi) {
  if (lo > hi) throw Error(ErrorCode::EmptyIndex, "index [" + std::to_string(lo) + "," + std::to_string(hi) + "]");
  return Index{lo, hi};
}

std::vector<Priority> Index::odd_values() const {
  std::vector<Priority> out;
  for (Priority p = lo; p <= hi; ++p)
    if (p % 2 == 1) out.push_back(p);
  return out;
}

std::vector<Priority> Index::even_values() const {
  std::vector<Priority> out;
  for (Priority p = lo; p <= hi; ++p)
    if (p % 2 == 0) out.push_back(p);
  return out;
}

// ---------------------------------------------------------------------------
// ParityGraph

ParityGraph::ParityGraph(std::size_t vertex_count, std::vector<Edge> edges, Index index)
    : vertices_(VertexSet::full(vertex_count)), edges_(EdgeSet::full(edges.size())), index_(index) {
  auto topo = std::make_shared<Topology>();
  for (std::size_t e = 0; e < edges.size(); ++e) {
    const Edge& ed = edges[e];
    if (ed.source >= vertex_count || ed.target >= vertex_count)
      throw Error(ErrorCode::InvalidArgument, "edge " + std::to_string(e) + " has an endpoint outside the vertex range");
    if (!index.contains(ed.priority))
      throw Error(ErrorCode::PriorityOutOfRange, "edge " + std::to_string(e) + " has priority " +
                                                     std::to_string(ed.priority) + " outside [" +
                                                     std::to_string(index.lo) + "," + std::to_string(index.hi) + "]");
  }
  topo->out_offsets.assign(vertex_count + 1, 0);
  topo->in_offsets.assign(vertex_count + 1, 0);
  for (const Edge& ed : edges) {
    ++topo->out_offsets[ed.source + 1];
    ++topo->in_offsets[ed.target + 1];
  }
  std::partial_sum(topo->out_offsets.begin(), topo->out_offsets.end(), topo->out_offsets.begin());
  std::partial_sum(topo->in_offsets.begin(), topo->in_offsets.end(), topo->in_offsets.begin());
  topo->out_edges.resize(edges.size());
  topo->in_edges.resize(edges.size());
  std::vector<std::uint32_t> op(topo->out_offsets.begin(), topo->out_offsets.end() - 1);
  std::vector<std::uint32_t> ip(topo->in_offsets.begin(), topo->in_offsets.end() - 1);
  for (EdgeId e = 0; e < edges.size(); ++e) {
    topo->out_edges[op[edges[e].source]++] = e;
    topo->in_edges[ip[edges[e].target]++] = e;
  }
  topo->edges = std::move(edges);
  topo_ = std::move(topo);
}

std::span<const EdgeId> ParityGraph::out_all(VertexId v) const {
  return {topo_->out_edges.data() + topo_->out_offsets[v], topo_->out_edges.data() + topo_->out_offsets[v + 1]};
}

std::span<const EdgeId> ParityGraph::in_all(VertexId v) const {
  return {topo_->in_edges.data() + topo_->in_offsets[v], topo_->in_edges.data() + topo_->in_offsets[v + 1]};
}

std::size_t ParityGraph::out_degree(VertexId v) const {
  std::size_t d = 0;
  for_each_out(v, [&](EdgeId) { ++d; });
  return d;
}

ParityGraph ParityGraph::restricted(const VertexSet& keep) const {
  ParityGraph r = *this;
  r.vertices_ &= keep;
  for (EdgeId e : edges_) {
    const Edge& ed = edge(e);
    if (!r.vertices_.contains(ed.source) || !r.vertices_.contains(ed.target)) r.edges_.erase(e);
  }
  return r;
}

ParityGraph ParityGraph::without_edges(const EdgeSet& drop) const {
  ParityGraph r = *this;
  r.edges_ -= drop;
  return r;
}

ParityGraph ParityGraph::with_edges_only(const EdgeSet& keep) const {
  ParityGraph r = *this;
  r.edges_ &= keep;
  return r;
}

std::vector<VertexId> ParityGraph::terminal_vertices() const {
  std::vector<VertexId> out;
  for (VertexId v : vertices_)
    if (out_degree(v) == 0) out.push_back(v);
  return out;
}

bool ParityGraph::has_terminal_vertices() const {
  for (VertexId v : vertices_)
    if (out_degree(v) == 0) return true;
  return false;
}

Priority ParityGraph::max_priority() const {
  Priority m = 0;
  for (EdgeId e : edges_) m = std::max(m, priority(e));
  return m;
}

ParityGraph::Compacted ParityGraph::compacted() const {
  Compacted c;
  std::vector<VertexId> renum(vertex_universe(), 0);
  for (VertexId v : vertices_) {
    renum[v] = static_cast<VertexId>(c.original_vertex.size());
    c.original_vertex.push_back(v);
  }
  std::vector<Edge> es;
  for (EdgeId e : edges_) {
    const Edge& ed = edge(e);
    es.push_back(Edge{renum[ed.source], renum[ed.target], ed.priority});
    c.original_edge.push_back(e);
  }
  c.graph = ParityGraph(c.original_vertex.size(), std::move(es), index_);
  return c;
}

ParityGraph ParityGraph::relabelled(const std::vector<Priority>& priorities, Index index) const {
  std::vector<Edge> es = topo_->edges;
  for (EdgeId e = 0; e < es.size(); ++e) es[e].priority = priorities.at(e);
  ParityGraph r(vertex_universe(), std::move(es), index);
  r.vertices_ = vertices_;
  r.edges_ = edges_;
  return r;
}

ParityGame::ParityGame(ParityGraph g, std::vector<Player> owners) : graph(std::move(g)), owner(std::move(owners)) {
  if (owner.size() != graph.vertex_universe())
    throw Error(ErrorCode::InvalidArgument, "owner map must cover exactly the vertex set");
}

ParityGame adam_only(const ParityGraph& g) {
  return ParityGame(g, std::vector<Player>(g.vertex_universe(), Player::Adam));
}

std::vector<int> scc_ids(const ParityGraph& g) {
  return scc_ids(g, [](EdgeId) { return true; });
}

VertexSet forward_reachable(const ParityGraph& g, const VertexSet& from) {
  VertexSet seen(g.vertex_universe());
  std::vector<VertexId> work;
  for (VertexId v : from)
    if (g.has_vertex(v)) {
      seen.insert(v);
      work.push_back(v);
    }
  while (!work.empty()) {
    VertexId v = work.back();
    work.pop_back();
    g.for_each_out(v, [&](EdgeId e) {
      VertexId w = g.edge(e).target;
      if (!seen.contains(w)) {
        seen.insert(w);
        work.push_back(w);
      }
    });
  }
  return seen;
}

VertexSet backward_reachable(const ParityGraph& g, const VertexSet& to) {
  VertexSet seen(g.vertex_universe());
  std::vector<VertexId> work;
  for (VertexId v : to)
    if (g.has_vertex(v)) {
      seen.insert(v);
      work.push_back(v);
    }
  while (!work.empty()) {
    VertexId v = work.back();
    work.pop_back();
    g.for_each_in(v, [&](EdgeId e) {
      VertexId w = g.edge(e).source;
      if (!seen.contains(w)) {
        seen.insert(w);
        work.push_back(w);
      }
    });
  }
  return seen;
}

// ---------------------------------------------------------------------------
// restrict / attractors

Restriction restrict(const ParityGraph& g, const VertexSet& keep) {
  Restriction r{g.restricted(keep), {}};
  r.terminal = r.graph.terminal_vertices();
  return r;
}

namespace {

// Greatest fixpoint of "has an escaping edge into the survivors", where an edge escapes
// when avoid_edge(e) holds; returns the survivors. Survivors start from `start`.
template <class AvoidEdge>
VertexSet escaping_core(const ParityGraph& g, VertexSet survivors, AvoidEdge&& avoid_edge) {
  const std::size_t n = g.vertex_universe();
  std::vector<std::uint32_t> live(n, 0);
  std::deque<VertexId> dead;
  for (VertexId v : survivors) {
    g.for_each_out(v, [&](EdgeId e) {
      if (avoid_edge(e) && survivors.contains(g.edge(e).target)) ++live[v];
    });
    if (live[v] == 0) dead.push_back(v);
  }
  for (VertexId v : dead) survivors.erase(v);
  while (!dead.empty()) {
    VertexId w = dead.front();
    dead.pop_front();
    g.for_each_in(w, [&](EdgeId e) {
      VertexId u = g.edge(e).source;
      if (!survivors.contains(u) || !avoid_edge(e)) return;
      if (--live[u] == 0) {
        survivors.erase(u);
        dead.push_back(u);
      }
    });
  }
  return survivors;
}

}  // namespace

VertexSet attractor_edges(const ParityGraph& g, const EdgeSet& targets) {
  VertexSet core = escaping_core(g, g.vertices(), [&](EdgeId e) { return !targets.contains(e); });
  return g.vertices() - core;
}

VertexSet attractor_vertices(const ParityGraph& g, const VertexSet& targets) {
  VertexSet start = g.vertices() - targets;
  VertexSet core = escaping_core(g, std::move(start), [](EdgeId) { return true; });
  return g.vertices() - core;
}

PlayerAttractor player_attractor(const ParityGame& game, const VertexSet& targets, Player player) {
  const ParityGraph& g = game.graph;
  const std::size_t n = g.vertex_universe();
  PlayerAttractor out{VertexSet(n), PositionalStrategy(n)};
  std::vector<std::uint32_t> remaining(n, 0);
  std::deque<VertexId> queue;
  for (VertexId v : g.vertices()) {
    remaining[v] = static_cast<std::uint32_t>(g.out_degree(v));
    if (targets.contains(v)) {
      out.region.insert(v);
      queue.push_back(v);
    }
  }
  while (!queue.empty()) {
    VertexId w = queue.front();
    queue.pop_front();
    for (EdgeId e : g.in_all(w)) {
      if (!g.has_edge(e)) continue;
      VertexId u = g.edge(e).source;
      if (out.region.contains(u)) continue;
      if (game.owner_of(u) == player) {
        out.region.insert(u);
        out.strategy.set(u, e);
        queue.push_back(u);
      } else if (--remaining[u] == 0) {
        out.region.insert(u);
        queue.push_back(u);
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// evenness

namespace {

std::vector<EdgeId> path_within(const ParityGraph& g, VertexId from, VertexId to, const std::vector<int>& comp,
                                Priority cap) {
  if (from == to) return {};
  std::vector<EdgeId> via(g.vertex_universe(), kNoEdge);
  std::vector<char> seen(g.vertex_universe(), 0);
  std::deque<VertexId> queue{from};
  seen[from] = 1;
  while (!queue.empty()) {
    VertexId v = queue.front();
    queue.pop_front();
    if (v == to) break;
    for (EdgeId e : g.out_all(v)) {
      if (!g.has_edge(e) || g.priority(e) > cap) continue;
      VertexId w = g.edge(e).target;
      if (seen[w] || comp[w] != comp[from]) continue;
      seen[w] = 1;
      via[w] = e;
      queue.push_back(w);
    }
  }
  std::vector<EdgeId> path;
  for (VertexId v = to; v != from; v = g.edge(via[v]).source) path.push_back(via[v]);
  std::reverse(path.begin(), path.end());
  return path;
}

}  // namespace

EvennessResult is_even(const ParityGraph& g) {
  if (auto t = g.terminal_vertices(); !t.empty())
    throw Error(ErrorCode::TerminalVertex, "vertex " + std::to_string(t.front()) + " has no successor");
  std::vector<char> present(g.max_priority() + 1, 0);
  for (EdgeId e : g.edges()) present[g.priority(e)] = 1;
  for (Priority p = static_cast<Priority>(present.size()); p-- > 0;) {
    if (p % 2 == 0 || !present[p]) continue;
    auto comp = scc_ids(g, [&](EdgeId e) { return g.priority(e) <= p; });
    for (EdgeId e : g.edges()) {
      const Edge& ed = g.edge(e);
      if (ed.priority != p || comp[ed.source] != comp[ed.target]) continue;
      Lasso lasso;
      lasso.cycle.push_back(e);
      auto back = path_within(g, ed.target, ed.source, comp, p);
      lasso.cycle.insert(lasso.cycle.end(), back.begin(), back.end());
      return {false, std::move(lasso)};
    }
  }
  return {true, std::nullopt};
}

// ---------------------------------------------------------------------------
// Zielonka's recursive algorithm on a vertex-priority arena. Edges of positive
// priority are split by an intermediate vertex carrying that priority.

namespace {

class Arena {
 public:
  explicit Arena(const ParityGame& game) {
    const ParityGraph& g = game.graph;
    local_.assign(g.vertex_universe(), -1);
    for (VertexId v : g.vertices()) {
      local_[v] = static_cast<int>(prio_.size());
      original_.push_back(v);
      prio_.push_back(0);
      owner_.push_back(game.owner_of(v));
    }
    originals_ = prio_.size();
    struct Arc {
      std::uint32_t from, to;
      EdgeId edge;
    };
    std::vector<Arc> arcs;
    for (EdgeId e : g.edges()) {
      const Edge& ed = g.edge(e);
      std::uint32_t s = local_[ed.source], t = local_[ed.target];
      if (ed.priority == 0) {
        arcs.push_back({s, t, e});
      } else {
        std::uint32_t mid = static_cast<std::uint32_t>(prio_.size());
        prio_.push_back(ed.priority);
        owner_.push_back(Player::Eve);
        original_.push_back(0);
        arcs.push_back({s, mid, e});
        arcs.push_back({mid, t, e});
      }
    }
    const std::size_t n = prio_.size();
    out_off_.assign(n + 1, 0);
    in_off_.assign(n + 1, 0);
    for (auto& a : arcs) {
      ++out_off_[a.from + 1];
      ++in_off_[a.to + 1];
    }
    std::partial_sum(out_off_.begin(), out_off_.end(), out_off_.begin());
    std::partial_sum(in_off_.begin(), in_off_.end(), in_off_.begin());
    out_.resize(arcs.size());
    out_edge_.resize(arcs.size());
    in_.resize(arcs.size());
    std::vector<std::uint32_t> op(out_off_.begin(), out_off_.end() - 1), ip(in_off_.begin(), in_off_.end() - 1);
    for (auto& a : arcs) {
      out_edge_[op[a.from]] = a.edge;
      out_[op[a.from]++] = a.to;
      in_[ip[a.to]++] = a.from;
    }
    max_prio_ = 0;
    for (auto p : prio_) max_prio_ = std::max(max_prio_, p);
  }

  std::size_t size() const { return prio_.size(); }

  // Solves the subgame given by mask; fills win (0 Eve, 1 Adam) and strategy (arc index) for its vertices.
  void zielonka(std::vector<char>& mask, std::vector<std::int8_t>& win, std::vector<std::int64_t>& strat) {
    std::vector<std::uint32_t> verts;
    Priority d = 0;
    for (std::uint32_t v = 0; v < size(); ++v)
      if (mask[v]) {
        verts.push_back(v);
        d = std::max(d, prio_[v]);
      }
    if (verts.empty()) return;
    const int p = static_cast<int>(d % 2);
    std::vector<char> target(size(), 0);
    for (auto v : verts)
      if (prio_[v] == d) target[v] = 1;
    std::vector<char> attr = attract(mask, target, p, strat);
    // top-priority vertices of player p: any successor inside the subgame
    for (auto v : verts)
      if (target[v] && owner_index(v) == p) strat[v] = any_arc_within(v, mask);

    std::vector<char> sub(size(), 0);
    bool sub_nonempty = false;
    for (auto v : verts)
      if (!attr[v]) {
        sub[v] = 1;
        sub_nonempty = true;
      }
    if (sub_nonempty) zielonka(sub, win, strat);
    bool opp_wins_some = false;
    for (auto v : verts)
      if (sub[v] && win[v] == 1 - p) {
        opp_wins_some = true;
        break;
      }
    if (!opp_wins_some) {
      for (auto v : verts) win[v] = static_cast<std::int8_t>(p);
      return;
    }
    std::vector<char> opp_target(size(), 0);
    for (auto v : verts)
      if (sub[v] && win[v] == 1 - p) opp_target[v] = 1;
    std::vector<char> battr = attract(mask, opp_target, 1 - p, strat);
    std::vector<char> rest(size(), 0);
    for (auto v : verts) {
      if (battr[v])
        win[v] = static_cast<std::int8_t>(1 - p);
      else
        rest[v] = 1;
    }
    zielonka(rest, win, strat);
  }

  Solution extract(const ParityGame& game, std::vector<std::int8_t>& win, std::vector<std::int64_t>& strat) const {
    const std::size_t n = game.graph.vertex_universe();
    Solution s{VertexSet(n), VertexSet(n), PositionalStrategy(n), PositionalStrategy(n)};
    for (std::uint32_t v = 0; v < originals_; ++v) {
      VertexId orig = original_[v];
      bool eve_wins = win[v] == 0;
      (eve_wins ? s.eve_region : s.adam_region).insert(orig);
      Player o = owner_[v];
      if ((o == Player::Eve) == eve_wins && strat[v] >= 0) {
        auto& sigma = eve_wins ? s.eve_strategy : s.adam_strategy;
        sigma.set(orig, out_edge_[static_cast<std::size_t>(strat[v])]);
      }
    }
    return s;
  }

 private:
  int owner_index(std::uint32_t v) const { return owner_[v] == Player::Eve ? 0 : 1; }

  std::int64_t any_arc_within(std::uint32_t v, const std::vector<char>& mask) const {
    for (auto a = out_off_[v]; a < out_off_[v + 1]; ++a)
      if (mask[out_[a]]) return a;
    return -1;
  }

  std::vector<char> attract(const std::vector<char>& mask, const std::vector<char>& target, int player,
                            std::vector<std::int64_t>& strat) const {
    std::vector<char> in(size(), 0);
    std::vector<std::uint32_t> count(size(), 0);
    std::deque<std::uint32_t> queue;
    for (std::uint32_t v = 0; v < size(); ++v) {
      if (!mask[v]) continue;
      for (auto a = out_off_[v]; a < out_off_[v + 1]; ++a)
        if (mask[out_[a]]) ++count[v];
      if (target[v]) {
        in[v] = 1;
        queue.push_back(v);
      }
    }
    while (!queue.empty()) {
      std::uint32_t w = queue.front();
      queue.pop_front();
      for (auto a = in_off_[w]; a < in_off_[w + 1]; ++a) {
        std::uint32_t u = in_[a];
        if (!mask[u] || in[u]) continue;
        if (owner_index(u) == player) {
          in[u] = 1;
          for (auto b = out_off_[u]; b < out_off_[u + 1]; ++b)
            if (out_[b] == w) {
              strat[u] = b;
              break;
            }
          queue.push_back(u);
        } else if (--count[u] == 0) {
          in[u] = 1;
          queue.push_back(u);
        }
      }
    }
    return in;
  }

  std::vector<int> local_;
  std::vector<VertexId> original_;
  std::vector<Priority> prio_;
  std::vector<Player> owner_;
  std::size_t originals_ = 0;
  std::vector<std::uint32_t> out_off_, in_off_, out_, in_;
  std::vector<EdgeId> out_edge_;
  Priority max_prio_ = 0;
};

}  // namespace

Solution solve(const ParityGame& game) {
  if (auto t = game.graph.terminal_vertices(); !t.empty())
    throw Error(ErrorCode::TerminalVertex, "vertex " + std::to_string(t.front()) + " has no successor");
  Arena arena(game);
  std::vector<char> mask(arena.size(), 1);
  std::vector<std::int8_t> win(arena.size(), 0);
  std::vector<std::int64_t> strat(arena.size(), -1);
  arena.zielonka(mask, win, strat);
  return arena.extract(game, win, strat);
}

// ---------------------------------------------------------------------------
// strategies

ParityGraph strategy_graph(const ParityGame& game, const PositionalStrategy& sigma, const VertexSet& region,
                           Player player) {
  const ParityGraph& g = game.graph;
  EdgeSet keep(g.edge_universe());
  for (VertexId v : region) {
    if (!g.has_vertex(v)) continue;
    if (game.owner_of(v) == player) {
      EdgeId e = sigma.choice(v);
      if (e == kNoEdge)
        throw Error(ErrorCode::UndefinedChoice, "no choice at vertex " + std::to_string(v));
      if (!g.has_edge(e) || g.edge(e).source != v)
        throw Error(ErrorCode::UndefinedChoice, "choice at vertex " + std::to_string(v) + " does not leave it");
      if (!region.contains(g.edge(e).target))
        throw Error(ErrorCode::StrategyEscapesRegion, "choice at vertex " + std::to_string(v) + " leaves the region");
      keep.insert(e);
    } else {
      g.for_each_out(v, [&](EdgeId e) {
        if (!region.contains(g.edge(e).target))
          throw Error(ErrorCode::StrategyEscapesRegion,
                      "opponent vertex " + std::to_string(v) + " can leave the region");
        keep.insert(e);
      });
    }
  }
  return g.restricted(region).with_edges_only(keep);
}

bool verify_winning(const ParityGame& game, const PositionalStrategy& sigma, const VertexSet& region,
                    Player player) {
  if (region.empty()) return true;
  ParityGraph sg = strategy_graph(game, sigma, region, player);
  if (sg.has_terminal_vertices()) return false;
  if (player == Player::Eve) return is_even(sg).even;
  // Adam wins iff every cycle is odd-dominated, i.e. the parity-shifted graph is even.
  std::vector<Priority> shifted(sg.edge_universe());
  for (EdgeId e = 0; e < sg.edge_universe(); ++e) shifted[e] = sg.priority(e) + 1;
  return is_even(sg.relabelled(shifted, Index{sg.index().lo + 1, sg.index().hi + 1})).even;
}

}  // namespace parindex

namespace parindex {

void require_even(const ParityGraph& g, const std::string& what) {
  auto r = is_even(g);
  if (!r.even) throw NotEvenError(what + " has a cycle with odd maximal priority", *r.witness);
}

}  // namespace parindex
