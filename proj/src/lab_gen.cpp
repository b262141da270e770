#include <algorithm>
#include <functional>
#include <random>

#include "parindex/lab.hpp"

namespace parindex {

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t salt) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (salt + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

namespace {

std::size_t uniform(std::mt19937_64& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

ParityGame game_from_graph(const ParityGraph::Compacted& c, const std::vector<Player>& owner) {
  std::vector<Player> o;
  for (VertexId v : c.original_vertex) o.push_back(owner[v]);
  return ParityGame(c.graph, std::move(o));
}

}  // namespace

ParityGame random_game(const GenParams& p) {
  std::mt19937_64 rng(p.seed);
  const std::size_t n = p.exact_size ? std::max<std::size_t>(p.vertex_count, 1) : uniform(rng, 1, std::max<std::size_t>(p.vertex_count, 1));
  std::bernoulli_distribution coin(0.5), extra(std::clamp(p.edge_density, 0.0, 1.0));
  std::vector<Edge> edges;
  std::vector<Player> owner;
  auto prio = [&] { return static_cast<Priority>(uniform(rng, 0, p.priority_cap)); };
  for (VertexId v = 0; v < n; ++v) {
    owner.push_back(coin(rng) ? Player::Eve : Player::Adam);
    const auto first = static_cast<VertexId>(uniform(rng, 0, n - 1));
    edges.push_back(Edge{v, first, prio()});
    for (VertexId t = 0; t < n; ++t)
      if (extra(rng)) edges.push_back(Edge{v, t, prio()});
  }
  return ParityGame(ParityGraph(n, std::move(edges), Index{0, p.priority_cap}), std::move(owner));
}

ParityGraph planted_graph(const OrderedTree& shape) {
  std::vector<Edge> edges;
  VertexId next = 0;
  std::function<VertexId(const OrderedTree&, Priority)> build = [&](const OrderedTree& t, Priority level) {
    const VertexId hub = next++;
    edges.push_back(Edge{hub, hub, level});
    VertexId prev = 0;
    bool first = true;
    for (const auto& c : t.children) {
      const VertexId child = build(c, level - 2);
      edges.push_back(Edge{child, hub, level});
      if (!first) edges.push_back(Edge{child, prev, static_cast<Priority>(level - 1)});
      prev = child;
      first = false;
    }
    return hub;
  };
  const auto top = static_cast<Priority>(2 * (depth(shape) - 1));
  build(shape, top);
  return ParityGraph(next, std::move(edges), Index{0, top});
}

ParityGraph random_even_graph(const GenParams& p) {
  if (p.planted) {
    std::mt19937_64 rng(p.seed);
    const auto trees = enumerate_trees(std::max<std::size_t>(p.vertex_count, 1), p.priority_cap / 2 + 1, 3);
    return planted_graph(trees[uniform(rng, 0, trees.size() - 1)]);
  }
  constexpr int kAttempts = 100;
  for (int attempt = 0; attempt < kAttempts; ++attempt) {
    GenParams q = p;
    q.seed = derive_seed(p.seed, attempt);
    ParityGame game = random_game(q);
    Solution sol = solve(game);
    if (sol.eve_region.empty()) continue;
    return strategy_graph(game, sol.eve_strategy, sol.eve_region).compacted().graph;
  }
  throw Error(ErrorCode::ExhaustedRetries, "no game with a non-empty Eve region in " + std::to_string(kAttempts) + " attempts");
}

LabellingPair random_bounded_pair(const GenParams& p, std::size_t n) {
  const Index ij = p.index_j;
  if (ij.lo == 0 || ij.hi < ij.lo) throw Error(ErrorCode::InvalidArgument, "index_j must start at 1 or above");
  const auto top_i = static_cast<Priority>(p.priority_cap - p.priority_cap % 2);
  const Index ii{0, top_i};
  auto clip = [](Priority x, Priority lo, Priority hi) -> Priority {
    while (x < lo) x += 2;
    while (x > hi) x -= 2;
    return x;
  };
  constexpr int kAttempts = 1000;
  std::mt19937_64 rng(p.seed);
  for (int attempt = 0; attempt < kAttempts; ++attempt) {
    GenParams q = p;
    q.seed = derive_seed(p.seed, attempt);
    q.priority_cap = ij.hi;
    q.planted = false;
    ParityGraph g = random_even_graph(q);
    std::vector<Priority> lj(g.edge_universe()), li(g.edge_universe());
    for (EdgeId e = 0; e < g.edge_universe(); ++e) {
      lj[e] = clip(g.priority(e), ij.lo, ij.hi);
      li[e] = clip(lj[e], 0, top_i);
    }
    // Odd bursts: some edges get a random odd label_i, fewer as attempts go on.
    const double burst = top_i == 0 ? 0.0 : 0.4 * (1.0 - double(attempt) / kAttempts);
    std::bernoulli_distribution hit(burst);
    for (EdgeId e = 0; e < g.edge_universe(); ++e)
      if (hit(rng)) li[e] = static_cast<Priority>(2 * uniform(rng, 0, top_i / 2 - 1) + 1);
    LabellingPair pair(g.relabelled(li, ii), li, ii, lj, ij);
    if (!is_even(pair.view_i()).even || !is_even(pair.view_j()).even) continue;
    if (!n_bound_check(pair, n).bounded) continue;
    return pair;
  }
  throw Error(ErrorCode::ExhaustedRetries, "no bounded pair in " + std::to_string(kAttempts) + " attempts");
}

BruteRegions brute_solve(const ParityGame& game, std::size_t cap) {
  const ParityGraph& g = game.graph;
  std::vector<VertexId> eve;
  std::vector<std::vector<EdgeId>> options;
  std::size_t total = 1;
  for (VertexId v : g.vertices()) {
    if (game.owner_of(v) != Player::Eve) continue;
    std::vector<EdgeId> out;
    g.for_each_out(v, [&](EdgeId e) { out.push_back(e); });
    if (out.empty()) throw Error(ErrorCode::TerminalVertex, "vertex " + std::to_string(v) + " has no successor");
    eve.push_back(v);
    options.push_back(std::move(out));
    if (total > cap / options.back().size()) throw Error(ErrorCode::TooLarge, "more than " + std::to_string(cap) + " Eve strategies");
    total *= options.back().size();
  }
  BruteRegions r{VertexSet(g.vertex_universe()), VertexSet(g.vertex_universe())};
  std::vector<std::size_t> pick(eve.size(), 0);
  for (std::size_t s = 0; s < total; ++s) {
    EdgeSet keep(g.edge_universe());
    for (EdgeId e : g.edges())
      if (game.owner_of(g.edge(e).source) == Player::Adam) keep.insert(e);
    for (std::size_t k = 0; k < eve.size(); ++k) keep.insert(options[k][pick[k]]);
    const ParityGraph residual = g.with_edges_only(keep);
    for (VertexId v : g.vertices()) {
      if (r.eve.contains(v)) continue;
      const ParityGraph reach = residual.restricted(forward_reachable(residual, VertexSet::of(g.vertex_universe(), std::vector<VertexId>{v})));
      if (is_even(reach).even) r.eve.insert(v);
    }
    for (std::size_t k = 0; k < pick.size(); ++k) {
      if (++pick[k] < options[k].size()) break;
      pick[k] = 0;
    }
  }
  r.adam = g.vertices() - r.eve;
  return r;
}

namespace {

// Can children[a..] of t be placed on host children[from..] in order?
bool place(const OrderedTree& t, std::size_t a, const OrderedTree& host, std::size_t from) {
  if (a == t.children.size()) return true;
  for (std::size_t b = from; b < host.children.size(); ++b)
    if (embeds_exhaustive(t.children[a], host.children[b]) && place(t, a + 1, host, b + 1)) return true;
  return false;
}

}  // namespace

bool embeds_exhaustive(const OrderedTree& t, const OrderedTree& host) { return place(t, 0, host, 0); }

ParityGame shrink_game(const ParityGame& game, const std::function<bool(const ParityGame&)>& fails) {
  ParityGame cur = game;
  auto accept = [&](const ParityGraph& candidate) {
    if (candidate.vertices().empty() || candidate.has_terminal_vertices()) return false;
    ParityGame next = game_from_graph(candidate.compacted(), cur.owner);
    if (!fails(next)) return false;
    cur = std::move(next);
    return true;
  };
  bool changed = true;
  while (changed) {
    changed = false;
    for (VertexId v : cur.graph.vertices().ids()) {
      VertexSet keep = cur.graph.vertices();
      keep.erase(v);
      if (accept(cur.graph.restricted(keep))) {
        changed = true;
        break;
      }
    }
    if (changed) continue;
    for (EdgeId e : cur.graph.edges().ids()) {
      EdgeSet drop(cur.graph.edge_universe());
      drop.insert(e);
      if (accept(cur.graph.without_edges(drop))) {
        changed = true;
        break;
      }
    }
  }
  return cur;
}

}  // namespace parindex
