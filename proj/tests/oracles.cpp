#include "oracles.hpp"

#include <algorithm>
#include <functional>

namespace oracle {

bool has_odd_simple_cycle(const ParityGraph& g) {
  // Each simple cycle is found once, from its smallest vertex.
  std::vector<char> on_path(g.vertex_universe(), 0);
  bool found = false;
  std::function<void(VertexId, VertexId, Priority)> dfs = [&](VertexId start, VertexId v, Priority top) {
    if (found) return;
    on_path[v] = 1;
    g.for_each_out(v, [&](EdgeId e) {
      const Edge& ed = g.edge(e);
      const Priority t = std::max(top, ed.priority);
      if (ed.target == start) {
        if (t % 2 == 1) found = true;
      } else if (ed.target > start && !on_path[ed.target]) {
        dfs(start, ed.target, t);
      }
    });
    on_path[v] = 0;
  };
  for (VertexId s : g.vertices()) dfs(s, s, 0);
  return found;
}

VertexSet escape_set(const ParityGraph& g, const EdgeSet& targets) {
  VertexSet safe = g.vertices();
  for (bool changed = true; changed;) {
    changed = false;
    for (VertexId v : safe.ids()) {
      bool keeps = false;
      g.for_each_out(v, [&](EdgeId e) { keeps |= !targets.contains(e) && safe.contains(g.edge(e).target); });
      if (!keeps) {
        safe.erase(v);
        changed = true;
      }
    }
  }
  return safe;
}

bool unbounded_by_enumeration(const LabellingPair& pair, std::size_t n, std::size_t max_len) {
  const ParityGraph& g = pair.graph;
  for (Priority i : pair.index_i.odd_values())
    for (Priority j : pair.index_j.even_values()) {
      bool found = false;
      // Shortest length at which each (vertex, segments done, flags) was reached; a later visit
      // with no fewer edges used cannot find anything new.
      std::vector<std::size_t> best(g.vertex_universe() * (n + 1) * 4, max_len + 1);
      std::function<void(VertexId, std::size_t, std::size_t, bool, bool)> walk =
          [&](VertexId v, std::size_t len, std::size_t done, bool si, bool sj) {
            if (found || len == max_len) return;
            std::size_t& seen = best[((v * (n + 1) + done) * 2 + si) * 2 + sj];
            if (seen <= len) return;
            seen = len;
            g.for_each_out(v, [&](EdgeId e) {
              if (found || pair.label_i[e] > i || pair.label_j[e] > j) return;
              bool ni = si || pair.label_i[e] == i, nj = sj || pair.label_j[e] == j;
              std::size_t nd = done;
              if (ni && nj) {
                ++nd;
                ni = nj = false;
              }
              if (nd == n + 1) {
                found = true;
                return;
              }
              walk(g.edge(e).target, len + 1, nd, ni, nj);
            });
          };
      for (VertexId v : g.vertices()) walk(v, 0, 0, false, false);
      if (found) return true;
    }
  return false;
}

bool valid_segmented_path(const LabellingPair& pair, const SegmentedPath& p, std::size_t n) {
  if (p.segments.size() != n + 1 || p.i % 2 != 1 || p.j % 2 != 0) return false;
  const ParityGraph& g = pair.graph;
  bool first = true;
  VertexId at = 0;
  for (const auto& seg : p.segments) {
    if (seg.empty()) return false;
    Priority mi = 0, mj = 0;
    for (EdgeId e : seg) {
      if (!g.has_edge(e)) return false;
      if (!first && g.edge(e).source != at) return false;
      first = false;
      at = g.edge(e).target;
      mi = std::max(mi, pair.label_i[e]);
      mj = std::max(mj, pair.label_j[e]);
    }
    if (mi != p.i || mj != p.j) return false;
  }
  return true;
}

namespace {

OrderedTree complete_tree(std::size_t arity, std::size_t levels) {
  if (levels <= 1) return OrderedTree::leaf();
  return OrderedTree::node(std::vector<OrderedTree>(arity, complete_tree(arity, levels - 1)));
}

// Does pattern map into host with its root at host's root, children going to disjoint descendants?
bool minor_at(const OrderedTree& pattern, const OrderedTree& host);

bool minor_below(const OrderedTree& pattern, const OrderedTree& host) {
  if (minor_at(pattern, host)) return true;
  for (const auto& c : host.children)
    if (minor_below(pattern, c)) return true;
  return false;
}

bool minor_at(const OrderedTree& pattern, const OrderedTree& host) {
  // Children of a complete tree are identical, so it suffices to count host children hosting one copy.
  if (pattern.is_leaf()) return true;
  std::size_t fits = 0;
  for (const auto& c : host.children)
    if (minor_below(pattern.children.front(), c)) ++fits;
  return fits >= pattern.children.size();
}

}  // namespace

std::size_t strahler_by_minors(const OrderedTree& t, std::size_t n) {
  std::size_t k = 1;
  while (minor_below(complete_tree(n + 1, k + 1), t)) ++k;
  return k;
}

std::uint64_t catalan(std::size_t k) {
  std::uint64_t c = 1;
  for (std::size_t i = 0; i < k; ++i) c = c * 2 * (2 * i + 1) / (i + 2);
  return c;
}

std::uint64_t count_embeddings(const OrderedTree& t, const OrderedTree& host) {
  // ways[a][b]: embeddings of t's first a children into host's first b children.
  const std::size_t m = t.children.size(), h = host.children.size();
  std::vector<std::vector<std::uint64_t>> ways(m + 1, std::vector<std::uint64_t>(h + 1, 0));
  for (std::size_t b = 0; b <= h; ++b) ways[0][b] = 1;
  for (std::size_t a = 1; a <= m; ++a)
    for (std::size_t b = 1; b <= h; ++b)
      ways[a][b] = ways[a][b - 1] + ways[a - 1][b - 1] * count_embeddings(t.children[a - 1], host.children[b - 1]);
  return ways[m][h];
}

ParityGraph random_graph(std::mt19937_64& rng, std::size_t max_vertices, Priority max_priority, double density) {
  std::uniform_int_distribution<std::size_t> size(1, max_vertices);
  const std::size_t n = size(rng);
  std::uniform_int_distribution<VertexId> vertex(0, static_cast<VertexId>(n - 1));
  std::uniform_int_distribution<Priority> prio(0, max_priority);
  std::bernoulli_distribution extra(density);
  std::vector<Edge> edges;
  for (VertexId v = 0; v < n; ++v) {
    edges.push_back(Edge{v, vertex(rng), prio(rng)});
    for (VertexId t = 0; t < n; ++t)
      if (extra(rng)) edges.push_back(Edge{v, t, prio(rng)});
  }
  return ParityGraph(n, std::move(edges), Index{0, max_priority});
}

bool accepts_by_enumeration(const NPTA& a, const RegularTree& t) {
  const AcceptanceGame ag = acceptance_game(a, t);
  const ParityGraph& g = ag.game.graph;
  std::vector<VertexId> eve;
  std::vector<std::vector<EdgeId>> options;
  for (VertexId v : g.vertices()) {
    if (ag.game.owner_of(v) != Player::Eve) continue;
    std::vector<EdgeId> out;
    g.for_each_out(v, [&](EdgeId e) { out.push_back(e); });
    eve.push_back(v);
    options.push_back(out);
  }
  std::vector<std::size_t> pick(eve.size(), 0);
  while (true) {
    EdgeSet keep(g.edge_universe());
    for (EdgeId e : g.edges())
      if (ag.game.owner_of(g.edge(e).source) == Player::Adam) keep.insert(e);
    for (std::size_t k = 0; k < eve.size(); ++k) keep.insert(options[k][pick[k]]);
    const ParityGraph played = g.with_edges_only(keep);
    // restrict to what is reachable from the initial vertex
    VertexSet seen(g.vertex_universe());
    std::vector<VertexId> stack{ag.initial};
    seen.insert(ag.initial);
    while (!stack.empty()) {
      VertexId v = stack.back();
      stack.pop_back();
      played.for_each_out(v, [&](EdgeId e) {
        if (!seen.contains(played.edge(e).target)) {
          seen.insert(played.edge(e).target);
          stack.push_back(played.edge(e).target);
        }
      });
    }
    if (!has_odd_simple_cycle(played.restricted(seen))) return true;
    std::size_t k = 0;
    for (; k < pick.size(); ++k) {
      if (++pick[k] < options[k].size()) break;
      pick[k] = 0;
    }
    if (k == pick.size()) return false;
  }
}

}  // namespace oracle
