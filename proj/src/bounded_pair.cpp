#include <algorithm>
#include <deque>
#include <string>
#include <unordered_map>

#include "parindex/decomposition.hpp"
#include "parindex/transduction.hpp"

namespace parindex {

LabellingPair::LabellingPair(ParityGraph g, std::vector<Priority> li, Index ii, std::vector<Priority> lj, Index ij)
    : graph(std::move(g)), label_i(std::move(li)), index_i(ii), label_j(std::move(lj)), index_j(ij) {
  if (label_i.size() != graph.edge_universe() || label_j.size() != graph.edge_universe())
    throw Error(ErrorCode::InvalidArgument, "labellings must cover every edge");
  for (EdgeId e = 0; e < graph.edge_universe(); ++e) {
    if (!index_i.contains(label_i[e]))
      throw Error(ErrorCode::PriorityOutOfRange, "label_i of edge " + std::to_string(e) + " outside its index");
    if (!index_j.contains(label_j[e]))
      throw Error(ErrorCode::PriorityOutOfRange, "label_j of edge " + std::to_string(e) + " outside its index");
  }
}

MemoryProduct memory_product(const LabellingPair& pair, std::size_t cap) {
  const ParityGraph& g = pair.graph;
  const auto odd = pair.index_i.odd_values();
  const auto even = pair.index_j.even_values();
  MemoryProduct mp;
  mp.flag_count = 2 * odd.size() * even.size();
  if (mp.flag_count > 64) throw Error(ErrorCode::TooLarge, "memory needs more than 64 flags");

  auto step = [&](std::uint64_t m, EdgeId e) {
    const Priority li = pair.label_i[e], lj = pair.label_j[e];
    std::uint64_t out = 0;
    for (std::size_t a = 0; a < odd.size(); ++a)
      for (std::size_t b = 0; b < even.size(); ++b) {
        const std::size_t bit = 2 * (a * even.size() + b);
        const bool j_seen = (m >> bit) & 1, i_seen = (m >> (bit + 1)) & 1;
        // flag 1: even[b] seen in label_j since the last odd[a] in label_i; flag 2 symmetrically
        const bool nj = lj >= even[b] || (j_seen && li < odd[a]);
        const bool ni = li >= odd[a] || (i_seen && lj < even[b]);
        out |= std::uint64_t(nj) << bit;
        out |= std::uint64_t(ni) << (bit + 1);
      }
    return out;
  };

  std::vector<std::unordered_map<std::uint64_t, VertexId>> ids(g.vertex_universe());
  std::deque<VertexId> work;
  auto intern = [&](VertexId v, std::uint64_t m) {
    auto [it, fresh] = ids[v].try_emplace(m, static_cast<VertexId>(mp.base_vertex.size()));
    if (fresh) {
      if (mp.base_vertex.size() >= cap)
        throw Error(ErrorCode::StateExplosion, "memory product exceeds " + std::to_string(cap) + " states");
      mp.base_vertex.push_back(v);
      mp.memory.push_back(m);
      work.push_back(it->second);
    }
    return it->second;
  };
  for (VertexId v : g.vertices()) mp.initial.push_back(intern(v, 0));

  std::vector<Edge> edges;
  std::vector<Priority> li, lj;
  while (!work.empty()) {
    VertexId s = work.front();
    work.pop_front();
    const VertexId v = mp.base_vertex[s];
    const std::uint64_t m = mp.memory[s];
    g.for_each_out(v, [&](EdgeId e) {
      VertexId t = intern(g.edge(e).target, step(m, e));
      edges.push_back(Edge{s, t, pair.label_i[e]});
      li.push_back(pair.label_i[e]);
      lj.push_back(pair.label_j[e]);
      mp.base_edge.push_back(e);
    });
  }
  ParityGraph pg(mp.base_vertex.size(), std::move(edges), pair.index_i);
  mp.pair = LabellingPair(std::move(pg), std::move(li), pair.index_i, std::move(lj), pair.index_j);
  return mp;
}

namespace {

VertexSet sources_where(const ParityGraph& g, const auto& pred) {
  VertexSet s(g.vertex_universe());
  for (EdgeId e : g.edges())
    if (pred(e)) s.insert(g.edge(e).source);
  return s;
}

// Largest number of label_j = 2j edges picked along one path with a label_i = 2i-1 edge between
// any two consecutive picks, from every vertex of g.
std::vector<std::size_t> alternation_rank(const ParityGraph& g, const std::vector<Priority>& lj, Priority top_j,
                                          Priority odd_i, std::size_t n) {
  const std::size_t u = g.vertex_universe();
  std::vector<Edge> edges;
  for (EdgeId e : g.edges()) {
    const Edge& ed = g.edge(e);
    const bool j_hit = lj[e] == top_j, i_hit = ed.priority == odd_i;
    for (int phase = 0; phase < 2; ++phase) {
      int next = j_hit ? 1 : phase;
      if (i_hit) next = 0;
      const Priority gain = (j_hit && phase == 0) ? 1 : 0;
      edges.push_back(Edge{static_cast<VertexId>(2 * ed.source + phase), static_cast<VertexId>(2 * ed.target + next), gain});
    }
  }
  ParityGraph layered(2 * u, std::move(edges), Index{0, 1});
  auto comp = scc_ids(layered);
  int comps = 0;
  for (int c : comp) comps = std::max(comps, c + 1);
  std::vector<std::vector<EdgeId>> leaving(comps);
  for (EdgeId e = 0; e < layered.edge_universe(); ++e) {
    const Edge& ed = layered.edge(e);
    if (comp[ed.source] == comp[ed.target]) {
      if (ed.priority == 1) throw Error(ErrorCode::NotBounded, "a cycle alternates between the two priorities forever");
      continue;
    }
    leaving[comp[ed.source]].push_back(e);
  }
  // Tarjan numbers components in reverse topological order: successors come first.
  std::vector<std::size_t> best(comps, 0);
  for (int c = 0; c < comps; ++c)
    for (EdgeId e : leaving[c]) {
      const Edge& ed = layered.edge(e);
      best[c] = std::max(best[c], best[comp[ed.target]] + ed.priority);
    }
  std::vector<std::size_t> rank(u, 0);
  for (VertexId v : g.vertices()) {
    rank[v] = best[comp[2 * v]];
    if (rank[v] > n + 1)
      throw Error(ErrorCode::NotBounded, "vertex " + std::to_string(v) + " starts more than n+1 alternations");
  }
  return rank;
}

AttractorDecomposition decompose(const ParityGraph& g, const std::vector<Priority>& lj, std::size_t i,
                                 std::size_t j, std::size_t n) {
  AttractorDecomposition d;
  const Priority h = static_cast<Priority>(2 * i);
  d.level = h;
  if (i == 0) {
    d.top_edges = g.edges();
    d.top_attractor = attractor_edges(g, d.top_edges);
    return d;
  }
  d.top_edges = EdgeSet(g.edge_universe());
  for (EdgeId e : g.edges())
    if (g.priority(e) == h) d.top_edges.insert(e);
  d.top_attractor = attractor_edges(g, d.top_edges);
  ParityGraph rest = g.without_edges(d.top_edges).restricted(g.vertices() - d.top_attractor);
  const Priority top_j = static_cast<Priority>(2 * j);
  const auto rank = alternation_rank(rest, lj, top_j, h - 1, n);

  while (!rest.vertices().empty()) {
    std::size_t lowest = n + 2;
    for (VertexId v : rest.vertices()) lowest = std::min(lowest, rank[v]);
    VertexSet cls(g.vertex_universe());
    for (VertexId v : rest.vertices())
      if (rank[v] == lowest) cls.insert(v);
    ParityGraph in_cls = rest.restricted(cls);
    VertexSet z = cls - backward_reachable(in_cls, sources_where(in_cls, [&](EdgeId e) { return in_cls.priority(e) == h - 1; }));
    if (z.empty()) throw Error(ErrorCode::NotEven, "every vertex of a rank class reaches priority " + std::to_string(h - 1));
    ParityGraph in_z = in_cls.restricted(z);
    VertexSet low = z - backward_reachable(in_z, sources_where(in_z, [&](EdgeId e) { return lj[e] + 1 >= top_j; }));
    VertexSet s = low.empty() ? z : low;
    AttractorDecomposition sub = decompose(rest.restricted(s), lj, i - 1, low.empty() ? j : j - 1, n);
    VertexSet a = attractor_vertices(rest, s);
    d.children.push_back({std::move(s), a, std::move(sub)});
    rest = rest.restricted(rest.vertices() - a);
  }
  return d;
}

void check_bounded_pair_hypotheses(const LabellingPair& pair, std::size_t n, std::size_t j) {
  if (pair.index_i.lo != 0 || pair.index_i.hi % 2 != 0)
    throw Error(ErrorCode::PreconditionFailed, "index of label_i must be [0,2i]");
  if (pair.index_j.lo != 1 || pair.index_j.hi % 2 != 0 || pair.index_j.hi > 2 * j)
    throw Error(ErrorCode::PreconditionFailed, "index of label_j must be [1,2j'] with j' <= " + std::to_string(j));
  require_even(pair.view_i(), "label_i");
  require_even(pair.view_j(), "label_j");
  auto bound = n_bound_check(pair, n);
  if (!bound.bounded)
    throw NotBoundedError("label_i is not " + std::to_string(n) + "-bound by label_j", *bound.counterexample);
}

}  // namespace

AttractorDecomposition ad_from_bounded_graph(const LabellingPair& pair, std::size_t n, std::size_t j) {
  check_bounded_pair_hypotheses(pair, n, j);
  return decompose(pair.view_i(), pair.label_j, pair.index_i.hi / 2, pair.index_j.hi / 2, n);
}

BoundedPairDecomposition ad_from_bounded_pair(const LabellingPair& pair, std::size_t n, std::size_t j,
                                              std::size_t cap) {
  check_bounded_pair_hypotheses(pair, n, j);
  BoundedPairDecomposition out;
  out.product = memory_product(pair, cap);
  out.graph = out.product.pair.view_i();
  out.decomposition = decompose(out.graph, out.product.pair.label_j, pair.index_i.hi / 2, pair.index_j.hi / 2, n);
  return out;
}

}  // namespace parindex
