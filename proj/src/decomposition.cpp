#include "parindex/decomposition.hpp"

#include <string>

namespace parindex {

namespace {

EdgeSet edges_with_priority(const ParityGraph& g, Priority p) {
  EdgeSet out(g.edge_universe());
  for (EdgeId e : g.edges())
    if (g.priority(e) == p) out.insert(e);
  return out;
}

// Vertices of g from which no edge of priority p can be reached (the edge itself included).
VertexSet cannot_reach_priority(const ParityGraph& g, Priority p) {
  VertexSet sources(g.vertex_universe());
  for (EdgeId e : g.edges())
    if (g.priority(e) == p) sources.insert(g.edge(e).source);
  return g.vertices() - backward_reachable(g, sources);
}

AttractorDecomposition build(const ParityGraph& g, Priority h) {
  AttractorDecomposition d;
  d.level = h;
  d.top_edges = h == 0 ? g.edges() : edges_with_priority(g, h);
  d.top_attractor = attractor_edges(g, d.top_edges);
  if (h == 0) return d;
  VertexSet residual = g.vertices() - d.top_attractor;
  ParityGraph rest = g.without_edges(d.top_edges).restricted(residual);
  while (!rest.vertices().empty()) {
    VertexSet s = cannot_reach_priority(rest, h - 1);
    if (s.empty()) throw Error(ErrorCode::NotEven, "every residual vertex reaches priority " + std::to_string(h - 1));
    VertexSet a = attractor_vertices(rest, s);
    AttractorDecomposition sub = build(rest.restricted(s), h - 2);
    d.children.push_back({std::move(s), a, std::move(sub)});
    rest = rest.restricted(rest.vertices() - a);
  }
  return d;
}

std::string first_of(const VertexSet& s) { return s.empty() ? "" : "vertex " + std::to_string(*s.begin()); }

AdCheck fail(std::string clause, const std::string& path, std::string witness) {
  return AdCheck{false, std::move(clause), path, std::move(witness)};
}

AdCheck check(const ParityGraph& g, const AttractorDecomposition& d, const std::string& path) {
  const Priority h = d.level;
  if (h % 2 != 0) return fail("level even", path, "level " + std::to_string(h));
  for (EdgeId e : g.edges())
    if (g.priority(e) > h) return fail("priorities up to h", path, "edge " + std::to_string(e));
  if (auto t = g.terminal_vertices(); !t.empty())
    return fail("no terminal vertices", path, "vertex " + std::to_string(t.front()));
  EdgeSet top = h == 0 ? g.edges() : edges_with_priority(g, h);
  if (!(d.top_edges == top)) return fail("H = edges of priority h", path, "");
  VertexSet a0 = attractor_edges(g, top);
  if (!(d.top_attractor == a0)) return fail("A_0 = attr(H,G)", path, first_of((d.top_attractor - a0) | (a0 - d.top_attractor)));
  if (h == 0 && !d.children.empty()) return fail("level 0 has no children", path, "");

  VertexSet residual = g.vertices() - a0;
  ParityGraph rest = g.without_edges(top).restricted(residual);
  for (std::size_t i = 0; i < d.children.size(); ++i) {
    const auto& c = d.children[i];
    const std::string here = path + "/" + std::to_string(i);
    if (c.subgame.empty()) return fail("S_i non-empty", here, "");
    if (!c.subgame.subset_of(rest.vertices()))
      return fail("S_i inside residual", here, first_of(c.subgame - rest.vertices()));
    for (VertexId v : c.subgame) {
      for (EdgeId e : rest.out_all(v)) {
        if (!rest.has_edge(e)) continue;
        if (!c.subgame.contains(rest.edge(e).target))
          return fail("closed under successors in G_i", here, "edge " + std::to_string(e));
        if (h < 2 || rest.priority(e) > h - 2) return fail("priorities up to h-2", here, "edge " + std::to_string(e));
      }
    }
    VertexSet a = attractor_vertices(rest, c.subgame);
    if (!(c.attractor == a)) return fail("A_i = attr(S_i,G_i)", here, first_of((c.attractor - a) | (a - c.attractor)));
    if (c.sub.level + 2 != h) return fail("sub-decomposition level h-2", here, "level " + std::to_string(c.sub.level));
    AdCheck inner = check(rest.restricted(c.subgame), c.sub, here);
    if (!inner.valid) return inner;
    rest = rest.restricted(rest.vertices() - a);
  }
  if (!rest.vertices().empty()) return fail("V = ⋃ A_i", path, first_of(rest.vertices()));
  return {};
}

bool reach_check(const ParityGraph& g, const AttractorDecomposition& d) {
  if (d.children.empty()) return true;
  ParityGraph rest = g.without_edges(d.top_edges).restricted(g.vertices() - d.top_attractor);
  std::vector<int> order(g.vertex_universe(), -1);
  for (std::size_t i = 0; i < d.children.size(); ++i)
    for (VertexId v : d.children[i].attractor) order[v] = static_cast<int>(i);
  for (std::size_t i = 0; i < d.children.size(); ++i) {
    VertexSet reach = forward_reachable(rest, d.children[i].attractor);
    for (VertexId v : reach)
      if (order[v] > static_cast<int>(i)) return false;
  }
  for (const auto& c : d.children)
    if (!reach_check(rest.restricted(c.subgame), c.sub)) return false;
  return true;
}

bool tight(const ParityGraph& g, const AttractorDecomposition& d) {
  if (d.children.empty()) return true;
  const Priority h = d.level;
  ParityGraph without_top = g.without_edges(d.top_edges);
  EdgeSet low(g.edge_universe());
  for (EdgeId e : without_top.edges())
    if (without_top.priority(e) + 1 < h) low.insert(e);
  ParityGraph low_graph = without_top.with_edges_only(low);
  std::vector<int> owner(g.vertex_universe(), -1);
  for (std::size_t i = 0; i < d.children.size(); ++i)
    for (VertexId v : d.children[i].subgame) owner[v] = static_cast<int>(i);
  for (std::size_t i = 1; i < d.children.size(); ++i) {
    VertexSet reach = forward_reachable(low_graph, d.children[i].subgame);
    for (VertexId v : reach)
      if (owner[v] >= 0 && owner[v] < static_cast<int>(i)) return false;
  }
  ParityGraph rest = without_top.restricted(g.vertices() - d.top_attractor);
  for (const auto& c : d.children)
    if (!tight(rest.restricted(c.subgame), c.sub)) return false;
  return true;
}

}  // namespace

Priority default_level(const ParityGraph& g) {
  Priority m = g.max_priority();
  return m % 2 == 0 ? m : m + 1;
}

AttractorDecomposition build_ad(const ParityGraph& g, Priority h) {
  if (h % 2 != 0) throw Error(ErrorCode::InvalidArgument, "level must be even");
  for (EdgeId e : g.edges())
    if (g.priority(e) > h)
      throw Error(ErrorCode::PriorityOutOfRange,
                  "edge " + std::to_string(e) + " has priority above level " + std::to_string(h));
  if (auto dead = g.terminal_vertices(); !dead.empty())
    throw Error(ErrorCode::TerminalVertex, "vertex " + std::to_string(dead.front()) + " has no successor");
  try {
    return build(g, h);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::NotEven) throw;
    require_even(g, "graph");  // rethrows with an odd lasso as witness
    throw;
  }
}

AdCheck validate_ad(const ParityGraph& g, const AttractorDecomposition& d) { return check(g, d, "root"); }

bool ad_reachability_check(const ParityGraph& g, const AttractorDecomposition& d) { return reach_check(g, d); }

OrderedTree tree_shape(const AttractorDecomposition& d) {
  OrderedTree t;
  for (const auto& c : d.children) t.children.push_back(tree_shape(c.sub));
  return t;
}

bool is_tight(const ParityGraph& g, const AttractorDecomposition& d) { return tight(g, d); }

std::vector<VertexSet> attr_partition(const ParityGraph& g, const std::vector<VertexSet>& parts) {
  VertexSet seen(g.vertex_universe());
  for (std::size_t k = 0; k < parts.size(); ++k) {
    if (parts[k].intersects(seen))
      throw Error(ErrorCode::OverlappingParts, "part " + std::to_string(k) + " overlaps an earlier part");
    seen |= parts[k];
  }
  std::vector<VertexSet> out;
  ParityGraph rest = g;
  for (const auto& s : parts) {
    VertexSet a = attractor_vertices(rest, s & rest.vertices());
    out.push_back(a);
    rest = rest.restricted(rest.vertices() - a);
  }
  return out;
}

AttractorDecomposition join_ads(const ParityGraph& g, Priority h, const std::vector<AdPiece>& pieces) {
  if (h % 2 != 0 || h == 0) throw Error(ErrorCode::InvalidArgument, "join needs a positive even level");
  AttractorDecomposition d;
  d.level = h;
  d.top_edges = edges_with_priority(g, h);
  d.top_attractor = attractor_edges(g, d.top_edges);
  VertexSet used = d.top_attractor;
  for (std::size_t k = 0; k < pieces.size(); ++k) {
    if (pieces[k].subgame.intersects(used))
      throw Error(ErrorCode::HypothesisViolated, "disjointness: piece " + std::to_string(k) +
                                                     " overlaps A_0 or an earlier piece");
    used |= pieces[k].subgame;
  }
  ParityGraph rest = g.without_edges(d.top_edges).restricted(g.vertices() - d.top_attractor);
  for (std::size_t k = 0; k < pieces.size(); ++k) {
    const auto& p = pieces[k];
    if (p.subgame.empty()) continue;
    if (!p.subgame.subset_of(rest.vertices()))
      throw Error(ErrorCode::HypothesisViolated,
                  "successor-closed: piece " + std::to_string(k) + " was absorbed by an earlier attractor");
    for (VertexId v : p.subgame)
      rest.for_each_out(v, [&](EdgeId e) {
        if (!p.subgame.contains(rest.edge(e).target))
          throw Error(ErrorCode::HypothesisViolated,
                      "successor-closed: edge " + std::to_string(e) + " leaves piece " + std::to_string(k));
      });
    ParityGraph sub_graph = rest.restricted(p.subgame);
    if (p.sub.level + 2 != h || !validate_ad(sub_graph, p.sub).valid)
      throw Error(ErrorCode::HypothesisViolated, "sub-decomposition: piece " + std::to_string(k) + " is not valid");
    VertexSet a = attractor_vertices(rest, p.subgame);
    d.children.push_back({p.subgame, a, p.sub});
    rest = rest.restricted(rest.vertices() - a);
  }
  if (!rest.vertices().empty())
    throw Error(ErrorCode::HypothesisViolated,
                "coverage: vertex " + std::to_string(*rest.vertices().begin()) + " is outside every attractor");
  return d;
}

std::vector<AdPiece> dismantle(const AttractorDecomposition& d) {
  std::vector<AdPiece> out;
  for (const auto& c : d.children) out.push_back({c.subgame, c.sub});
  return out;
}

}  // namespace parindex
