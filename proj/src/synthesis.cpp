#include <algorithm>
#include <functional>
#include <string>

#include "parindex/decomposition.hpp"
#include "parindex/transduction.hpp"

namespace parindex {

namespace {

// Picks, at every Eve vertex of the product, the edge standing for the wanted register or sharp value.
template <class Register, class Sharp>
PositionalStrategy pick(const RegProduct& p, Register&& reg_for, Sharp&& sharp_for) {
  const ParityGraph& g = p.game.graph;
  PositionalStrategy sigma(g.vertex_universe());
  for (VertexId v : g.vertices()) {
    const RegVertex& d = p.decode[v];
    if (d.phase != RegPhase::Choice && d.phase != RegPhase::Sharp) continue;
    const bool choice = d.phase == RegPhase::Choice;
    const long want = choice ? static_cast<long>(reg_for(d.edge)) : static_cast<long>(sharp_for(d.edge));
    g.for_each_out(v, [&](EdgeId e) {
      const RegEdgeInfo& info = p.edge_info[e];
      const long got = choice ? info.reg : static_cast<long>(info.sharp);
      if (got == want && !sigma.defined(v)) sigma.set(v, e);
    });
    if (!sigma.defined(v))
      throw Error(ErrorCode::UndefinedChoice, "no product edge for the wanted choice at " + describe(p, v));
  }
  return sigma;
}

void finish(RegStrategy& out) {
  std::vector<VertexId> roots;
  for (VertexId v : out.product.initial)
    if (v != kNoVertex) roots.push_back(v);
  out.region = strategy_closure(out.product.game, out.strategy, roots);
  out.verified = verify_winning(out.product.game, out.strategy, out.region);
}

struct Node {
  int parent = -1;
  std::size_t depth = 0;
  Priority level = 0;
  std::size_t strahler = 1;
  std::vector<std::size_t> block_pos;  // in-order position of A_0 and of each A_k \ S_k
};

struct Layout {
  std::vector<Node> nodes;
  std::vector<int> node_of;           // per vertex: deepest node containing it
  std::vector<std::size_t> pos_of;    // per vertex: in-order position of its attractor
};

Layout layout(const ParityGraph& g, const AttractorDecomposition& root, std::size_t n) {
  Layout L;
  L.node_of.assign(g.vertex_universe(), -1);
  L.pos_of.assign(g.vertex_universe(), 0);
  std::size_t counter = 0;
  std::function<void(const AttractorDecomposition&, int, std::size_t)> visit =
      [&](const AttractorDecomposition& d, int parent, std::size_t depth) {
        const int id = static_cast<int>(L.nodes.size());
        L.nodes.push_back(Node{parent, depth, d.level, n_strahler(tree_shape(d), n), {}});
        L.nodes[id].block_pos.push_back(counter++);
        for (VertexId v : d.top_attractor) {
          L.node_of[v] = id;
          L.pos_of[v] = L.nodes[id].block_pos[0];
        }
        for (const auto& c : d.children) {
          visit(c.sub, id, depth + 1);
          const std::size_t here = counter++;
          L.nodes[id].block_pos.push_back(here);
          for (VertexId v : c.attractor - c.subgame) {
            L.node_of[v] = id;
            L.pos_of[v] = here;
          }
        }
      };
  visit(root, -1, 0);
  return L;
}

int common_ancestor(const Layout& L, int a, int b) {
  while (L.nodes[a].depth > L.nodes[b].depth) a = L.nodes[a].parent;
  while (L.nodes[b].depth > L.nodes[a].depth) b = L.nodes[b].parent;
  while (a != b) {
    a = L.nodes[a].parent;
    b = L.nodes[b].parent;
  }
  return a;
}

}  // namespace

RegStrategy strategy_from_bounded_pair(const LabellingPair& pair, std::size_t n, const RegOptions& options) {
  if (pair.index_j.lo != 1 && pair.index_j.lo != 2)
    throw Error(ErrorCode::PreconditionFailed, "minimum of J must be 1 or 2");
  if (!is_even(pair.view_i()).even) throw Error(ErrorCode::PreconditionFailed, "label_i is not even");
  if (!is_even(pair.view_j()).even) throw Error(ErrorCode::PreconditionFailed, "label_j is not even");
  if (!n_bound_check(pair, n).bounded)
    throw Error(ErrorCode::PreconditionFailed, "label_i is not " + std::to_string(n) + "-bound by label_j");
  RegStrategy out;
  out.product = reg_product(pair.view_i(), pair.index_j, n + 1, options);
  out.strategy = pick(
      out.product, [&](EdgeId e) { return pair.label_j[e] / 2; }, [&](EdgeId e) { return pair.label_i[e]; });
  out.registers_used = pair.index_j.hi / 2;
  finish(out);
  return out;
}

RegStrategy synth_from_ad(const ParityGraph& g, const AttractorDecomposition& d, std::size_t n,
                          const RegOptions& options) {
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "n must be positive");
  if (auto check = validate_ad(g, d); !check.valid)
    throw Error(ErrorCode::InvalidDecomposition, check.clause + " at " + check.path + " " + check.witness);
  const std::size_t h = n_strahler(tree_shape(d), n);
  const Layout L = layout(g, d, n);

  struct Move {
    Priority i;
    std::size_t reg;
  };
  auto decide = [&](EdgeId e) {
    const Edge& ed = g.edge(e);
    const int t = common_ancestor(L, L.node_of[ed.source], L.node_of[ed.target]);
    const Priority l = L.nodes[t].level;
    const Priority p = ed.priority;
    const Priority i = (p % 2 == 1 && p + 1 < l) ? l - 1 : p;
    const std::size_t from = L.pos_of[ed.source], to = L.pos_of[ed.target];
    std::size_t reg;
    if (to < from)
      reg = 0;
    else if (from < to)
      reg = L.nodes[t].strahler;
    else
      reg = i < l ? 0 : 1;
    return Move{i, reg};
  };

  RegStrategy out;
  out.product = reg_product(g, Index{1, static_cast<Priority>(2 * h)}, n + 1, options);
  out.strategy = pick(
      out.product, [&](EdgeId e) { return decide(e).reg; }, [&](EdgeId e) { return decide(e).i; });
  out.registers_used = h;
  finish(out);
  return out;
}

}  // namespace parindex
