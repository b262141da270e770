#pragma once

#include <utility>
#include <vector>

namespace parindex {

// Iterative Tarjan over the active part of g.
template <class Pred>
std::vector<int> scc_ids(const ParityGraph& g, Pred&& keep_edge) {
  const std::size_t n = g.vertex_universe();
  std::vector<int> comp(n, -1), index(n, -1), low(n, 0);
  std::vector<char> on_stack(n, 0);
  std::vector<VertexId> stack;
  std::vector<std::pair<VertexId, std::size_t>> call;
  int counter = 0, comps = 0;

  for (VertexId root : g.vertices()) {
    if (index[root] != -1) continue;
    call.emplace_back(root, 0);
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = 1;
    while (!call.empty()) {
      auto& [v, pos] = call.back();
      auto outs = g.out_all(v);
      bool descended = false;
      while (pos < outs.size()) {
        EdgeId e = outs[pos++];
        if (!g.has_edge(e) || !keep_edge(e)) continue;
        VertexId w = g.edge(e).target;
        if (index[w] == -1) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = 1;
          call.emplace_back(w, 0);
          descended = true;
          break;
        }
        if (on_stack[w]) low[v] = std::min(low[v], index[w]);
      }
      if (descended) continue;
      VertexId done = v;
      call.pop_back();
      if (!call.empty()) {
        VertexId parent = call.back().first;
        low[parent] = std::min(low[parent], low[done]);
      }
      if (low[done] == index[done]) {
        VertexId w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = 0;
          comp[w] = comps;
        } while (w != done);
        ++comps;
      }
    }
  }
  return comp;
}

}  // namespace parindex
