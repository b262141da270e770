#include "parindex/automata.hpp"

#include <deque>
#include <map>
#include <set>
#include <string>
#include <tuple>
#include <unordered_map>

namespace parindex {

void check_automaton(const NPTA& a) {
  if (a.state_count == 0 || a.initial >= a.state_count)
    throw Error(ErrorCode::InvalidArgument, "initial state outside the state set");
  std::vector<char> covered(a.state_count * a.alphabet_size, 0);
  for (std::size_t k = 0; k < a.transitions.size(); ++k) {
    const Transition& tr = a.transitions[k];
    if (tr.state >= a.state_count || tr.left >= a.state_count || tr.right >= a.state_count)
      throw Error(ErrorCode::InvalidArgument, "transition " + std::to_string(k) + " uses an unknown state");
    if (tr.letter >= a.alphabet_size)
      throw Error(ErrorCode::AlphabetMismatch, "transition " + std::to_string(k) + " uses an unknown letter");
    if (!a.index.contains(tr.left_priority) || !a.index.contains(tr.right_priority))
      throw Error(ErrorCode::PriorityOutOfRange, "transition " + std::to_string(k) + " has a priority outside the index");
    covered[tr.state * a.alphabet_size + tr.letter] = 1;
  }
  for (std::size_t q = 0; q < a.state_count; ++q)
    for (std::size_t x = 0; x < a.alphabet_size; ++x)
      if (!covered[q * a.alphabet_size + x])
        throw Error(ErrorCode::IncompleteAutomaton,
                    "no transition from state " + std::to_string(q) + " on letter " + std::to_string(x));
}

void check_tree(const RegularTree& t) {
  const std::size_t n = t.node_count();
  if (n == 0 || t.root >= n) throw Error(ErrorCode::InvalidArgument, "tree needs a root node");
  if (t.left.size() != n || t.right.size() != n) throw Error(ErrorCode::InvalidArgument, "every node needs two children");
  for (std::size_t v = 0; v < n; ++v) {
    if (t.left[v] >= n || t.right[v] >= n) throw Error(ErrorCode::InvalidArgument, "child outside the node set");
    if (t.label[v] >= t.alphabet_size) throw Error(ErrorCode::AlphabetMismatch, "label outside the alphabet");
  }
}

AcceptanceGame acceptance_game(const NPTA& a, const RegularTree& t) {
  check_automaton(a);
  check_tree(t);
  if (a.alphabet_size != t.alphabet_size) throw Error(ErrorCode::AlphabetMismatch, "automaton and tree alphabets differ");
  AcceptanceGame out;
  out.states = a.state_count;
  out.transitions = a.transitions.size();
  const std::size_t universe = t.node_count() * (out.states + out.transitions);
  std::vector<Edge> edges;
  std::vector<Player> owner(universe, Player::Eve);
  VertexSet active(universe);
  for (std::uint32_t node = 0; node < t.node_count(); ++node) {
    for (StateId q = 0; q < a.state_count; ++q) active.insert(out.eve_vertex(node, q));
    for (std::size_t k = 0; k < a.transitions.size(); ++k) {
      const Transition& tr = a.transitions[k];
      owner[out.adam_vertex(node, k)] = Player::Adam;
      if (tr.letter != t.label[node]) continue;
      active.insert(out.adam_vertex(node, k));
      edges.push_back(Edge{out.eve_vertex(node, tr.state), out.adam_vertex(node, k), a.index.lo});
      edges.push_back(Edge{out.adam_vertex(node, k), out.eve_vertex(t.left[node], tr.left), tr.left_priority});
      edges.push_back(Edge{out.adam_vertex(node, k), out.eve_vertex(t.right[node], tr.right), tr.right_priority});
    }
  }
  ParityGraph g(universe, std::move(edges), a.index);
  out.game = ParityGame(g.restricted(active), std::move(owner));
  out.initial = out.eve_vertex(t.root, a.initial);
  return out;
}

bool membership(const NPTA& a, const RegularTree& t) {
  AcceptanceGame g = acceptance_game(a, t);
  return solve(g.game).eve_region.contains(g.initial);
}

RunGraph run_graph(const NPTA& a, const RegularTree& t, const AcceptanceGame& game, const PositionalStrategy& sigma) {
  const std::size_t block = game.states + game.transitions;
  RunGraph run;
  std::map<std::pair<std::uint32_t, StateId>, VertexId> ids;
  std::deque<VertexId> work;
  auto intern = [&](std::uint32_t node, StateId q) {
    auto [it, fresh] = ids.try_emplace({node, q}, static_cast<VertexId>(run.vertices.size()));
    if (fresh) {
      VertexId eve = game.eve_vertex(node, q);
      EdgeId e = sigma.choice(eve);
      if (e == kNoEdge || !game.game.graph.has_edge(e) || game.game.graph.edge(e).source != eve)
        throw Error(ErrorCode::UndefinedChoice, "no transition chosen at node " + std::to_string(node) + ", state " +
                                                    std::to_string(q));
      std::uint32_t tr = static_cast<std::uint32_t>(game.game.graph.edge(e).target - node * block - game.states);
      run.vertices.push_back(RunVertex{node, q, tr});
      work.push_back(it->second);
    }
    return it->second;
  };
  run.root = intern(t.root, a.initial);
  std::vector<std::pair<VertexId, VertexId>> succ;
  while (!work.empty()) {
    VertexId v = work.front();
    work.pop_front();
    const RunVertex rv = run.vertices[v];
    const Transition& tr = a.transitions[rv.transition];
    VertexId l = intern(t.left[rv.node], tr.left);
    VertexId r = intern(t.right[rv.node], tr.right);
    if (succ.size() <= v) succ.resize(v + 1);
    succ[v] = {l, r};
  }
  std::vector<Edge> edges;
  for (VertexId v = 0; v < run.vertices.size(); ++v) {
    const Transition& tr = a.transitions[run.vertices[v].transition];
    edges.push_back(Edge{v, succ[v].first, tr.left_priority});
    edges.push_back(Edge{v, succ[v].second, tr.right_priority});
  }
  run.graph = ParityGraph(run.vertices.size(), std::move(edges), a.index);
  return run;
}

GuidedRun guided_run(const GuidingFunction& g, const NPTA& a, const NPTA& b, const RegularTree& t,
                     const RunGraph& run_b) {
  check_automaton(a);
  check_automaton(b);
  if (g.table.size() != a.state_count) throw Error(ErrorCode::IncompatibleGuide, "guide must cover every state of A");
  GuidedRun out;
  std::map<std::pair<VertexId, StateId>, VertexId> ids;
  std::deque<VertexId> work;
  auto intern = [&](VertexId u, StateId p) {
    auto [it, fresh] = ids.try_emplace({u, p}, static_cast<VertexId>(out.guide_vertex.size()));
    if (fresh) {
      const std::uint32_t tb = run_b.vertices[u].transition;
      const int ta = tb < g.table[p].size() ? g.table[p][tb] : -1;
      if (ta < 0 || static_cast<std::size_t>(ta) >= a.transitions.size())
        throw Error(ErrorCode::IncompatibleGuide, "guide undefined at state " + std::to_string(p) + ", transition " +
                                                      std::to_string(tb));
      const Transition& tra = a.transitions[ta];
      if (tra.state != p || tra.letter != b.transitions[tb].letter || tra.letter != t.label[run_b.vertices[u].node])
        throw Error(ErrorCode::IncompatibleGuide, "guide maps state " + std::to_string(p) + ", transition " +
                                                      std::to_string(tb) + " to an incompatible transition");
      out.guide_vertex.push_back(u);
      out.run.vertices.push_back(RunVertex{run_b.vertices[u].node, p, static_cast<std::uint32_t>(ta)});
      work.push_back(it->second);
    }
    return it->second;
  };
  out.run.root = intern(run_b.root, a.initial);
  std::vector<std::pair<VertexId, VertexId>> succ;
  while (!work.empty()) {
    VertexId v = work.front();
    work.pop_front();
    const VertexId u = out.guide_vertex[v];
    const Transition& tra = a.transitions[out.run.vertices[v].transition];
    VertexId l = intern(run_b.graph.edge(2 * u).target, tra.left);
    VertexId r = intern(run_b.graph.edge(2 * u + 1).target, tra.right);
    if (succ.size() <= v) succ.resize(v + 1);
    succ[v] = {l, r};
  }
  std::vector<Edge> edges;
  for (VertexId v = 0; v < out.run.vertices.size(); ++v) {
    const Transition& tra = a.transitions[out.run.vertices[v].transition];
    edges.push_back(Edge{v, succ[v].first, tra.left_priority});
    edges.push_back(Edge{v, succ[v].second, tra.right_priority});
  }
  out.run.graph = ParityGraph(out.run.vertices.size(), std::move(edges), a.index);
  return out;
}

NPTA compose_transducer(const NPTA& a, Index j, std::size_t n, const RegOptions& options) {
  check_automaton(a);
  const RegMachine machine(a.index.hi, j, n, options.reset);
  const Index jn = machine.j_index();
  const int shift = machine.j_shift();
  std::optional<Priority> lowest_odd;
  for (Priority p = jn.lo; p <= jn.hi; ++p)
    if (p % 2 == 1) {
      lowest_odd = p;
      break;
    }

  NPTA out;
  out.alphabet_size = a.alphabet_size;
  out.index = Index{static_cast<Priority>(static_cast<int>(jn.lo) - shift),
                    static_cast<Priority>(static_cast<int>(jn.hi) - shift)};
  auto emit = [&](Priority w) { return static_cast<Priority>(static_cast<int>(w) - shift); };

  std::unordered_map<std::string, StateId> ids;
  std::vector<std::pair<StateId, RegConfig>> states;
  std::deque<StateId> work;
  auto key = [](StateId q, const RegConfig& c) {
    std::string k = std::to_string(q) + ":";
    for (Priority r : c.registers) k += std::to_string(r) + ",";
    k += ":";
    for (auto x : c.counters) k += std::to_string(x) + ",";
    return k;
  };
  auto intern = [&](StateId q, const RegConfig& c) {
    auto [it, fresh] = ids.try_emplace(key(q, c), static_cast<StateId>(states.size()));
    if (fresh) {
      if (states.size() >= options.cap)
        throw Error(ErrorCode::StateExplosion, "composed automaton exceeds " + std::to_string(options.cap) + " states");
      states.emplace_back(q, c);
      work.push_back(it->second);
    }
    return it->second;
  };
  std::optional<StateId> sink;
  auto sink_state = [&]() -> StateId {
    if (!lowest_odd) throw Error(ErrorCode::InvalidArgument, "instant loss needs an odd priority in J");
    if (!sink) {
      sink = static_cast<StateId>(states.size());
      states.emplace_back(static_cast<StateId>(-1), RegConfig{});
    }
    return *sink;
  };

  out.initial = intern(a.initial, machine.initial());
  std::set<std::tuple<StateId, Letter, StateId, StateId, Priority, Priority>> seen;
  auto add = [&](StateId s, Letter x, StateId l, StateId r, Priority pl, Priority pr) {
    if (seen.emplace(s, x, l, r, pl, pr).second) out.transitions.push_back(Transition{s, x, l, r, emit(pl), emit(pr)});
  };

  while (!work.empty()) {
    const StateId s = work.front();
    work.pop_front();
    const auto [qa, cfg] = states[s];
    for (const Transition& tr : a.transitions) {
      if (tr.state != qa) continue;
      for (std::size_t j1 = machine.first_register(); j1 < machine.register_count(); ++j1) {
        RegMachine::Output first = machine.output(cfg, j1);
        if (first.instant_loss) {
          StateId z = sink_state();
          add(s, tr.letter, z, z, *lowest_odd, *lowest_odd);
          continue;
        }
        for (Priority i1 : machine.sharp_choices(a.index.lo)) {
          RegConfig mid = first.after;
          machine.update(mid, j1, i1);
          // per direction: (child state, priority) options
          std::vector<std::pair<StateId, Priority>> side[2];
          const StateId child[2] = {tr.left, tr.right};
          const Priority label[2] = {tr.left_priority, tr.right_priority};
          for (int d = 0; d < 2; ++d) {
            for (std::size_t j2 = machine.first_register(); j2 < machine.register_count(); ++j2) {
              RegMachine::Output second = machine.output(mid, j2);
              if (second.instant_loss) {
                side[d].emplace_back(sink_state(), *lowest_odd);
                continue;
              }
              for (Priority i2 : machine.sharp_choices(label[d])) {
                RegConfig next = second.after;
                machine.update(next, j2, i2);
                side[d].emplace_back(intern(child[d], next), std::max(first.w, second.w));
              }
            }
          }
          for (const auto& [l, pl] : side[0])
            for (const auto& [r, pr] : side[1]) add(s, tr.letter, l, r, pl, pr);
        }
      }
    }
  }
  if (sink)
    for (Letter x = 0; x < a.alphabet_size; ++x) add(*sink, x, *sink, *sink, *lowest_odd, *lowest_odd);
  out.state_count = states.size();
  return out;
}

GuidedBound guided_pair_bound_check(const NPTA& a, const NPTA& b, const GuidingFunction& g, const RegularTree& t) {
  AcceptanceGame game_b = acceptance_game(b, t);
  Solution sol = solve(game_b.game);
  if (!sol.eve_region.contains(game_b.initial)) throw Error(ErrorCode::NoAcceptingRun, "B rejects the tree");
  RunGraph run_b = run_graph(b, t, game_b, sol.eve_strategy);
  GuidedRun guided = guided_run(g, a, b, t, run_b);
  const ParityGraph& ga = guided.run.graph;
  std::vector<Priority> li(ga.edge_universe()), lj(ga.edge_universe());
  for (EdgeId e = 0; e < ga.edge_universe(); ++e) {
    li[e] = ga.priority(e);
    lj[e] = run_b.graph.priority(2 * guided.guide_vertex[e / 2] + e % 2);
  }
  LabellingPair pair(ga, std::move(li), a.index, std::move(lj), b.index);
  GuidedBound out;
  out.guided_accepting = is_even(ga).even;
  out.n = a.state_count * b.state_count + 1;
  auto check = n_bound_check(pair, out.n);
  out.bounded = check.bounded;
  out.counterexample = std::move(check.counterexample);
  return out;
}

std::vector<RegularTree> enumerate_regular_trees(std::size_t alphabet_size, std::size_t nodes) {
  std::vector<RegularTree> out;
  std::size_t labelings = 1, wirings = 1;
  for (std::size_t k = 0; k < nodes; ++k) {
    labelings *= alphabet_size;
    wirings *= nodes * nodes;
  }
  for (std::size_t lab = 0; lab < labelings; ++lab)
    for (std::size_t wire = 0; wire < wirings; ++wire) {
      RegularTree t;
      t.alphabet_size = alphabet_size;
      std::size_t x = lab, y = wire;
      for (std::size_t k = 0; k < nodes; ++k) {
        t.label.push_back(static_cast<Letter>(x % alphabet_size));
        x /= alphabet_size;
        t.left.push_back(static_cast<std::uint32_t>(y % nodes));
        y /= nodes;
        t.right.push_back(static_cast<std::uint32_t>(y % nodes));
        y /= nodes;
      }
      out.push_back(std::move(t));
    }
  return out;
}

}  // namespace parindex
