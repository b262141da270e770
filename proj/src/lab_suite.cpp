#include <algorithm>
#include <random>

#include "lab_internal.hpp"

namespace parindex::lab_detail {

namespace {

struct GuidedTriple {
  std::string name;
  NPTA a;
  NPTA b;
  GuidingFunction g;
};

Transition tr(StateId q, Letter x, StateId l, StateId r, Priority pl, Priority pr) { return {q, x, l, r, pl, pr}; }

NPTA automaton(std::size_t states, Index index, std::vector<Transition> ts) {
  return NPTA{2, states, 0, std::move(ts), index};
}

// Accepts iff every branch sees letter 1 infinitely often.
NPTA buchi_ones(Priority shift = 0) {
  return automaton(1, Index{static_cast<Priority>(1 + shift), static_cast<Priority>(2 + shift)},
                   {tr(0, 0, 0, 0, 1 + shift, 1 + shift), tr(0, 1, 0, 0, 2 + shift, 2 + shift)});
}

// For every state of a and transition of b: the first transition of a leaving that state on b's letter
// that `ok` accepts.
GuidingFunction letterwise(const NPTA& a, const NPTA& b, const std::function<bool(StateId, const Transition&)>& ok) {
  GuidingFunction g;
  g.table.assign(a.state_count, std::vector<int>(b.transitions.size(), -1));
  for (StateId p = 0; p < a.state_count; ++p)
    for (std::size_t t = 0; t < b.transitions.size(); ++t)
      for (std::size_t s = 0; s < a.transitions.size(); ++s) {
        const Transition& ta = a.transitions[s];
        if (ta.state == p && ta.letter == b.transitions[t].letter && ok(p, ta)) {
          g.table[p][t] = static_cast<int>(s);
          break;
        }
      }
  return g;
}

auto any_transition = [](StateId, const Transition&) { return true; };

RegularTree tree(std::vector<Letter> label, std::vector<std::uint32_t> left, std::vector<std::uint32_t> right) {
  return RegularTree{2, std::move(label), std::move(left), std::move(right), 0};
}

std::vector<RegularTree> guided_tree_pool() {
  return {
      tree({1}, {0}, {0}),                 // all ones
      tree({0}, {0}, {0}),                 // all zeros
      tree({0, 1}, {1, 0}, {1, 0}),        // alternating levels
      tree({1, 1}, {1, 0}, {1, 1}),
      tree({0, 1}, {1, 1}, {1, 1}),        // zero root, ones below
      tree({1, 0}, {1, 1}, {1, 1}),        // one root, zeros below
      tree({0, 0}, {1, 1}, {1, 1}),
      tree({0, 1}, {0, 1}, {1, 0}),        // left spine of zeros, ones to the right
  };
}

std::vector<std::pair<GuidedTriple, bool>> guided_suite() {
  std::vector<std::pair<GuidedTriple, bool>> out;
  {
    NPTA a = buchi_ones();
    out.push_back({{"identity", a, a, letterwise(a, a, any_transition)}, true});
  }
  {
    NPTA a = buchi_ones(2), b = buchi_ones();
    out.push_back({{"shifted index", a, b, letterwise(a, b, any_transition)}, true});
  }
  {
    NPTA a = automaton(1, Index{0, 0}, {tr(0, 0, 0, 0, 0, 0), tr(0, 1, 0, 0, 0, 0)});
    NPTA b = buchi_ones();
    out.push_back({{"accept all", a, b, letterwise(a, b, any_transition)}, true});
  }
  {
    // finitely many ones on every branch
    NPTA a = automaton(1, Index{0, 1}, {tr(0, 0, 0, 0, 0, 0), tr(0, 1, 0, 0, 1, 1)});
    NPTA b = automaton(1, Index{2, 3}, {tr(0, 0, 0, 0, 2, 2), tr(0, 1, 0, 0, 3, 3)});
    out.push_back({{"co-buchi", a, b, letterwise(a, b, any_transition)}, true});
  }
  {
    // a may move to either state; the guide alternates between them
    std::vector<Transition> ts;
    for (StateId q = 0; q < 2; ++q)
      for (Letter x = 0; x < 2; ++x)
        for (StateId t = 0; t < 2; ++t) ts.push_back(tr(q, x, t, t, x == 1 ? 2 : 1, x == 1 ? 2 : 1));
    NPTA a = automaton(2, Index{1, 2}, ts);
    NPTA b = buchi_ones();
    out.push_back({{"alternating guide", a, b,
                    letterwise(a, b, [](StateId p, const Transition& t) { return t.left != p; })},
                   true});
  }
  {
    // b remembers the last letter in its state
    std::vector<Transition> ts;
    for (StateId q = 0; q < 2; ++q)
      for (Letter x = 0; x < 2; ++x) ts.push_back(tr(q, x, x, x, x == 1 ? 2 : 1, x == 1 ? 2 : 1));
    NPTA a = buchi_ones();
    NPTA b = automaton(2, Index{1, 2}, ts);
    out.push_back({{"two-state b", a, b, letterwise(a, b, any_transition)}, true});
  }
  {
    // negative control: the guide always takes the rejecting transition on letter 1
    NPTA a = automaton(1, Index{1, 2}, {tr(0, 0, 0, 0, 1, 1), tr(0, 1, 0, 0, 2, 2), tr(0, 1, 0, 0, 1, 1)});
    NPTA b = buchi_ones();
    out.push_back({{"non-preserving guide", a, b,
                    letterwise(a, b, [](StateId, const Transition& t) { return t.letter == 0 || t.left_priority == 1; })},
                   false});
  }
  return out;
}

}  // namespace

CheckResult universal_trees(const GenParams& p) {
  struct Case {
    std::size_t n, k, d, w;
  };
  std::vector<Case> grid;
  if (p.instance_count > 0)
    for (std::size_t n = 1; n <= 3; ++n)
      for (std::size_t d = 1; d <= 3; ++d)
        for (std::size_t k = 1; k <= d; ++k)
          for (std::size_t w = 1; w <= 3; ++w) grid.push_back({n, k, d, w});
  const auto small = p.instance_count > 0 ? enumerate_trees(7, 7, 7) : std::vector<OrderedTree>{};
  const auto hosts = p.instance_count > 0 ? enumerate_trees(9, 9, 9) : std::vector<OrderedTree>{};
  return run_instances("universal-trees", grid.size() + small.size(), 300, [&](std::size_t i, std::string& witness) -> std::string {
    if (i < grid.size()) {
      const Case c = grid[i];
      const OrderedTree u = universal_tree(c.n, c.k, c.d, c.w);
      std::vector<OrderedTree> family;
      for (auto& t : enumerate_trees(1 + c.w + c.w * c.w, c.d, c.w))
        if (n_strahler(t, c.n) <= c.k) family.push_back(t);
      const UniversalityResult r = is_universal_for(u, family);
      if (r.universal) return "";
      witness = print_object("tree", family[*r.first_failure]);
      return "U(" + std::to_string(c.n) + "," + std::to_string(c.k) + "," + std::to_string(c.d) + "," +
             std::to_string(c.w) + ") misses a tree";
    }
    const OrderedTree& t = small[i - grid.size()];
    for (const auto& host : hosts)
      if (embed(t, host).has_value() != embeds_exhaustive(t, host)) {
        witness = print_object("tree", t);
        return "embedding disagrees with backtracking into host " + to_brackets(host);
      }
    return "";
  });
}

namespace {

NPTA random_automaton(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto pick = [&](std::size_t hi) { return std::uniform_int_distribution<std::size_t>(0, hi)(rng); };
  NPTA a;
  a.alphabet_size = 2;
  a.state_count = 1 + pick(2);
  a.index = Index{0, 3};
  for (StateId q = 0; q < a.state_count; ++q)
    for (Letter x = 0; x < 2; ++x) {
      const std::size_t count = 1 + pick(1);
      for (std::size_t k = 0; k < count; ++k)
        a.transitions.push_back(Transition{q, x, static_cast<StateId>(pick(a.state_count - 1)),
                                           static_cast<StateId>(pick(a.state_count - 1)), static_cast<Priority>(pick(3)),
                                           static_cast<Priority>(pick(3))});
    }
  return a;
}

}  // namespace

CheckResult composition(const GenParams& p) {
  std::vector<RegularTree> trees;
  if (p.instance_count > 0)
    for (std::size_t nodes = 1; nodes <= 2; ++nodes)
      for (auto& t : enumerate_regular_trees(2, nodes)) trees.push_back(std::move(t));
  const Index j{1, 2};
  return run_instances("composition", std::min<std::size_t>(50, p.instance_count), 0,
                       [&](std::size_t i, std::string& witness) -> std::string {
                         const NPTA a = random_automaton(derive_seed(p.seed, 8 * 1'000'003 + i));
                         RegOptions opts;
                         opts.reset = p.reset;
                         opts.cap = p.state_cap;
                         for (std::size_t n = 0; n <= 1; ++n) {
                           const NPTA b = compose_transducer(a, j, n, opts);
                           for (const auto& t : trees) {
                             const AcceptanceGame game = acceptance_game(a, t);
                             if (membership(b, t) != eve_wins_reg(game.game, j, n, game.initial, opts)) {
                               Json w;
                               w["automaton"] = to_json(a);
                               w["tree"] = to_json(t);
                               witness = print_manifest(Manifest{"composition-instance", w});
                               return "composed automaton disagrees with the register game for n=" + std::to_string(n);
                             }
                           }
                         }
                         return "";
                       });
}

CheckResult guided_bound(const GenParams& p) {
  const auto suite = p.instance_count > 0 ? guided_suite() : std::vector<std::pair<GuidedTriple, bool>>{};
  const auto pool = guided_tree_pool();
  return run_instances("guided-bound", suite.size(), 0, [&](std::size_t i, std::string& witness) -> std::string {
    const auto& [triple, preserving] = suite[i];
    std::size_t trees = 0, unbounded = 0;
    for (const auto& t : pool) {
      if (!membership(triple.b, t)) continue;
      ++trees;
      const GuidedBound r = guided_pair_bound_check(triple.a, triple.b, triple.g, t);
      if (preserving && (!r.bounded || !r.guided_accepting)) {
        witness = print_object("regular-tree", t);
        return triple.name + ": guided run is not n-bound on an accepted tree";
      }
      if (!r.bounded) ++unbounded;
    }
    if (trees < 3) return triple.name + ": fewer than 3 accepted trees in the pool";
    if (!preserving && unbounded == 0) return triple.name + ": negative control never failed";
    return "";
  });
}

CheckResult mutation(const GenParams& p) {
  CheckResult r;
  r.name = "mutation";
  if (p.instance_count == 0) return r;
  const CheckResult sound = transduction_soundness(p, ResetRule::Never);
  const CheckResult complete = bounded_pair_completeness(p, ResetRule::Never);
  r.instances = sound.instances + complete.instances;
  r.seconds = sound.seconds + complete.seconds;
  if (sound.failures.empty() && complete.failures.empty())
    r.failures.push_back(CheckFailure{0, "disabling counter resets went unnoticed", ""});
  return r;
}

}  // namespace parindex::lab_detail
