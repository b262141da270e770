#include <algorithm>
#include <optional>

#include "lab_internal.hpp"

namespace parindex::lab_detail {

namespace {

std::size_t scaled(const GenParams& p, std::size_t wanted) { return std::min(wanted, p.instance_count); }

GenParams sub(const GenParams& p, std::uint64_t salt, std::size_t i) {
  GenParams q = p;
  q.seed = derive_seed(p.seed, salt * 1'000'003 + i);
  return q;
}

std::string pair_text(const LabellingPair& pair) { return print_object("pair", pair); }

bool regions_agree(const ParityGame& game) {
  return solve(game).eve_region == brute_solve(game).eve;
}

}  // namespace

CheckResult solver_cross_oracle(const GenParams& p) {
  return run_instances("solver-cross-oracle", scaled(p, 500), 60, [&](std::size_t i, std::string& witness) -> std::string {
    GenParams q = sub(p, 1, i);
    q.vertex_count = 6;
    q.priority_cap = 4;
    const ParityGame game = random_game(q);
    const Solution sol = solve(game);
    if (sol.eve_region == brute_solve(game).eve) {
      if (!verify_winning(game, sol.eve_strategy, sol.eve_region)) return "Eve strategy does not win the Eve region";
      if (!verify_winning(game, sol.adam_strategy, sol.adam_region, Player::Adam))
        return "Adam strategy does not win the Adam region";
      return "";
    }
    witness = print_object("game", shrink_game(game, [](const ParityGame& g) { return !regions_agree(g); }));
    return "solve and brute_solve disagree";
  });
}

CheckResult evenness_decomposition(const GenParams& p) {
  return run_instances("evenness-decomposition", scaled(p, 300), 60, [&](std::size_t i, std::string& witness) -> std::string {
    GenParams q = sub(p, 2, i);
    q.vertex_count = 10;
    q.priority_cap = 4;
    q.edge_density = 0.15;
    q.planted = i % 6 == 5;
    const ParityGraph g = i % 2 == 0 ? random_game(q).graph : random_even_graph(q);
    witness = print_object("graph", g);
    const bool even = is_even(g).even;
    std::optional<AttractorDecomposition> d;
    try {
      d = build_ad(g, default_level(g));
    } catch (const Error& e) {
      if (e.code() != ErrorCode::NotEven) throw;
    }
    if (even != d.has_value()) return even ? "even graph without decomposition" : "decomposition of a non-even graph";
    if (d) {
      if (auto check = validate_ad(g, *d); !check.valid) return "invalid decomposition: " + check.clause + " at " + check.path;
      if (!ad_reachability_check(g, *d)) return "reachability check failed";
    }
    witness.clear();
    return "";
  });
}

CheckResult transduction_soundness(const GenParams& p, ResetRule reset) {
  const Index js[] = {{1, 2}, {1, 4}, {2, 4}};
  return run_instances("transduction-soundness", scaled(p, 200), 600, [&](std::size_t i, std::string& witness) -> std::string {
    // Non-even graph whose odd cycle is reachable from vertex 0.
    ParityGraph g;
    for (std::size_t attempt = 0;; ++attempt) {
      GenParams q = sub(p, 3, i * 1000 + attempt);
      q.vertex_count = 5;
      q.priority_cap = 4;
      const ParityGraph raw = random_game(q).graph;
      const VertexSet reach = forward_reachable(raw, VertexSet::of(raw.vertex_universe(), std::vector<VertexId>{0}));
      g = raw.restricted(reach).compacted().graph;
      if (!is_even(g).even) break;
      if (attempt > 1000) throw Error(ErrorCode::ExhaustedRetries, "no non-even graph");
    }
    RegOptions opts;
    opts.reset = reset;
    opts.cap = p.state_cap;
    opts.roots = {0};
    for (Index j : js)
      for (std::size_t n = 0; n <= 2; ++n)
        if (eve_wins_reg(g, j, n, 0, opts)) {
          witness = print_object("graph", g);
          return "Eve wins Reg_[" + std::to_string(j.lo) + "," + std::to_string(j.hi) + "]^" + std::to_string(n) +
                 " on a non-even graph";
        }
    return "";
  });
}

CheckResult bounded_pair_completeness(const GenParams& p, ResetRule reset) {
  return run_instances("bounded-pair-completeness", scaled(p, 150), 0, [&](std::size_t i, std::string& witness) -> std::string {
    GenParams q = sub(p, 4, i);
    q.vertex_count = 5;
    q.priority_cap = 4;
    q.index_j = i % 2 == 0 ? Index{1, 2} : Index{1, 4};
    const std::size_t n = i % 3;
    const LabellingPair pair = random_bounded_pair(q, n);
    witness = pair_text(pair);
    RegOptions opts;
    opts.reset = reset;
    opts.cap = p.state_cap;
    const RegProduct product = reg_product(pair.view_i(), pair.index_j, n + 1, opts);
    const Solution sol = solve(product.game);
    for (VertexId v : pair.graph.vertices())
      if (!sol.eve_region.contains(product.initial[v]))
        return "Adam wins Reg^(n+1) from vertex " + std::to_string(v) + " with n=" + std::to_string(n);
    if (!strategy_from_bounded_pair(pair, n, opts).verified) return "register strategy does not verify";
    witness.clear();
    return "";
  });
}

CheckResult strahler_completeness(const GenParams& p) {
  return run_instances("strahler-completeness", scaled(p, 150), 0, [&](std::size_t i, std::string& witness) -> std::string {
    GenParams q = sub(p, 5, i);
    q.vertex_count = 6;
    q.priority_cap = 4;
    q.planted = i % 3 == 2;
    const ParityGraph g = random_even_graph(q);
    const std::size_t n = 1 + i % 2;
    const AttractorDecomposition d = build_ad(g, default_level(g));
    RegOptions opts;
    opts.reset = p.reset;
    opts.cap = p.state_cap;
    if (synth_from_ad(g, d, n, opts).verified) return "";
    witness = print_object("graph", g);
    return "strategy from the decomposition does not verify for n=" + std::to_string(n);
  });
}

CheckResult bounded_pair_strahler(const GenParams& p) {
  return run_instances("bounded-pair-strahler", scaled(p, 100), 0, [&](std::size_t i, std::string& witness) -> std::string {
    GenParams q = sub(p, 6, i);
    q.vertex_count = 5;
    q.priority_cap = 4;
    const std::size_t j = 1 + i % 2, n = 1 + (i / 2) % 2;
    q.index_j = Index{1, static_cast<Priority>(2 * j)};
    const LabellingPair pair = random_bounded_pair(q, n);
    witness = pair_text(pair);
    const BoundedPairDecomposition out = ad_from_bounded_pair(pair, n, j);
    if (auto check = validate_ad(out.graph, out.decomposition); !check.valid)
      return "invalid decomposition on the memory product: " + check.clause + " at " + check.path;
    const std::size_t s = n_strahler(tree_shape(out.decomposition), n);
    if (s > j) return "n-Strahler number " + std::to_string(s) + " exceeds j=" + std::to_string(j);
    witness.clear();
    return "";
  });
}

}  // namespace parindex::lab_detail
