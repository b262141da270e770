#include "parindex/parindex.h"

#include <cstring>
#include <memory>
#include <string>

#include "parindex/io.hpp"
#include "parindex/lab.hpp"

using namespace parindex;

struct pi_object {
  Manifest m;
  std::shared_ptr<const RegProduct> product;  // kept for DOT export of products
};

namespace {

thread_local std::string last_error;

struct WrongKind : std::runtime_error {
  using std::runtime_error::runtime_error;
};

template <class F>
pi_status guard(F&& f) {
  try {
    f();
    last_error.clear();
    return PI_OK;
  } catch (const Error& e) {
    last_error = e.what();
    return static_cast<pi_status>(static_cast<int>(e.code()) + 1);
  } catch (const WrongKind& e) {
    last_error = e.what();
    return PI_WRONG_KIND;
  } catch (const nlohmann::json::exception& e) {
    last_error = std::string("ParseError: ") + e.what();
    return PI_PARSE_ERROR;
  } catch (const std::exception& e) {
    last_error = e.what();
    return PI_INTERNAL;
  }
}

void need(const void* p, const char* what) {
  if (!p) throw Error(ErrorCode::InvalidArgument, std::string(what) + " is null");
}

pi_object* make(std::string kind, Json payload) { return new pi_object{Manifest{std::move(kind), std::move(payload)}, {}}; }

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

const Json& payload(const pi_object* o, const char* kind) {
  need(o, "object");
  if (o->m.kind != kind) throw WrongKind(std::string("expected a ") + kind + ", got a " + o->m.kind);
  return o->m.payload;
}

ParityGame as_game(const pi_object* o) {
  need(o, "object");
  if (o->m.kind == "game") return game_from_json(o->m.payload);
  if (o->m.kind == "graph") return adam_only(graph_from_json(o->m.payload));
  throw WrongKind("expected a game or graph, got a " + o->m.kind);
}

ParityGraph as_graph(const pi_object* o) {
  need(o, "object");
  if (o->m.kind == "graph") return graph_from_json(o->m.payload);
  if (o->m.kind == "game") return game_from_json(o->m.payload).graph;
  throw WrongKind("expected a graph or game, got a " + o->m.kind);
}

RegOptions options_of(const pi_options* o) {
  RegOptions r;
  if (!o) return r;
  r.reset = static_cast<ResetRule>(o->reset);
  if (o->cap_states) r.cap = o->cap_states;
  return r;
}

GenParams params_of(const pi_gen_params* g) {
  GenParams p;
  if (!g) return p;
  p.seed = g->seed;
  p.vertex_count = g->vertex_count;
  p.priority_cap = g->priority_cap;
  p.edge_density = g->edge_density;
  p.index_j = make_index(g->j_lo, g->j_hi);
  p.counter_bound = g->counter_bound;
  p.instance_count = g->instance_count;
  p.planted = g->planted != 0;
  p.reset = static_cast<ResetRule>(g->reset);
  if (g->cap_states) p.state_cap = g->cap_states;
  return p;
}

}  // namespace

extern "C" {

const char* pi_version(void) { return "1.0.0"; }

const char* pi_status_name(pi_status s) {
  if (s == PI_OK) return "Ok";
  if (s == PI_WRONG_KIND) return "WrongKind";
  if (s == PI_INTERNAL) return "Internal";
  if (s > PI_OK && s < PI_WRONG_KIND) return parindex::to_string(static_cast<ErrorCode>(s - 1));
  return "Unknown";
}

const char* pi_last_error(void) { return last_error.c_str(); }

void pi_options_default(pi_options* o) {
  if (!o) return;
  o->reset = PI_RESET_LIBERAL;
  o->cap_states = kDefaultStateCap;
}

void pi_gen_params_default(pi_gen_params* g) {
  if (!g) return;
  const GenParams p;
  g->seed = p.seed;
  g->vertex_count = p.vertex_count;
  g->priority_cap = p.priority_cap;
  g->edge_density = p.edge_density;
  g->j_lo = p.index_j.lo;
  g->j_hi = p.index_j.hi;
  g->counter_bound = p.counter_bound;
  g->instance_count = p.instance_count;
  g->planted = p.planted;
  g->reset = PI_RESET_LIBERAL;
  g->cap_states = p.state_cap;
}

void pi_free(pi_object* o) { delete o; }
void pi_free_string(char* s) { std::free(s); }

pi_status pi_parse(const char* text, pi_object** out) {
  return guard([&] {
    need(text, "text");
    need(out, "out");
    Manifest m = parse_manifest(text);
    *out = make(std::move(m.kind), std::move(m.payload));
  });
}

pi_status pi_parse_pgsolver(const char* text, int source_priority, pi_object** out) {
  return guard([&] {
    need(text, "text");
    need(out, "out");
    PgImport imp = import_pgsolver(text, source_priority ? PgConversion::Source : PgConversion::Target);
    Json j = to_json(imp.game);
    j["conversion"] = imp.conversion;
    *out = make("game", std::move(j));
  });
}

pi_status pi_load_file(const char* path, pi_object** out) {
  return guard([&] {
    need(path, "path");
    need(out, "out");
    const std::string text = read_file(path);
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text.compare(first, 6, "parity") == 0) {
      PgImport imp = import_pgsolver(text);
      Json j = to_json(imp.game);
      j["conversion"] = imp.conversion;
      *out = make("game", std::move(j));
      return;
    }
    Manifest m = parse_manifest(text);
    *out = make(std::move(m.kind), std::move(m.payload));
  });
}

pi_status pi_save_file(const pi_object* o, const char* path) {
  return guard([&] {
    need(o, "object");
    need(path, "path");
    write_file_atomic(path, print_manifest(o->m));
  });
}

const char* pi_kind(const pi_object* o) { return o ? o->m.kind.c_str() : ""; }

pi_status pi_print(const pi_object* o, char** out) {
  return guard([&] {
    need(o, "object");
    need(out, "out");
    *out = dup(print_manifest(o->m));
  });
}

pi_status pi_export_dot(const pi_object* o, char** out) {
  return guard([&] {
    need(o, "object");
    need(out, "out");
    const std::string& k = o->m.kind;
    std::string text;
    if (k == "game")
      text = export_dot(game_from_json(o->m.payload));
    else if (k == "graph")
      text = export_dot(graph_from_json(o->m.payload));
    else if (k == "tree")
      text = export_dot(tree_from_json(o->m.payload));
    else if (k == "product" && o->product)
      text = export_dot(*o->product);
    else if (k == "decomposition" && o->m.payload.contains("graph"))
      text = export_dot(graph_from_json(o->m.payload["graph"]), decomposition_from_json(o->m.payload["decomposition"]));
    else
      throw WrongKind("no DOT rendering for a " + k);
    *out = dup(text);
  });
}

pi_status pi_export_pgsolver(const pi_object* o, char** out) {
  return guard([&] {
    need(out, "out");
    *out = dup(export_pgsolver(as_game(o)));
  });
}

pi_status pi_get_int(const pi_object* o, const char* field, int64_t* out) {
  return guard([&] {
    need(o, "object");
    need(field, "field");
    need(out, "out");
    const Json& p = o->m.payload;
    if (!p.is_object() || !p.contains(field)) throw Error(ErrorCode::InvalidArgument, std::string("no field ") + field);
    const Json& v = p[field];
    if (v.is_boolean())
      *out = v.get<bool>() ? 1 : 0;
    else if (v.is_number_integer())
      *out = v.get<std::int64_t>();
    else
      throw Error(ErrorCode::InvalidArgument, std::string("field ") + field + " is not an integer");
  });
}

}  // extern "C"

namespace {

AttractorDecomposition as_decomposition(const pi_object* d) {
  const Json& p = payload(d, "decomposition");
  return decomposition_from_json(p.contains("decomposition") ? p["decomposition"] : p);
}

ParityGraph graph_for(const pi_object* graph, const pi_object* d) {
  if (graph) return as_graph(graph);
  const Json& p = payload(d, "decomposition");
  if (!p.contains("graph")) throw Error(ErrorCode::InvalidArgument, "decomposition carries no graph; pass one");
  return graph_from_json(p["graph"]);
}

Json decomposition_json(const ParityGraph& g, const AttractorDecomposition& d) {
  Json j;
  j["graph"] = to_json(g);
  j["decomposition"] = to_json(d);
  return j;
}

}  // namespace

extern "C" {

pi_status pi_solve(const pi_object* game, pi_object** out) {
  return guard([&] {
    need(out, "out");
    const ParityGame g = as_game(game);
    const Solution s = solve(g);
    Json j;
    j["eve_region"] = to_json(s.eve_region);
    j["adam_region"] = to_json(s.adam_region);
    j["eve_strategy"] = to_json(s.eve_strategy);
    j["adam_strategy"] = to_json(s.adam_strategy);
    *out = make("solution", std::move(j));
  });
}

pi_status pi_is_even(const pi_object* graph, int* even, pi_object** lasso) {
  return guard([&] {
    need(even, "even");
    const EvennessResult r = is_even(as_graph(graph));
    *even = r.even;
    if (lasso) *lasso = r.witness ? make("lasso", to_json(*r.witness)) : nullptr;
  });
}

pi_status pi_attractor(const pi_object* graph, const uint32_t* edges, size_t count, pi_object** out) {
  return guard([&] {
    need(out, "out");
    const ParityGraph g = as_graph(graph);
    EdgeSet targets(g.edge_universe());
    for (size_t k = 0; k < count; ++k) {
      if (edges[k] >= g.edge_universe()) throw Error(ErrorCode::InvalidArgument, "edge id out of range");
      targets.insert(edges[k]);
    }
    *out = make("vertex-set", to_json(attractor_edges(g, targets)));
  });
}

pi_status pi_ad_build(const pi_object* graph, int level, pi_object** out) {
  return guard([&] {
    need(out, "out");
    const ParityGraph g = as_graph(graph);
    const Priority h = level < 0 ? default_level(g) : static_cast<Priority>(level);
    *out = make("decomposition", decomposition_json(g, build_ad(g, h)));
  });
}

pi_status pi_ad_check(const pi_object* graph, const pi_object* d, pi_object** out) {
  return guard([&] {
    need(out, "out");
    const ParityGraph g = graph_for(graph, d);
    const AttractorDecomposition ad = as_decomposition(d);
    const AdCheck c = validate_ad(g, ad);
    Json j;
    j["valid"] = c.valid;
    if (!c.valid) {
      j["clause"] = c.clause;
      j["path"] = c.path;
      j["witness"] = c.witness;
    } else {
      j["reachability"] = ad_reachability_check(g, ad);
    }
    *out = make("check", std::move(j));
  });
}

pi_status pi_ad_tight(const pi_object* graph, const pi_object* d, int* tight) {
  return guard([&] {
    need(tight, "tight");
    *tight = is_tight(graph_for(graph, d), as_decomposition(d));
  });
}

pi_status pi_ad_shape(const pi_object* d, pi_object** out) {
  return guard([&] {
    need(out, "out");
    *out = make("tree", to_json(tree_shape(as_decomposition(d))));
  });
}

pi_status pi_ad_from_pair(const pi_object* pair, size_t n, size_t j, size_t cap, pi_object** out) {
  return guard([&] {
    need(out, "out");
    const LabellingPair p = pair_from_json(payload(pair, "pair"));
    const BoundedPairDecomposition r = ad_from_bounded_pair(p, n, j, cap ? cap : kDefaultStateCap);
    *out = make("decomposition", decomposition_json(r.graph, r.decomposition));
  });
}

pi_status pi_strahler(const pi_object* tree, size_t n, size_t* value) {
  return guard([&] {
    need(value, "value");
    *value = n_strahler(tree_from_json(payload(tree, "tree")), n);
  });
}

pi_status pi_universal_tree(size_t n, size_t k, size_t d, size_t width, pi_object** out) {
  return guard([&] {
    need(out, "out");
    *out = make("tree", to_json(universal_tree(n, k, d, width)));
  });
}

pi_status pi_embed(const pi_object* tree, const pi_object* host, int* embeds, pi_object** image) {
  return guard([&] {
    need(embeds, "embeds");
    const auto e = embed(tree_from_json(payload(tree, "tree")), tree_from_json(payload(host, "tree")));
    *embeds = e.has_value();
    if (image) *image = e ? make("embedding", Json(e->image)) : nullptr;
  });
}

pi_status pi_reg_build(const pi_object* input, uint32_t j_lo, uint32_t j_hi, size_t n, const pi_options* options,
                       pi_object** out) {
  return guard([&] {
    need(out, "out");
    auto p = std::make_shared<RegProduct>(reg_product(as_game(input), make_index(j_lo, j_hi), n, options_of(options)));
    pi_object* o = make("product", to_json(*p));
    o->product = std::move(p);
    *out = o;
  });
}

pi_status pi_reg_solve(const pi_object* input, uint32_t j_lo, uint32_t j_hi, size_t n, uint32_t from,
                       const pi_options* options, int* eve_wins) {
  return guard([&] {
    need(eve_wins, "eve_wins");
    *eve_wins = eve_wins_reg(as_game(input), make_index(j_lo, j_hi), n, from, options_of(options));
  });
}

pi_status pi_reg_synth(const pi_object* graph, const pi_object* d, size_t n, const pi_options* options,
                       pi_object** out) {
  return guard([&] {
    need(out, "out");
    const ParityGraph g = graph_for(graph, d);
    const RegStrategy s = synth_from_ad(g, as_decomposition(d), n, options_of(options));
    Json j;
    j["verified"] = s.verified;
    j["registers"] = s.registers_used;
    j["product_vertices"] = s.product.game.graph.vertex_universe();
    j["strategy"] = to_json(s.strategy);
    *out = make("reg-strategy", std::move(j));
  });
}

pi_status pi_bound_check(const pi_object* pair, size_t n, int* bounded, pi_object** counterexample) {
  return guard([&] {
    need(bounded, "bounded");
    const BoundCheck r = n_bound_check(pair_from_json(payload(pair, "pair")), n);
    *bounded = r.bounded;
    if (counterexample)
      *counterexample = r.counterexample ? make("segmented-path", to_json(*r.counterexample)) : nullptr;
  });
}

pi_status pi_aut_game(const pi_object* automaton, const pi_object* tree, pi_object** out) {
  return guard([&] {
    need(out, "out");
    const AcceptanceGame g =
        acceptance_game(automaton_from_json(payload(automaton, "automaton")), regular_tree_from_json(payload(tree, "regular-tree")));
    Json j = to_json(g.game);
    j["initial"] = g.initial;
    *out = make("game", std::move(j));
  });
}

pi_status pi_aut_member(const pi_object* automaton, const pi_object* tree, int* accepts) {
  return guard([&] {
    need(accepts, "accepts");
    *accepts = membership(automaton_from_json(payload(automaton, "automaton")),
                          regular_tree_from_json(payload(tree, "regular-tree")));
  });
}

pi_status pi_aut_compose(const pi_object* automaton, uint32_t j_lo, uint32_t j_hi, size_t n, const pi_options* options,
                         pi_object** out) {
  return guard([&] {
    need(out, "out");
    const NPTA b = compose_transducer(automaton_from_json(payload(automaton, "automaton")), make_index(j_lo, j_hi), n,
                                      options_of(options));
    *out = make("automaton", to_json(b));
  });
}

pi_status pi_aut_guide(const pi_object* a, const pi_object* b, const pi_object* guide, const pi_object* tree,
                       pi_object** out) {
  return guard([&] {
    need(out, "out");
    const GuidedBound r = guided_pair_bound_check(automaton_from_json(payload(a, "automaton")),
                                                  automaton_from_json(payload(b, "automaton")),
                                                  guide_from_json(payload(guide, "guide")),
                                                  regular_tree_from_json(payload(tree, "regular-tree")));
    Json j;
    j["bounded"] = r.bounded;
    j["guided_accepting"] = r.guided_accepting;
    j["n"] = r.n;
    if (r.counterexample) j["counterexample"] = to_json(*r.counterexample);
    *out = make("guided-bound", std::move(j));
  });
}

pi_status pi_lab_random(const char* kind, const pi_gen_params* params, pi_object** out) {
  return guard([&] {
    need(kind, "kind");
    need(out, "out");
    GenParams p = params_of(params);
    const std::string k = kind;
    if (k == "game")
      *out = make("game", to_json(random_game(p)));
    else if (k == "even-graph")
      *out = make("graph", to_json(random_even_graph(p)));
    else if (k == "planted") {
      p.planted = true;
      *out = make("graph", to_json(random_even_graph(p)));
    } else if (k == "pair")
      *out = make("pair", to_json(random_bounded_pair(p, p.counter_bound)));
    else
      throw Error(ErrorCode::InvalidArgument, "unknown random kind '" + k + "'");
  });
}

pi_status pi_lab_battery(const pi_gen_params* params, const char* only_check, pi_object** report, char** table) {
  return guard([&] {
    const GenParams p = params_of(params);
    TheoremReport r;
    if (only_check && *only_check) {
      if (p.instance_count > 0) r.checks.push_back(run_check(only_check, p));
    } else {
      r = run_theorem_battery(p);
    }
    if (report) {
      Manifest m = parse_manifest(r.to_text());
      *report = make(std::move(m.kind), std::move(m.payload));
    }
    if (table) *table = dup(r.summary_table());
  });
}

}  // extern "C"
