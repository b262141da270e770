#include <string>

#include "parindex/io.hpp"

namespace parindex {

namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorCode::ParseError, what); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) bad(std::string("missing field '") + key + "'");
  return j.at(key);
}

template <class T>
T get(const Json& j, const char* key) {
  try {
    return field(j, key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    bad(std::string("field '") + key + "': " + e.what());
  }
}

Json index_json(Index i) { return Json::array({i.lo, i.hi}); }

Index index_from(const Json& j) {
  if (!j.is_array() || j.size() != 2) bad("index must be [lo, hi]");
  return make_index(j[0].get<Priority>(), j[1].get<Priority>());
}

template <class Tag>
Json ids_json(const IdSet<Tag>& s) {
  Json out = Json::array();
  for (auto id : s) out.push_back(id);
  return out;
}

template <class Tag>
IdSet<Tag> ids_from(const Json& j, std::size_t universe) {
  if (!j.is_array()) bad("id set must be an array");
  IdSet<Tag> s(universe);
  for (const auto& x : j) {
    auto id = x.get<std::uint32_t>();
    if (id >= universe) bad("id " + std::to_string(id) + " outside universe " + std::to_string(universe));
    s.insert(id);
  }
  return s;
}

Json player_json(Player p) { return p == Player::Eve ? "eve" : "adam"; }

}  // namespace

std::string print_manifest(const Manifest& m) {
  Json out;
  out["format"] = "parindex";
  out["version"] = kManifestVersion;
  out["kind"] = m.kind;
  out["payload"] = m.payload;
  return out.dump(2) + "\n";
}

Manifest parse_manifest(std::string_view text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    bad(e.what());
  }
  if (get<std::string>(j, "format") != "parindex") bad("not a parindex manifest");
  if (get<int>(j, "version") != kManifestVersion) bad("unsupported manifest version");
  return Manifest{get<std::string>(j, "kind"), field(j, "payload")};
}

Json to_json(const VertexSet& s) { return ids_json(s); }

Json to_json(const ParityGraph& g) {
  Json out;
  out["vertices"] = g.vertex_universe();
  out["index"] = index_json(g.index());
  Json edges = Json::array();
  for (EdgeId e = 0; e < g.edge_universe(); ++e) {
    const Edge& ed = g.edge(e);
    edges.push_back(Json::array({ed.source, ed.target, ed.priority}));
  }
  out["edges"] = std::move(edges);
  if (g.vertices().size() != g.vertex_universe()) out["active_vertices"] = ids_json(g.vertices());
  if (g.edges().size() != g.edge_universe()) out["active_edges"] = ids_json(g.edges());
  return out;
}

ParityGraph graph_from_json(const Json& j) {
  const auto n = get<std::size_t>(j, "vertices");
  const Index idx = index_from(field(j, "index"));
  std::vector<Edge> edges;
  for (const auto& e : field(j, "edges")) {
    if (!e.is_array() || e.size() != 3) bad("edge must be [source, target, priority]");
    edges.push_back(Edge{e[0].get<VertexId>(), e[1].get<VertexId>(), e[2].get<Priority>()});
  }
  ParityGraph g(n, std::move(edges), idx);
  if (j.contains("active_vertices")) g = g.restricted(ids_from<VertexTag>(j["active_vertices"], n));
  if (j.contains("active_edges")) g = g.with_edges_only(ids_from<EdgeTag>(j["active_edges"], g.edge_universe()));
  return g;
}

Json to_json(const ParityGame& g) {
  Json out = to_json(g.graph);
  Json owners = Json::array();
  for (Player p : g.owner) owners.push_back(player_json(p));
  out["owners"] = std::move(owners);
  return out;
}

ParityGame game_from_json(const Json& j) {
  ParityGraph g = graph_from_json(j);
  std::vector<Player> owner;
  for (const auto& o : field(j, "owners")) {
    const auto s = o.get<std::string>();
    if (s != "eve" && s != "adam") bad("owner must be eve or adam");
    owner.push_back(s == "eve" ? Player::Eve : Player::Adam);
  }
  if (owner.size() != g.vertex_universe()) bad("owners must list every vertex");
  return ParityGame(std::move(g), std::move(owner));
}

Json to_json(const LabellingPair& p) {
  Json out;
  out["graph"] = to_json(p.graph);
  out["label_i"] = p.label_i;
  out["index_i"] = index_json(p.index_i);
  out["label_j"] = p.label_j;
  out["index_j"] = index_json(p.index_j);
  return out;
}

LabellingPair pair_from_json(const Json& j) {
  return LabellingPair(graph_from_json(field(j, "graph")), get<std::vector<Priority>>(j, "label_i"),
                       index_from(field(j, "index_i")), get<std::vector<Priority>>(j, "label_j"),
                       index_from(field(j, "index_j")));
}

Json to_json(const AttractorDecomposition& d) {
  Json out;
  out["level"] = d.level;
  out["universe"] = Json::array({d.top_attractor.universe(), d.top_edges.universe()});
  out["top_edges"] = ids_json(d.top_edges);
  out["top_attractor"] = ids_json(d.top_attractor);
  Json kids = Json::array();
  for (const auto& c : d.children) {
    Json k;
    k["subgame"] = ids_json(c.subgame);
    k["attractor"] = ids_json(c.attractor);
    k["sub"] = to_json(c.sub);
    kids.push_back(std::move(k));
  }
  out["children"] = std::move(kids);
  return out;
}

AttractorDecomposition decomposition_from_json(const Json& j) {
  AttractorDecomposition d;
  d.level = get<Priority>(j, "level");
  const auto u = get<std::vector<std::size_t>>(j, "universe");
  if (u.size() != 2) bad("universe must be [vertices, edges]");
  d.top_edges = ids_from<EdgeTag>(field(j, "top_edges"), u[1]);
  d.top_attractor = ids_from<VertexTag>(field(j, "top_attractor"), u[0]);
  for (const auto& k : field(j, "children"))
    d.children.push_back({ids_from<VertexTag>(field(k, "subgame"), u[0]), ids_from<VertexTag>(field(k, "attractor"), u[0]),
                          decomposition_from_json(field(k, "sub"))});
  return d;
}

Json to_json(const OrderedTree& t) { return to_brackets(t); }

OrderedTree tree_from_json(const Json& j) {
  if (!j.is_string()) bad("tree must be a bracket string");
  return parse_brackets(j.get<std::string>());
}

Json to_json(const NPTA& a) {
  Json out;
  out["alphabet"] = a.alphabet_size;
  out["states"] = a.state_count;
  out["initial"] = a.initial;
  out["index"] = index_json(a.index);
  Json ts = Json::array();
  for (const auto& t : a.transitions)
    ts.push_back(Json::array({t.state, t.letter, t.left, t.right, t.left_priority, t.right_priority}));
  out["transitions"] = std::move(ts);
  return out;
}

NPTA automaton_from_json(const Json& j) {
  NPTA a;
  a.alphabet_size = get<std::size_t>(j, "alphabet");
  a.state_count = get<std::size_t>(j, "states");
  a.initial = get<StateId>(j, "initial");
  a.index = index_from(field(j, "index"));
  for (const auto& t : field(j, "transitions")) {
    if (!t.is_array() || t.size() != 6) bad("transition must be [state, letter, left, right, pl, pr]");
    a.transitions.push_back(Transition{t[0].get<StateId>(), t[1].get<Letter>(), t[2].get<StateId>(),
                                       t[3].get<StateId>(), t[4].get<Priority>(), t[5].get<Priority>()});
  }
  return a;
}

Json to_json(const RegularTree& t) {
  Json out;
  out["alphabet"] = t.alphabet_size;
  out["root"] = t.root;
  out["label"] = t.label;
  out["left"] = t.left;
  out["right"] = t.right;
  return out;
}

RegularTree regular_tree_from_json(const Json& j) {
  RegularTree t;
  t.alphabet_size = get<std::size_t>(j, "alphabet");
  t.root = get<std::uint32_t>(j, "root");
  t.label = get<std::vector<Letter>>(j, "label");
  t.left = get<std::vector<std::uint32_t>>(j, "left");
  t.right = get<std::vector<std::uint32_t>>(j, "right");
  return t;
}

Json to_json(const GuidingFunction& g) { return g.table; }

GuidingFunction guide_from_json(const Json& j) {
  try {
    return GuidingFunction{j.get<std::vector<std::vector<int>>>()};
  } catch (const nlohmann::json::exception& e) {
    bad(std::string("guide: ") + e.what());
  }
}

Json to_json(const PositionalStrategy& s) {
  Json out = Json::array();
  for (VertexId v = 0; v < s.universe(); ++v) {
    if (s.defined(v))
      out.push_back(s.choice(v));
    else
      out.push_back(nullptr);
  }
  return out;
}

PositionalStrategy strategy_from_json(const Json& j) {
  if (!j.is_array()) bad("strategy must be an array");
  PositionalStrategy s(j.size());
  for (std::size_t v = 0; v < j.size(); ++v)
    if (!j[v].is_null()) s.set(static_cast<VertexId>(v), j[v].get<EdgeId>());
  return s;
}

Json to_json(const Lasso& l) {
  Json out;
  out["stem"] = l.stem;
  out["cycle"] = l.cycle;
  return out;
}

Json to_json(const SegmentedPath& p) {
  Json out;
  out["i"] = p.i;
  out["j"] = p.j;
  out["segments"] = p.segments;
  return out;
}

Json to_json(const RegProduct& p) {
  Json out = to_json(p.game);
  out["j_index"] = index_json(p.j_index);
  out["j_shift"] = p.j_shift;
  out["n"] = p.n;
  out["sink"] = p.sink;
  Json names = Json::array();
  for (VertexId v = 0; v < p.decode.size(); ++v) names.push_back(describe(p, v));
  out["states"] = std::move(names);
  return out;
}

}  // namespace parindex
