#include <doctest.h>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <random>

#include "oracles.hpp"
#include "parindex/io.hpp"
#include "parindex/lab.hpp"

using namespace parindex;

namespace {

std::size_t count_of(const std::string& text, const std::string& needle) {
  std::size_t n = 0;
  for (std::size_t at = text.find(needle); at != std::string::npos; at = text.find(needle, at + 1)) ++n;
  return n;
}

template <class T, class F>
void round_trip(const std::string& kind, const T& value, F&& back) {
  const std::string text = print_object(kind, value);
  Manifest m = parse_manifest(text);
  CHECK(m.kind == kind);
  CHECK(print_object(kind, back(m.payload)) == text);
}

}  // namespace

TEST_CASE("manifests round trip for every kind") {
  GenParams p;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    p.seed = seed;
    ParityGame game = random_game(p);
    round_trip("game", game, game_from_json);
    round_trip("graph", game.graph, graph_from_json);
    ParityGraph even = random_even_graph(p);
    round_trip("graph", even, graph_from_json);
    AttractorDecomposition d = build_ad(even, default_level(even));
    CHECK(decomposition_from_json(to_json(d)).children.size() == d.children.size());
    CHECK(validate_ad(even, decomposition_from_json(to_json(d))).valid);
    round_trip("tree", tree_shape(d), tree_from_json);
    round_trip("pair", random_bounded_pair(p, 1), pair_from_json);
    round_trip("strategy", solve(game).eve_strategy, strategy_from_json);
  }
  NPTA a;
  a.alphabet_size = 2;
  a.state_count = 1;
  a.index = Index{0, 2};
  a.transitions = {Transition{0, 0, 0, 0, 2, 1}, Transition{0, 1, 0, 0, 0, 2}};
  round_trip("automaton", a, automaton_from_json);
  for (const RegularTree& t : enumerate_regular_trees(2, 2)) round_trip("regular-tree", t, regular_tree_from_json);
  GuidingFunction g;
  g.table = {{0, -1}, {1, 1}};
  round_trip("guide", g, guide_from_json);
}

TEST_CASE("malformed manifests are parse errors") {
  auto code_of = [](std::string_view text) {
    try {
      parse_manifest(text);
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::Undefined;
  };
  CHECK(code_of("{") == ErrorCode::ParseError);
  CHECK(code_of(R"({"format":"other","version":1,"kind":"graph","payload":{}})") == ErrorCode::ParseError);
  CHECK(code_of(R"({"format":"parindex","version":99,"kind":"graph","payload":{}})") == ErrorCode::ParseError);
}

TEST_CASE("PGSolver import uses target priorities") {
  PgImport in = import_pgsolver("parity 1;\n0 3 0 1 \"a\";\n1 2 1 0,1;\n");
  const ParityGraph& g = in.game.graph;
  CHECK(g.vertices().size() == 2);
  CHECK(in.game.owner_of(0) == Player::Eve);
  CHECK(in.game.owner_of(1) == Player::Adam);
  for (EdgeId e : g.edges()) CHECK(g.priority(e) == (g.edge(e).target == 0 ? 3u : 2u));
  CHECK(in.names[0] == "a");
  CHECK_FALSE(in.conversion.empty());

  PgImport src = import_pgsolver("parity 1;\n0 3 0 1;\n1 2 1 0,1;\n", PgConversion::Source);
  for (EdgeId e : src.game.graph.edges())
    CHECK(src.game.graph.priority(e) == (src.game.graph.edge(e).source == 0 ? 3u : 2u));
}

TEST_CASE("PGSolver import errors") {
  auto code_of = [](std::string_view text) {
    try {
      import_pgsolver(text);
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::Undefined;
  };
  CHECK(code_of("parity 0;\n") == ErrorCode::EmptyGame);
  CHECK(code_of("parity 0;\n0 1 0 5;\n") == ErrorCode::DanglingSuccessor);
  try {
    import_pgsolver("parity 1;\n0 1 0 0;\n1 x 0 0;\n");
    FAIL("expected a parse error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ParseError);
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
    CHECK(std::string(e.what()).find("column 3") != std::string::npos);
  }
}

TEST_CASE("PGSolver export round trips vertex-priority games") {
  std::mt19937_64 rng(83);
  std::uniform_int_distribution<Priority> prio(0, 4);
  for (int round = 0; round < 50; ++round) {
    ParityGraph shape = oracle::random_graph(rng, 6, 0, 0.3);
    std::vector<Priority> vp(shape.vertex_universe());
    for (auto& x : vp) x = prio(rng);
    std::vector<Priority> ep(shape.edge_universe());
    for (EdgeId e = 0; e < ep.size(); ++e) ep[e] = vp[shape.edge(e).target];
    std::vector<Player> owners(shape.vertex_universe(), Player::Eve);
    for (VertexId v = 0; v < owners.size(); v += 2) owners[v] = Player::Adam;
    ParityGame game(shape.relabelled(ep, Index{0, 4}), owners);
    PgImport back = import_pgsolver(export_pgsolver(game));
    REQUIRE(back.game.graph.vertices().size() == game.graph.vertices().size());
    CHECK(back.game.owner == game.owner);
    for (VertexId v : game.graph.vertices()) {
      std::vector<std::pair<VertexId, Priority>> want, got;
      game.graph.for_each_out(v, [&](EdgeId e) { want.emplace_back(game.graph.edge(e).target, game.graph.priority(e)); });
      back.game.graph.for_each_out(
          v, [&](EdgeId e) { got.emplace_back(back.game.graph.edge(e).target, back.game.graph.priority(e)); });
      std::sort(want.begin(), want.end());
      std::sort(got.begin(), got.end());
      CHECK(want == got);
    }
  }
  ParityGame mixed(ParityGraph(2, {Edge{0, 1, 1}, Edge{1, 1, 2}}, Index{0, 2}), {Player::Eve, Player::Eve});
  CHECK_THROWS_AS(export_pgsolver(mixed), Error);
}

TEST_CASE("DOT output") {
  CHECK(count_of(export_dot(OrderedTree::leaf()), "label=") == 1);
  GenParams p;
  p.exact_size = true;
  p.vertex_count = 7;
  ParityGame game = random_game(p);
  const std::string dot = export_dot(game);
  CHECK(dot.rfind("digraph", 0) == 0);
  CHECK(count_of(dot, "->") == game.graph.edges().size());
  CHECK(dot == export_dot(game));

  ParityGraph two(2, {Edge{0, 0, 0}, Edge{1, 1, 0}}, Index{0, 2});
  const std::string clusters = export_dot(two, build_ad(two, 2));
  CHECK(count_of(clusters, "subgraph cluster") >= 2);
}

TEST_CASE("atomic writes replace the whole file") {
  const auto dir = std::filesystem::temp_directory_path() / "parindex_io_test";
  std::filesystem::create_directories(dir);
  const std::string path = (dir / "out.json").string();
  write_file_atomic(path, "first version, longer text");
  write_file_atomic(path, "second");
  CHECK(read_file(path) == "second");
  std::size_t files = 0;
  for ([[maybe_unused]] const auto& entry : std::filesystem::directory_iterator(dir)) ++files;
  CHECK(files == 1);
  std::filesystem::remove_all(dir);
  CHECK_THROWS_AS(read_file(path), Error);
}
