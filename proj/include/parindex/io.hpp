#pragma once

#include <string>
#include <string_view>

#include "json.hpp"
#include "parindex/automata.hpp"
#include "parindex/decomposition.hpp"
#include "parindex/games.hpp"
#include "parindex/ordered_tree.hpp"
#include "parindex/transduction.hpp"

namespace parindex {

using Json = nlohmann::ordered_json;

inline constexpr int kManifestVersion = 1;

struct Manifest {
  std::string kind;
  Json payload;
};

std::string print_manifest(const Manifest& m);
/// Throws ParseError on malformed text, unknown format tag or version.
Manifest parse_manifest(std::string_view text);

Json to_json(const ParityGraph& g);
Json to_json(const ParityGame& g);
Json to_json(const LabellingPair& p);
Json to_json(const AttractorDecomposition& d);
Json to_json(const OrderedTree& t);
Json to_json(const NPTA& a);
Json to_json(const RegularTree& t);
Json to_json(const GuidingFunction& g);
Json to_json(const PositionalStrategy& s);
Json to_json(const Lasso& l);
Json to_json(const SegmentedPath& p);
Json to_json(const RegProduct& p);
Json to_json(const VertexSet& s);

ParityGraph graph_from_json(const Json& j);
ParityGame game_from_json(const Json& j);
LabellingPair pair_from_json(const Json& j);
AttractorDecomposition decomposition_from_json(const Json& j);
OrderedTree tree_from_json(const Json& j);
NPTA automaton_from_json(const Json& j);
RegularTree regular_tree_from_json(const Json& j);
GuidingFunction guide_from_json(const Json& j);
PositionalStrategy strategy_from_json(const Json& j);

template <class T>
std::string print_object(std::string kind, const T& value) {
  return print_manifest(Manifest{std::move(kind), to_json(value)});
}

enum class PgConversion : std::uint8_t { Target, Source };

struct PgImport {
  ParityGame game;
  std::vector<std::string> names;
  std::string conversion;  // human-readable conversion rule, kept alongside the game
};

PgImport import_pgsolver(std::string_view text, PgConversion conversion = PgConversion::Target);
/// Needs every edge into a vertex to carry the same priority; throws InvalidArgument otherwise.
std::string export_pgsolver(const ParityGame& game);

std::string export_dot(const ParityGraph& g);
std::string export_dot(const ParityGame& g);
std::string export_dot(const ParityGraph& g, const AttractorDecomposition& d);
std::string export_dot(const OrderedTree& t);
std::string export_dot(const RegProduct& p);

std::string read_file(const std::string& path);
/// Writes to a temporary sibling and renames it over path.
void write_file_atomic(const std::string& path, std::string_view text);

}  // namespace parindex
