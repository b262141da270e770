#include <algorithm>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <unistd.h>

#include "parindex/io.hpp"

namespace parindex {

namespace {

struct Cursor {
  std::string_view text;
  std::size_t pos = 0;
  std::size_t line = 1, col = 1;

  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorCode::ParseError, "line " + std::to_string(line) + ", column " + std::to_string(col) + ": " + what);
  }
  bool done() const { return pos >= text.size(); }
  char peek() const { return done() ? '\0' : text[pos]; }
  void advance() {
    if (text[pos] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
    ++pos;
  }
  void skip_space() {
    while (!done() && std::isspace(static_cast<unsigned char>(peek()))) advance();
  }
  std::string word() {
    skip_space();
    std::string out;
    while (!done() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_')) {
      out += peek();
      advance();
    }
    if (out.empty()) fail(done() ? "unexpected end of input" : std::string("unexpected '") + peek() + "'");
    return out;
  }
  std::uint64_t number() {
    skip_space();
    const Cursor at = *this;
    std::string w = word();
    if (!std::all_of(w.begin(), w.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
      at.fail("expected a number, got '" + w + "'");
    if (w.size() > 9) at.fail("number too large");
    return std::stoull(w);
  }
  void expect(char c) {
    skip_space();
    if (peek() != c) fail(std::string("expected '") + c + "'");
    advance();
  }
};

struct PgVertex {
  std::uint64_t priority = 0;
  Player owner = Player::Eve;
  std::vector<std::pair<std::uint64_t, Cursor>> succ;
  std::string name;
};

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

}  // namespace

PgImport import_pgsolver(std::string_view text, PgConversion conversion) {
  Cursor c{text};
  if (c.word() != "parity") c.fail("expected header 'parity <n>;'");
  const std::uint64_t declared = c.number();
  c.expect(';');
  std::map<std::uint64_t, PgVertex> vs;
  c.skip_space();
  while (!c.done()) {
    const Cursor at = c;
    std::string first = c.word();
    if (first == "start") {
      c.number();
      c.expect(';');
      c.skip_space();
      continue;
    }
    Cursor num = at;
    const std::uint64_t id = num.number();
    PgVertex v;
    v.priority = c.number();
    const std::uint64_t owner = c.number();
    if (owner > 1) at.fail("owner must be 0 or 1");
    v.owner = owner == 0 ? Player::Eve : Player::Adam;
    do {
      c.skip_space();
      const Cursor s = c;
      v.succ.push_back({c.number(), s});
      c.skip_space();
    } while (c.peek() == ',' && (c.advance(), true));
    c.skip_space();
    if (c.peek() == '"') {
      c.advance();
      while (!c.done() && c.peek() != '"') {
        v.name += c.peek();
        c.advance();
      }
      c.expect('"');
    }
    c.expect(';');
    if (!vs.emplace(id, std::move(v)).second) at.fail("vertex " + std::to_string(id) + " declared twice");
    c.skip_space();
  }
  if (vs.empty()) throw Error(ErrorCode::EmptyGame, "game has no vertices");
  const std::uint64_t count = std::max(declared + 1, vs.rbegin()->first + 1);
  for (std::uint64_t id = 0; id < count; ++id)
    if (!vs.count(id)) throw Error(ErrorCode::ParseError, "vertex " + std::to_string(id) + " is not declared");

  PgImport out;
  std::vector<Edge> edges;
  std::vector<Player> owner;
  Priority top = 0;
  for (const auto& [id, v] : vs) {
    owner.push_back(v.owner);
    out.names.push_back(v.name);
    for (const auto& [t, where] : v.succ) {
      auto it = vs.find(t);
      if (it == vs.end())
        throw Error(ErrorCode::DanglingSuccessor, "line " + std::to_string(where.line) + ": successor " +
                                                      std::to_string(t) + " of vertex " + std::to_string(id) +
                                                      " is not declared");
      const auto p = static_cast<Priority>(conversion == PgConversion::Target ? it->second.priority : v.priority);
      top = std::max(top, p);
      edges.push_back(Edge{static_cast<VertexId>(id), static_cast<VertexId>(t), p});
    }
  }
  out.game = ParityGame(ParityGraph(count, std::move(edges), Index{0, top}), std::move(owner));
  out.conversion = conversion == PgConversion::Target
                       ? "edge priority = priority of its target vertex"
                       : "edge priority = priority of its source vertex";
  return out;
}

std::string export_pgsolver(const ParityGame& game) {
  const ParityGraph& g = game.graph;
  if (g.vertices().size() != g.vertex_universe())
    throw Error(ErrorCode::InvalidArgument, "export needs every vertex of the universe active");
  std::vector<std::optional<Priority>> prio(g.vertex_universe());
  for (EdgeId e : g.edges()) {
    const Edge& ed = g.edge(e);
    if (prio[ed.target] && *prio[ed.target] != ed.priority)
      throw Error(ErrorCode::InvalidArgument,
                  "edges into vertex " + std::to_string(ed.target) + " carry different priorities");
    prio[ed.target] = ed.priority;
  }
  std::ostringstream out;
  out << "parity " << (g.vertex_universe() == 0 ? 0 : g.vertex_universe() - 1) << ";\n";
  for (VertexId v = 0; v < g.vertex_universe(); ++v) {
    out << v << ' ' << prio[v].value_or(0) << ' ' << (game.owner_of(v) == Player::Eve ? 0 : 1) << ' ';
    bool first = true;
    g.for_each_out(v, [&](EdgeId e) {
      out << (first ? "" : ",") << g.edge(e).target;
      first = false;
    });
    out << ";\n";
  }
  return out.str();
}

namespace {

void dot_edges(std::ostringstream& out, const ParityGraph& g) {
  for (EdgeId e : g.edges()) {
    const Edge& ed = g.edge(e);
    out << "  v" << ed.source << " -> v" << ed.target << " [label=\"" << ed.priority << "\"];\n";
  }
}

std::string dot_graph(const ParityGraph& g, const std::function<std::string(VertexId)>& attrs) {
  std::ostringstream out;
  out << "digraph G {\n";
  for (VertexId v : g.vertices()) out << "  v" << v << " [" << attrs(v) << "];\n";
  dot_edges(out, g);
  out << "}\n";
  return out.str();
}

}  // namespace

std::string export_dot(const ParityGraph& g) {
  return dot_graph(g, [](VertexId v) { return "label=\"" + std::to_string(v) + "\""; });
}

std::string export_dot(const ParityGame& game) {
  return dot_graph(game.graph, [&](VertexId v) {
    return "label=\"" + std::to_string(v) + "\", shape=" + (game.owner_of(v) == Player::Eve ? "circle" : "box");
  });
}

std::string export_dot(const ParityGraph& g, const AttractorDecomposition& d) {
  std::ostringstream out;
  out << "digraph G {\n  compound=true;\n";
  std::size_t clusters = 0;
  VertexSet placed(g.vertex_universe());
  std::function<void(const AttractorDecomposition&, const std::string&, int)> emit =
      [&](const AttractorDecomposition& node, const std::string& label, int indent) {
        const std::string pad(indent, ' ');
        out << pad << "subgraph cluster_" << clusters++ << " {\n" << pad << "  label=" << quote(label) << ";\n";
        out << pad << "  subgraph cluster_" << clusters++ << " {\n" << pad << "    label=\"A0\";\n";
        for (VertexId v : node.top_attractor) {
          if (placed.contains(v)) continue;
          placed.insert(v);
          out << pad << "    v" << v << ";\n";
        }
        out << pad << "  }\n";
        for (std::size_t k = 0; k < node.children.size(); ++k) {
          const auto& c = node.children[k];
          const std::string name = label + "/" + std::to_string(k);
          out << pad << "  subgraph cluster_" << clusters++ << " {\n"
              << pad << "    label=" << quote("A" + std::to_string(k + 1)) << ";\n";
          emit(c.sub, name + " level " + std::to_string(c.sub.level), indent + 4);
          for (VertexId v : c.attractor - c.subgame) {
            if (placed.contains(v)) continue;
            placed.insert(v);
            out << pad << "    v" << v << ";\n";
          }
          out << pad << "  }\n";
        }
        out << pad << "}\n";
      };
  emit(d, "root level " + std::to_string(d.level), 2);
  for (VertexId v : g.vertices())
    if (!placed.contains(v)) out << "  v" << v << ";\n";
  dot_edges(out, g);
  out << "}\n";
  return out.str();
}

std::string export_dot(const OrderedTree& t) {
  std::ostringstream out;
  out << "digraph T {\n";
  std::size_t next = 0;
  std::function<std::size_t(const OrderedTree&)> emit = [&](const OrderedTree& node) {
    const std::size_t id = next++;
    out << "  n" << id << " [label=\"\", shape=point];\n";
    for (const auto& c : node.children) {
      const std::size_t child = emit(c);
      out << "  n" << id << " -> n" << child << ";\n";
    }
    return id;
  };
  emit(t);
  out << "}\n";
  return out.str();
}

std::string export_dot(const RegProduct& p) {
  return dot_graph(p.game.graph, [&](VertexId v) {
    return "label=" + quote(describe(p, v)) + ", shape=" + (p.game.owner_of(v) == Player::Eve ? "ellipse" : "box");
  });
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::InvalidArgument, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file_atomic(const std::string& path, std::string_view text) {
  const std::string tmp = path + ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::InvalidArgument, "cannot write " + tmp);
    out << text;
    out.flush();
    if (!out) throw Error(ErrorCode::InvalidArgument, "write failed for " + tmp);
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw Error(ErrorCode::InvalidArgument, "cannot rename onto " + path + ": " + ec.message());
  }
}

}  // namespace parindex
