#include <cstdio>
#include <cstring>
#include <functional>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "parindex/parindex.h"

namespace {

constexpr int kOk = 0, kNegative = 1, kUsage = 2, kResource = 3;

struct Global {
  std::uint64_t seed = 1;
  std::string format = "native";
  std::size_t cap_states = 0;
  std::string reset_rule = "liberal";
  std::string output;
  bool json_errors = false;
  bool source_priority = false;
};

struct Failure {
  int code;
};

using Obj = std::unique_ptr<pi_object, decltype(&pi_free)>;

Obj hold(pi_object* o) { return Obj(o, &pi_free); }

int exit_code_for(pi_status s) {
  switch (s) {
    case PI_OK:
      return kOk;
    case PI_STATE_EXPLOSION:
    case PI_TOO_LARGE:
      return kResource;
    case PI_NOT_EVEN:
    case PI_NOT_BOUNDED:
    case PI_NO_ACCEPTING_RUN:
      return kNegative;
    default:
      return kUsage;
  }
}

class Runner {
 public:
  explicit Runner(const Global& g) : g_(g) {}

  void check(pi_status s) const {
    if (s == PI_OK) return;
    if (g_.json_errors) {
      std::string msg = pi_last_error();
      std::string escaped;
      for (char c : msg) {
        if (c == '"' || c == '\\') escaped += '\\';
        if (c == '\n') {
          escaped += "\\n";
          continue;
        }
        escaped += c;
      }
      std::cerr << "{\"error\":\"" << pi_status_name(s) << "\",\"message\":\"" << escaped << "\"}\n";
    } else {
      std::cerr << "error: " << pi_last_error() << "\n";
    }
    throw Failure{exit_code_for(s)};
  }

  Obj load(const std::string& path) const {
    pi_object* o = nullptr;
    if (g_.source_priority) {
      std::FILE* f = std::fopen(path.c_str(), "rb");
      if (!f) {
        std::cerr << "error: cannot read " << path << "\n";
        throw Failure{kUsage};
      }
      std::string text;
      char buf[4096];
      for (std::size_t got; (got = std::fread(buf, 1, sizeof buf, f)) > 0;) text.append(buf, got);
      std::fclose(f);
      const auto start = text.find_first_not_of(" \t\r\n");
      if (start != std::string::npos && text.compare(start, 6, "parity") == 0) {
        check(pi_parse_pgsolver(text.c_str(), 1, &o));
        return hold(o);
      }
    }
    check(pi_load_file(path.c_str(), &o));
    return hold(o);
  }

  pi_options options() const {
    pi_options o;
    pi_options_default(&o);
    o.reset = g_.reset_rule == "literal" ? PI_RESET_LITERAL : PI_RESET_LIBERAL;
    if (g_.cap_states) o.cap_states = g_.cap_states;
    return o;
  }

  // Prints an object in the selected format, to --output (atomically) or stdout.
  void emit(const pi_object* o) const {
    if (!g_.output.empty() && g_.format == "native") {
      check(pi_save_file(o, g_.output.c_str()));
      return;
    }
    char* text = nullptr;
    if (g_.format == "dot")
      check(pi_export_dot(o, &text));
    else if (g_.format == "pgsolver")
      check(pi_export_pgsolver(o, &text));
    else
      check(pi_print(o, &text));
    std::string s = text;
    pi_free_string(text);
    if (g_.output.empty()) {
      std::cout << s;
      return;
    }
    std::FILE* f = std::fopen((g_.output + ".tmp").c_str(), "wb");
    if (!f || std::fwrite(s.data(), 1, s.size(), f) != s.size() || std::fclose(f) != 0 ||
        std::rename((g_.output + ".tmp").c_str(), g_.output.c_str()) != 0) {
      std::cerr << "error: cannot write " << g_.output << "\n";
      throw Failure{kUsage};
    }
  }

  std::int64_t field(const pi_object* o, const char* name) const {
    std::int64_t v = 0;
    check(pi_get_int(o, name, &v));
    return v;
  }

  const Global& global() const { return g_; }

 private:
  const Global& g_;
};

void parse_index(const std::string& text, std::uint32_t& lo, std::uint32_t& hi) {
  if (std::sscanf(text.c_str(), "%u,%u", &lo, &hi) != 2 && std::sscanf(text.c_str(), "[%u,%u]", &lo, &hi) != 2) {
    std::cerr << "error: index must look like 1,4\n";
    throw Failure{kUsage};
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"parindex: parity games, attractor decompositions and priority transduction"};
  app.require_subcommand(1);
  app.fallthrough();
  Global g;
  app.add_option("--seed", g.seed, "random seed");
  app.add_option("--format", g.format, "output format")->check(CLI::IsMember({"native", "pgsolver", "dot"}));
  app.add_option("--cap-states", g.cap_states, "state cap for products");
  app.add_option("--reset-rule", g.reset_rule, "counter reset rule")->check(CLI::IsMember({"liberal", "literal"}));
  app.add_option("-o,--output", g.output, "write the result to a file");
  app.add_flag("--json-errors", g.json_errors, "print errors as JSON on stderr");
  app.add_flag("--source-priority", g.source_priority, "PGSolver import: edges take the source vertex priority");

  Runner run(g);
  std::function<int()> action;
  std::string file, file2, file3, file4;
  std::size_t n = 1, k = 1, d = 1, width = 1;
  int level = -1;
  std::string index = "1,2";
  std::uint32_t from = 0;
  std::vector<std::uint32_t> edges;

  auto* solve = app.add_subcommand("solve", "solve a parity game");
  solve->add_option("game", file)->required();
  solve->callback([&] {
    action = [&] {
      auto game = run.load(file);
      pi_object* s = nullptr;
      run.check(pi_solve(game.get(), &s));
      run.emit(hold(s).get());
      return kOk;
    };
  });

  auto* even = app.add_subcommand("even", "check that every cycle has an even maximum");
  even->add_option("graph", file)->required();
  even->callback([&] {
    action = [&] {
      auto graph = run.load(file);
      int ok = 0;
      pi_object* lasso = nullptr;
      run.check(pi_is_even(graph.get(), &ok, &lasso));
      auto hold_lasso = hold(lasso);
      if (ok) {
        std::cout << "even\n";
        return kOk;
      }
      std::cout << "not even; odd lasso:\n";
      run.emit(lasso);
      return kNegative;
    };
  });

  auto* attract = app.add_subcommand("attract", "vertices from which every path reaches the given edges");
  attract->add_option("graph", file)->required();
  attract->add_option("--edges", edges, "target edge ids")->required()->delimiter(',');
  attract->callback([&] {
    action = [&] {
      auto graph = run.load(file);
      pi_object* s = nullptr;
      run.check(pi_attractor(graph.get(), edges.data(), edges.size(), &s));
      run.emit(hold(s).get());
      return kOk;
    };
  });

  auto* ad = app.add_subcommand("ad", "attractor decompositions");
  ad->require_subcommand(1);
  ad->fallthrough();
  auto* ad_build = ad->add_subcommand("build", "canonical decomposition of an even graph");
  ad_build->add_option("graph", file)->required();
  ad_build->add_option("--level", level, "even level h (default: smallest even >= max priority)");
  ad_build->callback([&] {
    action = [&] {
      auto graph = run.load(file);
      pi_object* out = nullptr;
      run.check(pi_ad_build(graph.get(), level, &out));
      run.emit(hold(out).get());
      return kOk;
    };
  });
  auto* ad_check = ad->add_subcommand("check", "validate a decomposition");
  ad_check->add_option("decomposition", file)->required();
  ad_check->add_option("--graph", file2, "graph, when the decomposition file carries none");
  ad_check->callback([&] {
    action = [&] {
      auto dec = run.load(file);
      Obj graph = file2.empty() ? hold(nullptr) : run.load(file2);
      pi_object* out = nullptr;
      run.check(pi_ad_check(graph.get(), dec.get(), &out));
      auto report = hold(out);
      run.emit(report.get());
      return run.field(report.get(), "valid") ? kOk : kNegative;
    };
  });
  auto* ad_tight = ad->add_subcommand("tight", "check tightness");
  ad_tight->add_option("decomposition", file)->required();
  ad_tight->add_option("--graph", file2);
  ad_tight->callback([&] {
    action = [&] {
      auto dec = run.load(file);
      Obj graph = file2.empty() ? hold(nullptr) : run.load(file2);
      int tight = 0;
      run.check(pi_ad_tight(graph.get(), dec.get(), &tight));
      std::cout << (tight ? "tight\n" : "not tight\n");
      return tight ? kOk : kNegative;
    };
  });
  auto* ad_shape = ad->add_subcommand("shape", "tree shape of a decomposition");
  ad_shape->add_option("decomposition", file)->required();
  ad_shape->callback([&] {
    action = [&] {
      auto dec = run.load(file);
      pi_object* out = nullptr;
      run.check(pi_ad_shape(dec.get(), &out));
      run.emit(hold(out).get());
      return kOk;
    };
  });

  auto* strahler = app.add_subcommand("strahler", "n-Strahler number of an ordered tree");
  strahler->add_option("tree", file)->required();
  strahler->add_option("-n", n, "n >= 1");
  strahler->callback([&] {
    action = [&] {
      auto tree = run.load(file);
      std::size_t value = 0;
      run.check(pi_strahler(tree.get(), n, &value));
      std::cout << value << "\n";
      return kOk;
    };
  });

  auto* universal = app.add_subcommand("universal", "universal tree U(n,k,d,w)");
  universal->add_option("-n", n)->required();
  universal->add_option("-k", k)->required();
  universal->add_option("-d", d)->required();
  universal->add_option("-w,--width", width)->required();
  universal->callback([&] {
    action = [&] {
      pi_object* out = nullptr;
      run.check(pi_universal_tree(n, k, d, width, &out));
      run.emit(hold(out).get());
      return kOk;
    };
  });

  auto* embed = app.add_subcommand("embed", "order-preserving embedding of a tree into a host");
  embed->add_option("tree", file)->required();
  embed->add_option("host", file2)->required();
  embed->callback([&] {
    action = [&] {
      auto t = run.load(file);
      auto h = run.load(file2);
      int ok = 0;
      pi_object* image = nullptr;
      run.check(pi_embed(t.get(), h.get(), &ok, &image));
      auto held = hold(image);
      if (!ok) {
        std::cout << "no embedding\n";
        return kNegative;
      }
      run.emit(image);
      return kOk;
    };
  });

  auto* reg = app.add_subcommand("reg", "priority transduction games");
  reg->require_subcommand(1);
  reg->fallthrough();
  auto* reg_build = reg->add_subcommand("build", "build Reg_J^n(G)");
  reg_build->add_option("input", file)->required();
  reg_build->add_option("-J,--index", index, "output index, e.g. 1,4");
  reg_build->add_option("-n", n, "counter bound");
  reg_build->callback([&] {
    action = [&] {
      auto in = run.load(file);
      std::uint32_t lo, hi;
      parse_index(index, lo, hi);
      const pi_options o = run.options();
      pi_object* out = nullptr;
      run.check(pi_reg_build(in.get(), lo, hi, n, &o, &out));
      run.emit(hold(out).get());
      return kOk;
    };
  });
  auto* reg_solve = reg->add_subcommand("solve", "does Eve win Reg_J^n(G) from a vertex");
  reg_solve->add_option("input", file)->required();
  reg_solve->add_option("-J,--index", index);
  reg_solve->add_option("-n", n);
  reg_solve->add_option("--from", from, "start vertex");
  reg_solve->callback([&] {
    action = [&] {
      auto in = run.load(file);
      std::uint32_t lo, hi;
      parse_index(index, lo, hi);
      const pi_options o = run.options();
      int wins = 0;
      run.check(pi_reg_solve(in.get(), lo, hi, n, from, &o, &wins));
      std::cout << (wins ? "Eve wins\n" : "Adam wins\n");
      return wins ? kOk : kNegative;
    };
  });
  auto* reg_synth = reg->add_subcommand("synth", "register strategy from a decomposition");
  reg_synth->add_option("decomposition", file)->required();
  reg_synth->add_option("--graph", file2);
  reg_synth->add_option("-n", n);
  reg_synth->callback([&] {
    action = [&] {
      auto dec = run.load(file);
      Obj graph = file2.empty() ? hold(nullptr) : run.load(file2);
      const pi_options o = run.options();
      pi_object* out = nullptr;
      run.check(pi_reg_synth(graph.get(), dec.get(), n, &o, &out));
      auto s = hold(out);
      run.emit(s.get());
      return run.field(s.get(), "verified") ? kOk : kNegative;
    };
  });

  auto* bound = app.add_subcommand("bound", "n-bound relation between labellings");
  bound->require_subcommand(1);
  bound->fallthrough();
  auto* bound_check = bound->add_subcommand("check", "is label_i n-bound by label_j");
  bound_check->add_option("pair", file)->required();
  bound_check->add_option("-n", n);
  bound_check->callback([&] {
    action = [&] {
      auto pair = run.load(file);
      int ok = 0;
      pi_object* cex = nullptr;
      run.check(pi_bound_check(pair.get(), n, &ok, &cex));
      auto held = hold(cex);
      if (ok) {
        std::cout << "bounded\n";
        return kOk;
      }
      std::cout << "not bounded; segmented path:\n";
      run.emit(cex);
      return kNegative;
    };
  });

  auto* aut = app.add_subcommand("aut", "parity tree automata");
  aut->require_subcommand(1);
  aut->fallthrough();
  auto* aut_game = aut->add_subcommand("game", "acceptance game of an automaton on a regular tree");
  aut_game->add_option("automaton", file)->required();
  aut_game->add_option("tree", file2)->required();
  aut_game->callback([&] {
    action = [&] {
      auto a = run.load(file);
      auto t = run.load(file2);
      pi_object* out = nullptr;
      run.check(pi_aut_game(a.get(), t.get(), &out));
      run.emit(hold(out).get());
      return kOk;
    };
  });
  auto* aut_member = aut->add_subcommand("member", "does the automaton accept the regular tree");
  aut_member->add_option("automaton", file)->required();
  aut_member->add_option("tree", file2)->required();
  aut_member->callback([&] {
    action = [&] {
      auto a = run.load(file);
      auto t = run.load(file2);
      int yes = 0;
      run.check(pi_aut_member(a.get(), t.get(), &yes));
      std::cout << (yes ? "accepted\n" : "rejected\n");
      return yes ? kOk : kNegative;
    };
  });
  auto* aut_compose = aut->add_subcommand("compose", "automaton of index J for Reg_J^n on the acceptance games");
  aut_compose->add_option("automaton", file)->required();
  aut_compose->add_option("-J,--index", index);
  aut_compose->add_option("-n", n);
  aut_compose->callback([&] {
    action = [&] {
      auto a = run.load(file);
      std::uint32_t lo, hi;
      parse_index(index, lo, hi);
      const pi_options o = run.options();
      pi_object* out = nullptr;
      run.check(pi_aut_compose(a.get(), lo, hi, n, &o, &out));
      run.emit(hold(out).get());
      return kOk;
    };
  });
  auto* aut_guide = aut->add_subcommand("guide", "n-bound check of a guided run against its guide");
  aut_guide->add_option("a", file)->required();
  aut_guide->add_option("b", file2)->required();
  aut_guide->add_option("guide", file3)->required();
  aut_guide->add_option("tree", file4)->required();
  aut_guide->callback([&] {
    action = [&] {
      auto a = run.load(file);
      auto b = run.load(file2);
      auto gd = run.load(file3);
      auto t = run.load(file4);
      pi_object* out = nullptr;
      run.check(pi_aut_guide(a.get(), b.get(), gd.get(), t.get(), &out));
      auto r = hold(out);
      run.emit(r.get());
      return run.field(r.get(), "bounded") ? kOk : kNegative;
    };
  });

  pi_gen_params gp;
  pi_gen_params_default(&gp);
  std::string kind = "game", only;
  std::string jgen = "1,4";
  auto* lab = app.add_subcommand("lab", "random instances and the theorem battery");
  lab->require_subcommand(1);
  lab->fallthrough();
  auto* lab_random = lab->add_subcommand("random", "random instance");
  lab_random->add_option("kind", kind, "game, even-graph, planted or pair")
      ->check(CLI::IsMember({"game", "even-graph", "planted", "pair"}));
  lab_random->add_option("--vertices", gp.vertex_count);
  lab_random->add_option("--priority-cap", gp.priority_cap);
  lab_random->add_option("--density", gp.edge_density);
  lab_random->add_option("-J,--index", jgen);
  lab_random->add_option("-n", gp.counter_bound);
  lab_random->callback([&] {
    action = [&] {
      gp.seed = g.seed;
      parse_index(jgen, gp.j_lo, gp.j_hi);
      pi_object* out = nullptr;
      run.check(pi_lab_random(kind.c_str(), &gp, &out));
      run.emit(hold(out).get());
      return kOk;
    };
  });
  auto* lab_battery = lab->add_subcommand("battery", "run the theorem battery");
  lab_battery->add_option("--instances", gp.instance_count, "per-check instance cap");
  lab_battery->add_option("--check", only, "run a single check");
  lab_battery->add_flag("--mutate", "disable counter resets (mutation experiment)");
  lab_battery->callback([&] {
    action = [&] {
      gp.seed = g.seed;
      gp.reset = lab_battery->count("--mutate") ? PI_RESET_NEVER
                                                : (g.reset_rule == "literal" ? PI_RESET_LITERAL : PI_RESET_LIBERAL);
      if (g.cap_states) gp.cap_states = g.cap_states;
      pi_object* report = nullptr;
      char* table = nullptr;
      run.check(pi_lab_battery(&gp, only.c_str(), &report, &table));
      auto r = hold(report);
      std::cout << table;
      pi_free_string(table);
      if (!g.output.empty()) run.check(pi_save_file(r.get(), g.output.c_str()));
      return run.field(r.get(), "passed") ? kOk : kNegative;
    };
  });

  auto* convert = app.add_subcommand("convert", "re-emit an object in another format");
  convert->add_option("input", file)->required();
  convert->callback([&] {
    action = [&] {
      auto in = run.load(file);
      run.emit(in.get());
      return kOk;
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }
  try {
    return action ? action() : kUsage;
  } catch (const Failure& f) {
    return f.code;
  }
}
