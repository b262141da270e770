#include "parindex/transduction.hpp"

#include <algorithm>
#include <deque>
#include <string>
#include <unordered_map>

namespace parindex {

RegMachine::RegMachine(Priority input_max, Index j, std::size_t n, ResetRule reset) : n_(n), reset_(reset) {
  if (n > 250) throw Error(ErrorCode::TooLarge, "counter bound above 250");
  int shift = 0;
  Priority lo = j.lo, hi = j.hi;
  while (lo > 2) {
    lo -= 2;
    hi -= 2;
    shift += 2;
  }
  if (lo == 0) {
    lo += 2;
    hi += 2;
    shift = -2;
  }
  j_index_ = Index{lo, hi};
  j_shift_ = shift;
  i_index_ = Index{0, input_max};
  register_count_ = hi / 2 + 1;
  odd_i_ = i_index_.odd_values();
  initial_.registers.assign(register_count_, i_index_.max_even());
  initial_.counters.assign(odd_i_.size() * register_count_, 0);
}

std::size_t RegMachine::counter_slot(Priority odd, std::size_t reg) const {
  auto a = static_cast<std::size_t>(std::lower_bound(odd_i_.begin(), odd_i_.end(), odd) - odd_i_.begin());
  return a * register_count_ + reg;
}

RegMachine::Output RegMachine::output(const RegConfig& c, std::size_t j) const {
  Output out{0, false, c};
  if (j == 0) {
    out.w = 1;
  } else if (c.registers[j] % 2 == 0) {
    out.w = static_cast<Priority>(2 * j);
  } else {
    auto& counter = out.after.counters[counter_slot(c.registers[j], j)];
    if (counter == n_) {
      counter = 0;
      out.w = static_cast<Priority>(2 * j + 1);
      out.instant_loss = out.w > j_index_.hi;
    } else {
      ++counter;
      out.w = static_cast<Priority>(2 * j);
    }
  }
  return out;
}

void RegMachine::update(RegConfig& c, std::size_t j, Priority i) const {
  const std::size_t regs = register_count_;
  switch (reset_) {
    case ResetRule::Liberal:
      for (std::size_t a = 0; a < odd_i_.size(); ++a) {
        if (odd_i_[a] < i)
          for (std::size_t r = 0; r < regs; ++r) c.counters[a * regs + r] = 0;
        for (std::size_t r = 0; r < j; ++r) c.counters[a * regs + r] = 0;
      }
      break;
    case ResetRule::Literal: {
      for (std::size_t a = 0; a < odd_i_.size(); ++a)
        if (odd_i_[a] < i) c.counters[a * regs + j] = 0;
      Priority old = c.registers[j];
      if (old % 2 == 1)
        for (std::size_t r = 0; r < j; ++r) c.counters[counter_slot(old, r)] = 0;
      break;
    }
    case ResetRule::Never:
      break;
  }
  c.registers[j] = i;
  for (std::size_t r = j + 1; r < regs; ++r) c.registers[r] = std::max(i, c.registers[r]);
}

std::vector<Priority> RegMachine::sharp_choices(Priority label) const {
  if (label % 2 == 0) return {label};
  std::vector<Priority> out;
  for (Priority i = label; i <= i_index_.hi; i += 2) out.push_back(i);
  return out;
}

namespace {

class ProductBuilder {
 public:
  ProductBuilder(const ParityGame& input, Index j, std::size_t n, const RegOptions& options)
      : input_(input), options_(options), machine_(input.graph.index().hi, j, n, options.reset) {
    if (auto t = input.graph.terminal_vertices(); !t.empty())
      throw Error(ErrorCode::TerminalVertex, "vertex " + std::to_string(t.front()) + " has no successor");
    p_.j_index = machine_.j_index();
    p_.j_shift = machine_.j_shift();
    p_.i_index = machine_.i_index();
    p_.n = n;
    p_.has_r0 = machine_.has_r0();
    p_.register_count = machine_.register_count();
    p_.odd_i = machine_.odd_i();
  }

  RegProduct build() {
    const ParityGraph& g = input_.graph;
    RegVertex sink;
    sink.phase = RegPhase::Sink;
    p_.sink = add(std::move(sink), Player::Adam);
    edges_.push_back(Edge{p_.sink, p_.sink, 1});
    info_.push_back({});

    p_.initial.assign(g.vertex_universe(), kNoVertex);
    std::vector<VertexId> roots = options_.roots;
    if (roots.empty()) roots = g.vertices().ids();
    for (VertexId v : roots) {
      if (!g.has_vertex(v)) throw Error(ErrorCode::InvalidArgument, "root " + std::to_string(v) + " is not a vertex");
      p_.initial[v] = intern(RegVertex{RegPhase::Move, v, kNoEdge, machine_.initial(), -1});
    }
    while (!work_.empty()) {
      VertexId u = work_.front();
      work_.pop_front();
      expand(u);
    }
    Priority top = std::max<Priority>(p_.j_index.hi, 1);
    ParityGraph graph(p_.decode.size(), std::move(edges_), Index{0, top});
    p_.game = ParityGame(std::move(graph), std::move(owners_));
    p_.edge_info = std::move(info_);
    return std::move(p_);
  }

 private:
  void expand(VertexId u) {
    const ParityGraph& g = input_.graph;
    const RegVertex here = p_.decode[u];
    switch (here.phase) {
      case RegPhase::Sink:
        break;
      case RegPhase::Move:
        g.for_each_out(here.base, [&](EdgeId e) {
          VertexId t = intern(RegVertex{RegPhase::Choice, g.edge(e).target, e, here.config, -1});
          link(u, t, 0, {});
        });
        break;
      case RegPhase::Choice: {
        const Priority le = g.priority(here.edge);
        for (std::size_t j = machine_.first_register(); j < machine_.register_count(); ++j) {
          RegMachine::Output out = machine_.output(here.config, j);
          if (out.instant_loss) {
            link(u, p_.sink, 0, RegEdgeInfo{static_cast<int>(j), 0, true});
          } else if (le % 2 == 0) {
            machine_.update(out.after, j, le);
            VertexId t = intern(RegVertex{RegPhase::Move, here.base, kNoEdge, std::move(out.after), -1});
            link(u, t, out.w, RegEdgeInfo{static_cast<int>(j), le, false});
          } else {
            VertexId t =
                intern(RegVertex{RegPhase::Sharp, here.base, here.edge, std::move(out.after), static_cast<int>(j)});
            link(u, t, out.w, RegEdgeInfo{static_cast<int>(j), 0, false});
          }
        }
        break;
      }
      case RegPhase::Sharp: {
        for (Priority i : machine_.sharp_choices(g.priority(here.edge))) {
          RegConfig c = here.config;
          machine_.update(c, static_cast<std::size_t>(here.reg), i);
          VertexId t = intern(RegVertex{RegPhase::Move, here.base, kNoEdge, std::move(c), -1});
          link(u, t, 0, RegEdgeInfo{here.reg, i, false});
        }
        break;
      }
    }
  }

  std::string key(const RegVertex& v) const {
    std::string k;
    k.reserve(16 + v.config.registers.size() + v.config.counters.size());
    k.push_back(static_cast<char>(v.phase));
    auto put32 = [&](std::uint32_t x) {
      for (int s = 0; s < 32; s += 8) k.push_back(static_cast<char>((x >> s) & 0xff));
    };
    put32(v.base);
    put32(v.edge);
    put32(static_cast<std::uint32_t>(v.reg));
    for (Priority r : v.config.registers) put32(r);
    for (auto c : v.config.counters) k.push_back(static_cast<char>(c));
    return k;
  }

  VertexId intern(RegVertex v) {
    auto [it, fresh] = ids_.try_emplace(key(v), static_cast<VertexId>(p_.decode.size()));
    if (!fresh) return it->second;
    Player owner = v.phase == RegPhase::Move ? input_.owner_of(v.base) : Player::Eve;
    VertexId id = add(std::move(v), owner);
    work_.push_back(id);
    return id;
  }

  VertexId add(RegVertex v, Player owner) {
    if (p_.decode.size() >= options_.cap)
      throw Error(ErrorCode::StateExplosion, "transduction product exceeds " + std::to_string(options_.cap) + " vertices");
    p_.decode.push_back(std::move(v));
    owners_.push_back(owner);
    return static_cast<VertexId>(p_.decode.size() - 1);
  }

  void link(VertexId from, VertexId to, Priority w, RegEdgeInfo info) {
    edges_.push_back(Edge{from, to, w});
    info_.push_back(info);
  }

  const ParityGame& input_;
  const RegOptions& options_;
  RegMachine machine_;
  RegProduct p_;
  std::unordered_map<std::string, VertexId> ids_;
  std::deque<VertexId> work_;
  std::vector<Edge> edges_;
  std::vector<RegEdgeInfo> info_;
  std::vector<Player> owners_;
};

}  // namespace

RegProduct reg_product(const ParityGame& input, Index j, std::size_t n, const RegOptions& options) {
  return ProductBuilder(input, j, n, options).build();
}

RegProduct reg_product(const ParityGraph& input, Index j, std::size_t n, const RegOptions& options) {
  return reg_product(adam_only(input), j, n, options);
}

bool eve_wins_reg(const ParityGame& input, Index j, std::size_t n, VertexId from, const RegOptions& options) {
  RegOptions o = options;
  o.roots = {from};
  RegProduct p = reg_product(input, j, n, o);
  Solution s = solve(p.game);
  return s.eve_region.contains(p.initial[from]);
}

bool eve_wins_reg(const ParityGraph& input, Index j, std::size_t n, VertexId from, const RegOptions& options) {
  return eve_wins_reg(adam_only(input), j, n, from, options);
}

BoundCheck n_bound_check(const LabellingPair& pair, std::size_t n) {
  const ParityGraph& g = pair.graph;
  const std::size_t layers = n + 2;
  auto state = [&](VertexId v, std::size_t k, int fi, int fj) { return ((v * layers + k) * 2 + fi) * 2 + fj; };
  const std::size_t total = g.vertex_universe() * layers * 4;
  for (Priority i : pair.index_i.odd_values()) {
    for (Priority j : pair.index_j.even_values()) {
      struct Via {
        std::size_t from;
        EdgeId edge;
        bool cut;
      };
      std::vector<char> seen(total, 0);
      std::vector<Via> via(total, Via{0, kNoEdge, false});
      std::deque<std::size_t> queue;
      for (VertexId v : g.vertices()) {
        std::size_t s = state(v, 0, 0, 0);
        seen[s] = 1;
        queue.push_back(s);
      }
      std::optional<std::size_t> goal;
      while (!queue.empty() && !goal) {
        std::size_t s = queue.front();
        queue.pop_front();
        const int fj = static_cast<int>(s % 2), fi = static_cast<int>((s / 2) % 2);
        const std::size_t k = (s / 4) % layers;
        const VertexId v = static_cast<VertexId>(s / 4 / layers);
        for (EdgeId e : g.out_all(v)) {
          if (!g.has_edge(e) || pair.label_i[e] > i || pair.label_j[e] > j) continue;
          VertexId w = g.edge(e).target;
          int ni = fi | (pair.label_i[e] == i), nj = fj | (pair.label_j[e] == j);
          auto visit = [&](std::size_t t, bool cut) {
            if (seen[t]) return;
            seen[t] = 1;
            via[t] = Via{s, e, cut};
            queue.push_back(t);
          };
          visit(state(w, k, ni, nj), false);
          if (ni && nj) {
            std::size_t t = state(w, k + 1, 0, 0);
            if (k + 1 == n + 1) {
              if (!seen[t]) {
                seen[t] = 1;
                via[t] = Via{s, e, true};
              }
              goal = t;
              break;
            }
            visit(t, true);
          }
        }
      }
      if (!goal) continue;
      SegmentedPath path{i, j, {}};
      std::vector<std::pair<EdgeId, bool>> steps;
      for (std::size_t s = *goal; via[s].edge != kNoEdge; s = via[s].from) steps.emplace_back(via[s].edge, via[s].cut);
      std::reverse(steps.begin(), steps.end());
      std::vector<EdgeId> current;
      for (auto [e, cut] : steps) {
        current.push_back(e);
        if (cut) {
          path.segments.push_back(std::move(current));
          current.clear();
        }
      }
      return {false, std::move(path)};
    }
  }
  return {true, std::nullopt};
}

VertexSet strategy_closure(const ParityGame& game, const PositionalStrategy& sigma, const std::vector<VertexId>& from) {
  const ParityGraph& g = game.graph;
  VertexSet seen(g.vertex_universe());
  std::vector<VertexId> work;
  for (VertexId v : from)
    if (g.has_vertex(v) && !seen.contains(v)) {
      seen.insert(v);
      work.push_back(v);
    }
  auto push = [&](VertexId w) {
    if (!seen.contains(w)) {
      seen.insert(w);
      work.push_back(w);
    }
  };
  while (!work.empty()) {
    VertexId v = work.back();
    work.pop_back();
    if (game.owner_of(v) == Player::Eve && sigma.defined(v)) {
      push(g.edge(sigma.choice(v)).target);
    } else {
      g.for_each_out(v, [&](EdgeId e) { push(g.edge(e).target); });
    }
  }
  return seen;
}

std::string describe(const RegProduct& p, VertexId v) {
  const RegVertex& d = p.decode.at(v);
  static const char* names[] = {"move", "choice", "sharp", "sink"};
  std::string s = names[static_cast<int>(d.phase)];
  if (d.phase == RegPhase::Sink) return s;
  s += " q=" + std::to_string(d.base);
  if (d.edge != kNoEdge) s += " e=" + std::to_string(d.edge);
  if (d.reg >= 0) s += " j=" + std::to_string(d.reg);
  s += " r=[";
  for (std::size_t j = 0; j < d.config.registers.size(); ++j) {
    if (j == 0 && !p.has_r0) continue;
    s += std::to_string(d.config.registers[j]);
    if (j + 1 < d.config.registers.size()) s += ",";
  }
  s += "] c=[";
  for (std::size_t a = 0; a < d.config.counters.size(); ++a) {
    s += std::to_string(d.config.counters[a]);
    if (a + 1 < d.config.counters.size()) s += ",";
  }
  return s + "]";
}

}  // namespace parindex
