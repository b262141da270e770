#pragma once

#include <optional>
#include <string>
#include <vector>

#include "parindex/decomposition.hpp"
#include "parindex/games.hpp"

namespace parindex {

/// How counters are reset after a round (see reg_product).
enum class ResetRule : std::uint8_t {
  Liberal,  // priority i clears c[i'<i][all j]; register j clears c[all i'][j'<j]
  Literal,  // priority i clears c[i'<i][j]; register j clears c[old r_j][j'<j]
  Never,    // no resets besides overflow; only for mutation experiments
};

struct RegOptions {
  ResetRule reset = ResetRule::Liberal;
  std::size_t cap = 2'000'000;
  /// Base vertices whose initial configuration is built; empty means every vertex.
  std::vector<VertexId> roots;
};

/// Register file and counters of one configuration.
struct RegConfig {
  std::vector<Priority> registers;      // indexed by register number j (slot 0 unused when r_0 is absent)
  std::vector<std::uint8_t> counters;   // counters[a * registers.size() + j] for the a-th odd priority of I

  bool operator==(const RegConfig&) const = default;
};

/// Register and counter dynamics of Reg_J^n over input priorities in [0, input_max].
class RegMachine {
 public:
  RegMachine(Priority input_max, Index j, std::size_t n, ResetRule reset);

  struct Output {
    Priority w = 0;
    bool instant_loss = false;
    RegConfig after;
  };

  const RegConfig& initial() const { return initial_; }
  Index j_index() const { return j_index_; }
  int j_shift() const { return j_shift_; }
  Index i_index() const { return i_index_; }
  std::size_t n() const { return n_; }
  bool has_r0() const { return j_index_.lo == 1; }
  std::size_t register_count() const { return register_count_; }
  std::size_t first_register() const { return has_r0() ? 0 : 1; }
  const std::vector<Priority>& odd_i() const { return odd_i_; }

  /// Output produced by picking register j, with the counter bookkeeping it causes.
  Output output(const RegConfig& c, std::size_t j) const;
  /// Counter resets and register updates after processing priority i with register j.
  void update(RegConfig& c, std::size_t j, Priority i) const;
  /// Values Eve may process for an edge label: the label itself if even, else every odd value >= label.
  std::vector<Priority> sharp_choices(Priority label) const;

 private:
  std::size_t counter_slot(Priority odd, std::size_t reg) const;

  Index j_index_;
  int j_shift_ = 0;
  Index i_index_;
  std::size_t n_ = 0;
  ResetRule reset_;
  std::size_t register_count_ = 0;
  std::vector<Priority> odd_i_;
  RegConfig initial_;
};

enum class RegPhase : std::uint8_t { Move, Choice, Sharp, Sink };

struct RegVertex {
  RegPhase phase = RegPhase::Move;
  VertexId base = 0;       // current base vertex (Move) or target of the pending edge
  EdgeId edge = kNoEdge;   // pending base edge (Choice, Sharp)
  RegConfig config;
  int reg = -1;            // register chosen (Sharp)
};

/// Per product edge: which register (Choice edges) or which odd i (Sharp edges) it stands for.
struct RegEdgeInfo {
  int reg = -1;
  Priority sharp = 0;
  bool instant_loss = false;
};

struct RegProduct {
  ParityGame game;
  std::vector<RegVertex> decode;
  std::vector<RegEdgeInfo> edge_info;
  Index j_index;            // normalized output index
  int j_shift = 0;          // amount subtracted from the requested J (negative when J started at 0)
  Index i_index;            // effective input index [0, max]
  std::size_t n = 0;
  bool has_r0 = false;
  std::size_t register_count = 0;   // registers are numbered 0 .. register_count-1
  std::vector<Priority> odd_i;      // counter rows
  std::vector<VertexId> initial;    // per base vertex; kNoVertex when not built
  VertexId sink = 0;
};

inline constexpr VertexId kNoVertex = static_cast<VertexId>(-1);

RegProduct reg_product(const ParityGame& input, Index j, std::size_t n, const RegOptions& options = {});
RegProduct reg_product(const ParityGraph& input, Index j, std::size_t n, const RegOptions& options = {});

bool eve_wins_reg(const ParityGame& input, Index j, std::size_t n, VertexId from, const RegOptions& options = {});
bool eve_wins_reg(const ParityGraph& input, Index j, std::size_t n, VertexId from, const RegOptions& options = {});

/// n+1 consecutive segments whose label_i maximum is i and label_j maximum is j.
struct SegmentedPath {
  Priority i = 0;
  Priority j = 0;
  std::vector<std::vector<EdgeId>> segments;
};

struct BoundCheck {
  bool bounded = true;
  std::optional<SegmentedPath> counterexample;
};

BoundCheck n_bound_check(const LabellingPair& pair, std::size_t n);

class NotBoundedError : public Error {
 public:
  NotBoundedError(const std::string& what, SegmentedPath path)
      : Error(ErrorCode::NotBounded, what), path_(std::move(path)) {}
  const SegmentedPath& counterexample() const { return path_; }

 private:
  SegmentedPath path_;
};

struct RegStrategy {
  RegProduct product;
  PositionalStrategy strategy;   // over product vertices
  VertexSet region;              // product vertices reachable from the initial ones under the strategy
  bool verified = false;
  std::size_t registers_used = 0;  // h for synth_from_ad
};

/// Eve strategy in Reg_J^{n+1} on the label_i view: register floor(label_j/2), sharp choice label_i.
RegStrategy strategy_from_bounded_pair(const LabellingPair& pair, std::size_t n, const RegOptions& options = {});

/// Eve strategy in Reg_[1,2h]^{n+1}(g), h the n-Strahler number of the decomposition's shape.
RegStrategy synth_from_ad(const ParityGraph& g, const AttractorDecomposition& d, std::size_t n,
                          const RegOptions& options = {});

/// Vertices reachable from `from` when the owner of each Eve vertex follows sigma.
VertexSet strategy_closure(const ParityGame& game, const PositionalStrategy& sigma, const std::vector<VertexId>& from);

std::string describe(const RegProduct& p, VertexId v);

}  // namespace parindex
