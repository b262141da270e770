#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <iterator>
#include <stdexcept>
#include <string>
#include <vector>

namespace parindex {

using VertexId = std::uint32_t;
using EdgeId = std::uint32_t;
using Priority = std::uint32_t;

inline constexpr EdgeId kNoEdge = static_cast<EdgeId>(-1);

enum class ErrorCode {
  InvalidArgument,
  TerminalVertex,
  StrategyEscapesRegion,
  UndefinedChoice,
  NotEven,
  PriorityOutOfRange,
  OverlappingParts,
  HypothesisViolated,
  StateExplosion,
  NotBounded,
  PreconditionFailed,
  InvalidDecomposition,
  AlphabetMismatch,
  IncompleteAutomaton,
  IncompatibleGuide,
  NoAcceptingRun,
  ExhaustedRetries,
  TooLarge,
  ParseError,
  DanglingSuccessor,
  EmptyGame,
  EmptyIndex,
  Undefined,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Contiguous priority range [lo, hi].
struct Index {
  Priority lo = 0;
  Priority hi = 0;

  bool contains(Priority p) const { return lo <= p && p <= hi; }
  bool operator==(const Index&) const = default;

  bool has_even() const { return lo < hi || lo % 2 == 0; }
  bool has_odd() const { return lo < hi || lo % 2 == 1; }
  Priority max_even() const { return hi % 2 == 0 ? hi : hi - 1; }
  Priority max_odd() const { return hi % 2 == 1 ? hi : hi - 1; }
  Priority min_odd() const { return lo % 2 == 1 ? lo : lo + 1; }
  std::vector<Priority> odd_values() const;
  std::vector<Priority> even_values() const;
};

Index make_index(Priority lo, Priority hi);

struct VertexTag {};
struct EdgeTag {};

/// Dense membership set over a fixed id universe [0, universe).
template <class Tag>
class IdSet {
 public:
  IdSet() = default;
  explicit IdSet(std::size_t universe) : bits_(universe, false) {}

  static IdSet full(std::size_t universe) {
    IdSet s;
    s.bits_.assign(universe, true);
    s.count_ = universe;
    return s;
  }

  template <class Range>
  static IdSet of(std::size_t universe, const Range& ids) {
    IdSet s(universe);
    for (auto id : ids) s.insert(static_cast<std::uint32_t>(id));
    return s;
  }

  std::size_t universe() const { return bits_.size(); }
  std::size_t size() const { return count_; }
  bool empty() const { return count_ == 0; }

  bool contains(std::uint32_t id) const { return id < bits_.size() && bits_[id]; }

  void insert(std::uint32_t id) {
    if (!bits_[id]) {
      bits_[id] = true;
      ++count_;
    }
  }
  void erase(std::uint32_t id) {
    if (id < bits_.size() && bits_[id]) {
      bits_[id] = false;
      --count_;
    }
  }

  std::vector<std::uint32_t> ids() const {
    std::vector<std::uint32_t> out;
    out.reserve(count_);
    for (std::uint32_t i = 0; i < bits_.size(); ++i)
      if (bits_[i]) out.push_back(i);
    return out;
  }

  IdSet& operator|=(const IdSet& o) {
    for (std::uint32_t i = 0; i < o.bits_.size(); ++i)
      if (o.bits_[i]) insert(i);
    return *this;
  }
  IdSet& operator-=(const IdSet& o) {
    for (std::uint32_t i = 0; i < o.bits_.size(); ++i)
      if (o.bits_[i]) erase(i);
    return *this;
  }
  IdSet& operator&=(const IdSet& o) {
    for (std::uint32_t i = 0; i < bits_.size(); ++i)
      if (bits_[i] && !o.contains(i)) erase(i);
    return *this;
  }
  friend IdSet operator|(IdSet a, const IdSet& b) { return a |= b; }
  friend IdSet operator-(IdSet a, const IdSet& b) { return a -= b; }
  friend IdSet operator&(IdSet a, const IdSet& b) { return a &= b; }

  bool subset_of(const IdSet& o) const {
    for (std::uint32_t i = 0; i < bits_.size(); ++i)
      if (bits_[i] && !o.contains(i)) return false;
    return true;
  }
  bool intersects(const IdSet& o) const {
    for (std::uint32_t i = 0; i < bits_.size(); ++i)
      if (bits_[i] && o.contains(i)) return true;
    return false;
  }

  bool operator==(const IdSet& o) const {
    if (count_ != o.count_) return false;
    std::size_t n = std::max(bits_.size(), o.bits_.size());
    for (std::uint32_t i = 0; i < n; ++i)
      if (contains(i) != o.contains(i)) return false;
    return true;
  }

  class iterator {
   public:
    using iterator_category = std::forward_iterator_tag;
    using value_type = std::uint32_t;
    using difference_type = std::ptrdiff_t;
    using pointer = const std::uint32_t*;
    using reference = std::uint32_t;

    iterator() = default;
    iterator(const std::vector<bool>* bits, std::uint32_t pos) : bits_(bits), pos_(pos) { skip(); }
    std::uint32_t operator*() const { return pos_; }
    iterator& operator++() {
      ++pos_;
      skip();
      return *this;
    }
    iterator operator++(int) {
      iterator t = *this;
      ++*this;
      return t;
    }
    bool operator==(const iterator& o) const { return pos_ == o.pos_; }

   private:
    void skip() {
      while (pos_ < bits_->size() && !(*bits_)[pos_]) ++pos_;
    }
    const std::vector<bool>* bits_ = nullptr;
    std::uint32_t pos_ = 0;
  };

  iterator begin() const { return iterator(&bits_, 0); }
  iterator end() const { return iterator(&bits_, static_cast<std::uint32_t>(bits_.size())); }

 private:
  std::vector<bool> bits_;
  std::size_t count_ = 0;
};

using VertexSet = IdSet<VertexTag>;
using EdgeSet = IdSet<EdgeTag>;

}  // namespace parindex
