#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "parindex/types.hpp"

namespace parindex {

/// Finite ordered tree; a node with no children is the leaf <>.
struct OrderedTree {
  std::vector<OrderedTree> children;

  bool is_leaf() const { return children.empty(); }
  bool operator==(const OrderedTree&) const = default;

  static OrderedTree leaf() { return {}; }
  static OrderedTree node(std::vector<OrderedTree> kids) { return OrderedTree{std::move(kids)}; }
};

std::size_t depth(const OrderedTree& t);
std::size_t node_count(const OrderedTree& t);
std::size_t max_branching(const OrderedTree& t);

/// n-Strahler number; n >= 1.
std::size_t n_strahler(const OrderedTree& t, std::size_t n);

/// Image of every node of the embedded tree, as a child-index path in the host.
/// Nodes are listed in preorder of the embedded tree.
struct Embedding {
  std::vector<std::vector<std::size_t>> image;
};

std::optional<Embedding> embed(const OrderedTree& t, const OrderedTree& host);

/// Finite truncation of U_{n,k,d}: every omega-block is replaced by `width` copies.
OrderedTree universal_tree(std::size_t n, std::size_t k, std::size_t d, std::size_t width);

struct UniversalityResult {
  bool universal = true;
  std::optional<std::size_t> first_failure;  // index into the candidates
};

UniversalityResult is_universal_for(const OrderedTree& host, const std::vector<OrderedTree>& candidates);

/// All ordered trees with at most max_nodes nodes, depth <= max_depth and branching <= max_branch,
/// sorted by node count and then by bracket string.
std::vector<OrderedTree> enumerate_trees(std::size_t max_nodes, std::size_t max_depth, std::size_t max_branch);

/// Bracket form: leaf "()", node "(" + children + ")".
std::string to_brackets(const OrderedTree& t);
OrderedTree parse_brackets(std::string_view text);

}  // namespace parindex
