#include "parindex/ordered_tree.hpp"

#include <algorithm>
#include <functional>
#include <cctype>
#include <utility>

namespace parindex {

std::size_t depth(const OrderedTree& t) {
  std::size_t d = 0;
  for (const auto& c : t.children) d = std::max(d, depth(c));
  return d + 1;
}

std::size_t node_count(const OrderedTree& t) {
  std::size_t n = 1;
  for (const auto& c : t.children) n += node_count(c);
  return n;
}

std::size_t max_branching(const OrderedTree& t) {
  std::size_t b = t.children.size();
  for (const auto& c : t.children) b = std::max(b, max_branching(c));
  return b;
}

std::size_t n_strahler(const OrderedTree& t, std::size_t n) {
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "n-Strahler number needs n >= 1");
  if (t.is_leaf()) return 1;
  std::size_t m = 0, at_max = 0;
  for (const auto& c : t.children) {
    std::size_t s = n_strahler(c, n);
    if (s > m) {
      m = s;
      at_max = 1;
    } else if (s == m) {
      ++at_max;
    }
  }
  return at_max >= n + 1 ? m + 1 : m;
}

namespace {

bool embeds(const OrderedTree& t, const OrderedTree& host) {
  // Greedy: each child of t takes the leftmost host child that still fits. If some
  // valid embedding maps child k further right, moving it to the leftmost fitting
  // slot leaves every later child at least as many options, so greedy never loses.
  std::size_t next = 0;
  for (const auto& c : t.children) {
    while (next < host.children.size() && !embeds(c, host.children[next])) ++next;
    if (next == host.children.size()) return false;
    ++next;
  }
  return true;
}

void record(const OrderedTree& t, const OrderedTree& host, std::vector<std::size_t>& path, Embedding& out) {
  out.image.push_back(path);
  std::size_t next = 0;
  for (const auto& c : t.children) {
    while (!embeds(c, host.children[next])) ++next;
    path.push_back(next);
    record(c, host.children[next], path, out);
    path.pop_back();
    ++next;
  }
}

std::optional<OrderedTree> universal(std::size_t n, std::size_t k, std::size_t d, std::size_t block) {
  if (k == 0 || d < k) return std::nullopt;
  if (k == 1 && d == 1) return OrderedTree::leaf();
  auto low = universal(n, k - 1, d - 1, block);
  auto same = universal(n, k, d - 1, block);
  OrderedTree t;
  auto add_block = [&] {
    if (low)
      for (std::size_t c = 0; c < block; ++c) t.children.push_back(*low);
  };
  add_block();
  for (std::size_t r = 0; r < n; ++r) {
    if (same) t.children.push_back(*same);
    add_block();
  }
  return t;
}

void brackets(const OrderedTree& t, std::string& out) {
  out.push_back('(');
  for (const auto& c : t.children) brackets(c, out);
  out.push_back(')');
}

}  // namespace

std::optional<Embedding> embed(const OrderedTree& t, const OrderedTree& host) {
  if (!embeds(t, host)) return std::nullopt;
  Embedding e;
  std::vector<std::size_t> path;
  record(t, host, path, e);
  return e;
}

OrderedTree universal_tree(std::size_t n, std::size_t k, std::size_t d, std::size_t width) {
  if (n == 0 || width == 0) throw Error(ErrorCode::InvalidArgument, "n and width must be positive");
  // Blocks hold at least n+1 copies so that a block on its own lifts the Strahler number.
  auto t = universal(n, k, d, std::max(width, n + 1));
  if (!t)
    throw Error(ErrorCode::Undefined, "U(" + std::to_string(n) + "," + std::to_string(k) + "," + std::to_string(d) +
                                          ") is undefined");
  return *t;
}

UniversalityResult is_universal_for(const OrderedTree& host, const std::vector<OrderedTree>& candidates) {
  for (std::size_t i = 0; i < candidates.size(); ++i)
    if (!embeds(candidates[i], host)) return {false, i};
  return {true, std::nullopt};
}

std::vector<OrderedTree> enumerate_trees(std::size_t max_nodes, std::size_t max_depth, std::size_t max_branch) {
  // exact[d][m]: trees with exactly m nodes and depth <= d.
  std::vector<std::vector<std::vector<OrderedTree>>> exact(max_depth + 1,
                                                           std::vector<std::vector<OrderedTree>>(max_nodes + 1));
  for (std::size_t d = 1; d <= max_depth; ++d) {
    // forests[m][b]: sequences of b trees of depth <= d-1 with m nodes in total.
    std::vector<std::vector<std::vector<std::vector<OrderedTree>>>> forests(
        max_nodes + 1, std::vector<std::vector<std::vector<OrderedTree>>>(max_branch + 1));
    forests[0][0].push_back({});
    for (std::size_t b = 1; b <= max_branch && d >= 2; ++b)
      for (std::size_t m = 1; m < max_nodes; ++m)
        for (std::size_t first = 1; first <= m; ++first)
          for (const auto& head : exact[d - 1][first])
            for (const auto& rest : forests[m - first][b - 1]) {
              std::vector<OrderedTree> f;
              f.push_back(head);
              f.insert(f.end(), rest.begin(), rest.end());
              forests[m][b].push_back(std::move(f));
            }
    for (std::size_t m = 1; m <= max_nodes; ++m)
      for (std::size_t b = 0; b <= max_branch; ++b)
        for (const auto& f : forests[m - 1][b]) exact[d][m].push_back(OrderedTree::node(f));
  }
  std::vector<OrderedTree> out;
  for (std::size_t m = 1; m <= max_nodes; ++m)
    for (const auto& t : exact[max_depth][m]) out.push_back(t);
  std::stable_sort(out.begin(), out.end(), [](const OrderedTree& a, const OrderedTree& b) {
    auto na = node_count(a), nb = node_count(b);
    if (na != nb) return na < nb;
    return to_brackets(a) < to_brackets(b);
  });
  return out;
}

std::string to_brackets(const OrderedTree& t) {
  std::string s;
  brackets(t, s);
  return s;
}

OrderedTree parse_brackets(std::string_view text) {
  std::size_t pos = 0;
  std::function<OrderedTree()> parse = [&]() -> OrderedTree {
    if (pos >= text.size() || text[pos] != '(')
      throw Error(ErrorCode::ParseError, "expected '(' at offset " + std::to_string(pos));
    ++pos;
    OrderedTree t;
    while (pos < text.size() && text[pos] == '(') t.children.push_back(parse());
    if (pos >= text.size() || text[pos] != ')')
      throw Error(ErrorCode::ParseError, "expected ')' at offset " + std::to_string(pos));
    ++pos;
    return t;
  };
  while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  OrderedTree t = parse();
  while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  if (pos != text.size()) throw Error(ErrorCode::ParseError, "trailing input at offset " + std::to_string(pos));
  return t;
}

}  // namespace parindex
