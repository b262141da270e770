#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "parindex/lab.hpp"

using namespace parindex;

namespace {

// The tree drawn in the Strahler figure: depth 4, five root children.
const char* kFigure = "(((())(())())((()()()))(()())(()(()()()))((()())(()())))";

OrderedTree complete(std::size_t arity, std::size_t levels) {
  if (levels <= 1) return OrderedTree::leaf();
  return OrderedTree::node(std::vector<OrderedTree>(arity, complete(arity, levels - 1)));
}

}  // namespace

TEST_CASE("depth") {
  CHECK(depth(OrderedTree::leaf()) == 1);
  CHECK(depth(parse_brackets("(())")) == 2);
  CHECK(depth(parse_brackets(kFigure)) == 4);
}

TEST_CASE("Strahler numbers of fixed trees") {
  CHECK(n_strahler(OrderedTree::leaf(), 1) == 1);
  for (std::size_t h = 1; h <= 5; ++h) CHECK(n_strahler(complete(2, h), 1) == h);
  const OrderedTree fig = parse_brackets(kFigure);
  CHECK(n_strahler(fig, 2) == 3);
  CHECK(n_strahler(fig, 3) == 2);
  CHECK(oracle::strahler_by_minors(fig, 2) == 3);
}

TEST_CASE("Strahler number agrees with the minor characterisation") {
  for (const OrderedTree& t : enumerate_trees(9, 5, 4))
    for (std::size_t n = 1; n <= 3; ++n) {
      const std::size_t s = n_strahler(t, n);
      CHECK(s == oracle::strahler_by_minors(t, n));
      CHECK(s <= depth(t));
      CHECK(n_strahler(t, n + 1) <= s);
    }
}

TEST_CASE("embedding small cases") {
  const OrderedTree t = parse_brackets("((())())");
  auto self = embed(t, t);
  REQUIRE(self);
  CHECK(self->image.size() == node_count(t));
  CHECK(self->image[0].empty());
  CHECK(self->image[1] == std::vector<std::size_t>{0});
  CHECK(self->image[2] == std::vector<std::size_t>{0, 0});
  CHECK(self->image[3] == std::vector<std::size_t>{1});
  CHECK_FALSE(embed(parse_brackets("(()())"), parse_brackets("(())")));
}

TEST_CASE("embedding agrees with exhaustive search and embedding counts") {
  const auto small = enumerate_trees(6, 4, 3);
  const auto hosts = enumerate_trees(8, 4, 4);
  for (const auto& t : small)
    for (const auto& h : hosts) {
      const bool e = embed(t, h).has_value();
      CHECK(e == embeds_exhaustive(t, h));
      CHECK(e == (oracle::count_embeddings(t, h) > 0));
      if (e)
        for (std::size_t n = 1; n <= 2; ++n) CHECK(n_strahler(t, n) <= n_strahler(h, n));
    }
}

TEST_CASE("embedding is transitive") {
  const auto pool = enumerate_trees(6, 4, 3);
  std::mt19937_64 rng(43);
  std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
  for (int round = 0; round < 3000; ++round) {
    const auto& a = pool[pick(rng)];
    const auto& b = pool[pick(rng)];
    const auto& c = pool[pick(rng)];
    if (embed(a, b) && embed(b, c)) CHECK(embed(a, c));
  }
}

TEST_CASE("universal trees") {
  CHECK(universal_tree(2, 1, 1, 3) == OrderedTree::leaf());
  CHECK_THROWS_AS(universal_tree(1, 3, 2, 2), Error);
  const OrderedTree u = universal_tree(2, 2, 2, 3);
  CHECK(n_strahler(u, 2) == 2);
  CHECK(depth(u) == 2);

  for (std::size_t n = 1; n <= 2; ++n)
    for (std::size_t d = 1; d <= 3; ++d)
      for (std::size_t k = 1; k <= d; ++k)
        for (std::size_t w = 1; w <= 3; ++w) {
          std::vector<OrderedTree> family;
          for (const auto& t : enumerate_trees(1 + w + w * w, d, w))
            if (n_strahler(t, n) <= k) family.push_back(t);
          const OrderedTree host = universal_tree(n, k, d, w);
          CHECK(is_universal_for(host, family).universal);
          CHECK(n_strahler(host, n) <= k);
        }
}

TEST_CASE("universality against trivial candidate sets") {
  CHECK(is_universal_for(parse_brackets("(()())"), {OrderedTree::leaf()}).universal);
  UniversalityResult r = is_universal_for(OrderedTree::leaf(), {OrderedTree::leaf(), parse_brackets("(())")});
  CHECK_FALSE(r.universal);
  REQUIRE(r.first_failure);
  CHECK(*r.first_failure == 1);
}

TEST_CASE("tree enumeration counts") {
  CHECK(enumerate_trees(1, 5, 5).size() == 1);
  const auto three = enumerate_trees(3, 2, 2);
  REQUIRE(three.size() == 3);
  CHECK(to_brackets(three[0]) == "()");
  CHECK(to_brackets(three[1]) == "(())");
  CHECK(to_brackets(three[2]) == "(()())");

  // ordered trees with exactly m nodes number Catalan(m-1)
  for (std::size_t m = 1; m <= 9; ++m) {
    std::size_t exact = 0;
    for (const auto& t : enumerate_trees(m, m, m))
      if (node_count(t) == m) ++exact;
    CHECK(exact == oracle::catalan(m - 1));
  }
}

TEST_CASE("bracket round trip and malformed input") {
  for (const auto& t : enumerate_trees(7, 7, 7)) CHECK(parse_brackets(to_brackets(t)) == t);
  CHECK_THROWS_AS(parse_brackets("(()"), Error);
  CHECK_THROWS_AS(parse_brackets("()x"), Error);
}
