#include <doctest.h>

#include <cstring>
#include <string>

#include "parindex/parindex.h"

namespace {

const char* kOddLoop =
    R"({"format":"parindex","version":1,"kind":"graph","payload":{"vertices":1,"index":[0,1],"edges":[[0,0,1]]}})";
const char* kEvenGame =
    R"({"format":"parindex","version":1,"kind":"game","payload":{"vertices":2,"index":[0,2],)"
    R"("edges":[[0,1,1],[1,0,2],[0,0,1]],"owners":["eve","adam"]}})";

pi_object* parse(const char* text) {
  pi_object* o = nullptr;
  REQUIRE(pi_parse(text, &o) == PI_OK);
  return o;
}

}  // namespace

TEST_CASE("status names and errors") {
  CHECK(std::string(pi_status_name(PI_OK)) == "Ok");
  CHECK(std::string(pi_status_name(PI_NOT_EVEN)) == "NotEven");
  pi_object* o = nullptr;
  CHECK(pi_parse("{", &o) == PI_PARSE_ERROR);
  CHECK(o == nullptr);
  CHECK(std::strlen(pi_last_error()) > 0);
  CHECK(pi_parse(nullptr, &o) == PI_INVALID_ARGUMENT);
  CHECK(std::strlen(pi_version()) > 0);
}

TEST_CASE("evenness through the C interface") {
  pi_object* g = parse(kOddLoop);
  CHECK(std::string(pi_kind(g)) == "graph");
  int even = 1;
  pi_object* lasso = nullptr;
  CHECK(pi_is_even(g, &even, &lasso) == PI_OK);
  CHECK(even == 0);
  REQUIRE(lasso != nullptr);
  CHECK(std::string(pi_kind(lasso)) == "lasso");
  pi_object* d = nullptr;
  CHECK(pi_ad_build(g, -1, &d) == PI_NOT_EVEN);
  CHECK(d == nullptr);
  pi_free(lasso);
  pi_free(g);
}

TEST_CASE("solving and printing") {
  pi_object* game = parse(kEvenGame);
  pi_object* sol = nullptr;
  REQUIRE(pi_solve(game, &sol) == PI_OK);
  CHECK(std::string(pi_kind(sol)) == "solution");
  char* text = nullptr;
  REQUIRE(pi_print(sol, &text) == PI_OK);
  CHECK(std::string(text).find("eve_region") != std::string::npos);
  pi_free_string(text);

  char* dot = nullptr;
  REQUIRE(pi_export_dot(game, &dot) == PI_OK);
  CHECK(std::string(dot).rfind("digraph", 0) == 0);
  pi_free_string(dot);

  int64_t value = 0;
  CHECK(pi_get_int(sol, "no-such-field", &value) != PI_OK);
  pi_object* d = nullptr;
  CHECK(pi_ad_build(sol, -1, &d) == PI_WRONG_KIND);
  pi_free(sol);
  pi_free(game);
}

TEST_CASE("trees through the C interface") {
  pi_object* u = nullptr;
  REQUIRE(pi_universal_tree(1, 2, 2, 2, &u) == PI_OK);
  size_t s = 0;
  CHECK(pi_strahler(u, 1, &s) == PI_OK);
  CHECK(s == 2);
  int embeds = 0;
  pi_object* image = nullptr;
  CHECK(pi_embed(u, u, &embeds, &image) == PI_OK);
  CHECK(embeds == 1);
  pi_free(image);
  pi_object* bad = nullptr;
  CHECK(pi_universal_tree(1, 3, 2, 2, &bad) != PI_OK);
  pi_free(u);
}

TEST_CASE("lab generation is deterministic") {
  pi_gen_params p;
  pi_gen_params_default(&p);
  p.seed = 5;
  pi_object *a = nullptr, *b = nullptr;
  REQUIRE(pi_lab_random("even-graph", &p, &a) == PI_OK);
  REQUIRE(pi_lab_random("even-graph", &p, &b) == PI_OK);
  char *ta = nullptr, *tb = nullptr;
  pi_print(a, &ta);
  pi_print(b, &tb);
  CHECK(std::string(ta) == std::string(tb));
  int even = 0;
  CHECK(pi_is_even(a, &even, nullptr) == PI_OK);
  CHECK(even == 1);
  pi_free_string(ta);
  pi_free_string(tb);
  pi_free(a);
  pi_free(b);
  pi_object* none = nullptr;
  CHECK(pi_lab_random("spaceship", &p, &none) == PI_INVALID_ARGUMENT);
}

TEST_CASE("transduction through the C interface") {
  pi_object* g = parse(kOddLoop);
  pi_options opt;
  pi_options_default(&opt);
  int wins = 1;
  CHECK(pi_reg_solve(g, 1, 2, 1, 0, &opt, &wins) == PI_OK);
  CHECK(wins == 0);
  opt.cap_states = 2;
  pi_object* product = nullptr;
  CHECK(pi_reg_build(g, 1, 4, 2, &opt, &product) == PI_STATE_EXPLOSION);
  pi_free(g);
}
