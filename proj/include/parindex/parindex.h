#ifndef PARINDEX_H
#define PARINDEX_H

#include <stddef.h>
#include <stdint.h>

#if defined(PARINDEX_BUILDING)
#define PI_API __attribute__((visibility("default")))
#else
#define PI_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Status codes; PI_OK is zero, every other value names the failure. */
typedef enum pi_status {
  PI_OK = 0,
  PI_INVALID_ARGUMENT,
  PI_TERMINAL_VERTEX,
  PI_STRATEGY_ESCAPES_REGION,
  PI_UNDEFINED_CHOICE,
  PI_NOT_EVEN,
  PI_PRIORITY_OUT_OF_RANGE,
  PI_OVERLAPPING_PARTS,
  PI_HYPOTHESIS_VIOLATED,
  PI_STATE_EXPLOSION,
  PI_NOT_BOUNDED,
  PI_PRECONDITION_FAILED,
  PI_INVALID_DECOMPOSITION,
  PI_ALPHABET_MISMATCH,
  PI_INCOMPLETE_AUTOMATON,
  PI_INCOMPATIBLE_GUIDE,
  PI_NO_ACCEPTING_RUN,
  PI_EXHAUSTED_RETRIES,
  PI_TOO_LARGE,
  PI_PARSE_ERROR,
  PI_DANGLING_SUCCESSOR,
  PI_EMPTY_GAME,
  PI_EMPTY_INDEX,
  PI_UNDEFINED,
  PI_WRONG_KIND,
  PI_INTERNAL
} pi_status;

/* Any value the library produces: games, graphs, pairs, decompositions, trees,
   automata, regular trees, guides, products, strategies, solutions, reports. */
typedef struct pi_object pi_object;

typedef enum pi_reset_rule { PI_RESET_LIBERAL = 0, PI_RESET_LITERAL = 1, PI_RESET_NEVER = 2 } pi_reset_rule;

typedef struct pi_options {
  pi_reset_rule reset;
  size_t cap_states; /* 0 selects the default */
} pi_options;

typedef struct pi_gen_params {
  uint64_t seed;
  size_t vertex_count;
  uint32_t priority_cap;
  double edge_density;
  uint32_t j_lo, j_hi;
  size_t counter_bound;
  size_t instance_count;
  int planted;
  pi_reset_rule reset;
  size_t cap_states;
} pi_gen_params;

PI_API const char* pi_version(void);
PI_API const char* pi_status_name(pi_status status);
/* Message of the last failed call on this thread; empty after a success. */
PI_API const char* pi_last_error(void);

PI_API void pi_options_default(pi_options* options);
PI_API void pi_gen_params_default(pi_gen_params* params);

PI_API void pi_free(pi_object* object);
PI_API void pi_free_string(char* text);

/* Parses a native manifest. */
PI_API pi_status pi_parse(const char* text, pi_object** out);
/* Parses PGSolver text; source_priority selects the source-vertex conversion instead of the target one. */
PI_API pi_status pi_parse_pgsolver(const char* text, int source_priority, pi_object** out);
PI_API pi_status pi_load_file(const char* path, pi_object** out);
PI_API pi_status pi_save_file(const pi_object* object, const char* path);

PI_API const char* pi_kind(const pi_object* object);
PI_API pi_status pi_print(const pi_object* object, char** out);
PI_API pi_status pi_export_dot(const pi_object* object, char** out);
PI_API pi_status pi_export_pgsolver(const pi_object* object, char** out);

/* Integer or boolean field of an object's payload, e.g. "eve_wins", "even", "valid", "value". */
PI_API pi_status pi_get_int(const pi_object* object, const char* field, int64_t* out);

/* core games */
PI_API pi_status pi_solve(const pi_object* game, pi_object** solution);
PI_API pi_status pi_is_even(const pi_object* graph, int* even, pi_object** lasso);
PI_API pi_status pi_attractor(const pi_object* graph, const uint32_t* edges, size_t count, pi_object** vertices);

/* decompositions */
PI_API pi_status pi_ad_build(const pi_object* graph, int level, pi_object** decomposition);
PI_API pi_status pi_ad_check(const pi_object* graph, const pi_object* decomposition, pi_object** report);
PI_API pi_status pi_ad_tight(const pi_object* graph, const pi_object* decomposition, int* tight);
PI_API pi_status pi_ad_shape(const pi_object* decomposition, pi_object** tree);
PI_API pi_status pi_ad_from_pair(const pi_object* pair, size_t n, size_t j, size_t cap, pi_object** result);

/* ordered trees */
PI_API pi_status pi_strahler(const pi_object* tree, size_t n, size_t* value);
PI_API pi_status pi_universal_tree(size_t n, size_t k, size_t d, size_t width, pi_object** tree);
PI_API pi_status pi_embed(const pi_object* tree, const pi_object* host, int* embeds, pi_object** image);

/* transduction */
PI_API pi_status pi_reg_build(const pi_object* input, uint32_t j_lo, uint32_t j_hi, size_t n,
                              const pi_options* options, pi_object** product);
PI_API pi_status pi_reg_solve(const pi_object* input, uint32_t j_lo, uint32_t j_hi, size_t n, uint32_t from,
                              const pi_options* options, int* eve_wins);
PI_API pi_status pi_reg_synth(const pi_object* graph, const pi_object* decomposition, size_t n,
                              const pi_options* options, pi_object** strategy);
PI_API pi_status pi_bound_check(const pi_object* pair, size_t n, int* bounded, pi_object** counterexample);

/* automata */
PI_API pi_status pi_aut_game(const pi_object* automaton, const pi_object* tree, pi_object** game);
PI_API pi_status pi_aut_member(const pi_object* automaton, const pi_object* tree, int* accepts);
PI_API pi_status pi_aut_compose(const pi_object* automaton, uint32_t j_lo, uint32_t j_hi, size_t n,
                                const pi_options* options, pi_object** composed);
PI_API pi_status pi_aut_guide(const pi_object* a, const pi_object* b, const pi_object* guide, const pi_object* tree,
                              pi_object** result);

/* lab: kind is one of "game", "even-graph", "pair", "planted" */
PI_API pi_status pi_lab_random(const char* kind, const pi_gen_params* params, pi_object** out);
PI_API pi_status pi_lab_battery(const pi_gen_params* params, const char* only_check, pi_object** report,
                                char** table);

#ifdef __cplusplus
}
#endif

#endif
