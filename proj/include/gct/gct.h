#ifndef GCT_GCT_H
#define GCT_GCT_H

/* C interface to the grammar-compressed tree library. Handles are opaque;
 * every call returning gct_status leaves a message for gct_last_error() on
 * failure. Strings returned through char** are released with gct_free. */

#include <stddef.h>
#include <stdint.h>

#if defined(GCT_BUILDING_LIBRARY)
#define GCT_API __attribute__((visibility("default")))
#else
#define GCT_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum gct_status {
  GCT_OK = 0,
  GCT_ERR_SYNTAX = 1,
  GCT_ERR_INVALID = 2,   /* structurally invalid grammar or input */
  GCT_ERR_GUARD = 3,     /* output larger than the guard; see gct_last_error_value */
  GCT_ERR_OVERFLOW = 4,
  GCT_ERR_RANGE = 5,
  GCT_ERR_ARGUMENT = 6,
  GCT_ERR_INTERNAL = 7
} gct_status;

typedef enum gct_kind { GCT_AUTO = 0, GCT_SLP = 1, GCT_TSLP = 2 } gct_kind;

typedef struct gct_grammar gct_grammar;
typedef struct gct_navigator gct_navigator;
typedef struct gct_cursor gct_cursor;

typedef struct gct_counters {
  uint64_t pushes;
  uint64_t pops;
  uint64_t next_link;
  uint64_t lca;
} gct_counters;

GCT_API const char* gct_last_error(void);
GCT_API uint64_t gct_last_error_value(void);
GCT_API void gct_free(char* s);
GCT_API uint64_t gct_default_guard(void);

/* Grammars */
GCT_API gct_status gct_grammar_parse(const char* text, gct_kind kind, gct_grammar** out);
GCT_API void gct_grammar_free(gct_grammar* g);
GCT_API gct_kind gct_grammar_kind(const gct_grammar* g);
GCT_API gct_status gct_grammar_report(const gct_grammar* g, int json, char** out);
GCT_API gct_status gct_grammar_stats(const gct_grammar* g, int json, char** out);
GCT_API gct_status gct_grammar_decompress(const gct_grammar* g, uint64_t guard, char** out);
/* Binarized SLP or normalized TSLP, as grammar text. */
GCT_API gct_status gct_grammar_normalize(const gct_grammar* g, char** out);
GCT_API gct_status gct_grammar_tries_dot(const gct_grammar* g, char** out);

/* Tree navigation. With eq != 0 the grammar is reduced and preprocessed for
 * subtree equality; cursors then follow the split points. */
GCT_API gct_status gct_navigator_new(const gct_grammar* g, int eq, gct_navigator** out);
GCT_API void gct_navigator_free(gct_navigator* n);
GCT_API gct_status gct_navigator_eq_stats(const gct_navigator* n, int json, char** out);

GCT_API gct_status gct_cursor_root(const gct_navigator* n, gct_cursor** out);
GCT_API gct_status gct_cursor_clone(const gct_cursor* c, gct_cursor** out);
GCT_API void gct_cursor_free(gct_cursor* c);
/* 1 when the move happened, 0 when the target node does not exist. */
GCT_API int gct_cursor_child(gct_cursor* c, uint32_t i);
GCT_API int gct_cursor_parent(gct_cursor* c);
GCT_API const char* gct_cursor_label(const gct_cursor* c);
GCT_API uint32_t gct_cursor_rank(const gct_cursor* c);
GCT_API gct_status gct_cursor_string(const gct_cursor* c, char** out);
GCT_API void gct_cursor_last_step(const gct_cursor* c, gct_counters* out);
GCT_API gct_status gct_subtree_eq(const gct_navigator* n, const gct_cursor* a, const gct_cursor* b, int* equal);

/* String SLP queries; positions are 1-based. */
GCT_API gct_status gct_slp_at(const gct_grammar* g, const char* nonterminal, uint64_t i, char** symbol);
GCT_API gct_status gct_slp_slice(const gct_grammar* g, const char* nonterminal, uint64_t i, uint64_t j, char** out);
GCT_API gct_status gct_slp_lcp(const gct_grammar* g1, const char* x1, const gct_grammar* g2, const char* x2,
                               uint64_t* out);
/* Moves a string cursor over val(nonterminal) of the binarized SLP. `moves`
 * holds 'r' and 'l' characters; an empty string walks to the end. One output
 * line per position: "pos symbol stack". */
GCT_API gct_status gct_slp_walk(const gct_grammar* g, const char* nonterminal, int from_end, const char* moves,
                                char** out);

/* Unranked tree encodings; mode is "fcns" or "bin". */
GCT_API gct_status gct_encode(const char* tree, const char* mode, int decode, char** out);

/* Generator; mode is "chain", "balanced" or "random". */
GCT_API gct_status gct_generate(const char* mode, unsigned size_exp, uint64_t seed, char** out);

typedef struct gct_bench_options {
  const char* walk; /* "random" or "dfs" */
  uint64_t steps;
  uint64_t seed;
  int eq;
  int string_walk; /* random walk over the spine string instead of the tree */
} gct_bench_options;
GCT_API gct_status gct_bench(const gct_grammar* g, const gct_bench_options* options, int json, char** out);

#ifdef __cplusplus
}
#endif

#endif
