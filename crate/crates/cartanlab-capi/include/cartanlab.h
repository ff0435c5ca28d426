#ifndef CARTANLAB_H
#define CARTANLAB_H

/* Generated by cbindgen from the cartanlab-capi crate; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes shared with the CLI exit-code contract.
 */
#define CARTANLAB_OK 0

#define CARTANLAB_ERR_PARSE 2

#define CARTANLAB_ERR_EXHAUSTED 3

#define CARTANLAB_ERR_VERIFY_FAILED 4

#define CARTANLAB_ERR_INCONSISTENT 5

/**
 * Opaque handle: a permutation group with its conjugacy data.
 */
typedef struct CartanlabGroup CartanlabGroup;

/**
 * Opaque handle: an exact character table bound to its group.
 */
typedef struct CartanlabTable CartanlabTable;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the most recent failure on this thread. Borrowed: valid until
 * the next failing call on the same thread; do not free.
 */
const char *cartanlab_last_error_message(void);

/**
 * Library version as a static string; do not free.
 */
const char *cartanlab_version(void);

/**
 * Release a string returned by this library.
 */
void cartanlab_string_free(char *s);

/**
 * Build a built-in group by name ("trivial", "C2", ..., "S3", "S4", "D4",
 * "Q8"). Returns null on failure.
 */
struct CartanlabGroup *cartanlab_group_builtin(const char *name);

/**
 * Build a group from a JSON group spec (`degree`, `notation`, `generators`).
 */
struct CartanlabGroup *cartanlab_group_from_spec_json(const char *json);

/**
 * Group order, or -1 for a null handle.
 */
int64_t cartanlab_group_order(const struct CartanlabGroup *group);

void cartanlab_group_free(struct CartanlabGroup *group);

/**
 * Compute the exact character table (Dixon's method). Returns null on
 * failure.
 */
struct CartanlabTable *cartanlab_chartab_compute(const struct CartanlabGroup *group);

/**
 * Character table as JSON (`group_order`, `class_reps`, `class_sizes`,
 * `conductor`, `rows`). Caller frees with cartanlab_string_free.
 */
char *cartanlab_chartab_to_json(const struct CartanlabTable *table);

void cartanlab_table_free(struct CartanlabTable *table);

/**
 * Δ matrix of a subgroup of G×G as JSON (`labels`, `rows`). `subgroup` is a
 * built-in name (diag/La/Lb/Lc for S3) or a pair-subgroup spec as JSON.
 */
char *cartanlab_delta_json(const struct CartanlabTable *table, const char *subgroup);

/**
 * Assemble the complex (and, with `decomp`, modular) Cartan matrix.
 * `request` is JSON: {"subgroups": [...], "z": [...], "decomp": ...}.
 * On success writes a JSON report to *out_json (caller frees).
 */
int cartanlab_cartan_json(const struct CartanlabTable *table, const char *request, char **out_json);

/**
 * Run a counterexample search. `request` is JSON: {"decomp": ...,
 * "strategy": "box"|"kernel", "pool": [...], "bound": n, "kernel_bound": n,
 * "z_bound": n, "all": bool}. An empty pool defaults to the built-in S3
 * triple (S3 only). Returns 0 with a report in *out_json when a verified
 * counterexample is found, 3 when the bounds are exhausted (a report is
 * still written), other codes on error.
 */
int cartanlab_search_json(const struct CartanlabTable *table, const char *request, char **out_json);

/**
 * Recompute the ready-made S3 counterexample from scratch and report per
 * claim. With `use_oracle` nonzero, every Δ is cross-checked against the
 * explicit coset biset. Returns 0 on pass, 4 on a failed claim, 5 on an
 * internal inconsistency between the two Δ routes.
 */
int cartanlab_verify_paper_s3(int use_oracle, char **out_json);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* CARTANLAB_H */
