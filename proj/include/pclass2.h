/* pclass2 — exact toolkit for finite groups of odd prime exponent p and
 * nilpotency class <= 2, presented by alternating bilinear maps over GF(p).
 *
 * C interface of the shared library: opaque handles, integer status codes,
 * and heap-allocated strings released with pc2_string_free(). All handles
 * are immutable once created and safe to share between threads.
 */
#ifndef PCLASS2_H
#define PCLASS2_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum pc2_status {
  PC2_OK = 0,
  PC2_ERR_BAD_ARG = 1,      /* null pointer, bad prime, invalid dimension */
  PC2_ERR_PARSE = 2,        /* .fdg rejection; see the error string */
  PC2_ERR_UNKNOWN_NAME = 3, /* no such catalog entry */
  PC2_ERR_SINGULAR = 4,     /* matrix required to be invertible is not */
  PC2_ERR_BUDGET = 5,       /* enumeration or search budget exceeded */
  PC2_ERR_NOMEM = 6,
  PC2_ERR_INTERNAL = 7,
} pc2_status;

/* A group of exponent p and class <= 2 (a commutator structure). */
typedef struct pc2_group pc2_group;

const char* pc2_version(void);
const char* pc2_status_name(pc2_status status);

void pc2_string_free(char* s);
void pc2_group_free(pc2_group* g);

/* Parses a .fdg document. On failure *err_msg (if non-null) receives the
 * diagnostic, including the 1-based line number. */
pc2_status pc2_group_from_fdg(const char* text, pc2_group** out, char** err_msg);

/* Builds a named catalog group (3.2.1, 5.3.1, ..., 8.6.14, A..F) at p. */
pc2_status pc2_group_from_catalog(const char* name, int p, pc2_group** out);

int pc2_group_prime(const pc2_group* g);
int pc2_group_generators(const pc2_group* g);
int pc2_group_derived_rank(const pc2_group* g);
int pc2_group_is_special(const pc2_group* g);

/* Canonical .fdg serialization / DOT export under the given display name. */
pc2_status pc2_group_fdg(const pc2_group* g, const char* name, char** out_text);
pc2_status pc2_group_dot(const pc2_group* g, const char* name, char** out_text);

/* Invariant report: frequency vector, rank signature, small-centralizer
 * flags, and the per-line preimage profile, as JSON. */
pc2_status pc2_group_invariants(const pc2_group* g, char** out_json);

/* Maximal central decomposition: part dimensions and factor names, as JSON.
 * max_candidates caps the subspace search (0 means the default budget). */
pc2_status pc2_group_decompose(const pc2_group* g, uint64_t max_candidates, char** out_json);

/* Isomorphism test. *verdict: 0 = not isomorphic, 1 = isomorphic,
 * 2 = search budget exhausted (undecided). max_nodes 0 means the default
 * budget. The JSON carries the verdict, node count, and witness matrices
 * when found. */
pc2_status pc2_isomorphic(const pc2_group* a, const pc2_group* b, uint64_t max_nodes,
                          int* verdict, char** out_json);

/* Invariant-based separation: *distinct = 1 with the discriminating
 * invariant named in *out_json, or 0 when all invariants agree. */
pc2_status pc2_distinguish(const pc2_group* a, const pc2_group* b, int* distinct,
                           char** out_json);

/* Partitions all derived-rank-2 structures on d generators into orbits
 * under basis changes. max_structures 0 means the default budget. */
pc2_status pc2_classify(int d, int p, uint64_t max_structures, char** out_json);

/* Runs the full verification battery at p (frequency tables, pairwise
 * distinctness, order-p^9 decompositions, and the change-of-variables
 * replay). *all_pass = 1 iff every check passed. */
pc2_status pc2_verify(int p, char** out_json, int* all_pass);

/* Catalog table at p: name, order, central factors, frequency vector. */
pc2_status pc2_catalog_table(int p, char** out_json);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* PCLASS2_H */
