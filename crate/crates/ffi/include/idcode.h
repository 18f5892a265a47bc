#ifndef IDCODE_H
#define IDCODE_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Outcome of a call.
typedef enum IdcodeStatus {
  IDCODE_STATUS_OK = 0,
  // The code is not identifying.
  IDCODE_STATUS_NOT_IDENTIFYING = 1,
  // A verified code misses its certified bound; the certificate is
  // still returned.
  IDCODE_STATUS_BOUND_MISSED = 2,
  // Malformed edge-list text.
  IDCODE_STATUS_PARSE = 3,
  // The graph has closed twins.
  IDCODE_STATUS_NOT_IDENTIFIABLE = 4,
  IDCODE_STATUS_NOT_TRIANGLE_FREE = 5,
  IDCODE_STATUS_NOT_CONNECTED = 6,
  // The exact search ran out of its node budget.
  IDCODE_STATUS_BUDGET_EXCEEDED = 7,
  // An argument is out of range or outside the operation's domain.
  IDCODE_STATUS_INVALID_ARGUMENT = 8,
  // A construction failed its own checks, or the library panicked.
  IDCODE_STATUS_INTERNAL = 9,
  // A required pointer argument was null.
  IDCODE_STATUS_NULL_POINTER = 11,
} IdcodeStatus;

// A certificate handle.
typedef struct IdcodeCertificate IdcodeCertificate;

// A graph handle.
typedef struct IdcodeGraph IdcodeGraph;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// A static description of `status`.
const char *idcode_status_name(enum IdcodeStatus status);

// The message of the last failed call on this thread, or null. The
// string is newly allocated; release it with [`idcode_string_free`].
char *idcode_last_error(void);

// Releases a string returned by this library. Null is ignored.
//
// # Safety
// `s` must come from this library and not have been freed.
void idcode_string_free(char *s);

// Parses the edge-list text format into a new graph.
//
// # Safety
// `text` must be a NUL-terminated string and `out` valid for one write.
enum IdcodeStatus idcode_graph_parse(const char *text, struct IdcodeGraph **out);

// Builds a graph on `n` vertices from `m` edges given as `2m` ids
// `u0 v0 u1 v1 ...`.
//
// # Safety
// `edges` must be valid for `2 * m` reads unless `m` is 0; `out` must be
// valid for one write.
enum IdcodeStatus idcode_graph_from_edges(size_t n,
                                          const size_t *edges,
                                          size_t m,
                                          struct IdcodeGraph **out);

// A random connected triangle-free graph, deterministic in `seed`.
//
// # Safety
// `out` must be valid for one write.
enum IdcodeStatus idcode_graph_random_triangle_free(size_t n,
                                                    size_t target_edges,
                                                    uint64_t seed,
                                                    struct IdcodeGraph **out);

// Releases a graph. Null is ignored.
//
// # Safety
// `g` must come from this library and not have been freed.
void idcode_graph_free(struct IdcodeGraph *g);

// Number of vertices; 0 for null.
//
// # Safety
// `g` must be null or a live graph handle.
size_t idcode_graph_order(const struct IdcodeGraph *g);

// Number of edges; 0 for null.
//
// # Safety
// `g` must be null or a live graph handle.
size_t idcode_graph_size(const struct IdcodeGraph *g);

// Maximum degree; 0 for null.
//
// # Safety
// `g` must be null or a live graph handle.
size_t idcode_graph_max_degree(const struct IdcodeGraph *g);

// The canonical edge-list text of `g`, or null for a null handle.
// Release it with [`idcode_string_free`].
//
// # Safety
// `g` must be null or a live graph handle.
char *idcode_graph_to_text(const struct IdcodeGraph *g);

// Returns [`IdcodeStatus::Ok`] if the `len` ids in `code` form an
// identifying code of `g`, and [`IdcodeStatus::NotIdentifying`] if not.
//
// # Safety
// `g` must be a live graph handle and `code` valid for `len` reads.
enum IdcodeStatus idcode_is_identifying(const struct IdcodeGraph *g,
                                        const size_t *code,
                                        size_t len);

// A minimum identifying code of `g`, written to `buf` (capacity `cap`)
// with its size in `len`. `budget` limits the explored search nodes; 0
// selects the default. When `cap` is too small, `len` still receives the
// size and [`IdcodeStatus::InvalidArgument`] is returned.
//
// # Safety
// `g` must be a live graph handle, `buf` valid for `cap` writes and `len`
// valid for one write.
enum IdcodeStatus idcode_gamma_exact(const struct IdcodeGraph *g,
                                     uint64_t budget,
                                     size_t *buf,
                                     size_t cap,
                                     size_t *len);

// Certified code of a connected triangle-free graph. Subproblems of
// order up to `fallback_threshold` may be solved exactly (16 is the
// library default).
//
// # Safety
// `g` must be a live graph handle and `out` valid for one write.
enum IdcodeStatus idcode_construct(const struct IdcodeGraph *g,
                                   size_t fallback_threshold,
                                   struct IdcodeCertificate **out);

// Certified code of a graph made triangle-free by greedily deleting
// edges.
//
// # Safety
// `g` must be a live graph handle and `out` valid for one write.
enum IdcodeStatus idcode_construct_near(const struct IdcodeGraph *g,
                                        size_t fallback_threshold,
                                        struct IdcodeCertificate **out);

// Releases a certificate. Null is ignored.
//
// # Safety
// `c` must come from this library and not have been freed.
void idcode_certificate_free(struct IdcodeCertificate *c);

// Copies the certificate's code into `buf` (capacity `cap`) and its size
// into `len`.
//
// # Safety
// `c` must be a live certificate handle, `buf` valid for `cap` writes and
// `len` valid for one write.
enum IdcodeStatus idcode_certificate_code(const struct IdcodeCertificate *c,
                                          size_t *buf,
                                          size_t cap,
                                          size_t *len);

// The certified bound `den * |code| <= num`.
//
// # Safety
// `c` must be a live certificate handle; `num` and `den` valid for one
// write each.
enum IdcodeStatus idcode_certificate_bound(const struct IdcodeCertificate *c,
                                           uint64_t *num,
                                           uint64_t *den);

// The certificate as TOML, or null for a null handle. Release it with
// [`idcode_string_free`].
//
// # Safety
// `c` must be null or a live certificate handle.
char *idcode_certificate_to_toml(const struct IdcodeCertificate *c);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* IDCODE_H */
