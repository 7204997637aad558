#ifndef BNET_H
#define BNET_H

/*
 * C interface to the boundary-algebra toolkit.
 *
 * Conventions:
 *   - Every function returns 0 on success or one of the BNET_ERR_* codes;
 *     bnet_last_error() then holds a message for the calling thread, valid
 *     until the next failing call on that thread.
 *   - Output strings (char**) are heap-allocated JSON documents owned by the
 *     caller; release them with bnet_string_free(). They are byte-identical
 *     across runs for identical inputs, precision and seeds.
 *   - Handles are opaque; free them with the matching *_free function.
 */

#ifdef __cplusplus
extern "C" {
#endif

#define BNET_OK 0
#define BNET_ERR_INTERNAL 1
#define BNET_ERR_PARSE 2
#define BNET_ERR_VALIDATION 3
#define BNET_ERR_RESOURCE 4
#define BNET_ERR_INCONCLUSIVE 5

typedef struct bnet_ring bnet_ring;
typedef struct bnet_diagram bnet_diagram;

const char* bnet_version(void);
const char* bnet_last_error(void);
void bnet_string_free(char* s);

/* Working precision for inexact arithmetic, in decimal digits. */
int bnet_set_precision(int digits);
int bnet_precision(void);

/* Fusion rings. */
int bnet_ring_list(char** out_json);
int bnet_ring_builtin(const char* name, bnet_ring** out);
int bnet_ring_from_json(const char* text, bnet_ring** out);
void bnet_ring_free(bnet_ring* r);
int bnet_ring_validate(const bnet_ring* r, char** out_json);
int bnet_ring_dims(const bnet_ring* r, char** out_json);
int bnet_ring_pointed(const bnet_ring* r, char** out_json);
int bnet_ring_triples(const bnet_ring* r, char** out_json);
int bnet_ring_to_json(const bnet_ring* r, char** out_json);

/* von Neumann type of the boundary factor. */
int bnet_classify(const bnet_ring* r, char** out_json);

/* Fusion-net states on path-pair operators.  op_json uses the operator
 * document format; level_cap bounds the path enumeration. */
int bnet_state_evaluate(const bnet_ring* r, int level_cap, const char* op_json,
                        char** out_json);
int bnet_kms_check(const bnet_ring* r, int level, char** out_json);
int bnet_trace_check(const bnet_ring* r, int level, char** out_json);

/* Toric code boundary reductions.  Monomials look like "i^k X@(3,4,e) Z@(2,2,n)",
 * regions like "rect x0 y0 x1 y1 smooth rough smooth smooth" with one kind per
 * side in west,east,south,north order (all rough when the kinds are omitted). */
int bnet_toric_reduce(int width, int height, const char* monomial,
                      const char* inner, const char* outer, char** out_json);
int bnet_toric_boundary_dim(int sites, int rough, char** out_json);
int bnet_toric_iso_verify(int sites, int rough, char** out_json);

/* Exact finite-window oracle.  config_json:
 *   {"mode": "projector"|"lto1"|"lto234"|"lto3"|"state",
 *    "window": [w,h], "regions": [...], "samples": n?, "seed": s?, "probes": p?}
 * with regions per mode: projector [region]; lto1 [inner, outer];
 * lto234 [inner, outer1, outer2]; lto3 [inner_small, inner_large, outer];
 * state [lambda, delta, gamma]. */
int bnet_toric_lto_verify(const char* config_json, char** out_json);

/* Stationary Bratteli diagrams and K0 pairing analysis. */
int bnet_k0_tensor(const bnet_ring* r, const int* objects, int len, bnet_diagram** out);
int bnet_k0_two_sided(const bnet_ring* r, bnet_diagram** out);
void bnet_diagram_free(bnet_diagram* d);
int bnet_k0_describe(const bnet_diagram* d, char** out_json);
int bnet_k0_dimension_sequence(const bnet_diagram* d, int levels, char** out_json);
int bnet_k0_pairing(const bnet_diagram* d, const char* v_json, char** out_json);
int bnet_k0_infinitesimal(const bnet_diagram* d, int bound, char** out_json);
int bnet_k0_uhf(const bnet_diagram* d, char** out_json);

#ifdef __cplusplus
}
#endif

#endif /* BNET_H */
