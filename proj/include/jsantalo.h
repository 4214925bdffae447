#ifndef JSANTALO_H
#define JSANTALO_H

/* C interface to the j-Santalo verification toolkit. All geometry handles
 * are origin-symmetric V-polytopes; functions return a status code and the
 * last failure message is kept per thread. */

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum {
    JSANT_OK = 0,
    JSANT_ERR_INVALID_ARGUMENT = 1,
    JSANT_ERR_UNBOUNDED = 2,
    JSANT_ERR_DEGENERATE = 3,
    JSANT_ERR_IO = 4,
    JSANT_ERR_INTERNAL = 5
} jsant_status;

typedef struct jsant_body jsant_body;
typedef struct jsant_report jsant_report;

/* Message for the most recent failing call on this thread; never NULL. */
const char* jsant_last_error(void);

/* coords: count points of dimension n, row major. The vertex set is closed
 * under negation on load, so half-stored sets are accepted. */
jsant_status jsant_body_from_vertices(int n, const double* coords, size_t count,
                                      jsant_body** out);
jsant_status jsant_body_load(const char* path, jsant_body** out);
jsant_status jsant_body_save(const jsant_body* body, const char* path);
jsant_status jsant_body_cube(int n, double half, jsant_body** out);
jsant_status jsant_body_lp_ball(int n, double p, int resolution, jsant_body** out);
void jsant_body_free(jsant_body* body);

int jsant_body_dim(const jsant_body* body);
size_t jsant_body_vertex_count(const jsant_body* body);
/* Writes dim * vertex_count doubles; cap is the buffer length in doubles. */
jsant_status jsant_body_vertices(const jsant_body* body, double* out, size_t cap);

jsant_status jsant_body_volume(const jsant_body* body, double* out);
jsant_status jsant_steiner(const jsant_body* body, int axis, jsant_body** out);

/* Generalized j-polar of count bodies (the remaining slot of a (count+1)-
 * tuple). Fails with JSANT_ERR_UNBOUNDED / JSANT_ERR_DEGENERATE when the
 * polar is not a body. */
jsant_status jsant_polar(const jsant_body* const* bodies, size_t count, int j,
                         jsant_body** out);

/* prod |K_i| / |B_j^n|^count over the full tuple. */
jsant_status jsant_santalo_ratio(const jsant_body* const* bodies, size_t count, int j,
                                 uint64_t seed, uint64_t samples, double* value,
                                 double* stderr_out);

/* verdict: 1 pass, 0 fail, -1 inconclusive. */
jsant_status jsant_verify_polarity(const jsant_body* const* bodies, size_t count, int j,
                                   int* verdict, double* max_value);

/* Ball functional minimized over orthonormal bases (upper bound). */
jsant_status jsant_ball_value_min(const jsant_body* const* bodies, size_t count, int j,
                                  uint64_t seed, double* value);

/* command: verify-santalo / symmetrize / search / radial-check / functional.
 * config_path and mode may be NULL; samples = 0 and tol = 0 keep the config
 * (or built-in) defaults. When out_dir is non-NULL the JSON and CSV report
 * files are written there. */
jsant_status jsant_run_campaign(const char* command, const char* config_path,
                                const char* mode, uint64_t seed, uint64_t samples,
                                double tol, const char* out_dir, jsant_report** out);

/* 0 = pass, 2 = theorem violation, 3 = candidate counterexample. */
int jsant_report_exit_code(const jsant_report* rep);
/* Heap-allocated JSON document; release with jsant_string_free. */
jsant_status jsant_report_json(const jsant_report* rep, char** out);
void jsant_string_free(char* s);
void jsant_report_free(jsant_report* rep);

#ifdef __cplusplus
}
#endif

#endif /* JSANTALO_H */
