#ifndef QMEM_QMEM_H
#define QMEM_QMEM_H

/* C interface to the quantum-memory robustness library.
 *
 * All functions return a qmem_status; on failure qmem_last_error() gives a
 * thread-local message. Strings returned through char** are owned by the
 * caller and released with qmem_string_free(). Handles are opaque and
 * released with their matching *_free(); freeing NULL is a no-op.
 *
 * JSON conventions: complex numbers are [re, im] pairs, matrices are nested
 * row arrays. A channel is {"d_in", "d_out", "kraus": [...]} or {... "choi":
 * matrix} or {"family": "dephasing(0.75)"}.
 */

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum qmem_status {
    QMEM_OK = 0,
    QMEM_INVALID_INPUT = 2,
    QMEM_SOLVER_FAILURE = 3,
    QMEM_CAPACITY = 4,
} qmem_status;

typedef struct qmem_channel qmem_channel;
typedef struct qmem_game qmem_game;
typedef struct qmem_decomposition qmem_decomposition;

const char* qmem_last_error(void);
void qmem_string_free(char* s);

/* --- channels ---------------------------------------------------------- */

qmem_status qmem_channel_from_json(const char* json_text, qmem_channel** out);
qmem_status qmem_channel_load(const char* path, qmem_channel** out);
qmem_status qmem_channel_family(const char* family_spec, qmem_channel** out);
qmem_status qmem_channel_to_json(const qmem_channel* n, char** json_out);
void qmem_channel_free(qmem_channel* n);

/* --- robustness --------------------------------------------------------
 * method: "eig" | "moment" | "sdp" | "sdp-gen" | "ent" | "ent-gen".
 * k: moment order (used by "moment" only; pass 0 for the default 2).
 * sdp_tol <= 0 means the default (or QMEM_SDP_TOL when set).
 * is_exact may be NULL. */
qmem_status qmem_robustness(const qmem_channel* n, const char* method, int k,
                            double sdp_tol, double* value, int* is_exact);

/* JSON report with value, method, is_exact and, for SDP methods, the
 * witness matrix. */
qmem_status qmem_robustness_report(const qmem_channel* n, const char* method,
                                   int k, double sdp_tol, char** json_out);

/* --- games --------------------------------------------------------------*/

qmem_status qmem_game_from_json(const char* json_text, qmem_game** out);
qmem_status qmem_game_load(const char* path, qmem_game** out);
qmem_status qmem_game_canned(const char* name, qmem_game** out);
/* payoff, 1-sigma irrelevant here; bound = payoff - 1. Either output pointer
 * may be NULL. */
qmem_status qmem_game_payoff(const qmem_game* g, const qmem_channel* n,
                             double* payoff, double* bound);
qmem_status qmem_game_payoff_report(const qmem_game* g, const qmem_channel* n,
                                    char** json_out);
void qmem_game_free(qmem_game* g);

/* --- quasi-probability simulation -------------------------------------- */

qmem_status qmem_decompose(const qmem_channel* n, double sdp_tol,
                           qmem_decomposition** out, double* s,
                           double* overhead);
qmem_status qmem_sample(const qmem_decomposition* dec, const char* state_json,
                        const char* observable_json, uint64_t shots,
                        uint64_t seed, double* estimate, double* std_error);
void qmem_decomposition_free(qmem_decomposition* dec);

/* JSON report with probe dimension and the target/filler Choi matrices. */
qmem_status qmem_synthesize(const qmem_channel* n, double sdp_tol,
                            char** json_out);

/* --- dynamics ------------------------------------------------------------
 * Default memory-bath model; rate <= 0 disables pulses. CSV columns:
 * t, robustness, non_markovianity, variant. */
qmem_status qmem_dd_trajectory(double rate, double t_max, int steps,
                               char** csv_out);
double qmem_default_dd_rate(void);

/* --- sweeps and counts --------------------------------------------------
 * methods: comma-separated list of robustness method names. */
qmem_status qmem_sweep(const char* family, double from, double to, int steps,
                       const char* methods, double sdp_tol, char** csv_out);

qmem_status qmem_ingest_counts_json(const char* json_text, double* score,
                                    double* std_dev, double* bound);
qmem_status qmem_ingest_counts_file(const char* path, double* score,
                                    double* std_dev, double* bound);

#ifdef __cplusplus
}
#endif

#endif /* QMEM_QMEM_H */
