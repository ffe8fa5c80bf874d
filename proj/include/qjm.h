/*
 * qjm -- approximate joint measurements of incompatible quantum observables:
 * rms error trade-offs, error-disturbance bounds, saturating strategies, and
 * randomized verification sweeps on finite-dimensional systems.
 *
 * C interface over the C++ core. All objects are opaque handles; every
 * fallible call returns a qjm_status and reports details through
 * qjm_last_error(). Complex data crosses the boundary as interleaved doubles
 * (re, im); matrices are row-major, measurement bases column-major (one basis
 * vector per column).
 */
#ifndef QJM_H
#define QJM_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum qjm_status {
    QJM_OK = 0,
    QJM_ERR_INVALID_ARG = 1,
    QJM_ERR_DIM_MISMATCH = 2,
    QJM_ERR_NOT_HERMITIAN = 3,
    QJM_ERR_NOT_NORMALIZED = 4,
    QJM_ERR_NOT_PSD = 5,
    QJM_ERR_INCOMPLETE_POVM = 6,
    QJM_ERR_DEGENERATE = 7,
    QJM_ERR_REGIME = 8,
    QJM_ERR_UNSATISFIABLE = 9,
    QJM_ERR_NUMERIC = 10,
    QJM_ERR_IO = 11,
    QJM_ERR_CONFIG = 12
} qjm_status;

const char *qjm_status_name(qjm_status status);

/* Message for the most recent failure on this thread; empty string if none. */
const char *qjm_last_error(void);

/* Global tolerances: "norm", "herm", "num", "deg", "sat", "p", "rank".
 * Environment overrides (QJM_TAU_NORM, ...) are applied at startup. */
qjm_status qjm_set_tolerance(const char *name, double value);
qjm_status qjm_get_tolerance(const char *name, double *value);

typedef struct qjm_state qjm_state;
typedef struct qjm_operator qjm_operator;
typedef struct qjm_measurement qjm_measurement;

/* -------- states and observables -------- */

qjm_status qjm_state_create(const double *interleaved, size_t dim, qjm_state **out);
void qjm_state_destroy(qjm_state *state);
size_t qjm_state_dim(const qjm_state *state);

qjm_status qjm_operator_create(const double *interleaved, size_t dim, qjm_operator **out);
void qjm_operator_destroy(qjm_operator *op);
size_t qjm_operator_dim(const qjm_operator *op);

qjm_status qjm_expectation(const qjm_operator *op, const qjm_state *state, double *out);
qjm_status qjm_std_dev(const qjm_operator *op, const qjm_state *state, double *out);
qjm_status qjm_commutator_value(const qjm_operator *a, const qjm_operator *b,
                                const qjm_state *state, double *out);

typedef struct qjm_statistics {
    double mean_a;
    double mean_b;
    double delta_a;
    double delta_b;
    double c_ab;
    double corr_re; /* Re <A0 B0>, defined when delta_a, delta_b > 0 */
    double corr_im;
} qjm_statistics;

qjm_status qjm_state_statistics(const qjm_operator *a, const qjm_operator *b,
                                const qjm_state *psi, qjm_statistics *out);

/* -------- joint measurements -------- */

/* basis: dim x dim column-major interleaved complex, orthonormal columns. */
qjm_status qjm_measurement_create(const double *basis, const double *f_out, const double *g_out,
                                  size_t dim, qjm_measurement **out);
void qjm_measurement_destroy(qjm_measurement *m);

/* rms errors of the measurement against ideals a and b on the joint state
 * (whose dimension must be a multiple of the system dimension). */
qjm_status qjm_measurement_errors(const qjm_measurement *m, const qjm_operator *a,
                                  const qjm_operator *b, const qjm_state *joint_state,
                                  double *eps_a, double *eps_b);

qjm_status qjm_rms_error(const qjm_operator *approx, const qjm_operator *ideal,
                         const qjm_state *joint_state, double *out);

/* Weak-value optimal outputs for a basis (column-major, dim x dim); writes
 * dim values. */
qjm_status qjm_optimal_outputs(const double *basis, size_t dim, const qjm_operator *ideal,
                               const qjm_state *joint_state, double *outputs);
qjm_status qjm_optimal_rms_error(const double *basis, size_t dim, const qjm_operator *ideal,
                                 const qjm_state *joint_state, double *out);

/* -------- relations -------- */

/* relation ids: robertson, hak, ozawa_joint, ozawa_ed, branciard,
 * branciard_dimless, same_spectrum, b_only_spectrum */
typedef struct qjm_report {
    double lhs;
    double rhs;
    double slack;
    int satisfied;
    int saturated;
    int universal;
    int regime_ok;
} qjm_report;

qjm_status qjm_eval_relation(const char *relation_id, double eps_a, double eps_b,
                             const qjm_statistics *stats, qjm_report *out);
qjm_status qjm_ozawa_implied_check(double eps_a, double eps_b, const qjm_statistics *stats,
                                   int *holds);

/* -------- sweeps and file outputs -------- */

typedef struct qjm_sweep_config {
    uint64_t seed;
    const size_t *dims;
    size_t n_dims;
    uint64_t n_instances;
    const char *const *relations;
    size_t n_relations;
    const char *strategy; /* random_basis | optimal_outputs | saturating */
} qjm_sweep_config;

typedef struct qjm_run_summary {
    uint64_t universal_violations;
    uint64_t flagged_violations; /* violations of non-universal relations (hak) */
    double min_slack;
    double wall_ms;
    char config_hash[17];
} qjm_run_summary;

/* Runs the randomized verification sweep. out_path may be NULL (no file) or
 * "-" (stdout); the record is serialized as JSON. */
qjm_status qjm_run_verify(const qjm_sweep_config *config, const char *out_path,
                          qjm_run_summary *summary);

/* Fuzzes the three vector inequalities behind the bounds. `flagged_violations`
 * reports coplanarity-witness failures among saturating instances. */
qjm_status qjm_run_lemmas(uint64_t seed, uint64_t n_instances, const size_t *dims, size_t n_dims,
                          const char *out_path, qjm_run_summary *summary);

/* Writes the saturating boundary contour of a relation in the normalized
 * error plane. format: "csv" | "json"; out_path "-" writes to stdout. */
qjm_status qjm_write_curve(const char *relation_id, double c_tilde, uint64_t n_points,
                           const char *format, const char *out_path);

/* Writes the theoretical prediction sweep of one of the two qubit
 * experiments: "erhart" | "rozema". */
qjm_status qjm_write_experiment(const char *which, uint64_t n_points, const char *format,
                                const char *out_path);

#ifdef __cplusplus
}
#endif

#endif /* QJM_H */
