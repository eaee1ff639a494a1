/*
 * qcbm  -  quantum circuit Born machine toolkit, C API.
 *
 * Statevector simulation of ion-trap-native circuits (Rz, Rx, XX, GMS),
 * particle-swarm training against classical datasets, and generative-model
 * benchmarking (qBAS score, KL divergence, entanglement entropy).
 *
 * Every function returns a qcbm_status; QCBM_OK is 0. On failure, a
 * thread-local message is available via qcbm_last_error(). Objects are
 * opaque handles released with their matching _free function. Strings
 * returned through char** out-parameters are heap-allocated JSON documents;
 * release them with qcbm_string_free().
 */

#ifndef QCBM_H
#define QCBM_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum qcbm_status {
    QCBM_OK = 0,
    QCBM_ERR_ARGUMENT = 1,   /* invalid argument combination */
    QCBM_ERR_INDEX = 2,      /* qubit or basis index out of range */
    QCBM_ERR_CAPACITY = 3,   /* size guard exceeded */
    QCBM_ERR_CONFIG = 4,     /* configuration document failed validation */
    QCBM_ERR_IO = 5,         /* filesystem or serialization failure */
    QCBM_ERR_INTERNAL = 6
} qcbm_status;

const char* qcbm_status_name(qcbm_status status);

/* Message describing the most recent failure on this thread. */
const char* qcbm_last_error(void);

const char* qcbm_version(void);

void qcbm_string_free(char* text);

/* ------------------------------------------------------------------ */
/* Statevector                                                         */
/* ------------------------------------------------------------------ */

typedef struct qcbm_state qcbm_state;

/* |0...0> on num_qubits in [1, 24]. */
qcbm_status qcbm_state_create(int num_qubits, qcbm_state** out);
void qcbm_state_free(qcbm_state* state);
int qcbm_state_num_qubits(const qcbm_state* state);

qcbm_status qcbm_state_rz(qcbm_state* state, int qubit, double theta);
qcbm_status qcbm_state_rx(qcbm_state* state, int qubit, double theta);
qcbm_status qcbm_state_xx(qcbm_state* state, int qubit_i, int qubit_j, double theta);
qcbm_status qcbm_state_gms(qcbm_state* state, double theta);

/* Copies 2^N real and imaginary parts; both buffers need `len` >= 2^N. */
qcbm_status qcbm_state_amplitudes(const qcbm_state* state, double* re, double* im,
                                  size_t len);

/* ------------------------------------------------------------------ */
/* Distributions                                                       */
/* ------------------------------------------------------------------ */

typedef struct qcbm_dist qcbm_dist;

void qcbm_dist_free(qcbm_dist* dist);
int qcbm_dist_num_qubits(const qcbm_dist* dist);
double qcbm_dist_probability(const qcbm_dist* dist, uint64_t basis_index);
size_t qcbm_dist_support_size(const qcbm_dist* dist);

/* Born-rule probabilities of a state. */
qcbm_status qcbm_state_probabilities(const qcbm_state* state, qcbm_dist** out);

/* num_shots computational-basis measurements, deterministic under seed. */
qcbm_status qcbm_state_sample(const qcbm_state* state, int64_t num_shots,
                              uint64_t seed, qcbm_dist** out);

/* Dataset generators. */
qcbm_status qcbm_dist_bas(int n, int m, qcbm_dist** out);
qcbm_status qcbm_dist_ferromagnet(int num_qubits, qcbm_dist** out);
qcbm_status qcbm_dist_thermal(int num_spins, double temperature, uint64_t instance_seed,
                              qcbm_dist** out);

/* 1 if the basis index encodes a bars-and-stripes image on n x m. */
qcbm_status qcbm_is_bas(uint64_t basis_index, int n, int m, int* out);

/* ------------------------------------------------------------------ */
/* Cost functions                                                      */
/* ------------------------------------------------------------------ */

/* D_KL[target | model] in nats; +infinity when undefined. */
qcbm_status qcbm_kl_divergence(const qcbm_dist* target, const qcbm_dist* model,
                               double* out);

/* Clipped NLL over basis-index samples. */
qcbm_status qcbm_cost_nll(const uint64_t* data, size_t len, const qcbm_dist* model,
                          double epsilon, double* out);

/* Exact earth mover's distance, Hamming ground metric. */
qcbm_status qcbm_cost_emd(const qcbm_dist* target, const qcbm_dist* model, double* out);

/* First/second moment matching error in spin variables. */
qcbm_status qcbm_cost_mm(const qcbm_dist* target, const qcbm_dist* model, double* out);

/* ------------------------------------------------------------------ */
/* Circuit templates                                                   */
/* ------------------------------------------------------------------ */

typedef struct qcbm_circuit qcbm_circuit;

/* topology is "all", "chain" or "star". */
qcbm_status qcbm_circuit_create(int num_qubits, int num_layers, const char* topology,
                                qcbm_circuit** out);
void qcbm_circuit_free(qcbm_circuit* circuit);
int qcbm_circuit_param_count(const qcbm_circuit* circuit);

qcbm_status qcbm_circuit_execute(const qcbm_circuit* circuit, const double* params,
                                 size_t len, qcbm_state** out);

/* GHZ preparation recipe; params buffer receives param_count angles when
 * large enough (query with params == NULL / cap == 0 via *param_len). */
qcbm_status qcbm_ghz_recipe(int num_qubits, qcbm_circuit** circuit, double* params,
                            size_t cap, size_t* param_len);

/* ------------------------------------------------------------------ */
/* Scores and statistics                                               */
/* ------------------------------------------------------------------ */

/* ceil(k H_k) readouts for k equally likely patterns. */
int64_t qcbm_coupon_collector_reads(int64_t num_patterns);

/* qBAS(n,m) over R repetitions; any out-pointer may be NULL. scores must
 * hold `repetitions` doubles when non-NULL. */
qcbm_status qcbm_qbas_score(const qcbm_state* state, int n, int m, int repetitions,
                            uint64_t seed, double* mean_score, double* precision,
                            double* scores);

/* Average two-qubit von Neumann entropy (bits) of a 4-qubit state. */
qcbm_status qcbm_avg_two_qubit_entropy(const qcbm_state* state, double* out);

/* Closed-form BAS(2,2) entropy surface. */
qcbm_status qcbm_s_bas22(double v1, double v2, double* out);

/* ------------------------------------------------------------------ */
/* Experiment runner                                                   */
/* ------------------------------------------------------------------ */

/* Optional command-line style overrides; negative values keep the config
 * file's settings. out_dir NULL keeps the config's output_dir. */
typedef struct qcbm_run_overrides {
    int64_t seed;
    int64_t shots;
    int64_t iterations;
    int64_t restarts;
    const char* out_dir;
} qcbm_run_overrides;

/* Trains per the JSON config, writes trace CSVs + summary.json to the
 * output directory, and (when summary_json != NULL) returns the summary
 * document. */
qcbm_status qcbm_run_train(const char* config_path, const qcbm_run_overrides* overrides,
                           char** summary_json);

/* Full pipeline: train per config, score the lowest-cost circuit with
 * qBAS(n,m), write qbas_report.json next to the training outputs. */
qcbm_status qcbm_run_qbas(const char* config_path, const qcbm_run_overrides* overrides,
                          int repetitions, char** report_json);

/* Scores a previously written run directory (summary.json). */
qcbm_status qcbm_run_qbas_dir(const char* run_dir, int repetitions, int64_t seed,
                              char** report_json);

/* Scores an external shot file (one '0'/'1' string per line). */
qcbm_status qcbm_run_score_shots(const char* shots_path, int n, int m,
                                 const char* out_path, char** report_json);

/* Thermal learning suite. Zero/NULL fields fall back to the presets
 * N in {5,6}, T in {2, 1, 1/1.5}, L in {1,2,3}, 25 instances, 50
 * iterations, 1000 shots. */
typedef struct qcbm_thermal_options {
    const int* sizes;
    size_t num_sizes;
    const double* temperatures;
    size_t num_temperatures;
    const int* depths;
    size_t num_depths;
    int instances;
    int iterations;
    int64_t shots;
    uint64_t seed;
} qcbm_thermal_options;

qcbm_status qcbm_run_thermal_suite(const qcbm_thermal_options* options,
                                   const char* out_dir, char** summary_json);

/* GHZ recipes for N = 2..max_qubits; out_path (optional) receives a JSON
 * report. Returns QCBM_OK even when recipes fail; check the report. */
qcbm_status qcbm_run_ghz_verify(int max_qubits, const char* out_path,
                                char** report_json);

/* Closed-form entropy surface as CSV (v1, v2, entropy_bits). */
qcbm_status qcbm_run_entropy_surface(int grid_size, const char* out_csv);

#ifdef __cplusplus
}
#endif

#endif /* QCBM_H */
