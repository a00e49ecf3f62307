// Copyright 2026 The edrlab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef EDRLAB_EDRLAB_H
#define EDRLAB_EDRLAB_H

/* C interface to edrlab. Every call returns an edrlab_status; on failure the
 * message is available from edrlab_last_error() on the calling thread until
 * the next failing call there. Objects are opaque handles released with the
 * matching *_free function (free functions accept NULL).
 *
 * Complex matrices and vectors are passed as interleaved (re, im) doubles in
 * row-major order: entry (i, j) of an n x n matrix sits at 2*(i*n + j). The
 * composite space is system (x) probe with the system index major. */

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(EDRLAB_BUILDING_LIBRARY)
#define EDRLAB_API __attribute__((visibility("default")))
#else
#define EDRLAB_API
#endif

typedef enum edrlab_status {
    EDRLAB_OK = 0,
    EDRLAB_ERR_INVALID_ARGUMENT = 1,
    EDRLAB_ERR_DIMENSION = 2,
    EDRLAB_ERR_VALIDATION = 3,
    EDRLAB_ERR_PRECONDITION = 4,
    EDRLAB_ERR_CONFIG = 5,
    EDRLAB_ERR_UNKNOWN_SCENARIO = 6,
    EDRLAB_ERR_IO = 7,
    EDRLAB_ERR_NUMERIC = 8,
    EDRLAB_ERR_INTERNAL = 9
} edrlab_status;

EDRLAB_API const char *edrlab_version(void);
EDRLAB_API const char *edrlab_status_name(edrlab_status status);
EDRLAB_API const char *edrlab_last_error(void);

/* Configuration: later assignments win, so load the file first and apply
 * command-line overrides after it. */
typedef struct edrlab_config edrlab_config;
EDRLAB_API edrlab_status edrlab_config_new(edrlab_config **out);
EDRLAB_API edrlab_status edrlab_config_load(edrlab_config *config, const char *path);
EDRLAB_API edrlab_status edrlab_config_set(edrlab_config *config, const char *key, const char *value);
EDRLAB_API void edrlab_config_free(edrlab_config *config);

/* Scenarios. */
EDRLAB_API size_t edrlab_scenario_count(void);
EDRLAB_API const char *edrlab_scenario_name(size_t index);
EDRLAB_API const char *edrlab_scenario_summary(size_t index);

typedef struct edrlab_result edrlab_result;
/* Runs a scenario and writes <out_dir>/<scenario>.json and .csv. A scenario
 * whose assertions fail still returns EDRLAB_OK; see edrlab_result_passed. */
EDRLAB_API edrlab_status edrlab_run(const char *scenario, const edrlab_config *config,
                                    const char *out_dir, edrlab_result **out);
EDRLAB_API int edrlab_result_passed(const edrlab_result *result);
EDRLAB_API size_t edrlab_result_check_count(const edrlab_result *result);
EDRLAB_API edrlab_status edrlab_result_check(const edrlab_result *result, size_t index,
                                             const char **name, int *criterion, int *passed);
EDRLAB_API const char *edrlab_result_json_path(const edrlab_result *result);
EDRLAB_API const char *edrlab_result_csv_path(const edrlab_result *result);
EDRLAB_API void edrlab_result_free(edrlab_result *result);

/* Long-format plot table (scenario,parameter,quantity,value) from a report. */
EDRLAB_API edrlab_status edrlab_emit_plot_data(const char *report_path, const char *csv_path);

/* Relation sides. */
typedef struct edrlab_relation {
    double lhs;
    double bound;
    int satisfied;
} edrlab_relation;

typedef struct edrlab_edr_report {
    double epsilon_A;
    double eta_B;
    double sigma_A;
    double sigma_B;
    double correlation_term;
    double commutator_bound;
    edrlab_relation heisenberg;
    edrlab_relation universal;
    edrlab_relation ozawa;
    int has_locally_uniform; /* epsilon_bar, eta_bar, locally_uniform */
    double epsilon_bar;
    double eta_bar;
    edrlab_relation locally_uniform;
    int has_error_free;
    edrlab_relation error_free;
    int has_non_disturbing;
    edrlab_relation non_disturbing;
} edrlab_edr_report;

/* Continuous-variable models. */
typedef enum edrlab_cv_model { EDRLAB_CV_VON_NEUMANN = 0, EDRLAB_CV_OZAWA_1988 = 1 } edrlab_cv_model;

typedef struct edrlab_mode {
    double mean_q;
    double mean_p;
    double var_q;
    double var_p;
    double cov_qp;
} edrlab_mode;

typedef struct edrlab_gaussian edrlab_gaussian;
EDRLAB_API edrlab_status edrlab_gaussian_new(const edrlab_mode *object, const edrlab_mode *probe,
                                             double hbar, edrlab_gaussian **out);
EDRLAB_API void edrlab_gaussian_free(edrlab_gaussian *state);
/* 4x4 transfer matrix, row-major, ordering (Q, P, Qbar, Pbar). */
EDRLAB_API edrlab_status edrlab_cv_transfer(edrlab_cv_model model, double tau_fraction, double out[16]);
EDRLAB_API edrlab_status edrlab_cv_edr(edrlab_cv_model model, const edrlab_gaussian *state,
                                       edrlab_edr_report *out);

/* Finite-dimensional measuring processes. */
typedef struct edrlab_process edrlab_process;
/* probe_state: probe_dim complex entries; coupling: (system_dim*probe_dim)^2;
 * meter: probe_dim^2. */
EDRLAB_API edrlab_status edrlab_process_new(size_t system_dim, size_t probe_dim,
                                            const double *probe_state, const double *coupling,
                                            const double *meter, edrlab_process **out);
EDRLAB_API void edrlab_process_free(edrlab_process *process);
/* a, b, rho: system_dim x system_dim. */
EDRLAB_API edrlab_status edrlab_rms_error(const edrlab_process *process, const double *a,
                                          const double *rho, double *out);
EDRLAB_API edrlab_status edrlab_rms_disturbance(const edrlab_process *process, const double *b,
                                                const double *rho, double *out);
EDRLAB_API edrlab_status edrlab_evaluate_edr(const edrlab_process *process, const double *a,
                                             const double *b, const double *rho, int locally_uniform,
                                             edrlab_edr_report *out);

#ifdef __cplusplus
}
#endif

#endif /* EDRLAB_EDRLAB_H */
