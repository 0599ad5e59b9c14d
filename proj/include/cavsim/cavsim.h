#ifndef CAVSIM_CAVSIM_H
#define CAVSIM_CAVSIM_H

/* C interface of the cavsim shared library.
 *
 * Scalar results are written through out-parameters; structured results are
 * returned as opaque handles with explicit destroy functions. Every function
 * that can fail returns a cavsim_status; on failure the out-parameters are
 * untouched and cavsim_last_error_message() (thread-local) describes the
 * problem. Strings returned through char** are malloc'd; release them with
 * cavsim_string_free().
 */

#include <stddef.h>

#if defined(_WIN32)
#define CAVSIM_API __declspec(dllexport)
#else
#define CAVSIM_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum cavsim_status {
    CAVSIM_OK = 0,
    CAVSIM_ERROR_INVALID_ARGUMENT = 1,
    CAVSIM_ERROR_DEGENERATE_DENOMINATOR = 2,
    CAVSIM_ERROR_STEP_TOO_LARGE = 3,
    CAVSIM_ERROR_WINDOW_TOO_SHORT = 4,
    CAVSIM_ERROR_TOO_BROADBAND = 5,
    CAVSIM_ERROR_REGISTER_COLLISION = 6,
    CAVSIM_ERROR_REGISTER_MISMATCH = 7,
    CAVSIM_ERROR_UNKNOWN_REGISTER = 8,
    CAVSIM_ERROR_UNSUPPORTED_ANGLE = 9,
    CAVSIM_ERROR_PATH_OCCUPIED = 10,
    CAVSIM_ERROR_ZERO_NORM_STATE = 11,
    CAVSIM_ERROR_PARSE = 12,
    CAVSIM_ERROR_VALIDATION = 13,
    CAVSIM_ERROR_INVALID_SPEC = 14,
    CAVSIM_ERROR_INVALID_SAMPLE_COUNT = 15,
    CAVSIM_ERROR_INTERNAL = 16
} cavsim_status;

typedef struct cavsim_complex {
    double re;
    double im;
} cavsim_complex;

/* Angular frequencies in rad/s throughout. */
typedef struct cavsim_system_params {
    double omega1;
    double omega2;
    double omega_ge;
    double kappa1;
    double kappa2;
    double gamma;
    double lambda1;
    double lambda2;
} cavsim_system_params;

typedef struct cavsim_pulse {
    double center_frequency; /* rad/s */
    double bandwidth_sigma;  /* rad/s, spectral std of a Gaussian */
    double arrival_time;     /* s */
    int port;                /* 1 or 2 */
} cavsim_pulse;

typedef enum cavsim_gate_kind {
    CAVSIM_GATE_CPHASE = 0,
    CAVSIM_GATE_CCPHASE = 1
} cavsim_gate_kind;

typedef enum cavsim_gate_selection {
    CAVSIM_SELECT_CPHASE = 0,
    CAVSIM_SELECT_CCPHASE = 1,
    CAVSIM_SELECT_BOTH = 2
} cavsim_gate_selection;

typedef struct cavsim_trajectory cavsim_trajectory;
typedef struct cavsim_gate_report cavsim_gate_report;
typedef struct cavsim_table cavsim_table;
typedef struct cavsim_network cavsim_network;

CAVSIM_API const char* cavsim_version(void);
CAVSIM_API const char* cavsim_status_name(cavsim_status status);
CAVSIM_API const char* cavsim_last_error_message(void);
/* 1-based position of the last parse error on this thread; 0 if not set. */
CAVSIM_API int cavsim_last_error_line(void);
CAVSIM_API int cavsim_last_error_column(void);
CAVSIM_API void cavsim_string_free(char* text);

/* ---- presets ---- */

CAVSIM_API size_t cavsim_preset_count(void);
CAVSIM_API const char* cavsim_preset_name(size_t index);
CAVSIM_API cavsim_status cavsim_preset_get(const char* name, cavsim_system_params* out);

/* ---- frequency-domain scattering ---- */

CAVSIM_API cavsim_status cavsim_detunings(const cavsim_system_params* params, double omega,
                                          double* delta1, double* delta2, double* delta_ge);
CAVSIM_API cavsim_status cavsim_scatter_coefficients(const cavsim_system_params* params,
                                                     double omega, cavsim_complex* r,
                                                     cavsim_complex* t);
CAVSIM_API cavsim_status cavsim_empty_cavity_reflection(double kappa1, double delta1,
                                                        cavsim_complex* r);
CAVSIM_API cavsim_status cavsim_resonant_coefficients(double kappa, double gamma, double lambda,
                                                      double* r0, double* t0, double* p);

/* ---- time-domain oracle ---- */

CAVSIM_API cavsim_status cavsim_default_time_step(const cavsim_system_params* params,
                                                  const cavsim_pulse* pulse, double* dt);
CAVSIM_API cavsim_status cavsim_integrate_amplitudes(const cavsim_system_params* params,
                                                     const cavsim_pulse* pulse, double t_start,
                                                     double t_end, double dt,
                                                     cavsim_trajectory** out);
CAVSIM_API void cavsim_trajectory_destroy(cavsim_trajectory* traj);
CAVSIM_API size_t cavsim_trajectory_size(const cavsim_trajectory* traj);
CAVSIM_API cavsim_status cavsim_trajectory_csv(const cavsim_trajectory* traj, size_t stride,
                                               char** out);
CAVSIM_API cavsim_status cavsim_energy_balance(const cavsim_trajectory* traj,
                                               const cavsim_system_params* params,
                                               double* residual);
CAVSIM_API cavsim_status cavsim_extract_scatter_coefficients(const cavsim_trajectory* traj,
                                                             const cavsim_pulse* pulse,
                                                             cavsim_complex* r,
                                                             cavsim_complex* t);

/* ---- gate protocols ---- */

/* amplitudes: a1,b1,a2,b2[,a3,b3] -- 4 entries for cphase, 6 for ccphase. */
CAVSIM_API cavsim_status cavsim_gate_run(cavsim_gate_kind kind, const cavsim_complex* amplitudes,
                                         size_t n_amplitudes, double p, cavsim_gate_report** out);
/* photons_json: JSON array of single-photon states as emitted under
 * "input"/"photons" in the report document. */
CAVSIM_API cavsim_status cavsim_gate_run_state_json(cavsim_gate_kind kind,
                                                    const char* photons_json, double p,
                                                    cavsim_gate_report** out);
CAVSIM_API void cavsim_gate_report_destroy(cavsim_gate_report* report);
CAVSIM_API cavsim_status cavsim_gate_report_fidelity(const cavsim_gate_report* report,
                                                     double* fidelity);
CAVSIM_API cavsim_status cavsim_gate_report_efficiency(const cavsim_gate_report* report,
                                                       double* efficiency);
CAVSIM_API cavsim_status cavsim_gate_report_json(const cavsim_gate_report* report, char** out);

/* entries: row-major dim x dim with dim = 4 (cphase) or 8 (ccphase); capacity
 * is the number of cavsim_complex slots available at entries. */
CAVSIM_API cavsim_status cavsim_truth_table(cavsim_gate_kind kind, double p,
                                            cavsim_complex* entries, size_t capacity,
                                            size_t* dim);

/* ---- averaged metrics ---- */

CAVSIM_API cavsim_status cavsim_closed_form_averages(cavsim_gate_kind kind, double p,
                                                     double* fidelity, double* efficiency);
CAVSIM_API cavsim_status cavsim_quadrature_averages(cavsim_gate_kind kind, double p,
                                                    int n_per_angle, double* fidelity,
                                                    double* efficiency);

/* ---- parameter sweeps ---- */

CAVSIM_API cavsim_status cavsim_sweep_resonant(double ratio_min, double ratio_max, size_t points,
                                               cavsim_table** out);
CAVSIM_API cavsim_status cavsim_sweep_fidelity(double lk_min, double lk_max, size_t lk_points,
                                               double lg_min, double lg_max, size_t lg_points,
                                               cavsim_gate_selection gates, cavsim_table** out);
CAVSIM_API void cavsim_table_destroy(cavsim_table* table);
CAVSIM_API size_t cavsim_table_rows(const cavsim_table* table);
CAVSIM_API size_t cavsim_table_columns(const cavsim_table* table);
CAVSIM_API const char* cavsim_table_column_name(const cavsim_table* table, size_t column);
CAVSIM_API cavsim_status cavsim_table_value(const cavsim_table* table, size_t row, size_t column,
                                            double* value);
CAVSIM_API cavsim_status cavsim_table_csv(const cavsim_table* table, char** out);
CAVSIM_API cavsim_status cavsim_table_json(const cavsim_table* table, char** out);

/* ---- network description files ---- */

CAVSIM_API cavsim_status cavsim_network_parse(const char* text, cavsim_network** out);
CAVSIM_API void cavsim_network_destroy(cavsim_network* network);
CAVSIM_API cavsim_status cavsim_network_photon_count(const cavsim_network* network,
                                                     size_t* count);
/* photon_amps holds a,b pairs, 2 * n_photons entries; returns the joint state
 * (all flights ended) as JSON. */
CAVSIM_API cavsim_status cavsim_network_run_json(const cavsim_network* network,
                                                 const cavsim_complex* photon_amps,
                                                 size_t n_amplitudes, double p, char** out);

#ifdef __cplusplus
}
#endif

#endif /* CAVSIM_CAVSIM_H */
