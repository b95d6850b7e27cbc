/*
 * nlsim: state-vector simulator for a nonlinear-ancilla algorithm solving
 * nonlinear Schroedinger equations, with classical reference solvers.
 *
 * C interface. Objects are opaque handles created by nlsim_*_create-style
 * functions and released with the matching *_destroy. Every fallible call
 * returns an nlsim_status; on failure nlsim_last_error() describes the cause
 * (thread-local, valid until the next failing call on the same thread).
 * Output buffers are caller-owned; functions taking a capacity fail with
 * NLSIM_ERR_INVALID_ARGUMENT when it is too small.
 */
#ifndef NLSIM_NLSIM_H_
#define NLSIM_NLSIM_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(NLSIM_BUILDING_LIBRARY)
#    define NLSIM_API __declspec(dllexport)
#  else
#    define NLSIM_API __declspec(dllimport)
#  endif
#else
#  define NLSIM_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum nlsim_status {
  NLSIM_OK = 0,
  NLSIM_ERR_INVALID_ARGUMENT = 1,
  NLSIM_ERR_OUT_OF_RANGE = 2,
  NLSIM_ERR_NUMERICAL = 3,
  NLSIM_ERR_IO = 4,
  NLSIM_ERR_RESOURCE_LIMIT = 5,
  NLSIM_ERR_INTERNAL = 6
} nlsim_status;

NLSIM_API const char* nlsim_version(void);
NLSIM_API const char* nlsim_status_string(nlsim_status status);
NLSIM_API const char* nlsim_last_error(void);

typedef struct nlsim_complex {
  double re;
  double im;
} nlsim_complex;

/* Periodic grid; dims is 1 or 2, points per axis are powers of two and the
 * site index is row-major (last axis fastest). */
typedef struct nlsim_grid {
  int dims;
  int points[2];
  double dx;
  double x0[2];
} nlsim_grid;

typedef struct nlsim_gate_counts {
  uint64_t mcx;
  uint64_t nonlinear;
  uint64_t ancilla_phase;
  uint64_t basic;
} nlsim_gate_counts;

typedef struct nlsim_resource_tally {
  int num_qubits;
  uint64_t basic_constant;
  uint64_t steps;
  uint64_t singles;
  uint64_t pairs;
  nlsim_gate_counts per_step;
  nlsim_gate_counts total;
} nlsim_resource_tally;

typedef enum nlsim_mode { NLSIM_MODE_COMPILED = 0, NLSIM_MODE_DIRECT = 1 } nlsim_mode;

/* Amplitude convention for Hartree couplings. */
typedef enum nlsim_convention {
  NLSIM_CONVENTION_UNIT_NORM = 0,
  NLSIM_CONVENTION_FIELD_SAMPLES = 1
} nlsim_convention;

typedef struct nlsim_kinetic {
  double prefactor; /* T = prefactor * p^2 */
  nlsim_grid grid;
} nlsim_kinetic;

/* ---- register ---------------------------------------------------------- */

typedef struct nlsim_register nlsim_register;

/* sum_k a_k |k>|0>_a, normalized; len must be a power of two >= 2. */
NLSIM_API nlsim_status nlsim_register_create(const nlsim_complex* amplitudes, size_t len,
                                             nlsim_register** out);
NLSIM_API nlsim_status nlsim_register_clone(const nlsim_register* r, nlsim_register** out);
NLSIM_API void nlsim_register_destroy(nlsim_register* r);
NLSIM_API int nlsim_register_num_qubits(const nlsim_register* r);
NLSIM_API size_t nlsim_register_principal_dim(const nlsim_register* r);
/* Flat 2^(n+1) amplitudes, ancilla as least-significant index bit. */
NLSIM_API nlsim_status nlsim_register_amplitudes(const nlsim_register* r, nlsim_complex* out,
                                                 size_t capacity);
/* Ancilla-0 amplitudes a_k, 2^n entries. */
NLSIM_API nlsim_status nlsim_register_principal_amplitudes(const nlsim_register* r,
                                                           nlsim_complex* out, size_t capacity);
NLSIM_API nlsim_status nlsim_register_branch_weights(const nlsim_register* r, double* p0,
                                                     double* p1);
NLSIM_API nlsim_status nlsim_register_apply_mcx(nlsim_register* r, size_t k);
NLSIM_API nlsim_status nlsim_register_apply_nonlinear(nlsim_register* r, double gamma);
NLSIM_API nlsim_status nlsim_register_apply_ancilla_phase(nlsim_register* r, double lambda);
NLSIM_API nlsim_status nlsim_register_apply_principal_diagonal(nlsim_register* r,
                                                               const double* phases, size_t len);
/* grid may be NULL for a single axis over all 2^n principal states. */
NLSIM_API nlsim_status nlsim_register_apply_dft(nlsim_register* r, int inverse,
                                                const nlsim_grid* grid);
NLSIM_API nlsim_status nlsim_register_fidelity(const nlsim_register* a, const nlsim_register* b,
                                               double* out);
NLSIM_API nlsim_status nlsim_register_tensor_square(const nlsim_register* r,
                                                    nlsim_register** out);

/* ---- kernels and couplings ---------------------------------------------- */

typedef struct nlsim_kernel nlsim_kernel;

/* {"form":"constant","value":c} | {"form":"gaussian","amplitude":A,"sigma":s}
 * | {"form":"contact","g":g} | {"form":"tabulated","samples":[...]} */
NLSIM_API nlsim_status nlsim_kernel_from_json(const char* json, nlsim_kernel** out);
NLSIM_API void nlsim_kernel_destroy(nlsim_kernel* k);

typedef struct nlsim_coupling nlsim_coupling;

NLSIM_API nlsim_status nlsim_coupling_from_dense(const double* values, size_t dim,
                                                 nlsim_coupling** out);
NLSIM_API nlsim_status nlsim_coupling_hartree(const nlsim_kernel* kernel, const nlsim_grid* grid,
                                              nlsim_convention convention,
                                              nlsim_coupling** out);
NLSIM_API nlsim_status nlsim_coupling_gross_pitaevskii(double g, const nlsim_grid* grid,
                                                       nlsim_coupling** out);
NLSIM_API nlsim_status nlsim_coupling_navier_stokes(double rho0, const nlsim_grid* grid,
                                                    nlsim_coupling** out);
/* Sparse triplet CSV "row,col,value". */
NLSIM_API nlsim_status nlsim_coupling_read_triplets(const char* path, size_t dim,
                                                    nlsim_coupling** out);
NLSIM_API nlsim_status nlsim_coupling_write_triplets(const nlsim_coupling* f, const char* path);
NLSIM_API void nlsim_coupling_destroy(nlsim_coupling* f);
NLSIM_API size_t nlsim_coupling_dim(const nlsim_coupling* f);
NLSIM_API nlsim_status nlsim_coupling_entry(const nlsim_coupling* f, size_t k, size_t j,
                                            double* out);
NLSIM_API nlsim_status nlsim_coupling_row_sum(const nlsim_coupling* f, size_t k, double* out);
/* *out = 1 when both matrices are bitwise identical. */
NLSIM_API nlsim_status nlsim_coupling_equal(const nlsim_coupling* a, const nlsim_coupling* b,
                                            int* out);

/* ---- compiler ----------------------------------------------------------- */

typedef struct nlsim_sequence nlsim_sequence;

/* singles: dim entries; pairs: dim*(dim-1)/2 entries in lexicographic (k<l). */
NLSIM_API nlsim_status nlsim_gammas(const nlsim_coupling* f, double eps, double* singles,
                                    size_t singles_len, double* pairs, size_t pairs_len);
NLSIM_API nlsim_status nlsim_compile_w(const nlsim_coupling* f, double eps, int prune,
                                       nlsim_sequence** out);
/* Line format: MCX k | NL gamma | APH lambda | DIAG p... | DFT fwd|inv m... */
NLSIM_API nlsim_status nlsim_sequence_from_text(const char* text, nlsim_sequence** out);
/* Writes up to capacity bytes including the terminator; *needed receives the
 * full size (with terminator) so callers can size the buffer. */
NLSIM_API nlsim_status nlsim_sequence_to_text(const nlsim_sequence* s, char* buffer,
                                              size_t capacity, size_t* needed);
NLSIM_API size_t nlsim_sequence_size(const nlsim_sequence* s);
NLSIM_API void nlsim_sequence_destroy(nlsim_sequence* s);
/* measured may be NULL; basic counts use the register's qubit count, c = 1. */
NLSIM_API nlsim_status nlsim_sequence_apply(const nlsim_sequence* s, nlsim_register* r,
                                            nlsim_gate_counts* measured);
NLSIM_API nlsim_status nlsim_apply_w_direct(nlsim_register* r, const nlsim_coupling* f,
                                            double eps);

NLSIM_API nlsim_status nlsim_estimate_resources(int n, uint64_t singles, uint64_t pairs,
                                                uint64_t steps, uint64_t basic_constant,
                                                nlsim_resource_tally* out);
NLSIM_API nlsim_status nlsim_estimate_dense_resources(int n, uint64_t steps,
                                                      uint64_t basic_constant,
                                                      nlsim_resource_tally* out);
/* Nonzero single/pair angle counts of the compiled W for (f, eps). */
NLSIM_API nlsim_status nlsim_coupling_sparsity(const nlsim_coupling* f, double eps,
                                               uint64_t* singles, uint64_t* pairs);

/* ---- evolution ---------------------------------------------------------- */

NLSIM_API nlsim_status nlsim_kinetic_phases(const nlsim_kinetic* spec, double eps, double* out,
                                            size_t len);
NLSIM_API nlsim_status nlsim_trotter_step(nlsim_register* r, const nlsim_coupling* f,
                                          const nlsim_kinetic* spec, double eps,
                                          nlsim_mode mode);

typedef struct nlsim_trajectory nlsim_trajectory;

/* floor(t/eps) first-order steps; snapshots at 0, every record_stride steps
 * (0 = none in between) and at the end. */
NLSIM_API nlsim_status nlsim_evolve(const nlsim_register* r0, const nlsim_coupling* f,
                                    const nlsim_kinetic* spec, double t, double eps,
                                    nlsim_mode mode, uint64_t record_stride,
                                    nlsim_trajectory** out);
NLSIM_API void nlsim_trajectory_destroy(nlsim_trajectory* traj);
NLSIM_API size_t nlsim_trajectory_num_snapshots(const nlsim_trajectory* traj);
NLSIM_API nlsim_status nlsim_trajectory_snapshot(const nlsim_trajectory* traj, size_t index,
                                                 uint64_t* step, double* time,
                                                 nlsim_complex* amplitudes, size_t capacity);
NLSIM_API nlsim_status nlsim_trajectory_final_state(const nlsim_trajectory* traj,
                                                    nlsim_register** out);
NLSIM_API nlsim_status nlsim_trajectory_tally(const nlsim_trajectory* traj,
                                              nlsim_resource_tally* out);
/* Counts observed while executing compiled sequences (zero in direct mode). */
NLSIM_API nlsim_status nlsim_trajectory_measured(const nlsim_trajectory* traj,
                                                 nlsim_gate_counts* out);
NLSIM_API nlsim_status nlsim_trajectory_norm_drift(const nlsim_trajectory* traj, double* out);
/* Columns step,time,k,re,im (density_only = 0) or step,time,k,density. */
NLSIM_API nlsim_status nlsim_trajectory_write_csv(const nlsim_trajectory* traj, const char* path,
                                                  int density_only);

typedef struct nlsim_energy {
  double kinetic;
  double interaction;
  double total;
} nlsim_energy;

/* density and momentum_density may be NULL; otherwise len = 2^n. */
NLSIM_API nlsim_status nlsim_observables(const nlsim_register* r, const nlsim_kinetic* spec,
                                         const nlsim_coupling* f, double* density,
                                         double* momentum_density, size_t len,
                                         nlsim_energy* energy);
/* rho: len entries; velocity: dims*len entries (axis-major), NaN where the
 * density is below 1e-8/dx^dims. */
NLSIM_API nlsim_status nlsim_madelung(const nlsim_register* r, const nlsim_grid* grid,
                                      double* rho, double* velocity, size_t len);

/* ---- classical reference solvers ---------------------------------------- */

/* Physical fields phi(x_k) with sum |phi_k|^2 dx^dims = 1. */
NLSIM_API nlsim_status nlsim_field_from_register(const nlsim_register* r, const nlsim_grid* grid,
                                                 nlsim_complex* out, size_t len);
NLSIM_API nlsim_status nlsim_field_write_csv(const nlsim_complex* phi, const nlsim_grid* grid,
                                             const char* path);
NLSIM_API nlsim_status nlsim_field_read_csv(const char* path, const nlsim_grid* grid,
                                            nlsim_complex* out, size_t len);

/* Strang split-step with V = Phi * |phi|^2 (kernel) or V_k = sum_j f_kj
 * |phi_j|^2 dx^dims (coupling). */
NLSIM_API nlsim_status nlsim_split_step_kernel(const nlsim_complex* phi0, const nlsim_grid* grid,
                                               const nlsim_kernel* kernel,
                                               double kinetic_prefactor, double t, double dt,
                                               nlsim_complex* out);
NLSIM_API nlsim_status nlsim_split_step_coupling(const nlsim_complex* phi0,
                                                 const nlsim_grid* grid,
                                                 const nlsim_coupling* f,
                                                 double kinetic_prefactor, double t, double dt,
                                                 nlsim_complex* out);
/* |phi(dt)-phi(dt/2)| / |phi(dt/2)-phi(dt/4)|, about 4 for second order. */
NLSIM_API nlsim_status nlsim_split_step_convergence(const nlsim_complex* phi0,
                                                    const nlsim_grid* grid,
                                                    const nlsim_kernel* kernel,
                                                    double kinetic_prefactor, double t,
                                                    double dt, double* ratio);

typedef struct nlsim_ground_state_result {
  double chemical_potential;
  double energy;
  double residual;
  int iterations;
} nlsim_ground_state_result;

/* trap may be NULL (V = 0); phi_out receives grid-size samples. */
NLSIM_API nlsim_status nlsim_ground_state(const double* trap, const nlsim_grid* grid, double g,
                                          double kinetic_prefactor, nlsim_complex* phi_out,
                                          nlsim_ground_state_result* result);

typedef struct nlsim_bec_params {
  int points;
  double length;
  double omega;
  double alpha_weight; /* |alpha|^2 */
  double g11;
  double g22;
  double g12;
  double t;
  double dt;
} nlsim_bec_params;

typedef struct nlsim_bec_report {
  double measured_phase[2];
  double predicted_phase[2];
  double measured_relative;
  double predicted_relative;
  double deviation;
} nlsim_bec_report;

/* Prepares both modes in the harmonic-trap ground state and compares the
 * accumulated relative phase with the frozen-profile prediction. */
NLSIM_API nlsim_status nlsim_bec_phase_check(const nlsim_bec_params* params,
                                             nlsim_bec_report* report);

#ifdef __cplusplus
}
#endif

#endif /* NLSIM_NLSIM_H_ */
