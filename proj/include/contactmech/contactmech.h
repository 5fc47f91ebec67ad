/*
 * contactmech - structure-preserving simulation of combined
 * conservative-dissipative mechanics.
 *
 * C interface to the shared library. All functions return a cm_status; out
 * parameters are written only on CM_OK. Handles are opaque and must be
 * released with the matching *_free call. cm_last_error() returns a
 * thread-local detail message for the most recent failure on the calling
 * thread.
 */

#ifndef CONTACTMECH_H
#define CONTACTMECH_H

#include <stddef.h>

#ifndef CM_API
#if defined(_MSC_VER) && defined(contactmech_EXPORTS)
#define CM_API __declspec(dllexport)
#else
#define CM_API
#endif
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum cm_status {
    CM_OK = 0,
    CM_ERROR_NULL_POINTER = 1,
    CM_ERROR_INVALID_ARGUMENT = 2,  /* contract violation (bad value, mismatch) */
    CM_ERROR_NONFINITE = 3,         /* NaN/Inf in a state or callback result */
    CM_ERROR_NOT_EQUILIBRIUM = 4,
    CM_ERROR_IO = 5,
    CM_ERROR_CHECK_FAILED = 6,      /* an experiment's internal check failed */
    CM_ERROR_INTERNAL = 7
} cm_status;

typedef enum cm_method {
    CM_METHOD_CONTACT_STRANG = 0, /* splitting of kinetic/potential/damping subflows */
    CM_METHOD_RK4 = 1             /* classical RK4 on the full contact equations */
} cm_method;

CM_API const char* cm_version(void);
CM_API const char* cm_status_name(cm_status status);
CM_API const char* cm_last_error(void);
CM_API void cm_string_free(char* text);

/* ------------------------------------------------------------------------
 * Separated contact Hamiltonian H(q,p,s) = |p|^2/(2m) + V(q) + gamma*s
 * ---------------------------------------------------------------------- */

typedef struct cm_model cm_model;

/* V(q) = stiffness/2 * |q|^2 */
CM_API cm_status cm_model_create_harmonic(int dim, double stiffness, double gamma, double mass,
                                          cm_model** out);

/* The planar well with cubic coupling: V = (q1^2+q2^2)/2 + 0.1 q1^2 q2. */
CM_API cm_status cm_model_create_coupled_well_2d(double gamma, cm_model** out);

/* User potential. The gradient callback fills grad_out (length dim).
 * `user` is passed through untouched. Callbacks must not throw. */
typedef double (*cm_potential_fn)(const double* q, int dim, void* user);
typedef void (*cm_gradient_fn)(const double* q, int dim, double* grad_out, void* user);
CM_API cm_status cm_model_create_custom(int dim, cm_potential_fn potential,
                                        cm_gradient_fn gradient, double gamma, double mass,
                                        void* user, cm_model** out);

CM_API void cm_model_free(cm_model* model);
CM_API cm_status cm_model_dim(const cm_model* model, int* out);

CM_API cm_status cm_total_energy(const cm_model* model, const double* q, const double* p,
                                 double s, int dim, double* out);
CM_API cm_status cm_mechanical_energy(const cm_model* model, const double* q, const double* p,
                                      double s, int dim, double* out);
/* dq, dp have length dim. */
CM_API cm_status cm_contact_rhs(const cm_model* model, const double* q, const double* p,
                                double s, int dim, double* dq, double* dp, double* ds);
CM_API cm_status cm_dissipation_rate(const cm_model* model, const double* q, const double* p,
                                     double s, int dim, double* out);

/* ------------------------------------------------------------------------
 * Integrators. Steppers update q, p, s in place.
 * ---------------------------------------------------------------------- */

CM_API cm_status cm_kinetic_flow(const cm_model* model, double h, double* q, double* p,
                                 double* s, int dim);
CM_API cm_status cm_potential_flow(const cm_model* model, double h, double* q, double* p,
                                   double* s, int dim);
CM_API cm_status cm_damping_flow(const cm_model* model, double h, double* q, double* p,
                                 double* s, int dim);
CM_API cm_status cm_strang_step(const cm_model* model, double h, double* q, double* p,
                                double* s, int dim);
CM_API cm_status cm_rk4_step(const cm_model* model, double h, double* q, double* p, double* s,
                             int dim);

typedef struct cm_trajectory cm_trajectory;

/* Runs round(t_final/step) steps (step must divide t_final to 1e-6),
 * recording every record_every-th state. */
CM_API cm_status cm_integrate(const cm_model* model, const double* q0, const double* p0,
                              double s0, int dim, double step, double t_final, int record_every,
                              cm_method method, cm_trajectory** out);

CM_API size_t cm_trajectory_length(const cm_trajectory* traj);
CM_API int cm_trajectory_dim(const cm_trajectory* traj);
CM_API cm_status cm_trajectory_time(const cm_trajectory* traj, size_t index, double* out);
CM_API cm_status cm_trajectory_state(const cm_trajectory* traj, size_t index, double* q,
                                     double* p, double* s);
/* h0 = T + V, h = T + V + gamma*s, p_sq = |p|^2; any output may be NULL. */
CM_API cm_status cm_trajectory_observables(const cm_trajectory* traj, size_t index, double* h0,
                                           double* h, double* p_sq);
CM_API void cm_trajectory_free(cm_trajectory* traj);

/* Planar angular momentum J = q1 p2 - q2 p1 of every sample vs J(0)e^{-gamma t};
 * writes the max relative deviation. Trajectory must be 2-dimensional. */
CM_API cm_status cm_momentum_decay_deviation(const cm_trajectory* traj, double gamma,
                                             double* out);

/* Global energy error (max_t |H0 - H0_ref|) per step size against an RK4
 * reference at min(steps)/100. errors_out has length n_steps; slope_out
 * receives the fitted log-log slope (may be NULL). */
CM_API cm_status cm_convergence_study(const cm_model* model, const double* q0, const double* p0,
                                      double s0, int dim, const double* steps, int n_steps,
                                      double t_final, cm_method method, double* errors_out,
                                      double* slope_out);

/* ------------------------------------------------------------------------
 * Momentum maps
 * ---------------------------------------------------------------------- */

CM_API cm_status cm_momentum_planar(const double* q, const double* p, int dim, double* out);
CM_API cm_status cm_momentum_body(const double axis[3], const double M[3], double* out);
/* mu(t) = e^{-gamma t} mu0 */
CM_API cm_status cm_momentum_level(double mu0, double gamma, double t, double* out);

/* ------------------------------------------------------------------------
 * Dissipative rigid body on SO(3). Attitude matrices are row-major 3x3.
 * ---------------------------------------------------------------------- */

typedef struct cm_rigid_model cm_rigid_model;

CM_API cm_status cm_rigid_model_create_isotropic(const double inertia[3], double gamma,
                                                 cm_rigid_model** out);
/* damping is a symmetric positive-semidefinite 3x3, row-major. */
CM_API cm_status cm_rigid_model_create_anisotropic(const double inertia[3],
                                                   const double damping[9],
                                                   cm_rigid_model** out);
CM_API void cm_rigid_model_free(cm_rigid_model* model);

/* H0 = M . I^{-1} M / 2 */
CM_API cm_status cm_rigid_energy(const cm_rigid_model* model, const double M[3], double* out);
CM_API cm_status cm_rigid_rhs(const cm_rigid_model* model, const double R[9], const double M[3],
                              double s, double dR[9], double dM[3], double* ds);
/* One step in place: RK4 on (M, s) plus a Lie-group attitude update. */
CM_API cm_status cm_rigid_step(const cm_rigid_model* model, double h, double R[9], double M[3],
                               double* s);

/* Linearization A dM = dM x Omega* + M* x I^{-1} dM - D dM about an
 * equilibrium (CM_ERROR_NOT_EQUILIBRIUM otherwise). A is row-major. */
CM_API cm_status cm_rigid_linearize(const cm_rigid_model* model, const double M_star[3],
                                    double A[9]);

typedef enum cm_stability {
    CM_STABILITY_ASYMPTOTIC = 0,
    CM_STABILITY_SADDLE = 1,
    CM_STABILITY_MARGINAL = 2,
    CM_STABILITY_ORIGIN_SINK = 3,
    CM_STABILITY_DEGENERATE_FAMILY = 4
} cm_stability;

CM_API const char* cm_stability_name(cm_stability value);
CM_API cm_status cm_rigid_classify(const cm_rigid_model* model, const double M_star[3],
                                   cm_stability* out);

typedef struct cm_equilibrium_report cm_equilibrium_report;

CM_API cm_status cm_rigid_find_equilibria(const cm_rigid_model* model, double tol,
                                          cm_equilibrium_report** out);
CM_API size_t cm_equilibrium_count(const cm_equilibrium_report* report);
/* axis_index: 1..3 principal axis, 0 origin, -1 degenerate family.
 * eig_re/eig_im receive the three linearization eigenvalues. Outputs may be
 * NULL where not needed. */
CM_API cm_status cm_equilibrium_get(const cm_equilibrium_report* report, size_t index,
                                    int* axis_index, double M_star[3], cm_stability* stability,
                                    double eig_re[3], double eig_im[3]);
CM_API void cm_equilibrium_report_free(cm_equilibrium_report* report);

/* ------------------------------------------------------------------------
 * Experiment runner (CSV + text report emission)
 * ---------------------------------------------------------------------- */

/* name: oscillator | particle2d | rigidbody | convergence | equilibria.
 * keys/values: n_params parallel arrays of parameter strings. out_dir is
 * created if missing (NULL or "" means the current directory). On success or
 * CM_ERROR_CHECK_FAILED, *report_out (if non-NULL) receives the report text;
 * release it with cm_string_free. */
CM_API cm_status cm_experiment_run(const char* name, const char* const* keys,
                                   const char* const* values, size_t n_params,
                                   const char* out_dir, char** report_out);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* CONTACTMECH_H */
