#include "contactmech/contactmech.h"

#include "core/contact_core.hpp"
#include "core/experiments.hpp"
#include "core/hamiltonian.hpp"
#include "core/integrators.hpp"
#include "core/rigid_body.hpp"
#include "core/symmetry.hpp"
#include "core/types.hpp"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

using contactmech::ContactState;
using contactmech::SeparatedHamiltonian;

struct cm_model {
    SeparatedHamiltonian impl;
};

struct cm_trajectory {
    contactmech::TrajectoryRecord impl;
};

struct cm_rigid_model {
    contactmech::InertiaTensor inertia;
    contactmech::DampingModel damping;
};

struct cm_equilibrium_report {
    contactmech::EquilibriumReport impl;
};

namespace {

thread_local std::string t_last_error;

template <typename Fn>
cm_status guarded(Fn&& fn) noexcept {
    try {
        return fn();
    } catch (const contactmech::NotEquilibrium& e) {
        t_last_error = e.what();
        return CM_ERROR_NOT_EQUILIBRIUM;
    } catch (const contactmech::NumericError& e) {
        t_last_error = e.what();
        return CM_ERROR_NONFINITE;
    } catch (const contactmech::IoError& e) {
        t_last_error = e.what();
        return CM_ERROR_IO;
    } catch (const std::invalid_argument& e) {
        t_last_error = e.what();
        return CM_ERROR_INVALID_ARGUMENT;
    } catch (const std::bad_alloc&) {
        t_last_error = "out of memory";
        return CM_ERROR_INTERNAL;
    } catch (const std::exception& e) {
        t_last_error = e.what();
        return CM_ERROR_INTERNAL;
    } catch (...) {
        t_last_error = "unknown failure";
        return CM_ERROR_INTERNAL;
    }
}

cm_status null_arg(const char* name) {
    t_last_error = std::string("null pointer argument: ") + name;
    return CM_ERROR_NULL_POINTER;
}

ContactState make_state(const double* q, const double* p, double s, int dim) {
    if (dim < 1)
        throw std::invalid_argument("dimension must be >= 1");
    return ContactState(Eigen::Map<const Eigen::VectorXd>(q, dim),
                        Eigen::Map<const Eigen::VectorXd>(p, dim), s);
}

void store_state(const ContactState& x, double* q, double* p, double* s) {
    Eigen::Map<Eigen::VectorXd>{q, x.dim()} = x.q;
    Eigen::Map<Eigen::VectorXd>{p, x.dim()} = x.p;
    *s = x.s;
}

Eigen::Matrix3d load_matrix(const double* m) {
    return Eigen::Map<const Eigen::Matrix<double, 3, 3, Eigen::RowMajor>>(m);
}

void store_matrix(const Eigen::Matrix3d& src, double* m) {
    Eigen::Map<Eigen::Matrix<double, 3, 3, Eigen::RowMajor>>{m} = src;
}

contactmech::RigidBodyState make_rigid_state(const double* R, const double* M, double s) {
    contactmech::RigidBodyState x;
    x.R = load_matrix(R);
    x.M = Eigen::Map<const Eigen::Vector3d>(M);
    x.s = s;
    return x;
}

using Flow = ContactState (*)(double, const ContactState&, const SeparatedHamiltonian&);

cm_status apply_flow(Flow flow, const cm_model* model, double h, double* q, double* p, double* s,
                     int dim) {
    if (!model)
        return null_arg("model");
    if (!q || !p || !s)
        return null_arg("state");
    return guarded([&] {
        const ContactState y = flow(h, make_state(q, p, *s, dim), model->impl);
        store_state(y, q, p, s);
        return CM_OK;
    });
}

char* copy_string(const std::string& text) {
    char* out = static_cast<char*>(std::malloc(text.size() + 1));
    if (out)
        std::memcpy(out, text.c_str(), text.size() + 1);
    return out;
}

} // namespace

extern "C" {

const char* cm_version(void) { return "1.0.0"; }

const char* cm_status_name(cm_status status) {
    switch (status) {
    case CM_OK: return "ok";
    case CM_ERROR_NULL_POINTER: return "null pointer";
    case CM_ERROR_INVALID_ARGUMENT: return "invalid argument";
    case CM_ERROR_NONFINITE: return "non-finite value";
    case CM_ERROR_NOT_EQUILIBRIUM: return "not an equilibrium";
    case CM_ERROR_IO: return "i/o failure";
    case CM_ERROR_CHECK_FAILED: return "experiment check failed";
    case CM_ERROR_INTERNAL: return "internal error";
    }
    return "?";
}

const char* cm_last_error(void) { return t_last_error.c_str(); }

void cm_string_free(char* text) { std::free(text); }

/* ---- models ---------------------------------------------------------- */

cm_status cm_model_create_harmonic(int dim, double stiffness, double gamma, double mass,
                                   cm_model** out) {
    if (!out)
        return null_arg("out");
    return guarded([&] {
        *out = new cm_model{SeparatedHamiltonian::harmonic(dim, stiffness, gamma, mass)};
        return CM_OK;
    });
}

cm_status cm_model_create_coupled_well_2d(double gamma, cm_model** out) {
    if (!out)
        return null_arg("out");
    return guarded([&] {
        *out = new cm_model{SeparatedHamiltonian::coupled_well_2d(gamma)};
        return CM_OK;
    });
}

cm_status cm_model_create_custom(int dim, cm_potential_fn potential, cm_gradient_fn gradient,
                                 double gamma, double mass, void* user, cm_model** out) {
    if (!out)
        return null_arg("out");
    if (!potential || !gradient)
        return null_arg("potential/gradient");
    return guarded([&] {
        auto pot = [potential, user, dim](const Eigen::VectorXd& q) {
            return potential(q.data(), dim, user);
        };
        auto grad = [gradient, user, dim](const Eigen::VectorXd& q) {
            Eigen::VectorXd g(dim);
            gradient(q.data(), dim, g.data(), user);
            return g;
        };
        *out = new cm_model{SeparatedHamiltonian(dim, pot, grad, gamma, mass)};
        return CM_OK;
    });
}

void cm_model_free(cm_model* model) { delete model; }

cm_status cm_model_dim(const cm_model* model, int* out) {
    if (!model || !out)
        return null_arg(!model ? "model" : "out");
    *out = static_cast<int>(model->impl.dim());
    return CM_OK;
}

/* ---- pointwise evaluations ------------------------------------------- */

cm_status cm_total_energy(const cm_model* model, const double* q, const double* p, double s,
                          int dim, double* out) {
    if (!model || !q || !p || !out)
        return null_arg("model/q/p/out");
    return guarded([&] {
        *out = contactmech::total_energy(model->impl, make_state(q, p, s, dim));
        return CM_OK;
    });
}

cm_status cm_mechanical_energy(const cm_model* model, const double* q, const double* p, double s,
                               int dim, double* out) {
    if (!model || !q || !p || !out)
        return null_arg("model/q/p/out");
    return guarded([&] {
        *out = contactmech::mechanical_energy(model->impl, make_state(q, p, s, dim));
        return CM_OK;
    });
}

cm_status cm_contact_rhs(const cm_model* model, const double* q, const double* p, double s,
                         int dim, double* dq, double* dp, double* ds) {
    if (!model || !q || !p || !dq || !dp || !ds)
        return null_arg("model/q/p/dq/dp/ds");
    return guarded([&] {
        const auto f = contactmech::contact_rhs(model->impl, make_state(q, p, s, dim));
        Eigen::Map<Eigen::VectorXd>{dq, static_cast<Eigen::Index>(dim)} = f.dq;
        Eigen::Map<Eigen::VectorXd>{dp, static_cast<Eigen::Index>(dim)} = f.dp;
        *ds = f.ds;
        return CM_OK;
    });
}

cm_status cm_dissipation_rate(const cm_model* model, const double* q, const double* p, double s,
                              int dim, double* out) {
    if (!model || !q || !p || !out)
        return null_arg("model/q/p/out");
    return guarded([&] {
        *out = contactmech::dissipation_rate(model->impl, make_state(q, p, s, dim));
        return CM_OK;
    });
}

/* ---- steppers --------------------------------------------------------- */

cm_status cm_kinetic_flow(const cm_model* model, double h, double* q, double* p, double* s,
                          int dim) {
    return apply_flow(&contactmech::kinetic_flow, model, h, q, p, s, dim);
}

cm_status cm_potential_flow(const cm_model* model, double h, double* q, double* p, double* s,
                            int dim) {
    return apply_flow(&contactmech::potential_flow, model, h, q, p, s, dim);
}

cm_status cm_damping_flow(const cm_model* model, double h, double* q, double* p, double* s,
                          int dim) {
    return apply_flow(&contactmech::damping_flow, model, h, q, p, s, dim);
}

cm_status cm_strang_step(const cm_model* model, double h, double* q, double* p, double* s,
                         int dim) {
    return apply_flow(&contactmech::strang_step, model, h, q, p, s, dim);
}

cm_status cm_rk4_step(const cm_model* model, double h, double* q, double* p, double* s,
                      int dim) {
    return apply_flow(&contactmech::rk4_step, model, h, q, p, s, dim);
}

/* ---- trajectories ------------------------------------------------------ */

cm_status cm_integrate(const cm_model* model, const double* q0, const double* p0, double s0,
                       int dim, double step, double t_final, int record_every, cm_method method,
                       cm_trajectory** out) {
    if (!model || !q0 || !p0 || !out)
        return null_arg("model/q0/p0/out");
    return guarded([&] {
        contactmech::IntegratorConfig cfg;
        cfg.step = step;
        cfg.t_final = t_final;
        cfg.record_every = record_every;
        cfg.method = method == CM_METHOD_RK4 ? contactmech::Method::RK4Reference
                                             : contactmech::Method::ContactStrang;
        *out = new cm_trajectory{
            contactmech::integrate(make_state(q0, p0, s0, dim), model->impl, cfg)};
        return CM_OK;
    });
}

size_t cm_trajectory_length(const cm_trajectory* traj) { return traj ? traj->impl.size() : 0; }

int cm_trajectory_dim(const cm_trajectory* traj) {
    if (!traj || traj->impl.states.empty())
        return 0;
    return static_cast<int>(traj->impl.states.front().dim());
}

cm_status cm_trajectory_time(const cm_trajectory* traj, size_t index, double* out) {
    if (!traj || !out)
        return null_arg("traj/out");
    if (index >= traj->impl.size()) {
        t_last_error = "trajectory index out of range";
        return CM_ERROR_INVALID_ARGUMENT;
    }
    *out = traj->impl.times[index];
    return CM_OK;
}

cm_status cm_trajectory_state(const cm_trajectory* traj, size_t index, double* q, double* p,
                              double* s) {
    if (!traj || !q || !p || !s)
        return null_arg("traj/q/p/s");
    if (index >= traj->impl.size()) {
        t_last_error = "trajectory index out of range";
        return CM_ERROR_INVALID_ARGUMENT;
    }
    store_state(traj->impl.states[index], q, p, s);
    return CM_OK;
}

cm_status cm_trajectory_observables(const cm_trajectory* traj, size_t index, double* h0,
                                    double* h, double* p_sq) {
    if (!traj)
        return null_arg("traj");
    if (index >= traj->impl.size()) {
        t_last_error = "trajectory index out of range";
        return CM_ERROR_INVALID_ARGUMENT;
    }
    if (h0)
        *h0 = traj->impl.mechanical_energy[index];
    if (h)
        *h = traj->impl.total_energy[index];
    if (p_sq)
        *p_sq = traj->impl.momentum_squared[index];
    return CM_OK;
}

void cm_trajectory_free(cm_trajectory* traj) { delete traj; }

cm_status cm_momentum_decay_deviation(const cm_trajectory* traj, double gamma, double* out) {
    if (!traj || !out)
        return null_arg("traj/out");
    return guarded([&] {
        *out = contactmech::momentum_decay_deviation(
            traj->impl, contactmech::SymmetryGenerator::planar_rotation(), gamma);
        return CM_OK;
    });
}

cm_status cm_convergence_study(const cm_model* model, const double* q0, const double* p0,
                               double s0, int dim, const double* steps, int n_steps,
                               double t_final, cm_method method, double* errors_out,
                               double* slope_out) {
    if (!model || !q0 || !p0 || !steps || !errors_out)
        return null_arg("model/q0/p0/steps/errors_out");
    return guarded([&] {
        if (n_steps < 1)
            throw std::invalid_argument("n_steps must be >= 1");
        const auto points = contactmech::convergence_study(
            make_state(q0, p0, s0, dim), model->impl,
            std::vector<double>(steps, steps + n_steps), t_final,
            method == CM_METHOD_RK4 ? contactmech::Method::RK4Reference
                                    : contactmech::Method::ContactStrang);
        for (int i = 0; i < n_steps; ++i)
            errors_out[i] = points[static_cast<size_t>(i)].error;
        if (slope_out)
            *slope_out = contactmech::fitted_slope(points);
        return CM_OK;
    });
}

/* ---- momentum maps ----------------------------------------------------- */

cm_status cm_momentum_planar(const double* q, const double* p, int dim, double* out) {
    if (!q || !p || !out)
        return null_arg("q/p/out");
    return guarded([&] {
        *out = contactmech::momentum_value(contactmech::SymmetryGenerator::planar_rotation(),
                                           make_state(q, p, 0.0, dim));
        return CM_OK;
    });
}

cm_status cm_momentum_body(const double axis[3], const double M[3], double* out) {
    if (!axis || !M || !out)
        return null_arg("axis/M/out");
    return guarded([&] {
        const auto gen = contactmech::SymmetryGenerator::body_rotation(
            Eigen::Map<const Eigen::Vector3d>(axis));
        contactmech::RigidBodyState x;
        x.M = Eigen::Map<const Eigen::Vector3d>(M);
        *out = contactmech::momentum_value(gen, x);
        return CM_OK;
    });
}

cm_status cm_momentum_level(double mu0, double gamma, double t, double* out) {
    if (!out)
        return null_arg("out");
    *out = contactmech::momentum_level(mu0, gamma, t);
    return CM_OK;
}

/* ---- rigid body --------------------------------------------------------- */

cm_status cm_rigid_model_create_isotropic(const double inertia[3], double gamma,
                                          cm_rigid_model** out) {
    if (!inertia || !out)
        return null_arg("inertia/out");
    return guarded([&] {
        *out = new cm_rigid_model{
            contactmech::InertiaTensor(Eigen::Map<const Eigen::Vector3d>(inertia)),
            contactmech::DampingModel::isotropic(gamma)};
        return CM_OK;
    });
}

cm_status cm_rigid_model_create_anisotropic(const double inertia[3], const double damping[9],
                                            cm_rigid_model** out) {
    if (!inertia || !damping || !out)
        return null_arg("inertia/damping/out");
    return guarded([&] {
        *out = new cm_rigid_model{
            contactmech::InertiaTensor(Eigen::Map<const Eigen::Vector3d>(inertia)),
            contactmech::DampingModel::anisotropic(load_matrix(damping))};
        return CM_OK;
    });
}

void cm_rigid_model_free(cm_rigid_model* model) { delete model; }

cm_status cm_rigid_energy(const cm_rigid_model* model, const double M[3], double* out) {
    if (!model || !M || !out)
        return null_arg("model/M/out");
    *out = model->inertia.kinetic_energy(Eigen::Map<const Eigen::Vector3d>(M));
    return CM_OK;
}

cm_status cm_rigid_rhs(const cm_rigid_model* model, const double R[9], const double M[3],
                       double s, double dR[9], double dM[3], double* ds) {
    if (!model || !R || !M || !dR || !dM || !ds)
        return null_arg("model/R/M/dR/dM/ds");
    return guarded([&] {
        const auto f =
            contactmech::rigid_body_rhs(make_rigid_state(R, M, s), model->inertia,
                                        model->damping);
        store_matrix(f.dR, dR);
        Eigen::Map<Eigen::Vector3d>{dM} = f.dM;
        *ds = f.ds;
        return CM_OK;
    });
}

cm_status cm_rigid_step(const cm_rigid_model* model, double h, double R[9], double M[3],
                        double* s) {
    if (!model || !R || !M || !s)
        return null_arg("model/R/M/s");
    return guarded([&] {
        const auto y = contactmech::rigid_body_step(h, make_rigid_state(R, M, *s),
                                                    model->inertia, model->damping);
        store_matrix(y.R, R);
        Eigen::Map<Eigen::Vector3d>{M} = y.M;
        *s = y.s;
        return CM_OK;
    });
}

cm_status cm_rigid_linearize(const cm_rigid_model* model, const double M_star[3], double A[9]) {
    if (!model || !M_star || !A)
        return null_arg("model/M_star/A");
    return guarded([&] {
        store_matrix(contactmech::linearize(Eigen::Map<const Eigen::Vector3d>(M_star),
                                            model->inertia, model->damping),
                     A);
        return CM_OK;
    });
}

const char* cm_stability_name(cm_stability value) {
    switch (value) {
    case CM_STABILITY_ASYMPTOTIC: return "AsymptoticallyStable";
    case CM_STABILITY_SADDLE: return "SaddleUnstable";
    case CM_STABILITY_MARGINAL: return "Marginal";
    case CM_STABILITY_ORIGIN_SINK: return "OriginGlobalSink";
    case CM_STABILITY_DEGENERATE_FAMILY: return "DegenerateFamily";
    }
    return "?";
}

namespace {

cm_stability to_c(contactmech::Stability s) {
    switch (s) {
    case contactmech::Stability::AsymptoticallyStable: return CM_STABILITY_ASYMPTOTIC;
    case contactmech::Stability::SaddleUnstable: return CM_STABILITY_SADDLE;
    case contactmech::Stability::Marginal: return CM_STABILITY_MARGINAL;
    case contactmech::Stability::OriginGlobalSink: return CM_STABILITY_ORIGIN_SINK;
    case contactmech::Stability::DegenerateFamily: return CM_STABILITY_DEGENERATE_FAMILY;
    }
    return CM_STABILITY_MARGINAL;
}

} // namespace

cm_status cm_rigid_classify(const cm_rigid_model* model, const double M_star[3],
                            cm_stability* out) {
    if (!model || !M_star || !out)
        return null_arg("model/M_star/out");
    return guarded([&] {
        *out = to_c(contactmech::classify_stability(Eigen::Map<const Eigen::Vector3d>(M_star),
                                                    model->inertia, model->damping));
        return CM_OK;
    });
}

cm_status cm_rigid_find_equilibria(const cm_rigid_model* model, double tol,
                                   cm_equilibrium_report** out) {
    if (!model || !out)
        return null_arg("model/out");
    return guarded([&] {
        *out = new cm_equilibrium_report{
            contactmech::find_equilibria(model->inertia, model->damping, tol)};
        return CM_OK;
    });
}

size_t cm_equilibrium_count(const cm_equilibrium_report* report) {
    return report ? report->impl.equilibria.size() : 0;
}

cm_status cm_equilibrium_get(const cm_equilibrium_report* report, size_t index, int* axis_index,
                             double M_star[3], cm_stability* stability, double eig_re[3],
                             double eig_im[3]) {
    if (!report)
        return null_arg("report");
    if (index >= report->impl.equilibria.size()) {
        t_last_error = "equilibrium index out of range";
        return CM_ERROR_INVALID_ARGUMENT;
    }
    const auto& eq = report->impl.equilibria[index];
    if (axis_index)
        *axis_index = eq.axis_index;
    if (M_star)
        Eigen::Map<Eigen::Vector3d>{M_star} = eq.representative;
    if (stability)
        *stability = to_c(eq.classification);
    for (size_t i = 0; i < 3; ++i) {
        if (eig_re)
            eig_re[i] = eq.eigenvalues[i].real();
        if (eig_im)
            eig_im[i] = eq.eigenvalues[i].imag();
    }
    return CM_OK;
}

void cm_equilibrium_report_free(cm_equilibrium_report* report) { delete report; }

/* ---- experiments -------------------------------------------------------- */

cm_status cm_experiment_run(const char* name, const char* const* keys,
                            const char* const* values, size_t n_params, const char* out_dir,
                            char** report_out) {
    if (!name)
        return null_arg("name");
    if (n_params > 0 && (!keys || !values))
        return null_arg("keys/values");
    if (report_out)
        *report_out = nullptr;
    return guarded([&] {
        contactmech::ExperimentSpec spec;
        spec.name = name;
        for (size_t i = 0; i < n_params; ++i) {
            if (!keys[i] || !values[i])
                throw std::invalid_argument("parameter key/value " + std::to_string(i) +
                                            " is null");
            spec.params[keys[i]] = values[i];
        }
        const auto result =
            contactmech::run_experiment(spec, out_dir ? std::string(out_dir) : std::string());
        if (report_out)
            *report_out = copy_string(result.report);
        if (!result.passed) {
            t_last_error = result.diagnostic;
            return CM_ERROR_CHECK_FAILED;
        }
        return CM_OK;
    });
}

} // extern "C"
