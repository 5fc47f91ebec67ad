#ifndef CONTACTMECH_CORE_INTEGRATORS_HPP
#define CONTACTMECH_CORE_INTEGRATORS_HPP

#include "core/contact_core.hpp"
#include "core/hamiltonian.hpp"
#include "core/types.hpp"

#include <cstddef>
#include <vector>

namespace contactmech {

enum class Method {
    ContactStrang, ///< splitting of kinetic / potential / damping subflows
    RK4Reference   ///< classical RK4 applied to the full contact equations
};

struct IntegratorConfig {
    double step = 0.01;
    double t_final = 1.0;
    int record_every = 1;
    Method method = Method::ContactStrang;
};

/// Uniformly sampled trajectory with the observables used by the decay laws.
struct TrajectoryRecord {
    std::vector<double> times;
    std::vector<ContactState> states;
    std::vector<double> mechanical_energy; // H0 per sample
    std::vector<double> total_energy;      // H per sample
    std::vector<double> momentum_squared;  // |p|^2 per sample

    std::size_t size() const { return times.size(); }
};

// The three exact subflows of H = T(p) + V(q) + gamma*s. Each is the closed
// form flow of its own contact sub-Hamiltonian and accepts steps of either
// sign (the flows form one-parameter groups).

/// q' = q + h p/m,  p' = p,  s' = s + h T(p).
ContactState kinetic_flow(double h, const ContactState& x, const SeparatedHamiltonian& model);

/// q' = q,  p' = p - h grad V(q),  s' = s - h V(q).
ContactState potential_flow(double h, const ContactState& x, const SeparatedHamiltonian& model);

/// q' = q,  p' = e^{-gamma h} p,  s' = e^{-gamma h} s.
ContactState damping_flow(double h, const ContactState& x, const SeparatedHamiltonian& model);

/// Symmetric Strang composition, rightmost factor applied first:
///   Phi_h = B_{h/2} o C_{h/2} o A_h o C_{h/2} o B_{h/2}
/// with A the kinetic, B the potential and C the damping subflow. Palindromic,
/// hence second order; reduces to velocity-Verlet on (q,p) when gamma = 0, and
/// multiplies planar angular momentum by exactly e^{-gamma h} per step for a
/// rotation-invariant potential.
ContactState strang_step(double h, const ContactState& x, const SeparatedHamiltonian& model);

/// Classical fourth-order Runge-Kutta step on contact_rhs.
ContactState rk4_step(double h, const ContactState& x, const SeparatedHamiltonian& model);

/// Number of steps = round(t_final/step); throws std::invalid_argument unless
/// step divides t_final to one part in 10^6.
long step_count(double step, double t_final);

/// Drives the configured stepper from x0, recording every record_every-th
/// state (record_every must divide the step count). Aborts with NumericError
/// carrying the step index if the state leaves the finite range.
TrajectoryRecord integrate(const ContactState& x0, const SeparatedHamiltonian& model,
                           const IntegratorConfig& cfg);

struct ConvergencePoint {
    double step;
    double error; // max_t |H0_num(t) - H0_ref(t)| on the step's own sample grid
};

/// Global energy-error sweep for slope fitting. The reference is RK4 at
/// min(steps)/100; every step must be an integer multiple of the reference
/// step so the sample grids align.
std::vector<ConvergencePoint> convergence_study(const ContactState& x0,
                                                const SeparatedHamiltonian& model,
                                                std::vector<double> steps, double t_final,
                                                Method method);

/// Least-squares slope of log(error) against log(step).
double fitted_slope(const std::vector<ConvergencePoint>& points);

/// Diagnostic for the discrete action recursion s_{k+1} = s_k + h L_mid with
/// L_mid = T - V - gamma*s evaluated at the step midpoint. Returns the max
/// per-step defect; O(h^3) per step along a second-order trajectory. Requires
/// a full-resolution record (record_every == 1).
double action_recursion_defect(const TrajectoryRecord& traj, const SeparatedHamiltonian& model);

} // namespace contactmech

#endif
