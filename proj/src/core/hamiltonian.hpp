#ifndef CONTACTMECH_CORE_HAMILTONIAN_HPP
#define CONTACTMECH_CORE_HAMILTONIAN_HPP

#include "core/types.hpp"

#include <functional>

namespace contactmech {

/// Contact Hamiltonian of separated form H(q,p,s) = T(p) + V(q) + gamma*s.
///
/// The kinetic energy is fixed to the quadratic form T(p) = |p|^2 / (2m).
/// This is the class for which the kinetic subflow advances s exactly
/// (s' = s + h*T(p) requires T homogeneous of degree two), so it is a
/// structural requirement of the splitting integrator, not a convenience.
/// The potential is an arbitrary callback with user-supplied gradient.
class SeparatedHamiltonian {
public:
    using Potential = std::function<double(const Eigen::VectorXd&)>;
    using Gradient = std::function<Eigen::VectorXd(const Eigen::VectorXd&)>;

    /// gamma >= 0 is the linear dissipation rate, mass > 0 the kinetic scale.
    SeparatedHamiltonian(Eigen::Index dim, Potential potential, Gradient gradient,
                         double gamma, double mass = 1.0);

    double kinetic(const Eigen::VectorXd& p) const { return 0.5 * p.squaredNorm() / mass_; }
    Eigen::VectorXd kinetic_gradient(const Eigen::VectorXd& p) const { return p / mass_; }

    double potential(const Eigen::VectorXd& q) const;
    Eigen::VectorXd potential_gradient(const Eigen::VectorXd& q) const;

    Eigen::Index dim() const { return dim_; }
    double gamma() const { return gamma_; }
    double mass() const { return mass_; }

    /// V(q) = stiffness/2 * |q|^2 in any dimension.
    static SeparatedHamiltonian harmonic(Eigen::Index dim, double stiffness,
                                         double gamma, double mass = 1.0);

    /// V = 0; motion is free streaming with momentum damping.
    static SeparatedHamiltonian free_particle(Eigen::Index dim, double gamma,
                                              double mass = 1.0);

    /// Two-dimensional well with a cubic coupling term:
    /// V(q1,q2) = (q1^2 + q2^2)/2 + coupling * q1^2 q2. Not rotation invariant
    /// unless coupling = 0.
    static SeparatedHamiltonian coupled_well_2d(double gamma, double coupling = 0.1,
                                                double mass = 1.0);

private:
    Eigen::Index dim_;
    Potential potential_;
    Gradient gradient_;
    double gamma_;
    double mass_;
};

void require_matching(const SeparatedHamiltonian& model, const ContactState& x);

} // namespace contactmech

#endif
