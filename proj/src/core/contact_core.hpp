#ifndef CONTACTMECH_CORE_CONTACT_CORE_HPP
#define CONTACTMECH_CORE_CONTACT_CORE_HPP

#include "core/hamiltonian.hpp"
#include "core/types.hpp"

namespace contactmech {

/// Right-hand side of the contact Hamilton equations at one state.
struct ContactVectorField {
    Eigen::VectorXd dq;
    Eigen::VectorXd dp;
    double ds = 0.0;
};

/// H(q,p,s) = T(p) + V(q) + gamma*s.
double total_energy(const SeparatedHamiltonian& model, const ContactState& x);

/// H0(q,p) = T(p) + V(q); independent of s.
double mechanical_energy(const SeparatedHamiltonian& model, const ContactState& x);

/// Contact Hamilton equations for the separated Hamiltonian:
///   dq = dT/dp,  dp = -grad V(q) - gamma*p,  ds = p . dT/dp - H.
/// For the quadratic kinetic form the s-equation reduces to
/// ds = T(p) - V(q) - gamma*s, i.e. the running Lagrangian.
ContactVectorField contact_rhs(const SeparatedHamiltonian& model, const ContactState& x);

/// Instantaneous mechanical-energy rate dH0/dt = -gamma |p|^2 / m.
/// Nonpositive whenever gamma >= 0.
double dissipation_rate(const SeparatedHamiltonian& model, const ContactState& x);

} // namespace contactmech

#endif
