#include "core/hamiltonian.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

namespace contactmech {

void require_valid(const ContactState& x) {
    if (x.q.size() != x.p.size())
        throw std::invalid_argument("contact state: dim(q) = " + std::to_string(x.q.size()) +
                                    " != dim(p) = " + std::to_string(x.p.size()));
    if (x.q.size() < 1)
        throw std::invalid_argument("contact state: dimension must be >= 1");
    for (Eigen::Index i = 0; i < x.q.size(); ++i) {
        if (!std::isfinite(x.q[i]))
            throw NumericError("contact state: q component non-finite", i);
        if (!std::isfinite(x.p[i]))
            throw NumericError("contact state: p component non-finite", i);
    }
    if (!std::isfinite(x.s))
        throw NumericError("contact state: s non-finite");
}

SeparatedHamiltonian::SeparatedHamiltonian(Eigen::Index dim, Potential potential,
                                           Gradient gradient, double gamma, double mass)
    : dim_(dim), potential_(std::move(potential)), gradient_(std::move(gradient)),
      gamma_(gamma), mass_(mass) {
    if (dim < 1)
        throw std::invalid_argument("hamiltonian: dimension must be >= 1");
    if (!potential_ || !gradient_)
        throw std::invalid_argument("hamiltonian: potential and gradient callbacks required");
    if (!(gamma >= 0.0))
        throw std::invalid_argument("hamiltonian: gamma must be >= 0");
    if (!(mass > 0.0))
        throw std::invalid_argument("hamiltonian: mass must be > 0");
}

double SeparatedHamiltonian::potential(const Eigen::VectorXd& q) const {
    double v = potential_(q);
    if (!std::isfinite(v))
        throw NumericError("hamiltonian: potential returned non-finite value");
    return v;
}

Eigen::VectorXd SeparatedHamiltonian::potential_gradient(const Eigen::VectorXd& q) const {
    Eigen::VectorXd g = gradient_(q);
    if (g.size() != dim_)
        throw std::invalid_argument("hamiltonian: gradient callback returned wrong dimension");
    for (Eigen::Index i = 0; i < g.size(); ++i)
        if (!std::isfinite(g[i]))
            throw NumericError("hamiltonian: gradient component non-finite", i);
    return g;
}

SeparatedHamiltonian SeparatedHamiltonian::harmonic(Eigen::Index dim, double stiffness,
                                                    double gamma, double mass) {
    return SeparatedHamiltonian(
        dim, [stiffness](const Eigen::VectorXd& q) { return 0.5 * stiffness * q.squaredNorm(); },
        [stiffness](const Eigen::VectorXd& q) { return Eigen::VectorXd(stiffness * q); }, gamma,
        mass);
}

SeparatedHamiltonian SeparatedHamiltonian::free_particle(Eigen::Index dim, double gamma,
                                                         double mass) {
    return SeparatedHamiltonian(
        dim, [](const Eigen::VectorXd&) { return 0.0; },
        [dim](const Eigen::VectorXd&) { return Eigen::VectorXd(Eigen::VectorXd::Zero(dim)); },
        gamma, mass);
}

SeparatedHamiltonian SeparatedHamiltonian::coupled_well_2d(double gamma, double coupling,
                                                           double mass) {
    return SeparatedHamiltonian(
        2,
        [coupling](const Eigen::VectorXd& q) {
            return 0.5 * q.squaredNorm() + coupling * q[0] * q[0] * q[1];
        },
        [coupling](const Eigen::VectorXd& q) {
            Eigen::VectorXd g(2);
            g[0] = q[0] + 2.0 * coupling * q[0] * q[1];
            g[1] = q[1] + coupling * q[0] * q[0];
            return g;
        },
        gamma, mass);
}

void require_matching(const SeparatedHamiltonian& model, const ContactState& x) {
    require_valid(x);
    if (x.dim() != model.dim())
        throw std::invalid_argument("state dimension " + std::to_string(x.dim()) +
                                    " does not match model dimension " +
                                    std::to_string(model.dim()));
}

} // namespace contactmech
