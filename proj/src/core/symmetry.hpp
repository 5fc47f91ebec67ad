#ifndef CONTACTMECH_CORE_SYMMETRY_HPP
#define CONTACTMECH_CORE_SYMMETRY_HPP

#include "core/integrators.hpp"
#include "core/rigid_body.hpp"
#include "core/types.hpp"

namespace contactmech {

/// Infinitesimal symmetry whose momentum map we evaluate. Two actions are
/// supported: rotation of the plane acting on 2-dof contact states, and body
/// rotation about a fixed unit axis for the rigid body (momentum = M).
class SymmetryGenerator {
public:
    enum class Kind { PlanarRotation, BodyRotation };

    static SymmetryGenerator planar_rotation();
    static SymmetryGenerator body_rotation(const Eigen::Vector3d& unit_axis);

    Kind kind() const { return kind_; }
    const Eigen::Vector3d& axis() const { return axis_; }

private:
    SymmetryGenerator(Kind k, const Eigen::Vector3d& axis) : kind_(k), axis_(axis) {}

    Kind kind_;
    Eigen::Vector3d axis_;
};

/// Planar rotation: J = q1 p2 - q2 p1 (angular momentum). Requires dim == 2
/// and a PlanarRotation generator.
double momentum_value(const SymmetryGenerator& gen, const ContactState& x);

/// Body rotation: J = axis . M. Requires a BodyRotation generator.
double momentum_value(const SymmetryGenerator& gen, const RigidBodyState& x);

/// Max over samples of |J(t) - J(0) e^{-gamma t}| / max(|J(0)|, 1e-30).
/// Meaningful when the Hamiltonian is invariant under the generator's action;
/// on a non-invariant system the deviation is O(1) (useful negative control).
double momentum_decay_deviation(const TrajectoryRecord& traj, const SymmetryGenerator& gen,
                                double gamma);

/// Exponentially decaying momentum level mu(t) = e^{-gamma t} mu0.
double momentum_level(double mu0, double gamma, double t);

} // namespace contactmech

#endif
