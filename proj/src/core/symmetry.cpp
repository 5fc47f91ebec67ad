#include "core/symmetry.hpp"

#include <cmath>
#include <stdexcept>

namespace contactmech {

SymmetryGenerator SymmetryGenerator::planar_rotation() {
    return SymmetryGenerator(Kind::PlanarRotation, Eigen::Vector3d::Zero());
}

SymmetryGenerator SymmetryGenerator::body_rotation(const Eigen::Vector3d& unit_axis) {
    if (!unit_axis.allFinite() || std::abs(unit_axis.norm() - 1.0) > 1e-12)
        throw std::invalid_argument("symmetry: body rotation axis must have unit norm");
    return SymmetryGenerator(Kind::BodyRotation, unit_axis);
}

double momentum_value(const SymmetryGenerator& gen, const ContactState& x) {
    if (gen.kind() != SymmetryGenerator::Kind::PlanarRotation)
        throw std::invalid_argument("momentum: contact states pair with the planar rotation");
    require_valid(x);
    if (x.dim() != 2)
        throw std::invalid_argument("momentum: planar rotation requires dimension 2");
    // J = p . xi_Q(q) with xi_Q(q) = (-q2, q1)
    return x.q[0] * x.p[1] - x.q[1] * x.p[0];
}

double momentum_value(const SymmetryGenerator& gen, const RigidBodyState& x) {
    if (gen.kind() != SymmetryGenerator::Kind::BodyRotation)
        throw std::invalid_argument("momentum: rigid body states pair with a body rotation axis");
    require_valid(x);
    return gen.axis().dot(x.M);
}

double momentum_decay_deviation(const TrajectoryRecord& traj, const SymmetryGenerator& gen,
                                double gamma) {
    if (traj.size() == 0)
        throw std::invalid_argument("momentum decay check: empty trajectory");
    const double j0 = momentum_value(gen, traj.states.front());
    const double floor = std::max(std::abs(j0), 1e-30);
    double worst = 0.0;
    for (std::size_t k = 0; k < traj.size(); ++k) {
        const double expected = j0 * std::exp(-gamma * traj.times[k]);
        const double actual = momentum_value(gen, traj.states[k]);
        worst = std::max(worst, std::abs(actual - expected) / floor);
    }
    return worst;
}

double momentum_level(double mu0, double gamma, double t) {
    return std::exp(-gamma * t) * mu0;
}

} // namespace contactmech
