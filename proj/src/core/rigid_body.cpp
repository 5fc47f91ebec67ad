#include "core/rigid_body.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace contactmech {

namespace {

constexpr double kOrthoTol = 1e-9;

// Moments within this relative band are treated as equal (symmetric body).
constexpr double kDegenerateRelTol = 1e-9;

std::pair<std::complex<double>, std::complex<double>> eig2x2(double a, double b, double c,
                                                             double d) {
    const double tr = a + d;
    const double det = a * d - b * c;
    const double disc = tr * tr - 4.0 * det;
    if (disc >= 0.0) {
        const double root = std::sqrt(disc);
        return {std::complex<double>(0.5 * (tr + root), 0.0),
                std::complex<double>(0.5 * (tr - root), 0.0)};
    }
    const double imag = 0.5 * std::sqrt(-disc);
    return {std::complex<double>(0.5 * tr, imag), std::complex<double>(0.5 * tr, -imag)};
}

} // namespace

InertiaTensor::InertiaTensor(const Eigen::Vector3d& principal_moments)
    : moments_(principal_moments) {
    for (int i = 0; i < 3; ++i)
        if (!(moments_[i] > 0.0) || !std::isfinite(moments_[i]))
            throw std::invalid_argument("inertia: principal moments must be positive");
    realizable_ = moments_[0] + moments_[1] >= moments_[2] &&
                  moments_[1] + moments_[2] >= moments_[0] &&
                  moments_[0] + moments_[2] >= moments_[1];
}

DampingModel::DampingModel(bool iso, double gamma, const Eigen::Matrix3d& D)
    : isotropic_(iso), gamma_(gamma), matrix_(D) {}

DampingModel DampingModel::isotropic(double gamma) {
    if (!(gamma >= 0.0) || !std::isfinite(gamma))
        throw std::invalid_argument("damping: gamma must be >= 0");
    return DampingModel(true, gamma, gamma * Eigen::Matrix3d::Identity());
}

DampingModel DampingModel::anisotropic(const Eigen::Matrix3d& D) {
    if (!D.allFinite())
        throw std::invalid_argument("damping: matrix must be finite");
    const double scale = std::max(1.0, D.norm());
    if ((D - D.transpose()).norm() > 1e-12 * scale)
        throw std::invalid_argument("damping: matrix must be symmetric");
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(D);
    if (es.eigenvalues().minCoeff() < -1e-12 * scale)
        throw std::invalid_argument("damping: matrix must be positive semidefinite");
    return DampingModel(false, 0.0, D);
}

double DampingModel::gamma() const {
    if (!isotropic_)
        throw std::logic_error("damping: scalar rate undefined for the anisotropic variant");
    return gamma_;
}

void require_valid(const RigidBodyState& x) {
    if (!x.R.allFinite() || !x.M.allFinite() || !std::isfinite(x.s))
        throw NumericError("rigid body state: non-finite component");
    const double ortho = (x.R.transpose() * x.R - Eigen::Matrix3d::Identity()).norm();
    if (ortho > kOrthoTol)
        throw std::invalid_argument("rigid body state: attitude off SO(3), |R^T R - I| = " +
                                    std::to_string(ortho));
    if (std::abs(x.R.determinant() - 1.0) > kOrthoTol)
        throw std::invalid_argument("rigid body state: det(R) != +1");
}

Eigen::Matrix3d hat(const Eigen::Vector3d& w) {
    Eigen::Matrix3d W;
    W << 0.0, -w.z(), w.y(), w.z(), 0.0, -w.x(), -w.y(), w.x(), 0.0;
    return W;
}

Eigen::Matrix3d rotation_exp(const Eigen::Vector3d& w) {
    const double theta2 = w.squaredNorm();
    const Eigen::Matrix3d W = hat(w);
    if (theta2 < 1e-16) {
        // series through second order; remainder below roundoff here
        return Eigen::Matrix3d::Identity() + W + 0.5 * W * W;
    }
    const double theta = std::sqrt(theta2);
    return Eigen::Matrix3d::Identity() + (std::sin(theta) / theta) * W +
           ((1.0 - std::cos(theta)) / theta2) * (W * W);
}

RigidBodyVectorField rigid_body_rhs(const RigidBodyState& x, const InertiaTensor& inertia,
                                    const DampingModel& damping) {
    require_valid(x);
    const Eigen::Vector3d omega = inertia.angular_velocity(x.M);
    RigidBodyVectorField f;
    f.dR = x.R * hat(omega);
    f.dM = x.M.cross(omega) - damping.apply(x.M);
    // The contact s-equation is only defined for the isotropic Hamiltonian;
    // the anisotropic momentum equation carries no s dynamics.
    f.ds = damping.is_isotropic() ? 0.5 * x.M.dot(omega) - damping.gamma() * x.s : 0.0;
    return f;
}

RigidBodyState rigid_body_step(double h, const RigidBodyState& x, const InertiaTensor& inertia,
                               const DampingModel& damping) {
    if (!(h > 0.0) || !std::isfinite(h))
        throw std::invalid_argument("rigid body step must be positive and finite");
    require_valid(x);

    auto momentum_rhs = [&](const Eigen::Vector3d& M, double s) {
        const Eigen::Vector3d omega = inertia.angular_velocity(M);
        const Eigen::Vector3d dM = M.cross(omega) - damping.apply(M);
        const double ds =
            damping.is_isotropic() ? 0.5 * M.dot(omega) - damping.gamma() * s : 0.0;
        return std::make_pair(dM, ds);
    };

    const auto [k1M, k1s] = momentum_rhs(x.M, x.s);
    const auto [k2M, k2s] = momentum_rhs(x.M + 0.5 * h * k1M, x.s + 0.5 * h * k1s);
    const auto [k3M, k3s] = momentum_rhs(x.M + 0.5 * h * k2M, x.s + 0.5 * h * k2s);
    const auto [k4M, k4s] = momentum_rhs(x.M + h * k3M, x.s + h * k3s);

    RigidBodyState y;
    y.M = x.M + (h / 6.0) * (k1M + 2.0 * k2M + 2.0 * k3M + k4M);
    y.s = x.s + (h / 6.0) * (k1s + 2.0 * k2s + 2.0 * k3s + k4s);

    const Eigen::Vector3d omega_mid = inertia.angular_velocity(0.5 * (x.M + y.M));
    y.R = x.R * rotation_exp(h * omega_mid);
    return y;
}

RigidBodyTrajectory rigid_body_integrate(const RigidBodyState& x0, const InertiaTensor& inertia,
                                         const DampingModel& damping, double step,
                                         double t_final, int record_every) {
    require_valid(x0);
    const double ratio = t_final / step;
    const long n = std::lround(ratio);
    if (!(step > 0.0) || n < 1 || std::abs(ratio - static_cast<double>(n)) > 1e-6 * ratio)
        throw std::invalid_argument("step must be positive and divide t_final");
    if (record_every < 1 || n % record_every != 0)
        throw std::invalid_argument("record_every must divide the step count");

    RigidBodyTrajectory traj;
    auto record = [&](double t, const RigidBodyState& x) {
        traj.times.push_back(t);
        traj.states.push_back(x);
        traj.kinetic_energy.push_back(inertia.kinetic_energy(x.M));
    };

    RigidBodyState x = x0;
    record(0.0, x);
    for (long k = 1; k <= n; ++k) {
        x = rigid_body_step(step, x, inertia, damping);
        if (!x.R.allFinite() || !x.M.allFinite() || !std::isfinite(x.s))
            throw NumericError("rigid body integration blew up at step " + std::to_string(k), k);
        if (k % 10000 == 0) {
            // Gram-Schmidt re-orthonormalization against accumulated roundoff
            Eigen::Vector3d c0 = x.R.col(0).normalized();
            Eigen::Vector3d c1 = (x.R.col(1) - c0.dot(x.R.col(1)) * c0).normalized();
            x.R.col(0) = c0;
            x.R.col(1) = c1;
            x.R.col(2) = c0.cross(c1);
        }
        if (k % record_every == 0)
            record(static_cast<double>(k) * step, x);
    }
    return traj;
}

const char* to_string(Stability s) {
    switch (s) {
    case Stability::AsymptoticallyStable: return "AsymptoticallyStable";
    case Stability::SaddleUnstable: return "SaddleUnstable";
    case Stability::Marginal: return "Marginal";
    case Stability::OriginGlobalSink: return "OriginGlobalSink";
    case Stability::DegenerateFamily: return "DegenerateFamily";
    }
    return "?";
}

Eigen::Matrix3d linearize(const Eigen::Vector3d& M_star, const InertiaTensor& inertia,
                          const DampingModel& damping) {
    const Eigen::Vector3d omega_star = inertia.angular_velocity(M_star);
    const double gyro_residual = M_star.cross(omega_star).norm();
    const double damp_residual = damping.apply(M_star).norm();
    const double gyro_tol = 1e-8 * std::max(1.0, M_star.squaredNorm() / inertia.moments().minCoeff());
    const double damp_tol = 1e-8 * std::max(1.0, damping.matrix().norm() * M_star.norm());
    if (gyro_residual > gyro_tol || damp_residual > damp_tol) {
        std::ostringstream msg;
        msg << "linearize: M* is not an equilibrium (|M* x I^-1 M*| = " << gyro_residual
            << ", |D M*| = " << damp_residual << ")";
        throw NotEquilibrium(msg.str());
    }
    // A dM = dM x Omega* + M* x I^{-1} dM - D dM
    const Eigen::Matrix3d inv_inertia = inertia.moments().cwiseInverse().asDiagonal();
    return -hat(omega_star) + hat(M_star) * inv_inertia - damping.matrix();
}

std::array<std::complex<double>, 3> linearization_eigenvalues(const Eigen::Vector3d& M_star,
                                                              const InertiaTensor& inertia,
                                                              const DampingModel& damping) {
    const Eigen::Matrix3d A = linearize(M_star, inertia, damping);
    Eigen::EigenSolver<Eigen::Matrix3d> es(A);
    std::array<std::complex<double>, 3> out;
    for (int i = 0; i < 3; ++i)
        out[static_cast<std::size_t>(i)] = es.eigenvalues()[i];
    return out;
}

Stability classify_stability(const Eigen::Vector3d& M_star, const InertiaTensor& inertia,
                             const DampingModel& damping, double tol) {
    const Eigen::Matrix3d A = linearize(M_star, inertia, damping);

    if (M_star.norm() <= tol) {
        // Origin: A = -D, symmetric.
        Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(A);
        if (es.eigenvalues().maxCoeff() < -tol)
            return Stability::OriginGlobalSink;
        return Stability::Marginal;
    }

    // Identify the principal axis M* sits on.
    int axis = 0;
    M_star.cwiseAbs().maxCoeff(&axis);
    const Eigen::Vector3d direction = M_star / M_star.norm();
    if ((direction.cwiseAbs() - Eigen::Vector3d::Unit(axis)).norm() > 1e-6) {
        // Off-axis equilibria only exist inside a degenerate eigen-plane.
        return Stability::DegenerateFamily;
    }

    // The direction along the ray of equilibria is a structural zero mode;
    // the verdict lives in the transverse 2x2 block.
    const int i = (axis + 1) % 3;
    const int j = (axis + 2) % 3;
    const auto [l1, l2] = eig2x2(A(i, i), A(i, j), A(j, i), A(j, j));
    const double max_re = std::max(l1.real(), l2.real());
    if (max_re > tol)
        return Stability::SaddleUnstable;
    if (max_re < -tol)
        return Stability::AsymptoticallyStable;
    return Stability::Marginal;
}

EquilibriumReport find_equilibria(const InertiaTensor& inertia, const DampingModel& damping,
                                  double tol) {
    if (!(tol > 0.0))
        throw std::invalid_argument("find_equilibria: tol must be > 0");
    EquilibriumReport report;

    Equilibrium origin;
    origin.axis_index = 0;
    origin.representative = Eigen::Vector3d::Zero();
    origin.classification = classify_stability(origin.representative, inertia, damping, tol);
    origin.eigenvalues = linearization_eigenvalues(origin.representative, inertia, damping);
    report.equilibria.push_back(origin);

    const Eigen::Vector3d& I = inertia.moments();
    const double moment_scale = I.maxCoeff();
    const double kernel_tol = tol * std::max(1.0, damping.matrix().norm());

    bool degenerate[3] = {false, false, false}; // axis belongs to a repeated pair
    for (int a = 0; a < 3; ++a)
        for (int b = a + 1; b < 3; ++b)
            if (std::abs(I[a] - I[b]) <= kDegenerateRelTol * moment_scale)
                degenerate[a] = degenerate[b] = true;

    for (int axis = 0; axis < 3; ++axis) {
        if (degenerate[axis])
            continue;
        const Eigen::Vector3d e = Eigen::Vector3d::Unit(axis);
        if (damping.apply(e).norm() > kernel_tol)
            continue; // damped out; no steady rotation on this axis
        Equilibrium eq;
        eq.axis_index = axis + 1;
        eq.representative = e;
        eq.classification = classify_stability(e, inertia, damping, 1e-9);
        eq.eigenvalues = linearization_eigenvalues(e, inertia, damping);
        report.equilibria.push_back(eq);
    }

    // Repeated moments: the whole eigen-plane consists of relative equilibria
    // (subject to ker D); report it as one family, not pointwise.
    bool plane_done[3][3] = {};
    for (int a = 0; a < 3; ++a) {
        for (int b = a + 1; b < 3; ++b) {
            if (std::abs(I[a] - I[b]) > kDegenerateRelTol * moment_scale || plane_done[a][b])
                continue;
            plane_done[a][b] = true;
            Eigen::Matrix<double, 3, 2> plane;
            plane.col(0) = Eigen::Vector3d::Unit(a);
            plane.col(1) = Eigen::Vector3d::Unit(b);
            Eigen::JacobiSVD<Eigen::Matrix<double, 3, 2>> svd(damping.matrix() * plane,
                                                              Eigen::ComputeFullV);
            if (svd.singularValues().minCoeff() > kernel_tol)
                continue; // damping kills the whole plane
            const Eigen::Vector3d rep = (plane * svd.matrixV().col(1)).normalized();
            Equilibrium family;
            family.axis_index = -1;
            family.representative = rep;
            family.classification = Stability::DegenerateFamily;
            family.eigenvalues = linearization_eigenvalues(rep, inertia, damping);
            report.equilibria.push_back(family);
        }
    }
    return report;
}

} // namespace contactmech
