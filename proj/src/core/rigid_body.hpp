#ifndef CONTACTMECH_CORE_RIGID_BODY_HPP
#define CONTACTMECH_CORE_RIGID_BODY_HPP

#include "core/types.hpp"

#include <array>
#include <complex>
#include <vector>

namespace contactmech {

/// Thrown by linearize() when the point fails the equilibrium conditions.
class NotEquilibrium : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Diagonal inertia tensor in the body frame, principal moments > 0.
class InertiaTensor {
public:
    explicit InertiaTensor(const Eigen::Vector3d& principal_moments);

    const Eigen::Vector3d& moments() const { return moments_; }
    Eigen::Vector3d angular_velocity(const Eigen::Vector3d& M) const {
        return M.cwiseQuotient(moments_);
    }
    /// Rotational kinetic energy H0(M) = M . I^{-1} M / 2.
    double kinetic_energy(const Eigen::Vector3d& M) const {
        return 0.5 * M.dot(angular_velocity(M));
    }
    /// Triangle inequalities I_i + I_j >= I_k; a violation is flagged, not
    /// rejected (callers surface it as a warning).
    bool physically_realizable() const { return realizable_; }

private:
    Eigen::Vector3d moments_;
    bool realizable_;
};

/// Either a scalar rate gamma >= 0 or a symmetric positive-semidefinite
/// matrix D acting on the body angular momentum.
class DampingModel {
public:
    static DampingModel isotropic(double gamma);
    static DampingModel anisotropic(const Eigen::Matrix3d& D);

    bool is_isotropic() const { return isotropic_; }
    /// Scalar rate; only meaningful for the isotropic variant (throws otherwise).
    double gamma() const;
    /// The damping matrix (gamma * Identity in the isotropic case).
    const Eigen::Matrix3d& matrix() const { return matrix_; }
    Eigen::Vector3d apply(const Eigen::Vector3d& M) const { return matrix_ * M; }

private:
    DampingModel(bool iso, double gamma, const Eigen::Matrix3d& D);

    bool isotropic_;
    double gamma_;
    Eigen::Matrix3d matrix_;
};

/// (R, M, s): body-to-space attitude, body angular momentum, contact coordinate.
struct RigidBodyState {
    Eigen::Matrix3d R = Eigen::Matrix3d::Identity();
    Eigen::Vector3d M = Eigen::Vector3d::Zero();
    double s = 0.0;
};

/// Throws unless R is orthogonal with det +1 to Frobenius tolerance 1e-9 and
/// all components are finite.
void require_valid(const RigidBodyState& x);

struct RigidBodyVectorField {
    Eigen::Matrix3d dR;
    Eigen::Vector3d dM;
    double ds = 0.0;
};

/// Skew embedding of R^3 into so(3): hat(w) v = w x v.
Eigen::Matrix3d hat(const Eigen::Vector3d& w);

/// exp(hat(w)) by the Rodrigues formula; orthogonal to roundoff for any w.
Eigen::Matrix3d rotation_exp(const Eigen::Vector3d& w);

/// Damped Euler equations with attitude kinematics:
///   dR = R hat(Omega),  dM = M x Omega - D M,  Omega = I^{-1} M,
///   ds = M . Omega / 2 - gamma s  (isotropic damping only; the anisotropic
///   model has no s-equation and ds is reported as zero).
RigidBodyVectorField rigid_body_rhs(const RigidBodyState& x, const InertiaTensor& inertia,
                                    const DampingModel& damping);

/// One step: RK4 on (M, s), then the Lie-group attitude update
/// R' = R exp(hat(Omega_mid) h) with Omega_mid from the half-step momentum.
/// Keeps R on SO(3) to roundoff.
RigidBodyState rigid_body_step(double h, const RigidBodyState& x,
                               const InertiaTensor& inertia, const DampingModel& damping);

struct RigidBodyTrajectory {
    std::vector<double> times;
    std::vector<RigidBodyState> states;
    std::vector<double> kinetic_energy; // H0 per sample

    std::size_t size() const { return times.size(); }
};

/// Trajectory driver mirroring integrate(); re-orthonormalizes the attitude
/// every 10^4 steps to bound accumulated roundoff.
RigidBodyTrajectory rigid_body_integrate(const RigidBodyState& x0, const InertiaTensor& inertia,
                                         const DampingModel& damping, double step,
                                         double t_final, int record_every = 1);

enum class Stability {
    AsymptoticallyStable, ///< all transverse modes decay
    SaddleUnstable,       ///< a transverse mode grows
    Marginal,             ///< purely oscillatory transverse modes (undamped)
    OriginGlobalSink,     ///< the origin with definite damping; everything decays to it
    DegenerateFamily      ///< repeated inertia moments; equilibria form a continuum
};

const char* to_string(Stability s);

struct Equilibrium {
    int axis_index = 0; ///< 1..3 for a principal axis, 0 for the origin, -1 for a family
    Eigen::Vector3d representative = Eigen::Vector3d::Zero();
    Stability classification = Stability::Marginal;
    std::array<std::complex<double>, 3> eigenvalues{}; ///< of the linearization
};

struct EquilibriumReport {
    std::vector<Equilibrium> equilibria;
};

/// Steady rotations: M* with D M* = 0 and M* x I^{-1} M* = 0. The origin is
/// always included; each principal axis contributes the ray +-e_i when e_i
/// lies in ker D (tested via |D e_i| <= tol * max(1, |D|)). Repeated moments
/// produce a DegenerateFamily entry for the invariant plane instead of a
/// pointwise enumeration.
EquilibriumReport find_equilibria(const InertiaTensor& inertia, const DampingModel& damping,
                                  double tol = 1e-10);

/// Matrix A of the linearized momentum equation about an equilibrium:
///   A dM = dM x Omega* + M* x I^{-1} dM - D dM.
/// Throws std::invalid_argument (with the residual norms) if M_star fails the
/// equilibrium conditions.
Eigen::Matrix3d linearize(const Eigen::Vector3d& M_star, const InertiaTensor& inertia,
                          const DampingModel& damping);

/// Classification from the spectrum of linearize(). For a nonzero axis
/// equilibrium the direction along the axis is a structural zero mode (the
/// equilibria form a ray), so the verdict comes from the two transverse modes:
/// any real part > tol is a saddle, both < -tol is asymptotically stable,
/// otherwise marginal. The origin is a global sink iff D is positive definite.
Stability classify_stability(const Eigen::Vector3d& M_star, const InertiaTensor& inertia,
                             const DampingModel& damping, double tol = 1e-9);

/// Eigenvalues of the full 3x3 linearization (complex, unordered).
std::array<std::complex<double>, 3> linearization_eigenvalues(const Eigen::Vector3d& M_star,
                                                              const InertiaTensor& inertia,
                                                              const DampingModel& damping);

} // namespace contactmech

#endif
