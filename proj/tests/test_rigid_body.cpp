#include "core/rigid_body.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace contactmech;

namespace {

const Eigen::Vector3d kMoments(1.0, 2.0, 3.0);

Eigen::Vector3d random_vec(std::mt19937_64& rng, double scale = 2.0) {
    std::uniform_real_distribution<double> u(-scale, scale);
    return {u(rng), u(rng), u(rng)};
}

// Residual of the steady-rotation conditions at a unit vector.
double equilibrium_residual(const Eigen::Vector3d& u, const InertiaTensor& inertia,
                            const DampingModel& damping) {
    return u.cross(inertia.angular_velocity(u)).norm() + damping.apply(u).norm();
}

} // namespace

TEST_CASE("inertia tensor validation and realizability") {
    CHECK_THROWS_AS(InertiaTensor(Eigen::Vector3d(1.0, -2.0, 3.0)), std::invalid_argument);
    CHECK_THROWS_AS(InertiaTensor(Eigen::Vector3d(0.0, 2.0, 3.0)), std::invalid_argument);
    CHECK(InertiaTensor(kMoments).physically_realizable());
    CHECK_FALSE(InertiaTensor(Eigen::Vector3d(1.0, 1.0, 5.0)).physically_realizable());
}

TEST_CASE("damping model validation") {
    CHECK_THROWS_AS(DampingModel::isotropic(-0.1), std::invalid_argument);
    CHECK(DampingModel::isotropic(0.5).gamma() == 0.5);

    Eigen::Matrix3d asym;
    asym << 1, 2, 0, 0, 1, 0, 0, 0, 1;
    CHECK_THROWS_AS(DampingModel::anisotropic(asym), std::invalid_argument);

    Eigen::Matrix3d indefinite = Eigen::Vector3d(1.0, -0.5, 1.0).asDiagonal();
    CHECK_THROWS_AS(DampingModel::anisotropic(indefinite), std::invalid_argument);

    const auto aniso = DampingModel::anisotropic(Eigen::Vector3d(0.0, 1.0, 2.0).asDiagonal());
    CHECK_FALSE(aniso.is_isotropic());
    CHECK_THROWS_AS(aniso.gamma(), std::logic_error);
    CHECK(aniso.apply(Eigen::Vector3d(1, 1, 1)) == Eigen::Vector3d(0, 1, 2));
}

TEST_CASE("hat map and rotation exponential") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 30; ++trial) {
        const Eigen::Vector3d w = random_vec(rng);
        const Eigen::Vector3d v = random_vec(rng);
        CHECK((hat(w) * v - w.cross(v)).norm() <= 1e-15 * (1.0 + w.norm() * v.norm()));
        CHECK((hat(w) + hat(w).transpose()).norm() == 0.0);

        const Eigen::Matrix3d R = rotation_exp(w);
        CHECK((R.transpose() * R - Eigen::Matrix3d::Identity()).norm() <= 1e-14);
        CHECK(R.determinant() == doctest::Approx(1.0).epsilon(1e-13));
    }

    // quarter turn about e3
    const Eigen::Matrix3d quarter = rotation_exp(Eigen::Vector3d(0, 0, M_PI_2));
    CHECK((quarter * Eigen::Vector3d::UnitX() - Eigen::Vector3d::UnitY()).norm() <= 1e-15);

    // tiny rotations stay orthogonal through the series branch
    const Eigen::Matrix3d tiny = rotation_exp(Eigen::Vector3d(1e-12, -2e-12, 5e-13));
    CHECK((tiny.transpose() * tiny - Eigen::Matrix3d::Identity()).norm() <= 1e-15);
}

TEST_CASE("rigid body equations of motion") {
    const InertiaTensor inertia(kMoments);
    const auto free_body = DampingModel::isotropic(0.0);

    RigidBodyState x;
    x.M = Eigen::Vector3d(0.0, 1.0, 1.0);
    const auto f = rigid_body_rhs(x, inertia, free_body);
    // M x Omega with Omega = (0, 1/2, 1/3)
    CHECK(f.dM[0] == doctest::Approx(-1.0 / 6.0).epsilon(1e-15));
    CHECK(f.dM[1] == 0.0);
    CHECK(f.dM[2] == 0.0);
    CHECK((f.dR - x.R * hat(inertia.angular_velocity(x.M))).norm() == 0.0);

    // principal-axis rotation is steady
    RigidBodyState axis;
    axis.M = Eigen::Vector3d(0.0, 3.5, 0.0);
    CHECK(rigid_body_rhs(axis, inertia, free_body).dM.norm() == 0.0);
}

TEST_CASE("energy identity and gyroscopic orthogonality") {
    const InertiaTensor inertia(kMoments);
    std::mt19937_64 rng(37);
    for (int trial = 0; trial < 100; ++trial) {
        const Eigen::Vector3d M = random_vec(rng, 3.0);
        const Eigen::Vector3d omega = inertia.angular_velocity(M);

        // M . I^{-1} (M x Omega) = 0 up to roundoff
        const double cancel = std::abs(omega.dot(M.cross(omega)));
        CHECK(cancel <= 1e-12 * std::max(1.0, M.squaredNorm() * omega.norm()));

        // with isotropic damping, dH0/dt = -2 gamma H0
        const double gamma = 0.7;
        RigidBodyState x;
        x.M = M;
        const auto f = rigid_body_rhs(x, inertia, DampingModel::isotropic(gamma));
        const double h0_rate = omega.dot(f.dM);
        const double expected = -2.0 * gamma * inertia.kinetic_energy(M);
        CHECK(h0_rate == doctest::Approx(expected).epsilon(1e-12));
    }
}

TEST_CASE("contact coordinate equation per damping variant") {
    const InertiaTensor inertia(kMoments);
    RigidBodyState x;
    x.M = Eigen::Vector3d(1.0, -2.0, 0.5);
    x.s = 0.8;

    const auto iso = rigid_body_rhs(x, inertia, DampingModel::isotropic(0.3));
    const double expected = 0.5 * x.M.dot(inertia.angular_velocity(x.M)) - 0.3 * x.s;
    CHECK(iso.ds == doctest::Approx(expected).epsilon(1e-15));

    const auto aniso = rigid_body_rhs(
        x, inertia, DampingModel::anisotropic(Eigen::Vector3d(0.1, 0.2, 0.3).asDiagonal()));
    CHECK(aniso.ds == 0.0);
}

TEST_CASE("steady rotation stays on the axis and turns uniformly") {
    const InertiaTensor inertia(kMoments);
    const auto free_body = DampingModel::isotropic(0.0);
    RigidBodyState x;
    x.M = Eigen::Vector3d(2.0, 0.0, 0.0);

    const double h = 1e-3;
    const int n = 2000;
    RigidBodyState y = x;
    for (int k = 0; k < n; ++k)
        y = rigid_body_step(h, y, inertia, free_body);

    CHECK((y.M - x.M).norm() <= 1e-10);
    // Omega = M / I1 = 2, so the body turned by 2 h n about e1
    const Eigen::Matrix3d expected = rotation_exp(Eigen::Vector3d(2.0 * h * n, 0.0, 0.0));
    CHECK((y.R - expected).norm() <= 1e-9);
}

TEST_CASE("isotropic damping: exact energy and momentum-norm decay") {
    const InertiaTensor inertia(kMoments);
    const double gamma = 0.5;
    RigidBodyState x0;
    x0.M = Eigen::Vector3d(1.0, 1.0, 1.0);

    const auto traj =
        rigid_body_integrate(x0, inertia, DampingModel::isotropic(gamma), 1e-3, 2.0);
    const double h0 = traj.kinetic_energy.front();
    const double m0 = x0.M.norm();
    double worst_energy = 0.0, worst_casimir = 0.0;
    for (std::size_t k = 0; k < traj.size(); ++k) {
        const double t = traj.times[k];
        worst_energy = std::max(
            worst_energy, std::abs(traj.kinetic_energy[k] - h0 * std::exp(-2.0 * gamma * t)));
        worst_casimir = std::max(
            worst_casimir, std::abs(traj.states[k].M.norm() - m0 * std::exp(-gamma * t)));
    }
    CHECK(worst_energy / h0 <= 1e-6);
    CHECK(worst_casimir / m0 <= 1e-6);
}

TEST_CASE("attitude stays orthogonal over a hundred thousand steps") {
    const InertiaTensor inertia(kMoments);
    RigidBodyState x0;
    x0.M = Eigen::Vector3d(1.0, 0.5, 0.3);
    const auto traj = rigid_body_integrate(x0, inertia, DampingModel::isotropic(0.0), 1e-3,
                                           100.0, 100000);
    REQUIRE(traj.size() == 2);
    const Eigen::Matrix3d& R = traj.states.back().R;
    CHECK((R.transpose() * R - Eigen::Matrix3d::Identity()).norm() <= 1e-9);
    CHECK(R.determinant() == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("rigid body step validation") {
    const InertiaTensor inertia(kMoments);
    const auto damping = DampingModel::isotropic(0.1);
    RigidBodyState x;
    CHECK_THROWS_AS(rigid_body_step(0.0, x, inertia, damping), std::invalid_argument);
    CHECK_THROWS_AS(rigid_body_step(-0.1, x, inertia, damping), std::invalid_argument);

    RigidBodyState skew;
    skew.R(0, 1) = 0.5; // not orthogonal
    CHECK_THROWS_AS(rigid_body_step(0.1, skew, inertia, damping), std::invalid_argument);

    RigidBodyState nan_state;
    nan_state.M[1] = std::nan("");
    CHECK_THROWS_AS(rigid_body_step(0.1, nan_state, inertia, damping), NumericError);
}

TEST_CASE("linearization at reference equilibria") {
    const InertiaTensor inertia(kMoments);
    const auto zero_damping = DampingModel::isotropic(0.0);

    CHECK(linearize(Eigen::Vector3d::Zero(), inertia, zero_damping).norm() == 0.0);

    const double gamma = 0.8;
    const Eigen::Matrix3d at_origin =
        linearize(Eigen::Vector3d::Zero(), inertia, DampingModel::isotropic(gamma));
    CHECK((at_origin + gamma * Eigen::Matrix3d::Identity()).norm() == 0.0);

    // intermediate axis: one real positive mode, growth rate mu / (2 sqrt 3)
    const auto eigs =
        linearization_eigenvalues(Eigen::Vector3d(0.0, 1.0, 0.0), inertia, zero_damping);
    double max_re = -1e300;
    for (const auto& ev : eigs)
        max_re = std::max(max_re, ev.real());
    CHECK(max_re == doctest::Approx(0.28867513459481287).epsilon(1e-10));

    CHECK_THROWS_AS(linearize(Eigen::Vector3d(0.3, 0.4, 0.0), inertia, zero_damping),
                    NotEquilibrium);
    CHECK_THROWS_AS(
        linearize(Eigen::Vector3d(1.0, 0.0, 0.0), inertia, DampingModel::isotropic(0.5)),
        NotEquilibrium);
}

TEST_CASE("stability classification follows the damping kernel") {
    const InertiaTensor inertia(kMoments);
    const auto zero_damping = DampingModel::isotropic(0.0);

    // undamped: extreme axes are centers, the intermediate axis is a saddle
    CHECK(classify_stability(Eigen::Vector3d::UnitX(), inertia, zero_damping) ==
          Stability::Marginal);
    CHECK(classify_stability(Eigen::Vector3d::UnitZ(), inertia, zero_damping) ==
          Stability::Marginal);
    CHECK(classify_stability(Eigen::Vector3d::UnitY(), inertia, zero_damping) ==
          Stability::SaddleUnstable);

    // transverse damping makes the largest axis attract
    const auto transverse =
        DampingModel::anisotropic(Eigen::Vector3d(0.4, 0.4, 0.0).asDiagonal());
    CHECK(classify_stability(Eigen::Vector3d::UnitZ(), inertia, transverse) ==
          Stability::AsymptoticallyStable);

    // weakly damped transverse modes leave the intermediate-axis saddle in
    // place (the reduced block has det = d1 d3 - mu^2/12 < 0)
    const auto weak = DampingModel::anisotropic(Eigen::Vector3d(0.1, 0.0, 0.1).asDiagonal());
    CHECK(classify_stability(Eigen::Vector3d::UnitY(), inertia, weak) ==
          Stability::SaddleUnstable);
    // strong transverse damping flips the determinant sign and stabilizes it
    const auto strong = DampingModel::anisotropic(Eigen::Vector3d(1.0, 0.0, 1.0).asDiagonal());
    CHECK(classify_stability(Eigen::Vector3d::UnitY(), inertia, strong) ==
          Stability::AsymptoticallyStable);

    // definite damping: the origin is the global sink
    CHECK(classify_stability(Eigen::Vector3d::Zero(), inertia, DampingModel::isotropic(0.9)) ==
          Stability::OriginGlobalSink);
    CHECK(classify_stability(Eigen::Vector3d::Zero(), inertia, zero_damping) ==
          Stability::Marginal);
}

TEST_CASE("equilibrium search across damping variants") {
    const InertiaTensor inertia(kMoments);

    SUBCASE("definite isotropic damping leaves only the origin") {
        const auto report = find_equilibria(inertia, DampingModel::isotropic(0.7));
        REQUIRE(report.equilibria.size() == 1);
        CHECK(report.equilibria[0].axis_index == 0);
        CHECK(report.equilibria[0].classification == Stability::OriginGlobalSink);
        for (const auto& ev : report.equilibria[0].eigenvalues) {
            CHECK(ev.real() == doctest::Approx(-0.7).epsilon(1e-12));
            CHECK(std::abs(ev.imag()) <= 1e-12);
        }
    }

    SUBCASE("no damping keeps all principal axes") {
        const auto report = find_equilibria(inertia, DampingModel::isotropic(0.0));
        REQUIRE(report.equilibria.size() == 4);
        CHECK(report.equilibria[0].axis_index == 0);
        CHECK(report.equilibria[1].axis_index == 1);
        CHECK(report.equilibria[2].axis_index == 2);
        CHECK(report.equilibria[2].classification == Stability::SaddleUnstable);
        CHECK(report.equilibria[3].axis_index == 3);
    }

    SUBCASE("singular damping selects its kernel axis") {
        const auto damping =
            DampingModel::anisotropic(Eigen::Vector3d(0.0, 1.0, 1.0).asDiagonal());
        const auto report = find_equilibria(inertia, damping);
        REQUIRE(report.equilibria.size() == 2);
        CHECK(report.equilibria[1].axis_index == 1);
        CHECK(report.equilibria[1].classification == Stability::AsymptoticallyStable);

        // brute-force residual scan: away from axis 1 no unit vector comes
        // close to satisfying both equilibrium conditions
        std::mt19937_64 rng(43);
        std::normal_distribution<double> normal(0.0, 1.0);
        for (int trial = 0; trial < 20000; ++trial) {
            Eigen::Vector3d u(normal(rng), normal(rng), normal(rng));
            u.normalize();
            const double angle = std::acos(std::min(1.0, std::abs(u[0])));
            if (angle > 0.1)
                CHECK(equilibrium_residual(u, inertia, damping) > 0.01);
        }
        CHECK(equilibrium_residual(Eigen::Vector3d::UnitX(), inertia, damping) <= 1e-15);
    }

    SUBCASE("reported equilibria satisfy the residual invariants") {
        for (const auto& damping :
             {DampingModel::isotropic(0.0),
              DampingModel::anisotropic(Eigen::Vector3d(0.0, 0.3, 0.9).asDiagonal()),
              DampingModel::anisotropic(Eigen::Vector3d(0.2, 0.0, 0.2).asDiagonal())}) {
            const auto report = find_equilibria(inertia, damping, 1e-10);
            for (const auto& eq : report.equilibria) {
                if (eq.axis_index <= 0)
                    continue;
                const Eigen::Vector3d& m = eq.representative;
                CHECK(m.cross(inertia.angular_velocity(m)).norm() <= 1e-10);
                CHECK(damping.apply(m).norm() <=
                      1e-10 * std::max(1.0, damping.matrix().norm()));
            }
        }
    }
}

TEST_CASE("repeated moments report a degenerate family") {
    const InertiaTensor symmetric_body(Eigen::Vector3d(1.0, 1.0, 3.0));
    const auto report = find_equilibria(symmetric_body, DampingModel::isotropic(0.0));

    bool found_family = false, found_axis3 = false;
    for (const auto& eq : report.equilibria) {
        if (eq.axis_index == -1) {
            found_family = true;
            CHECK(eq.classification == Stability::DegenerateFamily);
            CHECK(std::abs(eq.representative[2]) <= 1e-12); // lies in the 1-2 plane
        }
        if (eq.axis_index == 3)
            found_axis3 = true;
    }
    CHECK(found_family);
    CHECK(found_axis3);
}

TEST_CASE("classification agrees with forward integration") {
    const InertiaTensor inertia(kMoments);
    std::mt19937_64 rng(47);
    std::normal_distribution<double> normal(0.0, 1.0);

    SUBCASE("asymptotically stable equilibria reconverge") {
        const auto damping =
            DampingModel::anisotropic(Eigen::Vector3d(0.0, 1.0, 1.0).asDiagonal());
        REQUIRE(classify_stability(Eigen::Vector3d::UnitX(), inertia, damping) ==
                Stability::AsymptoticallyStable);

        Eigen::Vector3d noise(normal(rng), normal(rng), normal(rng));
        noise.normalize();
        RigidBodyState x0;
        x0.M = Eigen::Vector3d::UnitX() + 1e-4 * noise;

        const auto traj = rigid_body_integrate(x0, inertia, damping, 1e-3, 5.0);
        auto transverse = [](const Eigen::Vector3d& m) {
            return std::hypot(m[1], m[2]);
        };
        const double start = transverse(x0.M);
        CHECK(transverse(traj.states.back().M) <= 0.1 * start);
    }

    SUBCASE("saddles escape along the unstable eigendirection") {
        const auto zero_damping = DampingModel::isotropic(0.0);
        RigidBodyState x0;
        x0.M = Eigen::Vector3d::UnitY() +
               1e-4 * Eigen::Vector3d(1.0, 0.0, 1.0).normalized();
        const auto traj = rigid_body_integrate(x0, inertia, zero_damping, 0.01, 30.0);

        const double start = std::hypot(x0.M[0], x0.M[2]);
        const double end = std::hypot(traj.states.back().M[0], traj.states.back().M[2]);
        CHECK(end >= 100.0 * start);

        // while still in the linear regime the transverse part lines up with
        // the growing mode (1, -sqrt(3)) / 2 of the reduced block
        const Eigen::Vector2d unstable(0.5, -std::sqrt(3.0) / 2.0);
        for (std::size_t k = 0; k < traj.size(); ++k) {
            const Eigen::Vector2d tv(traj.states[k].M[0], traj.states[k].M[2]);
            if (tv.norm() >= 0.01) {
                CHECK(std::abs(tv.normalized().dot(unstable)) >= 0.9);
                break;
            }
        }
    }
}
