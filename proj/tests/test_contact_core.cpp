#include "core/contact_core.hpp"
#include "core/hamiltonian.hpp"

#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

using namespace contactmech;

namespace {

Eigen::VectorXd vec2(double a, double b) {
    Eigen::VectorXd v(2);
    v << a, b;
    return v;
}

// Central-difference gradient of the potential, step 1e-5 * (1 + |component|).
Eigen::VectorXd fd_gradient(const SeparatedHamiltonian& model, const Eigen::VectorXd& q) {
    Eigen::VectorXd g(q.size());
    for (Eigen::Index i = 0; i < q.size(); ++i) {
        const double step = 1e-5 * (1.0 + std::abs(q[i]));
        Eigen::VectorXd hi = q, lo = q;
        hi[i] += step;
        lo[i] -= step;
        g[i] = (model.potential(hi) - model.potential(lo)) / (2.0 * step);
    }
    return g;
}

} // namespace

TEST_CASE("total energy of the separated Hamiltonian") {
    const auto model = SeparatedHamiltonian::harmonic(2, 1.0, 0.5);

    CHECK(total_energy(model, {vec2(0, 0), vec2(0, 0), 0.0}) == 0.0);
    // T + V + gamma*s = 0.5 + 0.5 + 0.5*2
    CHECK(total_energy(model, {vec2(1, 0), vec2(0, 1), 2.0}) ==
          doctest::Approx(2.0).epsilon(1e-15));

    const auto undamped = SeparatedHamiltonian::harmonic(2, 1.0, 0.0);
    const ContactState x{vec2(0.3, -1.2), vec2(0.7, 0.4), 5.0};
    CHECK(total_energy(undamped, x) == mechanical_energy(undamped, x));
}

TEST_CASE("mechanical energy ignores the contact coordinate") {
    const auto model = SeparatedHamiltonian::harmonic(2, 1.0, 0.5);
    CHECK(mechanical_energy(model, {vec2(1, 0), vec2(0, 0), 0.0}) == doctest::Approx(0.5));
    CHECK(mechanical_energy(model, {vec2(0, 0), vec2(0, 0), 0.0}) == 0.0);

    const ContactState a{vec2(0.2, 0.9), vec2(-1.1, 0.3), 0.0};
    ContactState b = a;
    b.s = 123.456;
    CHECK(mechanical_energy(model, a) == mechanical_energy(model, b));
}

TEST_CASE("contact equations for the damped oscillator") {
    const double lambda = 0.37;
    const auto model = SeparatedHamiltonian::harmonic(1, 1.0, lambda);
    ContactState x{Eigen::VectorXd::Zero(1), Eigen::VectorXd::Ones(1), 0.0};

    const auto f = contact_rhs(model, x);
    CHECK(f.dq[0] == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(f.dp[0] == doctest::Approx(-lambda).epsilon(1e-15));
    CHECK(f.ds == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("zero damping reduces to the canonical Hamiltonian field") {
    const auto damped = SeparatedHamiltonian::coupled_well_2d(0.8);
    const auto plain = SeparatedHamiltonian::coupled_well_2d(0.0);
    const ContactState x{vec2(0.4, -0.9), vec2(1.3, 0.2), 0.7};

    const auto f = contact_rhs(plain, x);
    CHECK((f.dp + plain.potential_gradient(x.q)).norm() == 0.0);
    // the damped field differs exactly by the friction term -gamma p
    const auto g = contact_rhs(damped, x);
    CHECK((g.dp - (f.dp - 0.8 * x.p)).norm() == 0.0);
}

TEST_CASE("pure momentum damping when the potential is flat") {
    const auto model = SeparatedHamiltonian::free_particle(2, 0.6);
    const ContactState x{vec2(1, 2), vec2(-0.5, 3.0), 0.0};
    const auto f = contact_rhs(model, x);
    CHECK((f.dp + 0.6 * x.p).norm() == 0.0);
}

TEST_CASE("s-equation equals the running Lagrangian for quadratic kinetic energy") {
    std::mt19937_64 rng(41);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    const auto model = SeparatedHamiltonian::coupled_well_2d(0.25, 0.1, 1.6);
    for (int trial = 0; trial < 100; ++trial) {
        const ContactState x{vec2(u(rng), u(rng)), vec2(u(rng), u(rng)), u(rng)};
        const auto f = contact_rhs(model, x);
        const double lagrangian =
            model.kinetic(x.p) - model.potential(x.q) - model.gamma() * x.s;
        CHECK(f.ds == doctest::Approx(lagrangian).epsilon(1e-14));
        // cross-check against p . dT/dp - H
        CHECK(f.ds == doctest::Approx(x.p.dot(model.kinetic_gradient(x.p)) -
                                      total_energy(model, x))
                          .epsilon(1e-14));
    }
}

TEST_CASE("dissipation rate values and sign") {
    const auto model = SeparatedHamiltonian::harmonic(2, 1.0, 0.5);
    CHECK(dissipation_rate(model, {vec2(1, 1), vec2(2, 0), 0.0}) ==
          doctest::Approx(-2.0).epsilon(1e-15));

    const auto undamped = SeparatedHamiltonian::harmonic(2, 1.0, 0.0);
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    for (int trial = 0; trial < 50; ++trial) {
        const ContactState x{vec2(u(rng), u(rng)), vec2(u(rng), u(rng)), u(rng)};
        CHECK(dissipation_rate(undamped, x) == 0.0);
        const auto model2 = SeparatedHamiltonian::harmonic(2, 1.0, std::abs(u(rng)));
        CHECK(dissipation_rate(model2, x) <= 0.0);
    }
}

TEST_CASE("gradients agree with central differences") {
    std::mt19937_64 rng(123);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    const auto models = {SeparatedHamiltonian::coupled_well_2d(0.1),
                         SeparatedHamiltonian::harmonic(2, 2.5, 0.3, 1.7)};
    for (const auto& model : models) {
        for (int trial = 0; trial < 100; ++trial) {
            const Eigen::VectorXd q = vec2(u(rng), u(rng));
            const Eigen::VectorXd p = vec2(u(rng), u(rng));
            const Eigen::VectorXd gv = model.potential_gradient(q);
            const Eigen::VectorXd gv_fd = fd_gradient(model, q);
            CHECK((gv - gv_fd).norm() <= 1e-6 * std::max(1.0, gv.norm()));

            // dT/dp = p/m against differences of T
            for (Eigen::Index i = 0; i < 2; ++i) {
                const double step = 1e-5 * (1.0 + std::abs(p[i]));
                Eigen::VectorXd hi = p, lo = p;
                hi[i] += step;
                lo[i] -= step;
                const double fd = (model.kinetic(hi) - model.kinetic(lo)) / (2.0 * step);
                CHECK(model.kinetic_gradient(p)[i] ==
                      doctest::Approx(fd).epsilon(1e-6).scale(1.0));
            }
        }
    }
}

TEST_CASE("kinetic energy vanishes at rest and is nonnegative") {
    const auto model = SeparatedHamiltonian::harmonic(3, 1.0, 0.2, 2.5);
    CHECK(model.kinetic(Eigen::VectorXd::Zero(3)) == 0.0);
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> u(-5.0, 5.0);
    for (int trial = 0; trial < 50; ++trial) {
        Eigen::VectorXd p(3);
        p << u(rng), u(rng), u(rng);
        CHECK(model.kinetic(p) >= 0.0);
    }
}

TEST_CASE("contract violations are rejected") {
    const auto model = SeparatedHamiltonian::harmonic(2, 1.0, 0.5);

    CHECK_THROWS_AS(
        total_energy(model, {Eigen::VectorXd::Zero(3), Eigen::VectorXd::Zero(3), 0.0}),
        std::invalid_argument);
    CHECK_THROWS_AS(
        total_energy(model, {Eigen::VectorXd::Zero(2), Eigen::VectorXd::Zero(1), 0.0}),
        std::invalid_argument);

    ContactState bad{vec2(1, 0), vec2(0, 1), 0.0};
    bad.p[1] = std::nan("");
    CHECK_THROWS_AS(contact_rhs(model, bad), NumericError);

    CHECK_THROWS_AS(SeparatedHamiltonian::harmonic(2, 1.0, -0.1), std::invalid_argument);
    CHECK_THROWS_AS(SeparatedHamiltonian::harmonic(2, 1.0, 0.1, 0.0), std::invalid_argument);
}

TEST_CASE("non-finite potential callbacks surface as numeric errors with the index") {
    const SeparatedHamiltonian model(
        2, [](const Eigen::VectorXd&) { return 1.0; },
        [](const Eigen::VectorXd& q) {
            Eigen::VectorXd g = q;
            g[1] = std::numeric_limits<double>::infinity();
            return g;
        },
        0.0);
    const ContactState x{vec2(1, 1), vec2(0, 0), 0.0};
    try {
        contact_rhs(model, x);
        FAIL("expected NumericError");
    } catch (const NumericError& e) {
        CHECK(e.index() == 1);
    }
}
