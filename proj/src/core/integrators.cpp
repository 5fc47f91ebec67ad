#include "core/integrators.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace contactmech {

namespace {

void require_step(double h) {
    if (!std::isfinite(h))
        throw std::invalid_argument("step must be finite");
}

ContactState advance(Method method, double h, const ContactState& x,
                     const SeparatedHamiltonian& model) {
    return method == Method::ContactStrang ? strang_step(h, x, model) : rk4_step(h, x, model);
}

} // namespace

ContactState kinetic_flow(double h, const ContactState& x, const SeparatedHamiltonian& model) {
    require_step(h);
    require_matching(model, x);
    ContactState y = x;
    y.q += h * model.kinetic_gradient(x.p);
    y.s += h * model.kinetic(x.p);
    return y;
}

ContactState potential_flow(double h, const ContactState& x, const SeparatedHamiltonian& model) {
    require_step(h);
    require_matching(model, x);
    ContactState y = x;
    y.p -= h * model.potential_gradient(x.q);
    y.s -= h * model.potential(x.q);
    return y;
}

ContactState damping_flow(double h, const ContactState& x, const SeparatedHamiltonian& model) {
    require_step(h);
    require_matching(model, x);
    const double decay = std::exp(-model.gamma() * h);
    ContactState y = x;
    y.p *= decay;
    y.s *= decay;
    return y;
}

ContactState strang_step(double h, const ContactState& x, const SeparatedHamiltonian& model) {
    // B_{h/2} o C_{h/2} o A_h o C_{h/2} o B_{h/2}, rightmost first. The
    // palindromic arrangement is self-adjoint, which is what makes the scheme
    // second order; placing the full damping flow on one side of A_h leaves an
    // O(h^2) [kinetic, damping] commutator term per step and costs an order.
    ContactState y = potential_flow(0.5 * h, x, model);
    y = damping_flow(0.5 * h, y, model);
    y = kinetic_flow(h, y, model);
    y = damping_flow(0.5 * h, y, model);
    return potential_flow(0.5 * h, y, model);
}

ContactState rk4_step(double h, const ContactState& x, const SeparatedHamiltonian& model) {
    require_step(h);
    const ContactVectorField k1 = contact_rhs(model, x);

    ContactState x2(x.q + 0.5 * h * k1.dq, x.p + 0.5 * h * k1.dp, x.s + 0.5 * h * k1.ds);
    const ContactVectorField k2 = contact_rhs(model, x2);

    ContactState x3(x.q + 0.5 * h * k2.dq, x.p + 0.5 * h * k2.dp, x.s + 0.5 * h * k2.ds);
    const ContactVectorField k3 = contact_rhs(model, x3);

    ContactState x4(x.q + h * k3.dq, x.p + h * k3.dp, x.s + h * k3.ds);
    const ContactVectorField k4 = contact_rhs(model, x4);

    ContactState y = x;
    y.q += (h / 6.0) * (k1.dq + 2.0 * k2.dq + 2.0 * k3.dq + k4.dq);
    y.p += (h / 6.0) * (k1.dp + 2.0 * k2.dp + 2.0 * k3.dp + k4.dp);
    y.s += (h / 6.0) * (k1.ds + 2.0 * k2.ds + 2.0 * k3.ds + k4.ds);
    return y;
}

long step_count(double step, double t_final) {
    if (!(step > 0.0) || !std::isfinite(step))
        throw std::invalid_argument("step must be positive and finite");
    if (!(t_final > 0.0) || !std::isfinite(t_final))
        throw std::invalid_argument("t_final must be positive and finite");
    const double ratio = t_final / step;
    const long n = std::lround(ratio);
    if (n < 1)
        throw std::invalid_argument("t_final/step must be >= 1");
    if (std::abs(ratio - static_cast<double>(n)) > 1e-6 * static_cast<double>(n))
        throw std::invalid_argument("step " + std::to_string(step) + " does not divide t_final " +
                                    std::to_string(t_final) + " to one part in 1e6");
    return n;
}

TrajectoryRecord integrate(const ContactState& x0, const SeparatedHamiltonian& model,
                           const IntegratorConfig& cfg) {
    require_matching(model, x0);
    const long n = step_count(cfg.step, cfg.t_final);
    if (cfg.record_every < 1)
        throw std::invalid_argument("record_every must be >= 1");
    if (n % cfg.record_every != 0)
        throw std::invalid_argument("record_every must divide the step count " +
                                    std::to_string(n));

    TrajectoryRecord traj;
    const std::size_t samples = static_cast<std::size_t>(n / cfg.record_every) + 1;
    traj.times.reserve(samples);
    traj.states.reserve(samples);
    traj.mechanical_energy.reserve(samples);
    traj.total_energy.reserve(samples);
    traj.momentum_squared.reserve(samples);

    auto record = [&](double t, const ContactState& x) {
        traj.times.push_back(t);
        traj.states.push_back(x);
        traj.mechanical_energy.push_back(mechanical_energy(model, x));
        traj.total_energy.push_back(total_energy(model, x));
        traj.momentum_squared.push_back(x.p.squaredNorm());
    };

    ContactState x = x0;
    record(0.0, x);
    for (long k = 1; k <= n; ++k) {
        try {
            x = advance(cfg.method, cfg.step, x, model);
        } catch (const NumericError& e) {
            throw NumericError(std::string(e.what()) + " (during step " + std::to_string(k) +
                                   ")",
                               k);
        }
        if (!x.finite())
            throw NumericError("integration blew up (non-finite state) at step " +
                                   std::to_string(k),
                               k);
        if (k % cfg.record_every == 0)
            record(static_cast<double>(k) * cfg.step, x);
    }
    return traj;
}

std::vector<ConvergencePoint> convergence_study(const ContactState& x0,
                                                const SeparatedHamiltonian& model,
                                                std::vector<double> steps, double t_final,
                                                Method method) {
    if (steps.size() < 3)
        throw std::invalid_argument("convergence study needs at least 3 step sizes");
    double h_min = steps.front();
    for (double h : steps) {
        step_count(h, t_final); // validates positivity and divisibility
        h_min = std::min(h_min, h);
    }
    for (std::size_t i = 0; i < steps.size(); ++i)
        for (std::size_t j = i + 1; j < steps.size(); ++j)
            if (steps[i] == steps[j])
                throw std::invalid_argument("convergence study step sizes must be distinct");

    const double h_ref = h_min / 100.0;
    const long n_ref = step_count(h_ref, t_final);

    // Reference H0 samples at every fine step; the coarse grids index into it.
    std::vector<double> ref_energy(static_cast<std::size_t>(n_ref) + 1);
    {
        ContactState x = x0;
        ref_energy[0] = mechanical_energy(model, x);
        for (long k = 1; k <= n_ref; ++k) {
            x = rk4_step(h_ref, x, model);
            if (!x.finite())
                throw NumericError("reference integration blew up at step " + std::to_string(k),
                                   k);
            ref_energy[static_cast<std::size_t>(k)] = mechanical_energy(model, x);
        }
    }

    std::vector<ConvergencePoint> result;
    result.reserve(steps.size());
    for (double h : steps) {
        const double stride_real = h / h_ref;
        const long stride = std::lround(stride_real);
        if (std::abs(stride_real - static_cast<double>(stride)) > 1e-9 * stride_real)
            throw std::invalid_argument(
                "step " + std::to_string(h) +
                " is not an integer multiple of the reference step; sample grids cannot align");

        const long n = step_count(h, t_final);
        ContactState x = x0;
        double err = std::abs(mechanical_energy(model, x) - ref_energy[0]);
        for (long k = 1; k <= n; ++k) {
            x = advance(method, h, x, model);
            if (!x.finite())
                throw NumericError("integration blew up at step " + std::to_string(k), k);
            const double diff = std::abs(mechanical_energy(model, x) -
                                         ref_energy[static_cast<std::size_t>(k * stride)]);
            err = std::max(err, diff);
        }
        result.push_back({h, err});
    }
    return result;
}

double fitted_slope(const std::vector<ConvergencePoint>& points) {
    if (points.size() < 2)
        throw std::invalid_argument("slope fit needs at least 2 points");
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (const auto& pt : points) {
        if (!(pt.error > 0.0))
            throw std::invalid_argument("slope fit requires strictly positive errors");
        const double lx = std::log(pt.step);
        const double ly = std::log(pt.error);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    const double n = static_cast<double>(points.size());
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

double action_recursion_defect(const TrajectoryRecord& traj, const SeparatedHamiltonian& model) {
    if (traj.size() < 2)
        throw std::invalid_argument("trajectory too short for the action recursion check");
    const double h = traj.times[1] - traj.times[0];
    double worst = 0.0;
    for (std::size_t k = 0; k + 1 < traj.size(); ++k) {
        const ContactState& a = traj.states[k];
        const ContactState& b = traj.states[k + 1];
        const Eigen::VectorXd q_mid = 0.5 * (a.q + b.q);
        const Eigen::VectorXd p_mid = 0.5 * (a.p + b.p);
        const double s_mid = 0.5 * (a.s + b.s);
        const double lagrangian =
            model.kinetic(p_mid) - model.potential(q_mid) - model.gamma() * s_mid;
        worst = std::max(worst, std::abs(b.s - a.s - h * lagrangian));
    }
    return worst;
}

} // namespace contactmech
