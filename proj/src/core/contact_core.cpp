#include "core/contact_core.hpp"

namespace contactmech {

double total_energy(const SeparatedHamiltonian& model, const ContactState& x) {
    require_matching(model, x);
    return model.kinetic(x.p) + model.potential(x.q) + model.gamma() * x.s;
}

double mechanical_energy(const SeparatedHamiltonian& model, const ContactState& x) {
    require_matching(model, x);
    return model.kinetic(x.p) + model.potential(x.q);
}

ContactVectorField contact_rhs(const SeparatedHamiltonian& model, const ContactState& x) {
    require_matching(model, x);
    ContactVectorField f;
    f.dq = model.kinetic_gradient(x.p);
    f.dp = -model.potential_gradient(x.q) - model.gamma() * x.p;
    // p . dT/dp - H; equals T - V - gamma*s for the quadratic kinetic form.
    f.ds = x.p.dot(f.dq) - (model.kinetic(x.p) + model.potential(x.q) + model.gamma() * x.s);
    return f;
}

double dissipation_rate(const SeparatedHamiltonian& model, const ContactState& x) {
    require_matching(model, x);
    return -model.gamma() * x.p.squaredNorm() / model.mass();
}

} // namespace contactmech
