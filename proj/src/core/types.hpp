#ifndef CONTACTMECH_CORE_TYPES_HPP
#define CONTACTMECH_CORE_TYPES_HPP

#include <Eigen/Dense>

#include <cstddef>
#include <stdexcept>
#include <string>

namespace contactmech {

/// File or directory failure while emitting results.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Thrown when a state or callback produces a non-finite value. `index()`
/// identifies the offending component (or step number), -1 if not applicable.
class NumericError : public std::runtime_error {
public:
    explicit NumericError(const std::string& what, std::ptrdiff_t index = -1)
        : std::runtime_error(what), index_(index) {}

    std::ptrdiff_t index() const noexcept { return index_; }

private:
    std::ptrdiff_t index_;
};

/// Point (q, p, s) on the extended phase space T*R^n x R. The scalar s is the
/// contact coordinate accumulating the action along a trajectory.
struct ContactState {
    Eigen::VectorXd q;
    Eigen::VectorXd p;
    double s = 0.0;

    ContactState() = default;
    ContactState(Eigen::VectorXd q_, Eigen::VectorXd p_, double s_ = 0.0)
        : q(std::move(q_)), p(std::move(p_)), s(s_) {}

    Eigen::Index dim() const { return q.size(); }
    bool finite() const { return q.allFinite() && p.allFinite() && std::isfinite(s); }
};

/// Throws std::invalid_argument on dimension mismatch, NumericError on NaN/Inf.
void require_valid(const ContactState& x);

} // namespace contactmech

#endif
