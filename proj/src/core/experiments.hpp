#ifndef CONTACTMECH_CORE_EXPERIMENTS_HPP
#define CONTACTMECH_CORE_EXPERIMENTS_HPP

#include <map>
#include <string>
#include <vector>

namespace contactmech {

/// Named experiment plus a flat key -> value parameter map. Values are plain
/// strings; each experiment parses the keys it understands and rejects the
/// rest. Missing keys fall back to the documented defaults.
struct ExperimentSpec {
    std::string name; // oscillator | particle2d | rigidbody | convergence | equilibria
    std::map<std::string, std::string> params;
};

struct ExperimentResult {
    bool passed = true;
    std::string diagnostic;         // one-line reason when a check fails
    std::string report;             // full text report (also written to disk)
    std::vector<std::string> files; // paths written, report included
};

/// Runs the named experiment, writing CSV output and a text report into
/// out_dir (created if missing). Built-in consistency checks set passed=false
/// with a one-line diagnostic; contract errors throw.
ExperimentResult run_experiment(const ExperimentSpec& spec, const std::string& out_dir);

} // namespace contactmech

#endif
