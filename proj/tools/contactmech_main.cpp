// Experiment runner for the contactmech shared library. Talks to the library
// exclusively through the public C interface.

#include "contactmech/contactmech.h"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <string>
#include <vector>

namespace {

const char* kUsage =
    "usage: contactmech <experiment> [--key value]... [--config path] [--out dir]\n"
    "\n"
    "experiments:\n"
    "  oscillator   damped harmonic oscillator, conservative vs dissipative run\n"
    "  particle2d   planar particle in a cubically coupled well, splitting vs RK4\n"
    "  rigidbody    damped rigid body trajectories near each principal axis\n"
    "  convergence  global energy-error order measurement for both integrators\n"
    "  equilibria   steady rotations of the damped rigid body, with stability\n"
    "\n"
    "options:\n"
    "  --key value   set an experiment parameter (e.g. --gamma 0.1 --h 0.01)\n"
    "  --config path read key=value pairs (one per line, '#' comments) first;\n"
    "                command-line flags override the file\n"
    "  --out dir     output directory (default: $CONTACTMECH_OUT or '.')\n";

bool read_config(const std::string& path, std::map<std::string, std::string>& params,
                 std::string& error) {
    std::ifstream in(path);
    if (!in) {
        error = "cannot open config file: " + path;
        return false;
    }
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos)
            line.erase(hash);
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos)
            continue;
        const auto last = line.find_last_not_of(" \t\r");
        line = line.substr(first, last - first + 1);
        const auto eq = line.find('=');
        if (eq == std::string::npos || eq == 0) {
            error = path + ":" + std::to_string(line_no) + ": expected key=value";
            return false;
        }
        auto trim = [](std::string s) {
            const auto b = s.find_first_not_of(" \t");
            const auto e = s.find_last_not_of(" \t");
            return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        params[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    }
    return true;
}

} // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::fputs(kUsage, stderr);
        return 2;
    }
    const std::string experiment = argv[1];
    if (experiment == "--help" || experiment == "-h" || experiment == "help") {
        std::fputs(kUsage, stdout);
        return 0;
    }
    if (experiment == "--version") {
        std::printf("contactmech %s\n", cm_version());
        return 0;
    }

    std::map<std::string, std::string> flag_params;
    std::string config_path;
    std::string out_dir;
    for (int i = 2; i < argc; ++i) {
        std::string arg = argv[i];
        if (arg.rfind("--", 0) != 0) {
            std::fprintf(stderr, "contactmech: unexpected argument '%s'\n", arg.c_str());
            return 2;
        }
        if (i + 1 >= argc) {
            std::fprintf(stderr, "contactmech: option '%s' needs a value\n", arg.c_str());
            return 2;
        }
        const std::string key = arg.substr(2);
        const std::string value = argv[++i];
        if (key == "config")
            config_path = value;
        else if (key == "out")
            out_dir = value;
        else
            flag_params[key] = value;
    }

    std::map<std::string, std::string> params;
    if (!config_path.empty()) {
        std::string error;
        if (!read_config(config_path, params, error)) {
            std::fprintf(stderr, "contactmech: %s\n", error.c_str());
            return 2;
        }
    }
    for (const auto& [key, value] : flag_params)
        params[key] = value;

    if (out_dir.empty()) {
        const char* env = std::getenv("CONTACTMECH_OUT");
        if (env && *env)
            out_dir = env;
    }

    std::vector<const char*> keys, values;
    keys.reserve(params.size());
    values.reserve(params.size());
    for (const auto& [key, value] : params) {
        keys.push_back(key.c_str());
        values.push_back(value.c_str());
    }

    char* report = nullptr;
    const cm_status status =
        cm_experiment_run(experiment.c_str(), keys.data(), values.data(), keys.size(),
                          out_dir.empty() ? nullptr : out_dir.c_str(), &report);
    if (report) {
        std::fputs(report, stdout);
        cm_string_free(report);
    }
    if (status != CM_OK) {
        std::fprintf(stderr, "contactmech: %s: %s\n", cm_status_name(status), cm_last_error());
        return 1;
    }
    return 0;
}
