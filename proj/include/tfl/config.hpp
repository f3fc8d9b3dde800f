// INI experiment configuration, config echo and content hashing.
#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "tfl/grid.hpp"

namespace tfl {

struct ConfigError : std::runtime_error {
    std::string key;
    ConfigError(std::string k, const std::string& what) : std::runtime_error(k + ": " + what), key(std::move(k)) {}
};

struct ExperimentConfig {
    // [grid]
    double s_min = -12.0;
    double s_max = 6.0;
    int n = 1025;
    // [solver]
    double dt = 1e-2;
    double T = 1.0;
    std::vector<double> lambda{1.0};
    // [norms]
    int N = 1;
    int k = 3;
    double delta = 0.25;
    std::vector<double> alpha{0.25};
    // [initial] data for linear runs: x3exp = amplitude x^3 e^{-x}, monomial = amplitude x^power,
    // tapered = amplitude (3x^2 + 2x) e^{-x}
    std::string profile = "x3exp";
    double amplitude = 1.0;
    int power = 3;
    // [monitor]
    double alpha_tilde = 0.25;
    int monitor_k = 2;
    // [nonlinear]
    double epsilon = 1e-3;
    bool taper = true;
    double picard_tol = 1e-10;
    int picard_max = 25;
    double lipschitz_threshold = 0.5;
    // [output]
    std::string dir = ".";
    std::string prefix = "run";
    std::vector<double> snapshot_times;
    // [run]
    unsigned long seed = 0;

    LogGrid grid() const { return LogGrid::make(s_min, s_max, n); }
};

// Parses INI text; unknown sections or keys and out-of-range values throw ConfigError naming the key.
ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config(const std::string& path);
// Range checks against module preconditions.
void validate(const ExperimentConfig& c);

// Canonical INI text of every resolved key, in fixed order.
std::string echo(const ExperimentConfig& c);
// SHA-1 of "blob <len>\0<content>", as git computes object ids.
std::string git_blob_hash(const std::string& content);

// Sets one key given as section.key from its textual value.
void set_value(ExperimentConfig& c, const std::string& dotted, const std::string& value);

}  // namespace tfl
