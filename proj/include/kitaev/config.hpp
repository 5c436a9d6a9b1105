#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace kitaev {

inline constexpr const char* kVersion = "0.1.0";

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Flat run configuration. Text form is one `key = value` per line; `#` starts a comment.
struct RunConfig {
    int nx = 2;
    int ny = 2;
    double Jx = 1.0;
    double Jy = 1.0;
    double Jz = 1.0;
    /// exponential | cosine | file
    std::string drive = "exponential";
    double D = 0.01;
    double omega = 0.0;
    std::string drive_file;
    std::string initial = "0x0";
    int excited_plaquette = 0;
    double t_max = 10.0;
    int samples = 201;
    std::string engine = "label";
    double quad_tol = 1e-10;
    double oracle_tol = 1e-9;
    double eps_zero = 0.0;
    double slope_tol = 0.0;
    int hilbert_cap = 16;
    double omega_min = -2.0;
    double omega_max = 4.0;
    int omega_points = 61;
    double kT = 1.0;
    std::string weight = "boltzmann";
    double mu = 0.0;
    double t_eval = 0.0;
    double t0 = 0.0;
    bool literal_t0 = false;
    std::string part = "A";
    double corr_tol = 1e-8;
    std::uint64_t seed = 12345;
    int jobs = 1;
    std::string output = "out";

    /// Throws ConfigError on an unknown key or an unparsable value.
    void set(const std::string& key, const std::string& value);
    std::string get(const std::string& key) const;
    static const std::vector<std::string>& keys();

    /// Module preconditions that can be checked before any computation.
    void validate() const;

    /// Canonical `key = value` lines in key order.
    std::vector<std::string> lines() const;
    /// FNV-1a over the canonical lines, excluding jobs and output (they do not change results).
    std::uint64_t hash() const;
};

/// Parses a config file, applying each line with RunConfig::set.
RunConfig load_config(const std::string& path, RunConfig base = {});

std::string format_double(double x);

}  // namespace kitaev
