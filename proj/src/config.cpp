#include "kitaev/config.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "kitaev/hamiltonian.hpp"
#include "kitaev/manifold.hpp"

namespace kitaev {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double parse_double(const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        const double x = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        throw ConfigError("config: '" + key + "' expects a number, got '" + v + "'");
    }
}

long long parse_int(const std::string& key, const std::string& v) {
    long long x = 0;
    const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
    if (ec != std::errc{} || p != v.data() + v.size())
        throw ConfigError("config: '" + key + "' expects an integer, got '" + v + "'");
    return x;
}

bool parse_bool(const std::string& key, const std::string& v) {
    if (v == "true" || v == "1") return true;
    if (v == "false" || v == "0") return false;
    throw ConfigError("config: '" + key + "' expects true or false, got '" + v + "'");
}

struct Field {
    std::function<void(RunConfig&, const std::string&)> set;
    std::function<std::string(const RunConfig&)> get;
};

template <typename T>
Field make_field(const std::string& key, T RunConfig::*member) {
    Field f;
    if constexpr (std::is_same_v<T, double>) {
        f.set = [key, member](RunConfig& c, const std::string& v) { c.*member = parse_double(key, v); };
        f.get = [member](const RunConfig& c) { return format_double(c.*member); };
    } else if constexpr (std::is_same_v<T, bool>) {
        f.set = [key, member](RunConfig& c, const std::string& v) { c.*member = parse_bool(key, v); };
        f.get = [member](const RunConfig& c) { return std::string(c.*member ? "true" : "false"); };
    } else if constexpr (std::is_same_v<T, std::string>) {
        f.set = [member](RunConfig& c, const std::string& v) { c.*member = v; };
        f.get = [member](const RunConfig& c) { return c.*member; };
    } else {
        f.set = [key, member](RunConfig& c, const std::string& v) {
            const long long x = parse_int(key, v);
            if (x < 0 && std::is_unsigned_v<T>) throw ConfigError("config: '" + key + "' must be non-negative");
            c.*member = static_cast<T>(x);
        };
        f.get = [member](const RunConfig& c) { return std::to_string(c.*member); };
    }
    return f;
}

const std::vector<std::pair<std::string, Field>>& registry() {
    static const std::vector<std::pair<std::string, Field>> r = [] {
        std::vector<std::pair<std::string, Field>> v;
#define KITAEV_FIELD(name) v.emplace_back(#name, make_field(#name, &RunConfig::name))
        KITAEV_FIELD(nx);
        KITAEV_FIELD(ny);
        KITAEV_FIELD(Jx);
        KITAEV_FIELD(Jy);
        KITAEV_FIELD(Jz);
        KITAEV_FIELD(drive);
        KITAEV_FIELD(D);
        KITAEV_FIELD(omega);
        KITAEV_FIELD(drive_file);
        KITAEV_FIELD(initial);
        KITAEV_FIELD(excited_plaquette);
        KITAEV_FIELD(t_max);
        KITAEV_FIELD(samples);
        KITAEV_FIELD(engine);
        KITAEV_FIELD(quad_tol);
        KITAEV_FIELD(oracle_tol);
        KITAEV_FIELD(eps_zero);
        KITAEV_FIELD(slope_tol);
        KITAEV_FIELD(hilbert_cap);
        KITAEV_FIELD(omega_min);
        KITAEV_FIELD(omega_max);
        KITAEV_FIELD(omega_points);
        KITAEV_FIELD(kT);
        KITAEV_FIELD(weight);
        KITAEV_FIELD(mu);
        KITAEV_FIELD(t_eval);
        KITAEV_FIELD(t0);
        KITAEV_FIELD(literal_t0);
        KITAEV_FIELD(part);
        KITAEV_FIELD(corr_tol);
        KITAEV_FIELD(seed);
        KITAEV_FIELD(jobs);
        KITAEV_FIELD(output);
#undef KITAEV_FIELD
        return v;
    }();
    return r;
}

const Field& field(const std::string& key) {
    for (const auto& [k, f] : registry())
        if (k == key) return f;
    throw ConfigError("config: unknown key '" + key + "'");
}

void require(bool ok, const std::string& what) {
    if (!ok) throw ConfigError("config: " + what);
}

}  // namespace

std::string format_double(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

void RunConfig::set(const std::string& key, const std::string& value) { field(key).set(*this, trim(value)); }

std::string RunConfig::get(const std::string& key) const { return field(key).get(*this); }

const std::vector<std::string>& RunConfig::keys() {
    static const std::vector<std::string> k = [] {
        std::vector<std::string> v;
        for (const auto& [name, f] : registry()) v.push_back(name);
        return v;
    }();
    return k;
}

void RunConfig::validate() const {
    require(nx >= 2 && ny >= 2, "nx and ny must be >= 2");
    require(nx * ny <= 64, "at most 64 plaquettes");
    CouplingParams p{Jx, Jy, Jz, D, omega};
    try {
        p.validate();
    } catch (const std::exception& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    require(drive == "exponential" || drive == "cosine" || drive == "file", "drive must be exponential, cosine or file");
    require(drive != "file" || !drive_file.empty(), "drive = file needs drive_file");
    const int n_plaq = nx * ny;
    try {
        FlipConfig::from_hex(n_plaq, initial);
    } catch (const std::exception& e) {
        throw ConfigError(std::string("config: initial: ") + e.what());
    }
    require(excited_plaquette >= 0 && excited_plaquette < n_plaq, "excited_plaquette out of range");
    require(std::isfinite(t_max) && t_max > 0.0, "t_max must be > 0");
    require(samples >= 3, "samples must be >= 3");
    try {
        engine_from_string(engine);
    } catch (const std::exception& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    require(quad_tol > 0.0 && oracle_tol > 0.0 && corr_tol > 0.0, "tolerances must be > 0");
    require(eps_zero >= 0.0 && slope_tol >= 0.0, "eps_zero and slope_tol must be >= 0 (0 selects the default)");
    require(hilbert_cap >= 1 && hilbert_cap <= 30, "hilbert_cap must be in [1, 30]");
    require(omega_points >= 1 && omega_max >= omega_min, "omega sweep range is empty");
    require(!std::isnan(kT) && kT >= 0.0, "kT must be >= 0 (0 and inf are the limits)");
    require(weight == "boltzmann" || weight == "fermi", "weight must be boltzmann or fermi");
    require(part == "A" || part == "B", "part must be A or B");
    require(t_eval >= 0.0 && t0 >= 0.0, "t_eval and t0 must be >= 0");
    require(jobs >= 1, "jobs must be >= 1");
}

std::vector<std::string> RunConfig::lines() const {
    std::vector<std::string> out;
    for (const auto& [k, f] : registry()) out.push_back(k + " = " + f.get(*this));
    return out;
}

std::uint64_t RunConfig::hash() const {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (const auto& [k, f] : registry()) {
        if (k == "jobs" || k == "output") continue;
        for (unsigned char c : k + " = " + f.get(*this) + "\n") {
            h ^= c;
            h *= 0x100000001b3ULL;
        }
    }
    return h;
}

RunConfig load_config(const std::string& path, RunConfig base) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open '" + path + "'");
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError(path + ":" + std::to_string(lineno) + ": expected 'key = value'");
        try {
            base.set(trim(line.substr(0, eq)), line.substr(eq + 1));
        } catch (const ConfigError& e) {
            throw ConfigError(path + ":" + std::to_string(lineno) + ": " + e.what());
        }
    }
    return base;
}

}  // namespace kitaev
