#include "kitaev/io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>

namespace kitaev {

std::string hex64(std::uint64_t v) {
    char buf[24];
    std::snprintf(buf, sizeof buf, "0x%016llx", static_cast<unsigned long long>(v));
    return buf;
}

std::vector<std::string> OutputHeader::lines() const {
    std::vector<std::string> out;
    out.push_back(std::string("# kitaev-sgp ") + kVersion);
    out.push_back("# command = " + command);
    out.push_back("# hbar = 1");
    out.push_back("# engine = " + engine);
    if (config) {
        out.push_back("# config_hash = " + hex64(config->hash()));
        for (const auto& l : config->lines()) out.push_back("# " + l);
    }
    for (const auto& n : notes) out.push_back("# note: " + n);
    return out;
}

nlohmann::ordered_json OutputHeader::to_json() const {
    nlohmann::ordered_json h;
    h["tool"] = "kitaev-sgp";
    h["version"] = kVersion;
    h["command"] = command;
    h["hbar"] = 1;
    h["engine"] = engine;
    if (config) {
        h["config_hash"] = hex64(config->hash());
        nlohmann::ordered_json c;
        for (const auto& k : RunConfig::keys()) c[k] = config->get(k);
        h["config"] = c;
    }
    if (!notes.empty()) h["notes"] = notes;
    return h;
}

void CsvTable::add(std::vector<std::string> row) {
    if (row.size() != columns.size()) throw std::logic_error("CsvTable::add: column count mismatch");
    rows.push_back(std::move(row));
}

std::string cell(double x) { return format_double(x); }
std::string cell(long long x) { return std::to_string(x); }
std::string cell(int x) { return std::to_string(x); }
std::string cell(std::size_t x) { return std::to_string(x); }
std::string cell(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) q += (c == '"') ? std::string("\"\"") : std::string(1, c);
    return q + "\"";
}

std::string render_csv(const OutputHeader& header, const CsvTable& table) {
    std::string out;
    for (const auto& l : header.lines()) out += l + "\n";
    auto join = [&](const std::vector<std::string>& r) {
        for (std::size_t k = 0; k < r.size(); ++k) out += (k ? "," : "") + r[k];
        out += "\n";
    };
    join(table.columns);
    for (const auto& r : table.rows) join(r);
    return out;
}

std::string render_json(const OutputHeader& header, const nlohmann::ordered_json& payload) {
    nlohmann::ordered_json j;
    j["header"] = header.to_json();
    for (auto it = payload.begin(); it != payload.end(); ++it) j[it.key()] = it.value();
    return j.dump(2) + "\n";
}

void write_text(const std::string& path, const std::string& text) {
    const std::filesystem::path p(path);
    if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
    std::ofstream out(p, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    out << text;
    if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

CsvTable coefficient_table(const std::vector<CoefficientSeries>& series) {
    CsvTable t{{"target", "E_target", "t", "re", "im"}, {}};
    for (const auto& s : series)
        for (std::size_t k = 0; k < s.times.size(); ++k)
            t.add({s.target.id(), cell(s.E_target), cell(s.times[k]), cell(s.values[k].real()), cell(s.values[k].imag())});
    return t;
}

CsvTable phase_table(const SubGeometricPhaseSeries& phase) {
    CsvTable t{{"t", "A", "a", "phi", "singular"}, {}};
    for (std::size_t k = 0; k < phase.size(); ++k)
        t.add({cell(phase.times[k]), cell(phase.A[k]), cell(phase.a[k]), cell(phase.phi[k]), cell(int{phase.singular[k]})});
    return t;
}

CsvTable interval_table(const std::vector<StabilityInterval>& intervals) {
    CsvTable t{{"t_start", "t_end", "label"}, {}};
    for (const auto& iv : intervals) t.add({cell(iv.t_start), cell(iv.t_end), to_string(iv.label)});
    return t;
}

CsvTable correlation_table(const std::vector<CorrelationRecord>& records) {
    CsvTable t{{"i", "j", "alpha", "beta", "t", "t0", "re", "im", "engine"}, {}};
    for (const auto& r : records)
        t.add({cell(r.site_i), cell(r.site_j), std::string(1, to_char(r.alpha)), std::string(1, to_char(r.beta)), cell(r.t),
               cell(r.t0), cell(r.value.real()), cell(r.value.imag()), to_string(r.engine)});
    return t;
}

nlohmann::ordered_json density_json(const DensityMatrix& rho) {
    nlohmann::ordered_json j;
    j["basis"] = rho.basis;
    j["full_hilbert"] = rho.full_hilbert;
    j["trace"] = rho.trace;
    nlohmann::ordered_json entries = nlohmann::ordered_json::array();
    for (Eigen::Index r = 0; r < rho.entries.rows(); ++r)
        for (Eigen::Index c = 0; c < rho.entries.cols(); ++c)
            entries.push_back({rho.entries(r, c).real(), rho.entries(r, c).imag()});
    j["dim"] = rho.entries.rows();
    j["entries"] = entries;
    return j;
}

}  // namespace kitaev
