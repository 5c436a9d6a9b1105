// kitaev-sgp: batch front end for the sub-geometric phase simulator.

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "kitaev/config.hpp"
#include "kitaev/correlation.hpp"
#include "kitaev/density.hpp"
#include "kitaev/io.hpp"
#include "kitaev/lattice.hpp"
#include "kitaev/manifold.hpp"
#include "kitaev/oracle.hpp"
#include "kitaev/perturbation.hpp"
#include "kitaev/phase.hpp"
#include "kitaev/validation.hpp"

namespace fs = std::filesystem;
using namespace kitaev;

namespace {

constexpr int kExitFailedChecks = 1;
constexpr int kExitConfig = 2;
constexpr int kExitCompute = 3;

// A check that failed inside a subcommand; reported as a nonzero, machine-readable result.
struct ChecksFailed {
    std::vector<std::string> failures;
};

struct Context {
    RunConfig cfg;
    std::string command;
    bool plot_script = false;

    std::string path(const std::string& name) const { return (fs::path(cfg.output) / name).string(); }

    OutputHeader header(std::vector<std::string> notes = {}) const {
        return {command, cfg.engine, &cfg, std::move(notes)};
    }
    void csv(const std::string& name, const CsvTable& t, std::vector<std::string> notes = {}) const {
        write_text(path(name), render_csv(header(std::move(notes)), t));
        std::cout << "wrote " << path(name) << "\n";
    }
    void json(const std::string& name, const nlohmann::ordered_json& payload) const {
        write_text(path(name), render_json(header(), payload));
        std::cout << "wrote " << path(name) << "\n";
    }
};

// --- config plumbing -----------------------------------------------------------------

struct ConfigFlags {
    std::string file;
    std::vector<std::string> sets;
    std::map<std::string, std::string> values;
    std::map<std::string, CLI::Option*> options;
};

void add_config_flags(CLI::App* sub, ConfigFlags& f) {
    sub->add_option("--config", f.file, "key = value config file (flags override it)")->check(CLI::ExistingFile);
    sub->add_option("--set", f.sets, "override any config key: key=value (repeatable)");
    for (const auto& key : RunConfig::keys()) {
        std::string flag = key;
        std::replace(flag.begin(), flag.end(), '_', '-');
        f.options[key] = sub->add_option("--" + flag, f.values[key], "config key '" + key + "'");
    }
}

RunConfig resolve_config(const ConfigFlags& f) {
    RunConfig cfg = f.file.empty() ? RunConfig{} : load_config(f.file);
    for (const auto& s : f.sets) {
        const auto eq = s.find('=');
        if (eq == std::string::npos) throw ConfigError("--set expects key=value, got '" + s + "'");
        cfg.set(s.substr(0, eq), s.substr(eq + 1));
    }
    for (const auto& [key, opt] : f.options)
        if (opt->count() > 0) cfg.set(key, f.values.at(key));
    cfg.validate();
    return cfg;
}

LatticeGeometry lattice_of(const RunConfig& c) { return build_lattice(c.nx, c.ny); }
CouplingParams params_of(const RunConfig& c) { return {c.Jx, c.Jy, c.Jz, c.D, c.omega}; }
FlipConfig initial_of(const RunConfig& c) { return FlipConfig::from_hex(c.nx * c.ny, c.initial); }
std::vector<double> grid_of(const RunConfig& c) { return uniform_grid(c.t_max, c.samples); }
EvolveOptions evolve_options_of(const RunConfig& c) {
    return {engine_from_string(c.engine), c.quad_tol, c.hilbert_cap};
}

DriveSpec drive_of(const RunConfig& c) {
    if (c.drive == "exponential") return DriveSpec::exponential(c.D, c.omega);
    if (c.drive == "cosine") return DriveSpec::cosine(c.D, c.omega);
    std::ifstream in(c.drive_file);
    if (!in) throw ConfigError("cannot open drive_file '" + c.drive_file + "'");
    std::vector<double> ts;
    std::vector<cplx> vs;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#' || std::isalpha(static_cast<unsigned char>(line[0]))) continue;
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream ss(line);
        double t = 0, re = 0, im = 0;
        if (!(ss >> t >> re)) throw ConfigError("drive_file: bad row '" + line + "'");
        ss >> im;
        ts.push_back(t);
        vs.emplace_back(re, im);
    }
    try {
        return DriveSpec::sampled(ts, vs, c.D);
    } catch (const std::exception& e) {
        throw ConfigError(std::string("drive_file: ") + e.what());
    }
}

std::size_t grid_index(const std::vector<double>& times, double t) {
    std::size_t best = 0;
    for (std::size_t k = 1; k < times.size(); ++k)
        if (std::abs(times[k] - t) < std::abs(times[best] - t)) best = k;
    return best;
}

// --- plot scripts ------------------------------------------------------------------------

void emit_plot_script(const Context& ctx, const std::string& csv, const std::string& x, const std::vector<std::string>& ys,
                      const std::string& group = "") {
    std::ostringstream py;
    py << "# Plots " << csv << " (written by kitaev-sgp " << kVersion << "). The CSV stays the source of truth.\n"
       << "import csv, sys\n"
       << "import matplotlib\n"
       << "matplotlib.use('Agg')\n"
       << "import matplotlib.pyplot as plt\n\n"
       << "path = sys.argv[1] if len(sys.argv) > 1 else '" << csv << "'\n"
       << "with open(path) as fh:\n"
       << "    rows = list(csv.DictReader(line for line in fh if not line.startswith('#')))\n"
       << "groups = {}\n"
       << "for r in rows:\n"
       << "    groups.setdefault(r.get('" << group << "', ''), []).append(r)\n"
       << "fig, axes = plt.subplots(" << ys.size() << ", 1, figsize=(7, " << 2.5 * ys.size() << "), squeeze=False)\n"
       << "for ax, y in zip(axes[:, 0], " << "[";
    for (std::size_t k = 0; k < ys.size(); ++k) py << (k ? ", " : "") << "'" << ys[k] << "'";
    py << "]):\n"
       << "    for name, rs in groups.items():\n"
       << "        ax.plot([float(r['" << x << "']) for r in rs], [float(r[y]) for r in rs], label=name or None)\n"
       << "    ax.set_ylabel(y)\n"
       << "axes[-1, 0].set_xlabel('" << x << "')\n"
       << "if len(groups) > 1:\n"
       << "    axes[0, 0].legend(fontsize='small')\n"
       << "fig.tight_layout()\n"
       << "fig.savefig(path.rsplit('.', 1)[0] + '.png', dpi=120)\n";
    const std::string name = "plot_" + fs::path(csv).stem().string() + ".py";
    write_text(ctx.path(name), py.str());
    std::cout << "wrote " << ctx.path(name) << "\n";
}

// --- subcommands --------------------------------------------------------------------------

int cmd_lattice(const Context& ctx) {
    const auto geom = lattice_of(ctx.cfg);
    const auto report = validate_geometry(geom);
    nlohmann::ordered_json checks = nlohmann::ordered_json::array();
    std::vector<std::string> failures;
    for (const auto& c : report.checks) {
        checks.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
        std::cout << (c.passed ? "ok     " : "FAILED ") << c.name << (c.detail.empty() ? "" : ": " + c.detail) << "\n";
        if (!c.passed) failures.push_back(c.name);
    }
    nlohmann::ordered_json labels;
    std::string comps;
    for (auto c : site_components(geom)) comps += to_char(c);
    const auto kernel = geom.n_plaquettes() <= 24 ? signature_kernel(geom) : std::vector<FlipConfig>{};
    nlohmann::ordered_json payload;
    payload["geometry"] = nlohmann::ordered_json::parse(geometry_to_json(geom).dump());
    payload["site_labels"] = comps;
    payload["checks"] = checks;
    payload["signature_kernel"] = nlohmann::ordered_json::array();
    for (const auto& k : kernel) payload["signature_kernel"].push_back(k.hex());
    ctx.json("lattice.json", payload);
    std::cout << "sites " << geom.n_sites() << ", bonds " << geom.n_bonds() << ", plaquettes " << geom.n_plaquettes()
              << ", site labels " << comps << "\n";
    if (!kernel.empty())
        std::cout << "warning: " << kernel.size()
                  << " nonempty flip configs leave every site sign unchanged; the config -> ket map is not injective\n";
    if (!failures.empty()) throw ChecksFailed{failures};
    return 0;
}

int cmd_manifold(const Context& ctx, int n_override) {
    const int n = n_override > 0 ? n_override : ctx.cfg.nx * ctx.cfg.ny;
    if (n > 30) throw ConfigError("manifold: --n above 30 would enumerate more than 2^30 configs");
    CsvTable t{{"k", "size", "binomial"}, {}};
    std::uint64_t total = 0;
    std::vector<std::string> failures;
    std::cout << "N = " << n << ", class sizes";
    for (int k = 0; k <= n; ++k) {
        const auto cls = enumerate_weight_class(n, k);
        const auto b = weight_class_size(n, k);
        if (cls.size() != b) failures.push_back("k=" + std::to_string(k));
        total += cls.size();
        t.add({cell(k), cell(cls.size()), cell(static_cast<std::size_t>(b))});
        std::cout << " " << cls.size();
    }
    std::cout << ", total " << total << " (2^N = " << (std::uint64_t{1} << n) << ")\n";
    if (total != (std::uint64_t{1} << n)) failures.push_back("total");
    ctx.csv("manifold.csv", t, {"N = " + std::to_string(n)});
    if (ctx.plot_script) emit_plot_script(ctx, "manifold.csv", "k", {"size"});
    if (!failures.empty()) throw ChecksFailed{failures};
    return 0;
}

std::vector<CoefficientSeries> run_evolution(const Context& ctx, const LatticeGeometry& geom) {
    const auto& c = ctx.cfg;
    const auto initial = initial_of(c);
    const auto eng = engine_from_string(c.engine);
    const auto targets = connected_targets(geom, initial, c.excited_plaquette, eng, c.hilbert_cap);
    if (targets.empty())
        std::cout << "note: no excited label on plaquette " << c.excited_plaquette << " couples to " << initial.hex()
                  << " at first order\n";
    return evolve_coefficients(geom, params_of(c), drive_of(c), initial, targets, grid_of(c), evolve_options_of(c));
}

int cmd_evolve(const Context& ctx) {
    const auto geom = lattice_of(ctx.cfg);
    const auto series = run_evolution(ctx, geom);
    for (const auto& s : series)
        std::cout << s.target.id() << ": E = " << format_double(s.E_target) << ", E_initial = " << format_double(s.E_initial)
                  << ", element = (" << format_double(s.element.real()) << ", " << format_double(s.element.imag()) << ")\n";
    ctx.csv("coefficients.csv", coefficient_table(series));
    if (ctx.plot_script) emit_plot_script(ctx, "coefficients.csv", "t", {"re", "im"}, "target");
    return 0;
}

int cmd_phase(const Context& ctx) {
    const auto geom = lattice_of(ctx.cfg);
    const auto series = run_evolution(ctx, geom);
    CsvTable ph{{"target", "t", "A", "a", "phi", "singular"}, {}};
    CsvTable iv{{"target", "t_start", "t_end", "label"}, {}};
    CsvTable lv{{"target", "t", "E_eff"}, {}};
    const double t_eval = ctx.cfg.t_eval > 0.0 ? ctx.cfg.t_eval : ctx.cfg.t_max;
    for (const auto& s : series) {
        const auto p = decompose(s, ctx.cfg.eps_zero);
        const auto id = s.target.id();
        for (std::size_t k = 0; k < p.size(); ++k)
            ph.add({id, cell(p.times[k]), cell(p.A[k]), cell(p.a[k]), cell(p.phi[k]), cell(int{p.singular[k]})});
        if (p.size() - p.singular_count() >= 3)
            for (const auto& i : stability_intervals(p, ctx.cfg.slope_tol))
                iv.add({id, cell(i.t_start), cell(i.t_end), to_string(i.label)});
        const auto lev = effective_level(s.E_target, p);
        for (const auto& [t, e] : lev) lv.add({id, cell(t), cell(e)});
        const auto k = grid_index(p.times, t_eval);
        const auto shift = shifted_transition(s.E_target, p, s.E_initial, constant_phase(p.times));
        for (const auto& [t, w] : shift)
            if (t == p.times[k])
                std::cout << id << ": shifted transition at t = " << format_double(t) << ": " << format_double(w)
                          << " (bare " << format_double(s.E_target - s.E_initial) << ")\n";
    }
    ctx.csv("phase.csv", ph);
    ctx.csv("intervals.csv", iv);
    ctx.csv("effective_level.csv", lv);
    if (ctx.plot_script) emit_plot_script(ctx, "phase.csv", "t", {"A", "a", "phi"}, "target");
    return 0;
}

struct SweepRow {
    double omega = 0.0;
    double weight = 0.0;     // sum over targets of |c(t_max)|^2
    double phi = std::nan("");  // phase of the dominant target at t_max
    double omega0 = std::nan("");
};

SweepRow sweep_point(const RunConfig& cfg, const LatticeGeometry& geom, double omega) {
    RunConfig c = cfg;
    c.omega = omega;
    const auto initial = initial_of(c);
    const auto targets = connected_targets(geom, initial, c.excited_plaquette, engine_from_string(c.engine), c.hilbert_cap);
    const std::vector<double> times{0.0, c.t_max};
    auto opts = evolve_options_of(c);
    const auto series = evolve_coefficients(geom, params_of(c), drive_of(c), initial, targets, times, opts);
    SweepRow r;
    r.omega = omega;
    double best = -1.0;
    for (const auto& s : series) {
        const double w = std::norm(s.values.back());
        r.weight += w;
        if (w > best && w > 0.0) {
            best = w;
            r.phi = std::arg(s.values.back() / (s.element / std::abs(s.element)));
            r.omega0 = s.E_target - s.E_initial;
        }
    }
    return r;
}

int cmd_sweep(const Context& ctx) {
    const auto& cfg = ctx.cfg;
    const auto geom = lattice_of(cfg);
    const int n = cfg.omega_points;
    std::vector<double> omegas(n);
    for (int k = 0; k < n; ++k) omegas[k] = n == 1 ? cfg.omega_min : cfg.omega_min + (cfg.omega_max - cfg.omega_min) * k / (n - 1);

    // each worker handles a strided subset and writes its own shard; the merge restores order
    const int jobs = std::min(cfg.jobs, n);
    const fs::path shard_dir = fs::path(cfg.output) / "shards";
    fs::create_directories(shard_dir);
    std::vector<std::string> errors(jobs);
    std::vector<std::thread> pool;
    for (int w = 0; w < jobs; ++w)
        pool.emplace_back([&, w] {
            try {
                std::ostringstream shard;
                for (int k = w; k < n; k += jobs) {
                    const auto r = sweep_point(cfg, geom, omegas[k]);
                    shard << k << "," << format_double(r.omega) << "," << format_double(r.weight) << ","
                          << format_double(r.phi) << "," << format_double(r.omega0) << "\n";
                }
                write_text((shard_dir / ("shard_" + std::to_string(w) + ".csv")).string(), shard.str());
            } catch (const std::exception& e) {
                errors[w] = e.what();
            }
        });
    for (auto& t : pool) t.join();
    for (const auto& e : errors)
        if (!e.empty()) throw std::runtime_error("sweep worker: " + e);

    std::vector<std::pair<int, std::vector<std::string>>> rows;
    for (int w = 0; w < jobs; ++w) {
        std::ifstream in(shard_dir / ("shard_" + std::to_string(w) + ".csv"));
        std::string line;
        while (std::getline(in, line)) {
            std::vector<std::string> f;
            std::stringstream ss(line);
            for (std::string tok; std::getline(ss, tok, ',');) f.push_back(tok);
            rows.emplace_back(std::stoi(f[0]), std::vector<std::string>(f.begin() + 1, f.end()));
        }
    }
    std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    fs::remove_all(shard_dir);

    CsvTable t{{"omega", "weight", "phi", "omega0"}, {}};
    std::size_t peak = 0;
    for (std::size_t k = 0; k < rows.size(); ++k) {
        t.add(rows[k].second);
        if (std::stod(rows[k].second[1]) > std::stod(rows[peak].second[1])) peak = k;
    }
    const double peak_omega = std::stod(rows[peak].second[0]);
    const double phi = std::stod(rows[peak].second[2]);
    const double omega0 = std::stod(rows[peak].second[3]);
    std::vector<std::string> notes{"peak omega = " + format_double(peak_omega)};
    if (std::isfinite(phi)) {
        // effective-level difference at t_max: omega0 - phi(t_max)/t_max (initial state keeps phi = 0)
        const double predicted = omega0 - phi / cfg.t_max;
        notes.push_back("bare resonance omega0 = " + format_double(omega0));
        notes.push_back("predicted shifted peak = " + format_double(predicted));
    }
    for (const auto& s : notes) std::cout << s << "\n";
    ctx.csv("sweep.csv", t, notes);
    if (ctx.plot_script) emit_plot_script(ctx, "sweep.csv", "omega", {"weight"});
    return 0;
}

int cmd_entropy(const Context& ctx) {
    const auto& c = ctx.cfg;
    const auto geom = lattice_of(c);
    if (geom.n_sites() > c.hilbert_cap)
        throw ConfigError("entropy: " + std::to_string(geom.n_sites()) + " sites exceed hilbert_cap " +
                          std::to_string(c.hilbert_cap));
    const auto series = run_evolution(ctx, geom);
    const auto times = grid_of(c);
    const auto part = c.part == "A" ? Sublattice::A : Sublattice::B;
    const auto initial = initial_of(c);

    OracleOptions o;
    o.tol = c.oracle_tol;
    o.drive_plaquette = c.excited_plaquette;
    o.hilbert_cap = c.hilbert_cap;
    const auto exact = exact_evolve(geom, params_of(c), drive_of(c), build_product_ket(geom, initial, c.hilbert_cap), times, o);

    CsvTable t{{"t", "S_" + c.part, "S_" + c.part + "_exact"}, {}};
    std::vector<double> s_tdpt(times.size()), s_exact(times.size());
    const auto nt = static_cast<std::int64_t>(times.size());
#pragma omp parallel for schedule(static)
    for (std::int64_t k = 0; k < nt; ++k) {
        const auto st = assemble_state(series, times[k], initial);
        StateVector psi = to_hilbert(geom, st, c.hilbert_cap);
        psi.normalize();
        s_tdpt[k] = reduced_entropy(geom, psi, part, c.hilbert_cap).entropy;
        StateVector ex = exact.kets[k];
        ex.normalize();
        s_exact[k] = reduced_entropy(geom, ex, part, c.hilbert_cap).entropy;
    }
    for (std::size_t k = 0; k < times.size(); ++k) t.add({cell(times[k]), cell(s_tdpt[k]), cell(s_exact[k])});
    std::cout << "S_" << c.part << "(t_max) = " << format_double(s_tdpt.back()) << " (first order), "
              << format_double(s_exact.back()) << " (exact)\n";
    ctx.csv("entropy.csv", t);
    if (ctx.plot_script) emit_plot_script(ctx, "entropy.csv", "t", {t.columns[1], t.columns[2]});
    return 0;
}

int cmd_correlate(const Context& ctx) {
    const auto& c = ctx.cfg;
    const auto geom = lattice_of(c);
    const auto series = run_evolution(ctx, geom);
    const auto times = grid_of(c);
    const auto initial = initial_of(c);

    double t0 = c.literal_t0 ? 0.0 : (c.t0 > 0.0 ? times[grid_index(times, c.t0)] : default_reference_time(times));
    std::vector<double> energies;
    std::vector<SubGeometricPhaseSeries> phases;
    energies.push_back(series.empty() ? state_energy(geom, params_of(c), StateLabel(initial), engine_from_string(c.engine))
                                      : series.front().E_initial);
    phases.push_back(constant_phase(times));
    for (const auto& s : series) {
        energies.push_back(s.E_target);
        phases.push_back(decompose(s, c.eps_zero));
    }
    CsvTable f{{"t", "t0", "re", "im", "all_terms_zero"}, {}};
    for (double t : times) {
        const auto r = correlation_formula(energies, phases, t, t0);
        f.add({cell(t), cell(t0), cell(r.value.real()), cell(r.value.imag()), cell(int{r.all_terms_zero})});
    }
    std::vector<std::string> notes{"t0 = " + format_double(t0) + (c.literal_t0 ? " (literal)" : "")};
    ctx.csv("correlation_formula.csv", f, notes);

    if (geom.n_sites() <= c.hilbert_cap) {
        OracleOptions o;
        o.tol = c.oracle_tol;
        o.drive_plaquette = c.excited_plaquette;
        o.hilbert_cap = c.hilbert_cap;
        std::vector<std::pair<int, int>> pairs;
        for (const auto& b : nearest_neighbor_pairs(geom)) pairs.emplace_back(b.i, b.j);
        const double t = c.t_eval > 0.0 ? c.t_eval : c.t_max;
        const auto scan = correlation_exact_scan(geom, params_of(c), drive_of(c), initial, pairs, all_component_pairs(),
                                                 t, c.corr_tol, o);
        const auto& d = scan.selection;
        std::string diag = std::string("selection rule ") + (d.holds() ? "pass" : "deviation") + ": " +
                           std::to_string(d.violations) + " of " + std::to_string(d.checked) +
                           " records outside the nearest-neighbour same-component rule exceed " + format_double(c.corr_tol) +
                           " (max " + format_double(d.max_forbidden) + ")";
        std::cout << diag << "\n";
        ctx.csv("correlation_scan.csv", correlation_table(scan.records), {diag});
    } else {
        std::cout << "note: exact scan skipped, " << geom.n_sites() << " sites exceed hilbert_cap\n";
    }
    if (ctx.plot_script) emit_plot_script(ctx, "correlation_formula.csv", "t", {"re", "im"});
    return 0;
}

int cmd_thermal(const Context& ctx) {
    const auto& c = ctx.cfg;
    const auto geom = lattice_of(c);
    const auto eng = engine_from_string(c.engine);
    const auto p = params_of(c);
    const int n = geom.n_plaquettes();
    if (n > 12) throw ConfigError("thermal: at most 12 plaquettes (the ensemble spans 2^N configs)");
    // members are the ground-manifold configs in their own label basis
    const std::size_t dim = std::size_t{1} << n;
    std::vector<ThermalMember> members(dim);
    std::vector<std::string> basis(dim);
    for (std::size_t k = 0; k < dim; ++k) {
        const FlipConfig cfg(n, k);
        basis[k] = StateLabel(cfg).id();
        members[k].energy = state_energy(geom, p, StateLabel(cfg), eng, c.hilbert_cap);
        members[k].state = StateVector::Zero(static_cast<Eigen::Index>(dim));
        members[k].state[static_cast<Eigen::Index>(k)] = 1.0;
    }
    const auto fn = weight_function_from_string(c.weight);
    const auto ens = thermal_mix(members, c.kT, fn, c.mu, basis);
    CsvTable t{{"config", "E", "p"}, {}};
    for (std::size_t k = 0; k < dim; ++k) t.add({basis[k], cell(members[k].energy), cell(ens.weights[k])});
    const double s = von_neumann_entropy(ens.rho.entries);
    std::vector<std::string> notes{"kT = " + format_double(c.kT), "weight = " + std::string(to_string(fn)),
                                   "purity = " + format_double(ens.rho.purity()), "entropy = " + format_double(s)};
    for (const auto& x : notes) std::cout << x << "\n";
    ctx.csv("thermal.csv", t, notes);
    if (dim <= 64) ctx.json("thermal_rho.json", {{"density", density_json(ens.rho)}});
    return 0;
}

int cmd_validate(const Context& ctx, const std::vector<int>& only) {
    AcceptanceOptions o;
    o.seed = ctx.cfg.seed;
    o.only = only;
    const auto rep = run_acceptance(o);
    std::cout << rep.render();
    nlohmann::ordered_json payload = nlohmann::ordered_json::parse(rep.to_json().dump());
    ctx.json("validate.json", payload);
    if (!rep.all_passed()) {
        std::vector<std::string> f;
        for (int id : rep.failed_ids()) f.push_back("criterion " + std::to_string(id));
        throw ChecksFailed{f};
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"kitaev-sgp: sub-geometric phases in the Kitaev honeycomb model (hbar = 1)"};
    app.require_subcommand(1);
    bool plot = false;
    app.add_flag("--emit-plot-script", plot, "also write a matplotlib script next to each CSV");

    struct Sub {
        CLI::App* app;
        ConfigFlags flags;
    };
    std::map<std::string, Sub> subs;
    const std::vector<std::pair<std::string, std::string>> names{
        {"lattice", "geometry dump and validation"},
        {"manifold", "weight-class enumeration and counting identities"},
        {"evolve", "first-order coefficient series"},
        {"phase", "phase decomposition, stability intervals, effective levels"},
        {"sweep", "drive-frequency sweep of |c(t_max)|^2"},
        {"entropy", "sublattice entanglement entropy time series"},
        {"correlate", "coefficient-product correlation and exact scan"},
        {"thermal", "thermal mixture of the ground manifold"},
        {"validate", "acceptance suite"},
    };
    for (const auto& [name, help] : names) {
        auto* s = app.add_subcommand(name, help);
        subs[name].app = s;
        add_config_flags(s, subs[name].flags);
        s->add_flag("--emit-plot-script", plot, "also write a matplotlib script next to each CSV");
    }
    int manifold_n = 0;
    subs["manifold"].app->add_option("--n", manifold_n, "plaquette count N (default nx*ny)")->check(CLI::Range(1, 30));
    std::vector<int> only;
    subs["validate"].app->add_option("--only", only, "criterion ids to run")->delimiter(',')->check(CLI::Range(1, 10));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        std::cerr << "error: " << e.what() << "\n\n" << app.help();
        return kExitConfig;
    }

    Context ctx;
    ctx.plot_script = plot;
    try {
        for (auto& [name, s] : subs) {
            if (!s.app->parsed()) continue;
            ctx.command = name;
            ctx.cfg = resolve_config(s.flags);
        }
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        std::cout << nlohmann::json{{"status", "config_error"}, {"failures", {e.what()}}}.dump() << "\n";
        return kExitConfig;
    }

    try {
        const auto& cmd = ctx.command;
        if (cmd == "lattice") return cmd_lattice(ctx);
        if (cmd == "manifold") return cmd_manifold(ctx, manifold_n);
        if (cmd == "evolve") return cmd_evolve(ctx);
        if (cmd == "phase") return cmd_phase(ctx);
        if (cmd == "sweep") return cmd_sweep(ctx);
        if (cmd == "entropy") return cmd_entropy(ctx);
        if (cmd == "correlate") return cmd_correlate(ctx);
        if (cmd == "thermal") return cmd_thermal(ctx);
        if (cmd == "validate") return cmd_validate(ctx, only);
    } catch (const ChecksFailed& f) {
        std::cout << nlohmann::json{{"status", "failed"}, {"failures", f.failures}}.dump() << "\n";
        return kExitFailedChecks;
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        std::cout << nlohmann::json{{"status", "config_error"}, {"failures", {e.what()}}}.dump() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        std::cout << nlohmann::json{{"status", "computation_error"}, {"failures", {e.what()}}}.dump() << "\n";
        return kExitCompute;
    }
    return kExitConfig;
}
