#include "kitaev/lattice.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace kitaev {

namespace {

int wrap(int v, int n) { return ((v % n) + n) % n; }

std::pair<int, int> edge_key(int a, int b) { return a < b ? std::pair{a, b} : std::pair{b, a}; }

}  // namespace

Component plaquette_edge_component(int position) {
    return third_component(kPositionLabels[position % 6], kPositionLabels[(position + 1) % 6]);
}

LatticeGeometry build_lattice(int nx, int ny) {
    if (nx < 2 || ny < 2) {
        std::ostringstream msg;
        msg << "build_lattice: need nx >= 2 and ny >= 2, got (" << nx << ", " << ny << ")";
        throw std::invalid_argument(msg.str());
    }
    LatticeGeometry g;
    g.nx = nx;
    g.ny = ny;
    const int ncell = nx * ny;
    auto cell = [&](int x, int y) { return wrap(x, nx) + nx * wrap(y, ny); };
    auto site_a = [&](int x, int y) { return 2 * cell(x, y); };
    auto site_b = [&](int x, int y) { return 2 * cell(x, y) + 1; };

    g.sites.reserve(2 * ncell);
    for (int c = 0; c < ncell; ++c) {
        g.sites.push_back({2 * c, Sublattice::A});
        g.sites.push_back({2 * c + 1, Sublattice::B});
    }

    g.bonds.reserve(3 * ncell);
    for (int y = 0; y < ny; ++y) {
        for (int x = 0; x < nx; ++x) {
            g.bonds.push_back({site_a(x, y), site_b(x - 1, y), Component::x});
            g.bonds.push_back({site_a(x, y), site_b(x, y - 1), Component::y});
            g.bonds.push_back({site_a(x, y), site_b(x, y), Component::z});
        }
    }

    g.plaquettes.reserve(ncell);
    for (int y = 0; y < ny; ++y) {
        for (int x = 0; x < nx; ++x) {
            Plaquette p;
            p.sites = {site_a(x, y),         site_b(x, y),     site_a(x + 1, y),
                       site_b(x + 1, y - 1), site_a(x + 1, y - 1), site_b(x, y - 1)};
            g.plaquettes.push_back(p);
        }
    }

    g.site_plaquettes.assign(g.sites.size(), {});
    for (int p = 0; p < g.n_plaquettes(); ++p)
        for (int k = 0; k < 6; ++k) g.site_plaquettes[g.plaquettes[p].sites[k]].push_back({p, k});
    return g;
}

int owner_plaquette(const LatticeGeometry& geom, int site) {
    if (site < 0 || site >= geom.n_sites())
        throw std::out_of_range("site index " + std::to_string(site) + " out of range");
    const auto& inc = geom.site_plaquettes.at(site);
    if (inc.empty()) throw std::invalid_argument("site " + std::to_string(site) + " belongs to no plaquette");
    return std::min_element(inc.begin(), inc.end(),
                            [](const Incidence& a, const Incidence& b) { return a.plaquette < b.plaquette; })
        ->plaquette;
}

Component site_component(const LatticeGeometry& geom, int site) {
    const int owner = owner_plaquette(geom, site);
    for (const auto& inc : geom.site_plaquettes[site])
        if (inc.plaquette == owner) return kPositionLabels[inc.position];
    throw std::logic_error("site_component: inconsistent incidence map");
}

bool ValidationReport::all_passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const GeometryCheck& c) { return c.passed; });
}

const GeometryCheck* ValidationReport::find(const std::string& name) const {
    for (const auto& c : checks)
        if (c.name == name) return &c;
    return nullptr;
}

ValidationReport validate_geometry(const LatticeGeometry& geom) {
    ValidationReport report;
    const int ncell = geom.nx * geom.ny;
    auto add = [&](std::string name, bool ok, std::string detail) {
        report.checks.push_back({std::move(name), ok, std::move(detail)});
    };

    {
        std::ostringstream d;
        d << geom.n_sites() << " sites, expected " << 2 * ncell;
        add("site_count", geom.n_sites() == 2 * ncell, d.str());
    }
    {
        std::array<int, 3> per{0, 0, 0};
        for (const auto& b : geom.bonds) ++per[static_cast<int>(b.component)];
        const bool ok = geom.n_bonds() == 3 * ncell &&
                        std::all_of(per.begin(), per.end(), [&](int n) { return n == ncell; });
        std::ostringstream d;
        d << geom.n_bonds() << " bonds (x=" << per[0] << ", y=" << per[1] << ", z=" << per[2]
          << "), expected " << 3 * ncell << " with " << ncell << " per component";
        add("bond_count", ok, d.str());
    }
    {
        std::ostringstream d;
        d << geom.n_plaquettes() << " plaquettes, expected " << ncell;
        add("plaquette_count", geom.n_plaquettes() == ncell, d.str());
    }

    const bool indices_ok = [&] {
        for (const auto& b : geom.bonds)
            if (b.i < 0 || b.j < 0 || b.i >= geom.n_sites() || b.j >= geom.n_sites()) return false;
        for (const auto& p : geom.plaquettes)
            for (int s : p.sites)
                if (s < 0 || s >= geom.n_sites()) return false;
        return true;
    }();
    add("index_range", indices_ok, indices_ok ? "all indices in range" : "bond or plaquette index out of range");
    if (!indices_ok) return report;

    {
        // recount from the plaquette lists and compare with the stored incidence map
        std::vector<int> count(geom.n_sites(), 0);
        for (const auto& p : geom.plaquettes)
            for (int s : p.sites) ++count[s];
        int bad = 0;
        bool map_ok = geom.site_plaquettes.size() == geom.sites.size();
        for (int s = 0; s < geom.n_sites(); ++s) {
            if (count[s] != 3) ++bad;
            if (map_ok && static_cast<int>(geom.site_plaquettes[s].size()) != count[s]) map_ok = false;
        }
        std::ostringstream d;
        d << bad << " sites not in exactly 3 plaquettes" << (map_ok ? "" : "; incidence map stale");
        add("site_in_three_plaquettes", bad == 0 && map_ok, d.str());
    }
    {
        std::map<std::pair<int, int>, int> bond_index;
        int duplicates = 0;
        for (int b = 0; b < geom.n_bonds(); ++b)
            if (!bond_index.emplace(edge_key(geom.bonds[b].i, geom.bonds[b].j), b).second) ++duplicates;
        std::vector<int> uses(geom.n_bonds(), 0);
        int missing = 0;
        int wrong_component = 0;
        for (const auto& p : geom.plaquettes) {
            for (int k = 0; k < 6; ++k) {
                auto it = bond_index.find(edge_key(p.sites[k], p.sites[(k + 1) % 6]));
                if (it == bond_index.end()) {
                    ++missing;
                    continue;
                }
                ++uses[it->second];
                if (geom.bonds[it->second].component != plaquette_edge_component(k)) ++wrong_component;
            }
        }
        const int bad = static_cast<int>(std::count_if(uses.begin(), uses.end(), [](int u) { return u != 2; }));
        std::ostringstream d;
        d << bad << " bonds not in exactly 2 plaquettes, " << missing << " plaquette edges without a bond, "
          << duplicates << " duplicate bonds";
        add("bond_in_two_plaquettes", bad == 0 && missing == 0 && duplicates == 0, d.str());
        std::ostringstream d2;
        d2 << wrong_component << " plaquette edges with a component other than (z,x,y,z,x,y)";
        add("plaquette_edge_components", wrong_component == 0 && missing == 0, d2.str());
    }
    {
        int bad = 0;
        for (const auto& p : geom.plaquettes)
            for (int k = 0; k < 6; ++k) {
                const auto expect = (k % 2 == 0) ? Sublattice::A : Sublattice::B;
                if (geom.sites[p.sites[k]].sublattice != expect) {
                    ++bad;
                    break;
                }
            }
        std::ostringstream d;
        d << bad << " plaquettes without A/B alternation";
        add("sublattice_alternation", bad == 0, d.str());
    }
    {
        // each position label must be the component of the site's bond leaving the hexagon
        int bad = 0;
        for (const auto& p : geom.plaquettes) {
            for (int k = 0; k < 6; ++k) {
                const int s = p.sites[k];
                const int prev = p.sites[(k + 5) % 6];
                const int next = p.sites[(k + 1) % 6];
                int external = 0;
                bool matched = false;
                for (const auto& b : geom.bonds) {
                    if (b.i != s && b.j != s) continue;
                    const int other = b.i == s ? b.j : b.i;
                    if (other == prev || other == next) continue;
                    ++external;
                    matched = matched || b.component == kPositionLabels[k];
                }
                if (external != 1 || !matched) ++bad;
            }
        }
        std::ostringstream d;
        d << bad << " plaquette positions whose label is not the outgoing bond component";
        add("position_labels", bad == 0, d.str());
    }
    return report;
}

nlohmann::json geometry_to_json(const LatticeGeometry& geom) {
    using nlohmann::json;
    json j;
    j["nx"] = geom.nx;
    j["ny"] = geom.ny;
    j["sites"] = json::array();
    for (const auto& s : geom.sites)
        j["sites"].push_back({{"id", s.id}, {"sublattice", std::string(1, to_char(s.sublattice))}});
    j["bonds"] = json::array();
    for (const auto& b : geom.bonds)
        j["bonds"].push_back({{"i", b.i}, {"j", b.j}, {"component", std::string(1, to_char(b.component))}});
    j["plaquettes"] = json::array();
    for (const auto& p : geom.plaquettes) j["plaquettes"].push_back(p.sites);
    return j;
}

}  // namespace kitaev
