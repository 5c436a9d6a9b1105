#pragma once

#include <array>
#include <string>
#include <vector>

#include <json.hpp>

#include "kitaev/pauli.hpp"

namespace kitaev {

struct Site {
    int id = 0;
    Sublattice sublattice = Sublattice::A;
};

struct Bond {
    int i = 0;
    int j = 0;
    Component component = Component::x;
};

/// Position labels of the six plaquette sites; position k carries the component of the
/// site's bond that leaves the hexagon.
inline constexpr std::array<Component, 6> kPositionLabels{
    Component::x, Component::y, Component::z, Component::x, Component::y, Component::z};

struct Plaquette {
    std::array<int, 6> sites{};
};

struct Incidence {
    int plaquette = 0;
    int position = 0;
};

/// Honeycomb torus with nx*ny unit cells. Unit cell c = x + nx*y holds site A = 2c and
/// B = 2c+1; bonds z: A_r-B_r, x: A_r-B_{r-a1}, y: A_r-B_{r-a2}. Plaquette r visits
/// A_r, B_r, A_{r+a1}, B_{r+a1-a2}, A_{r+a1-a2}, B_{r-a2}.
///
/// Plain aggregate so that validation can be exercised on mutated copies; treat
/// instances produced by build_lattice as read-only.
struct LatticeGeometry {
    int nx = 0;
    int ny = 0;
    std::vector<Site> sites;
    std::vector<Bond> bonds;
    std::vector<Plaquette> plaquettes;
    std::vector<std::vector<Incidence>> site_plaquettes;

    int n_sites() const { return static_cast<int>(sites.size()); }
    int n_plaquettes() const { return static_cast<int>(plaquettes.size()); }
    int n_bonds() const { return static_cast<int>(bonds.size()); }
};

LatticeGeometry build_lattice(int nx, int ny);

/// Owner of a site: the lowest-indexed plaquette containing it.
int owner_plaquette(const LatticeGeometry& geom, int site);

/// Component label of a site: its position label in the owner plaquette.
Component site_component(const LatticeGeometry& geom, int site);

/// Component of the edge between positions k and k+1 (cyclic) of any plaquette.
Component plaquette_edge_component(int position);

struct GeometryCheck {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct ValidationReport {
    std::vector<GeometryCheck> checks;

    bool all_passed() const;
    const GeometryCheck* find(const std::string& name) const;
};

ValidationReport validate_geometry(const LatticeGeometry& geom);

nlohmann::json geometry_to_json(const LatticeGeometry& geom);

}  // namespace kitaev
