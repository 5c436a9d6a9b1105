#include <doctest.h>

#include <set>
#include <string>

#include "kitaev/lattice.hpp"

using namespace kitaev;

namespace {

std::string label_string(const LatticeGeometry& g) {
    std::string s;
    for (int k = 0; k < g.n_sites(); ++k) s += to_char(site_component(g, k));
    return s;
}

}  // namespace

TEST_SUITE("lattice") {

TEST_CASE("counts on small tori") {
    for (auto [nx, ny] : {std::pair{2, 2}, {2, 3}, {3, 3}, {4, 2}}) {
        const auto g = build_lattice(nx, ny);
        CHECK(g.n_sites() == 2 * nx * ny);
        CHECK(g.n_bonds() == 3 * nx * ny);
        CHECK(g.n_plaquettes() == nx * ny);
        CHECK(validate_geometry(g).all_passed());
    }
}

TEST_CASE("every site sits in three plaquettes, every bond in two") {
    const auto g = build_lattice(3, 3);
    for (int s = 0; s < g.n_sites(); ++s) CHECK(g.site_plaquettes[s].size() == 3);
    std::multiset<std::pair<int, int>> edges;
    for (const auto& p : g.plaquettes)
        for (int k = 0; k < 6; ++k) {
            int a = p.sites[k], b = p.sites[(k + 1) % 6];
            edges.insert({std::min(a, b), std::max(a, b)});
        }
    for (const auto& b : g.bonds) CHECK(edges.count({std::min(b.i, b.j), std::max(b.i, b.j)}) == 2);
}

TEST_CASE("bonds join opposite sublattices") {
    const auto g = build_lattice(2, 3);
    for (const auto& b : g.bonds) CHECK(g.sites[b.i].sublattice != g.sites[b.j].sublattice);
}

TEST_CASE("plaquette edge components cycle") {
    // edge k -> k+1 carries the third component of the two position labels
    CHECK(plaquette_edge_component(0) == Component::z);
    CHECK(plaquette_edge_component(1) == Component::x);
    CHECK(plaquette_edge_component(2) == Component::y);
    CHECK(plaquette_edge_component(3) == Component::z);
}

TEST_CASE("owner-rule site labels") {
    CHECK(label_string(build_lattice(2, 2)) == "xyzyyzyx");
    CHECK(label_string(build_lattice(3, 3)) == "xyzyzyxyzyzyyzyxyx");
    const auto g = build_lattice(3, 3);
    for (int s = 0; s < g.n_sites(); ++s) {
        const int owner = owner_plaquette(g, s);
        for (const auto& inc : g.site_plaquettes[s]) CHECK(owner <= inc.plaquette);
    }
}

TEST_CASE("validation catches a broken bond") {
    auto g = build_lattice(2, 2);
    g.bonds[0].j = g.bonds[0].i;
    CHECK_FALSE(validate_geometry(g).all_passed());
}

TEST_CASE("json export") {
    const auto j = geometry_to_json(build_lattice(2, 2));
    CHECK(j["sites"].size() == 8);
    CHECK(j["bonds"].size() == 12);
}

TEST_CASE("rejects degenerate tori") {
    CHECK_THROWS(build_lattice(1, 2));
    CHECK_THROWS(build_lattice(2, 0));
}

}
