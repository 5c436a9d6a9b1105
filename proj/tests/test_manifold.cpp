#include <doctest.h>

#include <set>

#include "kitaev/manifold.hpp"

using namespace kitaev;

TEST_SUITE("manifold") {

TEST_CASE("weight classes are binomial and cover the manifold") {
    std::set<std::uint64_t> seen;
    std::uint64_t total = 0;
    for (int k = 0; k <= 9; ++k) {
        const auto cls = enumerate_weight_class(9, k);
        CHECK(cls.size() == weight_class_size(9, k));
        for (const auto& c : cls) {
            CHECK(c.weight() == k);
            seen.insert(c.bits());
        }
        total += cls.size();
    }
    CHECK(total == 512);
    CHECK(seen.size() == 512);
    CHECK(weight_class_size(4, 2) == 6);
    CHECK(weight_class_size(64, 32) == 1832624140942590534ULL);
    CHECK(weight_class_size(5, 7) == 0);
}

TEST_CASE("weight class order is increasing") {
    const auto cls = enumerate_weight_class(6, 3);
    for (std::size_t k = 1; k < cls.size(); ++k) CHECK(cls[k - 1].bits() < cls[k].bits());
    CHECK_THROWS_AS(enumerate_weight_class(4, 5), std::out_of_range);
}

TEST_CASE("hex round trip and ids") {
    const auto c = FlipConfig::from_hex(9, "0x1a3");
    CHECK(c.bits() == 0x1a3);
    CHECK(c.hex() == "0x1a3");
    CHECK(c.weight() == 5);
    CHECK(StateLabel(c).id() == "g:0x1a3");
    CHECK(StateLabel(excite(c, 4)).id() == "e:0x1a3:4");
    CHECK_THROWS(FlipConfig::from_hex(4, "0x10"));
    CHECK_THROWS(FlipConfig::from_hex(4, "zz"));
    CHECK(c.toggled(0).bits() == 0x1a2);
}

TEST_CASE("flip signature flips the six plaquette sites") {
    const auto g = build_lattice(3, 3);
    const auto sig = flip_signature(g, FlipConfig(9, 0b10));
    int negative = 0;
    for (int s : sig.signs) negative += s < 0;
    CHECK(negative == 6);
    for (int s : g.plaquettes[1].sites) CHECK(sig.signs[s] == -1);
}

TEST_CASE("excitation flips the third plaquette site") {
    const auto g = build_lattice(2, 2);
    const auto base = FlipConfig::empty(4);
    const auto sig = flip_signature(g, StateLabel(excite(base, 0)));
    CHECK(sig.signs[excited_site(g, 0)] == -1);
    CHECK(excited_site(g, 0) == g.plaquettes[0].sites[2]);
}

TEST_CASE("product kets are normalized and label overlaps match Hilbert overlaps") {
    const auto g = build_lattice(2, 2);
    const StateLabel a(FlipConfig(4, 0b0011));
    const StateLabel b(FlipConfig(4, 0b0101));
    const auto ka = build_product_ket(g, a);
    const auto kb = build_product_ket(g, b);
    CHECK(ka.norm() == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(std::abs(ka.dot(kb)) == doctest::Approx(label_overlap(g, a, b)).epsilon(1e-12));
    CHECK(label_overlap(g, a, a) == 1.0);
}

TEST_CASE("signature kernel") {
    const auto k3 = signature_kernel(build_lattice(3, 3));
    CHECK(k3.size() == 3);
    const auto g = build_lattice(3, 3);
    for (const auto& c : k3)
        for (int s : flip_signature(g, c).signs) CHECK(s == 1);
}

TEST_CASE("Hilbert cap") {
    CHECK_THROWS_AS(build_product_ket(build_lattice(3, 3), StateLabel(FlipConfig(9)), 16), std::length_error);
}

}
