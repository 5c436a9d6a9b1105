#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "kitaev/lattice.hpp"
#include "kitaev/pauli.hpp"

namespace kitaev {

/// Default maximum site count for which full 2^n state vectors are materialized.
inline constexpr int kDefaultHilbertCap = 16;

/// Set of fully flipped plaquettes; coordinate of the degenerate ground manifold.
class FlipConfig {
public:
    static constexpr int kMaxPlaquettes = 64;

    FlipConfig() = default;
    explicit FlipConfig(int n_plaquettes, std::uint64_t bits = 0);

    static FlipConfig empty(int n_plaquettes) { return FlipConfig(n_plaquettes); }
    static FlipConfig full(int n_plaquettes);
    static FlipConfig from_hex(int n_plaquettes, const std::string& hex);

    int size() const { return n_; }
    int weight() const { return weight_; }
    std::uint64_t bits() const { return bits_; }
    bool test(int p) const { return (bits_ >> p) & 1u; }
    FlipConfig toggled(int p) const;

    /// "0x" followed by lowercase hex digits.
    std::string hex() const;

    bool operator==(const FlipConfig&) const = default;
    auto operator<=>(const FlipConfig&) const = default;

private:
    std::uint64_t bits_ = 0;
    int n_ = 0;
    int weight_ = 0;
};

/// Ground config `base` with the position-3 spin of `flipped_plaquette` flipped.
struct ExcitedLabel {
    FlipConfig base;
    int flipped_plaquette = 0;

    bool operator==(const ExcitedLabel&) const = default;
    auto operator<=>(const ExcitedLabel&) const = default;
};

/// Either a ground-manifold config or an excited label.
struct StateLabel {
    FlipConfig config;
    std::optional<int> excited_plaquette;

    StateLabel() = default;
    StateLabel(const FlipConfig& c) : config(c) {}  // NOLINT(google-explicit-constructor)
    StateLabel(const ExcitedLabel& e) : config(e.base), excited_plaquette(e.flipped_plaquette) {}  // NOLINT

    bool is_excited() const { return excited_plaquette.has_value(); }
    /// "g:<hex>" or "e:<hex>:<i>".
    std::string id() const;

    bool operator==(const StateLabel&) const = default;
    auto operator<=>(const StateLabel&) const = default;
};

/// Per-site sign (+1/-1) of the labeled Pauli eigenvalue.
struct SiteSignMap {
    std::vector<int> signs;

    bool operator==(const SiteSignMap&) const = default;
};

/// All configs with exactly k flipped plaquettes out of n, in increasing bitmask order.
std::vector<FlipConfig> enumerate_weight_class(int n_plaquettes, int k);

/// Number of configs of weight k, C(n, k), exact.
std::uint64_t weight_class_size(int n_plaquettes, int k);

ExcitedLabel excite(const FlipConfig& config, int plaquette);

/// Site of plaquette i flipped by the drive (position 3 in 1-based numbering).
int excited_site(const LatticeGeometry& geom, int plaquette);

SiteSignMap flip_signature(const LatticeGeometry& geom, const FlipConfig& config,
                           const std::optional<ExcitedLabel>& excitation = std::nullopt);
SiteSignMap flip_signature(const LatticeGeometry& geom, const StateLabel& label);

/// Owner-rule component of every site.
std::vector<Component> site_components(const LatticeGeometry& geom);

StateVector build_product_ket(const LatticeGeometry& geom, const FlipConfig& config,
                              const std::optional<ExcitedLabel>& excitation = std::nullopt,
                              int hilbert_cap = kDefaultHilbertCap);
StateVector build_product_ket(const LatticeGeometry& geom, const StateLabel& label,
                              int hilbert_cap = kDefaultHilbertCap);

/// Overlap predicted from labels alone: 1 if sign maps agree everywhere, else 0.
double label_overlap(const LatticeGeometry& geom, const StateLabel& a, const StateLabel& b);

/// Nonempty configs whose flip signature is all +1 (kernel of the plaquette-site
/// incidence matrix mod 2). Empty result means signatures are injective. Exhaustive,
/// so only for n_plaquettes <= 24.
std::vector<FlipConfig> signature_kernel(const LatticeGeometry& geom);

}  // namespace kitaev
