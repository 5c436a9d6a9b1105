#include "kitaev/manifold.hpp"

#include <algorithm>
#include <bit>
#include <sstream>
#include <stdexcept>

#include "kitaev/kernels.hpp"

namespace kitaev {

namespace {

std::uint64_t low_mask(int n) { return n >= 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << n) - 1); }

void check_plaquette(int n, int p, const char* where) {
    if (p < 0 || p >= n) {
        std::ostringstream msg;
        msg << where << ": plaquette " << p << " out of range [0, " << n << ")";
        throw std::out_of_range(msg.str());
    }
}

}  // namespace

FlipConfig::FlipConfig(int n_plaquettes, std::uint64_t bits) : n_(n_plaquettes) {
    if (n_plaquettes < 0 || n_plaquettes > kMaxPlaquettes)
        throw std::invalid_argument("FlipConfig: plaquette count must be in [0, 64]");
    if (bits & ~low_mask(n_plaquettes)) throw std::invalid_argument("FlipConfig: bits beyond plaquette count");
    bits_ = bits;
    weight_ = std::popcount(bits_);
}

FlipConfig FlipConfig::full(int n_plaquettes) { return FlipConfig(n_plaquettes, low_mask(n_plaquettes)); }

FlipConfig FlipConfig::from_hex(int n_plaquettes, const std::string& hex) {
    std::string digits = hex;
    if (digits.rfind("0x", 0) == 0 || digits.rfind("0X", 0) == 0) digits = digits.substr(2);
    if (digits.empty() || digits.size() > 16) throw std::invalid_argument("FlipConfig: bad hex bitmask '" + hex + "'");
    std::size_t used = 0;
    const std::uint64_t v = std::stoull(digits, &used, 16);
    if (used != digits.size()) throw std::invalid_argument("FlipConfig: bad hex bitmask '" + hex + "'");
    return FlipConfig(n_plaquettes, v);
}

FlipConfig FlipConfig::toggled(int p) const {
    check_plaquette(n_, p, "FlipConfig::toggled");
    return FlipConfig(n_, bits_ ^ (std::uint64_t{1} << p));
}

std::string FlipConfig::hex() const {
    std::ostringstream os;
    os << "0x" << std::hex << bits_;
    return os.str();
}

std::string StateLabel::id() const {
    if (!excited_plaquette) return "g:" + config.hex();
    return "e:" + config.hex() + ":" + std::to_string(*excited_plaquette);
}

std::uint64_t weight_class_size(int n, int k) {
    if (k < 0 || k > n) return 0;
    unsigned __int128 c = 1;  // c * (n-k+j) overflows 64 bits near C(64, 32)
    for (int j = 1; j <= k; ++j) c = c * static_cast<unsigned>(n - k + j) / static_cast<unsigned>(j);
    return static_cast<std::uint64_t>(c);
}

std::vector<FlipConfig> enumerate_weight_class(int n, int k) {
    if (n < 0 || n > FlipConfig::kMaxPlaquettes) throw std::invalid_argument("enumerate_weight_class: bad plaquette count");
    if (k < 0 || k > n) {
        std::ostringstream msg;
        msg << "enumerate_weight_class: weight " << k << " outside [0, " << n << "]";
        throw std::out_of_range(msg.str());
    }
    std::vector<FlipConfig> out;
    out.reserve(weight_class_size(n, k));
    if (k == 0) {
        out.emplace_back(n);
        return out;
    }
    // Gosper's hack walks k-subsets in increasing numeric order
    std::uint64_t v = low_mask(k);
    const std::uint64_t limit = low_mask(n);
    while (true) {
        out.emplace_back(n, v);
        if (v == (limit & ~low_mask(n - k))) break;
        const std::uint64_t c = v & (~v + 1);
        const std::uint64_t r = v + c;
        v = (((r ^ v) >> 2) / c) | r;
    }
    return out;
}

ExcitedLabel excite(const FlipConfig& config, int plaquette) {
    check_plaquette(config.size(), plaquette, "excite");
    return {config, plaquette};
}

int excited_site(const LatticeGeometry& geom, int plaquette) {
    check_plaquette(geom.n_plaquettes(), plaquette, "excited_site");
    return geom.plaquettes[plaquette].sites[2];
}

SiteSignMap flip_signature(const LatticeGeometry& geom, const FlipConfig& config,
                           const std::optional<ExcitedLabel>& excitation) {
    if (config.size() != geom.n_plaquettes()) throw std::invalid_argument("flip_signature: config length mismatch");
    SiteSignMap m;
    m.signs.assign(geom.n_sites(), 1);
    for (int p = 0; p < geom.n_plaquettes(); ++p) {
        if (!config.test(p)) continue;
        for (int s : geom.plaquettes[p].sites) m.signs[s] = -m.signs[s];
    }
    if (excitation) {
        if (excitation->base.size() != geom.n_plaquettes())
            throw std::invalid_argument("flip_signature: excitation length mismatch");
        const int s = excited_site(geom, excitation->flipped_plaquette);
        m.signs[s] = -m.signs[s];
    }
    return m;
}

SiteSignMap flip_signature(const LatticeGeometry& geom, const StateLabel& label) {
    if (!label.excited_plaquette) return flip_signature(geom, label.config);
    return flip_signature(geom, label.config, excite(label.config, *label.excited_plaquette));
}

std::vector<Component> site_components(const LatticeGeometry& geom) {
    std::vector<Component> c(geom.n_sites());
    for (int s = 0; s < geom.n_sites(); ++s) c[s] = site_component(geom, s);
    return c;
}

StateVector build_product_ket(const LatticeGeometry& geom, const StateLabel& label, int hilbert_cap) {
    if (geom.n_sites() > hilbert_cap) {
        std::ostringstream msg;
        msg << "build_product_ket: " << geom.n_sites() << " sites exceed the Hilbert cap of " << hilbert_cap;
        throw std::length_error(msg.str());
    }
    const auto signs = flip_signature(geom, label);
    std::vector<std::array<cplx, 2>> factors(geom.n_sites());
    for (int s = 0; s < geom.n_sites(); ++s) factors[s] = eigenvector(site_component(geom, s), signs.signs[s]);
    StateVector ket(Eigen::Index{1} << geom.n_sites());
    kernels::omp::product_state(factors, kernels::view(ket));
    return ket;
}

StateVector build_product_ket(const LatticeGeometry& geom, const FlipConfig& config,
                              const std::optional<ExcitedLabel>& excitation, int hilbert_cap) {
    return excitation ? build_product_ket(geom, StateLabel(*excitation), hilbert_cap)
                      : build_product_ket(geom, StateLabel(config), hilbert_cap);
}

double label_overlap(const LatticeGeometry& geom, const StateLabel& a, const StateLabel& b) {
    return flip_signature(geom, a) == flip_signature(geom, b) ? 1.0 : 0.0;
}

std::vector<FlipConfig> signature_kernel(const LatticeGeometry& geom) {
    const int n = geom.n_plaquettes();
    if (n > 24) throw std::invalid_argument("signature_kernel: exhaustive check limited to 24 plaquettes");
    std::vector<std::vector<int>> sites_of(n);
    for (int p = 0; p < n; ++p)
        sites_of[p].assign(geom.plaquettes[p].sites.begin(), geom.plaquettes[p].sites.end());
    std::vector<FlipConfig> kernel;
    std::vector<int> parity(geom.n_sites());
    for (std::uint64_t bits = 1; bits < (std::uint64_t{1} << n); ++bits) {
        std::fill(parity.begin(), parity.end(), 0);
        for (int p = 0; p < n; ++p)
            if ((bits >> p) & 1u)
                for (int s : sites_of[p]) parity[s] ^= 1;
        if (std::all_of(parity.begin(), parity.end(), [](int v) { return v == 0; })) kernel.emplace_back(n, bits);
    }
    return kernel;
}

}  // namespace kitaev
