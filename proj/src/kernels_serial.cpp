#include "kitaev/kernels.hpp"

#include <bit>
#include <stdexcept>

namespace kitaev::kernels {

PauliString make_pauli_string(std::span<const std::pair<int, Component>> ops, cplx coefficient) {
    PauliString s;
    int n_y = 0;
    std::uint64_t seen = 0;
    for (const auto& [site, c] : ops) {
        if (site < 0 || site >= 64) throw std::out_of_range("make_pauli_string: site out of range");
        const std::uint64_t m = std::uint64_t{1} << site;
        if (seen & m) throw std::invalid_argument("make_pauli_string: repeated site");
        seen |= m;
        switch (c) {
        case Component::x: s.flip_mask |= m; break;
        case Component::y:
            s.flip_mask |= m;
            s.sign_mask |= m;
            ++n_y;
            break;
        case Component::z: s.sign_mask |= m; break;
        }
    }
    static constexpr std::array<cplx, 4> kIPow{cplx{1, 0}, cplx{0, 1}, cplx{-1, 0}, cplx{0, -1}};
    s.phase = coefficient * kIPow[n_y % 4];
    return s;
}

namespace {

inline double parity_sign(std::uint64_t v) { return (std::popcount(v) & 1) ? -1.0 : 1.0; }

}  // namespace

namespace serial {

void apply_sum(std::span<const PauliString> terms, std::span<const cplx> in, std::span<cplx> out) {
    if (in.size() != out.size()) throw std::invalid_argument("apply_sum: size mismatch");
    for (auto& o : out) o = 0.0;
    // scatter form: reference implementation
    for (const auto& t : terms) {
        for (std::uint64_t b = 0; b < in.size(); ++b) {
            if (in[b] == cplx{0.0, 0.0}) continue;
            out[b ^ t.flip_mask] += t.phase * parity_sign(b & t.sign_mask) * in[b];
        }
    }
}

void apply_string(const PauliString& term, std::span<const cplx> in, std::span<cplx> out) {
    apply_sum(std::span<const PauliString>(&term, 1), in, out);
}

cplx expectation(const PauliString& term, std::span<const cplx> psi) {
    cplx acc{0.0, 0.0};
    for (std::uint64_t b = 0; b < psi.size(); ++b)
        acc += std::conj(psi[b ^ term.flip_mask]) * term.phase * parity_sign(b & term.sign_mask) * psi[b];
    return acc;
}

cplx inner(std::span<const cplx> bra, std::span<const cplx> ket) {
    if (bra.size() != ket.size()) throw std::invalid_argument("inner: size mismatch");
    cplx acc{0.0, 0.0};
    for (std::size_t b = 0; b < bra.size(); ++b) acc += std::conj(bra[b]) * ket[b];
    return acc;
}

void product_state(std::span<const std::array<cplx, 2>> factors, std::span<cplx> out) {
    const std::size_t dim = std::size_t{1} << factors.size();
    if (out.size() != dim) throw std::invalid_argument("product_state: output size mismatch");
    out[0] = 1.0;
    std::size_t len = 1;
    // Kronecker build: site k doubles the filled prefix
    for (std::size_t k = 0; k < factors.size(); ++k) {
        for (std::size_t b = 0; b < len; ++b) {
            out[b + len] = out[b] * factors[k][1];
            out[b] *= factors[k][0];
        }
        len <<= 1;
    }
}

Eigen::MatrixXcd reduced_density(std::span<const cplx> psi, int n_sites, std::uint64_t keep_mask) {
    const std::uint64_t all = (n_sites == 64) ? ~std::uint64_t{0} : ((std::uint64_t{1} << n_sites) - 1);
    if (psi.size() != (std::size_t{1} << n_sites)) throw std::invalid_argument("reduced_density: size mismatch");
    keep_mask &= all;
    const std::uint64_t trace_mask = all & ~keep_mask;
    const int n_keep = std::popcount(keep_mask);
    const std::uint64_t dim_keep = std::uint64_t{1} << n_keep;
    const std::uint64_t dim_trace = std::uint64_t{1} << (n_sites - n_keep);
    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(dim_keep, dim_keep);
    for (std::uint64_t e = 0; e < dim_trace; ++e) {
        const std::uint64_t env = deposit_bits(e, trace_mask);
        for (std::uint64_t a = 0; a < dim_keep; ++a) {
            const cplx va = psi[env | deposit_bits(a, keep_mask)];
            if (va == cplx{0.0, 0.0}) continue;
            for (std::uint64_t c = 0; c < dim_keep; ++c)
                rho(a, c) += va * std::conj(psi[env | deposit_bits(c, keep_mask)]);
        }
    }
    return rho;
}

}  // namespace serial
}  // namespace kitaev::kernels
