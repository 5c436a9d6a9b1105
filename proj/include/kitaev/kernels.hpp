#pragma once

// Hilbert-space kernels over bitmask basis states. Basis index b has bit k set when
// site k is spin-down in the sigma^z basis.
//
// Every kernel exists twice: kernels::serial is the reference implementation kept for
// testing, kernels::omp is the OpenMP-parallel version the physics modules call.

#include <array>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "kitaev/pauli.hpp"

namespace kitaev::kernels {

/// coefficient * (product of single-site Paulis). P|b> = phase * i^{n_y} *
/// (-1)^{popcount(b & sign_mask)} |b ^ flip_mask>.
struct PauliString {
    std::uint64_t flip_mask = 0;
    std::uint64_t sign_mask = 0;
    cplx phase{1.0, 0.0};
};

/// Pauli string from (site, component) pairs on distinct sites, times `coefficient`.
PauliString make_pauli_string(std::span<const std::pair<int, Component>> ops, cplx coefficient = 1.0);

namespace serial {

/// out = sum_k terms[k] * in. `out` must not alias `in`.
void apply_sum(std::span<const PauliString> terms, std::span<const cplx> in, std::span<cplx> out);
void apply_string(const PauliString& term, std::span<const cplx> in, std::span<cplx> out);
cplx expectation(const PauliString& term, std::span<const cplx> psi);
cplx inner(std::span<const cplx> bra, std::span<const cplx> ket);
/// Tensor product of per-site two-component factors (site 0 = least significant bit).
void product_state(std::span<const std::array<cplx, 2>> factors, std::span<cplx> out);
/// Reduced density matrix over the sites in keep_mask (bit order of kept sites preserved).
Eigen::MatrixXcd reduced_density(std::span<const cplx> psi, int n_sites, std::uint64_t keep_mask);

}  // namespace serial

namespace omp {

void apply_sum(std::span<const PauliString> terms, std::span<const cplx> in, std::span<cplx> out);
void apply_string(const PauliString& term, std::span<const cplx> in, std::span<cplx> out);
cplx expectation(const PauliString& term, std::span<const cplx> psi);
cplx inner(std::span<const cplx> bra, std::span<const cplx> ket);
void product_state(std::span<const std::array<cplx, 2>> factors, std::span<cplx> out);
Eigen::MatrixXcd reduced_density(std::span<const cplx> psi, int n_sites, std::uint64_t keep_mask);

}  // namespace omp

/// Scatter the low bits of `value` into the set-bit positions of `mask`.
inline std::uint64_t deposit_bits(std::uint64_t value, std::uint64_t mask) {
    std::uint64_t out = 0;
    for (std::uint64_t bit = 1; mask != 0; bit <<= 1) {
        const std::uint64_t lowest = mask & (~mask + 1);
        if (value & bit) out |= lowest;
        mask &= mask - 1;
    }
    return out;
}

inline std::span<const cplx> view(const StateVector& v) { return {v.data(), static_cast<std::size_t>(v.size())}; }
inline std::span<cplx> view(StateVector& v) { return {v.data(), static_cast<std::size_t>(v.size())}; }

}  // namespace kitaev::kernels
