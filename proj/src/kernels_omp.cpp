#include "kitaev/kernels.hpp"

#include <bit>
#include <stdexcept>
#include <vector>

#include <omp.h>

namespace kitaev::kernels::omp {

namespace {

// below this many amplitudes the loops run on the calling thread
constexpr std::int64_t kParallelMin = 2048;

inline double parity_sign(std::uint64_t v) { return (std::popcount(v) & 1) ? -1.0 : 1.0; }

}  // namespace

void apply_sum(std::span<const PauliString> terms, std::span<const cplx> in, std::span<cplx> out) {
    if (in.size() != out.size()) throw std::invalid_argument("apply_sum: size mismatch");
    const auto dim = static_cast<std::int64_t>(in.size());
    const PauliString* t = terms.data();
    const auto nt = terms.size();
    // gather form: each output amplitude is owned by one thread
#pragma omp parallel for schedule(static) if (dim >= kParallelMin)
    for (std::int64_t b = 0; b < dim; ++b) {
        cplx acc{0.0, 0.0};
        for (std::size_t k = 0; k < nt; ++k) {
            const std::uint64_t src = static_cast<std::uint64_t>(b) ^ t[k].flip_mask;
            acc += t[k].phase * parity_sign(src & t[k].sign_mask) * in[src];
        }
        out[b] = acc;
    }
}

void apply_string(const PauliString& term, std::span<const cplx> in, std::span<cplx> out) {
    apply_sum(std::span<const PauliString>(&term, 1), in, out);
}

cplx expectation(const PauliString& term, std::span<const cplx> psi) {
    const auto dim = static_cast<std::int64_t>(psi.size());
    double re = 0.0;
    double im = 0.0;
#pragma omp parallel for reduction(+ : re, im) schedule(static) if (dim >= kParallelMin)
    for (std::int64_t b = 0; b < dim; ++b) {
        const auto ub = static_cast<std::uint64_t>(b);
        const cplx v = std::conj(psi[ub ^ term.flip_mask]) * parity_sign(ub & term.sign_mask) * psi[ub];
        re += v.real();
        im += v.imag();
    }
    return term.phase * cplx{re, im};
}

cplx inner(std::span<const cplx> bra, std::span<const cplx> ket) {
    if (bra.size() != ket.size()) throw std::invalid_argument("inner: size mismatch");
    const auto dim = static_cast<std::int64_t>(bra.size());
    double re = 0.0;
    double im = 0.0;
#pragma omp parallel for reduction(+ : re, im) schedule(static) if (dim >= kParallelMin)
    for (std::int64_t b = 0; b < dim; ++b) {
        const cplx v = std::conj(bra[b]) * ket[b];
        re += v.real();
        im += v.imag();
    }
    return {re, im};
}

void product_state(std::span<const std::array<cplx, 2>> factors, std::span<cplx> out) {
    const std::size_t n = factors.size();
    const auto dim = static_cast<std::int64_t>(std::size_t{1} << n);
    if (out.size() != static_cast<std::size_t>(dim)) throw std::invalid_argument("product_state: output size mismatch");
#pragma omp parallel for schedule(static) if (dim >= kParallelMin)
    for (std::int64_t b = 0; b < dim; ++b) {
        cplx v{1.0, 0.0};
        for (std::size_t k = 0; k < n; ++k) v *= factors[k][(b >> k) & 1];
        out[b] = v;
    }
}

Eigen::MatrixXcd reduced_density(std::span<const cplx> psi, int n_sites, std::uint64_t keep_mask) {
    const std::uint64_t all = (n_sites == 64) ? ~std::uint64_t{0} : ((std::uint64_t{1} << n_sites) - 1);
    if (psi.size() != (std::size_t{1} << n_sites)) throw std::invalid_argument("reduced_density: size mismatch");
    keep_mask &= all;
    const std::uint64_t trace_mask = all & ~keep_mask;
    const int n_keep = std::popcount(keep_mask);
    const auto dim_keep = static_cast<std::int64_t>(std::uint64_t{1} << n_keep);
    const auto dim_trace = static_cast<std::int64_t>(std::uint64_t{1} << (n_sites - n_keep));

    // psi reshaped to (kept x traced), then rho = M M^dagger
    Eigen::MatrixXcd m(dim_keep, dim_trace);
    std::vector<std::uint64_t> env(dim_trace);
    for (std::int64_t e = 0; e < dim_trace; ++e) env[e] = deposit_bits(static_cast<std::uint64_t>(e), trace_mask);
#pragma omp parallel for schedule(static) if (dim_keep * dim_trace >= kParallelMin)
    for (std::int64_t a = 0; a < dim_keep; ++a) {
        const std::uint64_t sa = deposit_bits(static_cast<std::uint64_t>(a), keep_mask);
        for (std::int64_t e = 0; e < dim_trace; ++e) m(a, e) = psi[sa | env[e]];
    }
    Eigen::MatrixXcd rho(dim_keep, dim_keep);
#pragma omp parallel for schedule(dynamic) if (dim_keep * dim_trace >= kParallelMin)
    for (std::int64_t a = 0; a < dim_keep; ++a) {
        for (std::int64_t c = 0; c <= a; ++c) {
            const cplx v = m.row(a).dot(m.row(c));  // conj(first) . second
            rho(a, c) = std::conj(v);
            rho(c, a) = v;
        }
    }
    return rho;
}

}  // namespace kitaev::kernels::omp
