// Serial reference kernels vs their OpenMP versions on Kitaev Hamiltonian workloads.
// Argument: lattice nx (ny = 2), i.e. 4 * nx sites.

#include <random>

#include <benchmark/benchmark.h>
#include <omp.h>

#include "kitaev/hamiltonian.hpp"
#include "kitaev/kernels.hpp"

using namespace kitaev;

namespace {

StateVector random_state(int n_sites, unsigned seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g;
    StateVector v(Eigen::Index{1} << n_sites);
    for (auto& x : v) x = cplx{g(rng), g(rng)};
    v.normalize();
    return v;
}

struct Workload {
    LatticeGeometry geom;
    std::vector<kernels::PauliString> terms;
    StateVector psi;
    StateVector out;

    explicit Workload(int nx)
        : geom(build_lattice(nx, 2)), terms(h0_terms(geom, CouplingParams{})), psi(random_state(geom.n_sites(), 7)),
          out(psi.size()) {}
};

template <void (*Apply)(std::span<const kernels::PauliString>, std::span<const cplx>, std::span<cplx>)>
void BM_apply_h0(benchmark::State& state) {
    Workload w(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        Apply(w.terms, kernels::view(w.psi), kernels::view(w.out));
        benchmark::DoNotOptimize(w.out.data());
    }
    state.SetItemsProcessed(state.iterations() * w.psi.size() * static_cast<std::int64_t>(w.terms.size()));
    state.counters["threads"] = omp_get_max_threads();
}

template <cplx (*Expect)(const kernels::PauliString&, std::span<const cplx>)>
void BM_plaquette_expectation(benchmark::State& state) {
    Workload w(static_cast<int>(state.range(0)));
    const auto wp = plaquette_string(w.geom, 0);
    for (auto _ : state) benchmark::DoNotOptimize(Expect(wp, kernels::view(w.psi)));
    state.SetItemsProcessed(state.iterations() * w.psi.size());
}

template <Eigen::MatrixXcd (*Reduce)(std::span<const cplx>, int, std::uint64_t)>
void BM_reduced_density(benchmark::State& state) {
    Workload w(static_cast<int>(state.range(0)));
    std::uint64_t mask = 0;
    for (const auto& s : w.geom.sites)
        if (s.sublattice == Sublattice::A) mask |= std::uint64_t{1} << s.id;
    for (auto _ : state) {
        auto rho = Reduce(kernels::view(w.psi), w.geom.n_sites(), mask);
        benchmark::DoNotOptimize(rho.data());
    }
}

}  // namespace

BENCHMARK(BM_apply_h0<kernels::serial::apply_sum>)->Name("apply_h0/serial")->DenseRange(2, 4);
BENCHMARK(BM_apply_h0<kernels::omp::apply_sum>)->Name("apply_h0/omp")->DenseRange(2, 4);
BENCHMARK(BM_plaquette_expectation<kernels::serial::expectation>)->Name("plaquette_expectation/serial")->DenseRange(2, 4);
BENCHMARK(BM_plaquette_expectation<kernels::omp::expectation>)->Name("plaquette_expectation/omp")->DenseRange(2, 4);
BENCHMARK(BM_reduced_density<kernels::serial::reduced_density>)->Name("reduced_density/serial")->DenseRange(2, 3);
BENCHMARK(BM_reduced_density<kernels::omp::reduced_density>)->Name("reduced_density/omp")->DenseRange(2, 3);

BENCHMARK_MAIN();
