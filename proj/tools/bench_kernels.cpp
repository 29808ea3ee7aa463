#include <chrono>
#include <cstdio>
#include <cstring>
#include <vector>

#include "spinqec/lattice.hpp"
#include "spinqec/parallel.hpp"
#include "spinqec/state.hpp"
#include "spinqec/syndrome.hpp"

using namespace spinqec;

namespace {

bool bits_equal(const std::vector<cplx>& a, const std::vector<cplx>& b) {
    return a.size() == b.size() &&
           std::memcmp(a.data(), b.data(), a.size() * sizeof(cplx)) == 0;
}

template <typename F>
double best_ms(F&& fn, int reps) {
    double best = 1e300;
    for (int i = 0; i < reps; ++i) {
        const auto t0 = std::chrono::steady_clock::now();
        fn();
        const auto t1 = std::chrono::steady_clock::now();
        const double ms =
            std::chrono::duration<double, std::milli>(t1 - t0).count();
        if (ms < best) best = ms;
    }
    return best;
}

std::vector<QubitLabel> spin_labels(int n) {
    std::vector<QubitLabel> labels;
    for (int i = 0; i < n; ++i) labels.push_back(spin(i));
    return labels;
}

std::vector<cplx> gate_ladder() {
    PureState psi = PureState::computational(spin_labels(14), 0);
    const Mat2 h = hadamard_gate();
    const Mat2 p = phase_gate(0.3);
    for (int sweep = 0; sweep < 60; ++sweep)
        for (int q = 0; q < 14; ++q) {
            psi = apply_single_qubit(psi, spin(q), h);
            psi = apply_single_qubit(psi, spin(q), p);
        }
    return psi.amplitudes();
}

std::vector<cplx> diagonal_ladder() {
    PureState psi = PureState::computational(spin_labels(14), 0);
    for (int q = 0; q < 14; ++q)
        psi = apply_single_qubit(psi, spin(q), hadamard_gate());
    const Diag4 d{cplx{1.0, 0.0}, cplx{0.0, 1.0}, cplx{0.0, -1.0},
                  cplx{-1.0, 0.0}};
    for (int sweep = 0; sweep < 200; ++sweep)
        for (int q = 0; q + 1 < 14; q += 2)
            psi = apply_two_qubit_diagonal(psi, spin(q), spin(q + 1), d);
    return psi.amplitudes();
}

std::vector<cplx> channel_and_trace() {
    PureState psi = PureState::computational(spin_labels(10), 0);
    for (int q = 0; q < 10; ++q)
        psi = apply_single_qubit(psi, spin(q), hadamard_gate());
    DensityOperator rho = DensityOperator::from_pure(psi);
    rho = apply_pauli_channel(rho, spin(0), PauliChannel{0.05, 0.02, 0.03});
    rho = apply_pauli_channel(rho, spin(5), PauliChannel{0.01, 0.04, 0.02});
    const std::vector<QubitLabel> keep{spin(0), spin(1), spin(5)};
    const DensityOperator red = partial_trace(rho, keep);
    return red.matrix();
}

std::vector<cplx> syndrome_shots() {
    const SurfaceCodeLattice lattice = build_planar(2);
    const PauliChannel ch{0.03, 0.0, 0.03};
    const InteractionModel model = InteractionModel::ideal(PhaseSign::Plus);
    const SyndromeTally tally =
        sample_syndromes(lattice, ch, model, 4000, 17);
    std::vector<cplx> enc;
    for (const SyndromeTallyRow& r : tally.rows) {
        enc.emplace_back(static_cast<double>(r.n_plus),
                         static_cast<double>(r.n_minus));
        enc.emplace_back(static_cast<double>(r.n_loss), 0.0);
    }
    return enc;
}

}  // namespace

int main() {
    std::printf("%-36s %10s %10s %9s  %s\n", "kernel", "seq ms", "par ms",
                "speedup", "bitwise");
    bool all_match = true;

    auto run = [&](const char* name, auto&& fn) {
        set_default_exec(Exec::Seq);
        const std::vector<cplx> ref = fn();
        const double seq = best_ms(fn, 3);
        set_default_exec(Exec::Par);
        const std::vector<cplx> par = fn();
        const double parms = best_ms(fn, 3);
        const bool ok = bits_equal(ref, par);
        all_match = all_match && ok;
        std::printf("%-36s %10.2f %10.2f %8.2fx  %s\n", name, seq, parms,
                    seq / parms, ok ? "match" : "MISMATCH");
    };

    run("gate ladder (14q pure, 60 sweeps)", gate_ladder);
    run("two-qubit diagonal (14q, 200 sweeps)", diagonal_ladder);
    run("pauli channel + trace (10q density)", channel_and_trace);
    run("syndrome sampling (d=2, 4000 shots)", syndrome_shots);

    set_default_exec(Exec::Par);
    if (!all_match) {
        std::printf("FAIL: parallel kernels diverged from serial reference\n");
        return 1;
    }
    std::printf("all kernels bitwise identical across Seq and Par\n");
    return 0;
}
