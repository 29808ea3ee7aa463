#pragma once

#include <cstdint>
#include <vector>

#include "spinqec/cavity.hpp"
#include "spinqec/lattice.hpp"

namespace spinqec {

enum class InteractionMode { IdealPhase, Physical };
enum class PhaseSign { Plus, Minus };

// IdealPhase: unit-modulus reflections with conditional phase +-pi/2.
// Physical: reflection amplitudes of `system` evaluated at detuning `delta`.
struct InteractionModel {
    InteractionMode mode = InteractionMode::IdealPhase;
    PhaseSign phase_sign = PhaseSign::Plus;  // IdealPhase only
    CavitySystem system;                     // Physical only
    double delta = 0.0;                      // Physical only

    static InteractionModel ideal(PhaseSign sign = PhaseSign::Plus);
    // Throws Error unless |phase_difference(sys, delta)| lies in (0, pi].
    static InteractionModel physical(const CavitySystem& sys, double delta);
};

// Conditional phase realized by the model: +-pi/2 or phase_difference.
double model_phase(const InteractionModel& model);

// Coefficients for the photon-spin basis (L up, L down, R up, R down).
struct InteractionCoefficients {
    cplx l_up, l_dn, r_up, r_dn;
};
InteractionCoefficients interaction_coefficients(const InteractionModel& model);

enum class ReadoutBasis { X, Y, PhotonHV };

struct SyndromeOutcome {
    int value = 0;  // +1 or -1
    ReadoutBasis readout_basis = ReadoutBasis::X;
    bool heralded_loss = false;
    double probability = 0.0;
};

struct MeasurementBranch {
    SyndromeOutcome outcome;
    PureState post;  // ancilla removed, renormalized
};

struct MeasurementResult {
    std::vector<MeasurementBranch> branches;  // +1 branch first when present
    double loss_probability = 0.0;            // photon-loss norm deficit
};

// Initial ancilla-spin state; Minus inverts the outcome labels.
enum class SpinInit { Plus, Minus };

// Plaquette (Z-type) measurement of a weight-4 stabilizer: spin ancilla in
// |+S>, one conditional reflection per support photon in id order, phase
// correction diag(1, e^{i phase}) per photon, spin read out in X.
MeasurementResult measure_plaquette(const PureState& state,
                                    const SurfaceCodeLattice& lattice,
                                    const StabilizerRecord& stab,
                                    const InteractionModel& model,
                                    SpinInit init = SpinInit::Plus);

// Star (X-type): Hadamard on each support photon, the plaquette pipeline
// (weight-3 stars use the boundary pipeline), Hadamard again.
MeasurementResult measure_star(const PureState& state,
                               const SurfaceCodeLattice& lattice,
                               const StabilizerRecord& stab,
                               const InteractionModel& model,
                               SpinInit init = SpinInit::Plus);

// Weight-3 boundary operator of either kind; spin read out in Y. Outcome +1
// maps to |LS> when the model phase is positive, |RS> when negative.
MeasurementResult measure_boundary(const PureState& state,
                                   const SurfaceCodeLattice& lattice,
                                   const StabilizerRecord& stab,
                                   const InteractionModel& model,
                                   SpinInit init = SpinInit::Plus);

// Role-swapped protocol: 3-4 data spins, probed by one photon prepared in
// |H>; H/V detection gives value +1/-1 (weight 3 adds a polarization phase
// shift before detection).
MeasurementResult measure_swapped(const PureState& spins_state,
                                  const InteractionModel& model);

// Per-spin diag(e^{i phi_0}, e^{i phi_h}) frame correction after a swapped
// H herald; phases only, unit modulus.
PureState correct_swapped_phases(const PureState& spins_state,
                                 const InteractionModel& model);

// Probability that a +1/-1 spin readout of the canonical stabilizer (first
// of the requested kind) correctly flags the syndrome sector, for the
// quiescent state pushed through the Pauli channel on every data qubit.
// Throws ZeroProbabilityReadout when the readout probability is below 1e-300.
double confidence(const SurfaceCodeLattice& lattice, const PauliChannel& ch,
                  const InteractionModel& model, StabKind kind, int readout);

struct SyndromeTallyRow {
    StabKind kind;
    int stab_index = 0;  // position within stars or plaquettes
    int weight = 0;
    std::int64_t n_plus = 0;
    std::int64_t n_minus = 0;
    std::int64_t n_loss = 0;
};

struct SyndromeTally {
    std::vector<SyndromeTallyRow> rows;  // stars first, then plaquettes
    std::int64_t shots = 0;
    std::uint64_t seed = 0;
};

// Monte Carlo: per shot, sample one Pauli per data qubit on the quiescent
// state, then measure every stabilizer in lattice order. A heralded photon
// loss aborts the remaining measurements of that shot. Byte-identical for a
// given (lattice, channel, model, shots, seed) under Seq and Par.
SyndromeTally sample_syndromes(const SurfaceCodeLattice& lattice,
                               const PauliChannel& ch,
                               const InteractionModel& model,
                               std::int64_t shots, std::uint64_t seed,
                               Exec ex = default_exec());

// Closed-form -1 rate for one stabilizer under the i.i.d. channel:
// (1 - (1 - 2q)^w) / 2 with q = x + y (plaquette) or z + y (star).
double exact_minus_rate(const PauliChannel& ch, StabKind kind, int weight);

}  // namespace spinqec
