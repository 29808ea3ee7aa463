#pragma once

#include <optional>
#include <span>
#include <vector>

#include "spinqec/cavity.hpp"
#include "spinqec/state.hpp"
#include "spinqec/syndrome.hpp"

namespace spinqec {

// Two dot-cavity systems probed by a shared photon. delta_energy is the
// transition-frequency offset Delta = omega_X1 - omega_X2; both systems are
// internally resonant and centered at +-Delta/2.
struct QDPair {
    CavitySystem sys1;
    CavitySystem sys2;
    double delta_energy = 0.0;
};

QDPair make_qd_pair(double g, double gamma1, double gamma2, double kappa_s,
                    double delta_energy);

enum class ProbeMode { AntiSymmetric, Symmetric };

struct EntanglementResult {
    double probe_frequency = 0.0;
    double efficiency = 0.0;  // V-herald probability eta
    double fidelity = 0.0;
    PureState heralded_state;  // two spins, normalized, frame-corrected
    double prob_h = 0.0;       // H-herald probability
    double loss_deficit = 0.0; // 1 - prob_h - efficiency
};

// Probe frequency solving the mode condition inside the scan bracket:
// AntiSymmetric phi1(omega) + phi2(omega) = 0, Symmetric phi1 = phi2.
// Trivial (|phi| ~ 0) and branch-cut (|phi| ~ pi) candidates are rejected;
// the surviving root nearest the midpoint wins. For identical systems the
// Symmetric condition is degenerate and the frequency with |phi| = pi/2
// nearest the midpoint is returned. Throws NoRootInBracket.
double solve_probe_frequency(const QDPair& pair, ProbeMode mode);

// Full state-vector run: spins prepared in (|up>+|down>)/sqrt2, photon in
// |H>, sequential conditional reflections, V herald on the photon.
// Symmetric mode applies the documented Z correction on the first spin.
EntanglementResult entangle_pair(const QDPair& pair, double omega,
                                 ProbeMode mode = ProbeMode::AntiSymmetric);

// Closed form for the V-heralded fidelity from the four reflection values:
// |B|^2 / (|A|^2 + |B|^2) with A = r_h1 r_h2 - r_01 r_02 and
// B = r_h1 r_02 - r_01 r_h2 (AntiSymmetric target). Throws Indeterminate
// when both magnitudes are below 1e-300.
double fidelity_formula(cplx r_h1, cplx r_01, cplx r_h2, cplx r_02);

// V-herald probability for two identical lossless systems at phi = +-pi/2.
inline constexpr double eta_max = 0.5;

struct SweepRow {
    double delta_energy = 0.0;
    bool gap = false;  // no probe frequency in bracket; value fields unset
    std::optional<double> probe_frequency;
    std::optional<double> eta;
    std::optional<double> eta_ratio;
    std::optional<double> fidelity;
};

struct SweepResult {
    std::vector<SweepRow> rows;  // grid order
};

// Re-centers the template at each Delta, solves the probe frequency and
// entangles. Points are independent; Par evaluates them concurrently with
// results stored in grid order.
SweepResult efficiency_sweep(const QDPair& pair_template,
                             std::span<const double> delta_range,
                             ProbeMode mode, Exec ex = default_exec());

struct MergeResult {
    PureState state;                 // four spins, corrected, normalized
    double merge_probability = 0.0;  // V herald of the merge probe
    double total_probability = 0.0;  // etaA * etaB * merge_probability
};

// Merges two heralded pairs (spins 0,1 and 2,3 after relabeling) with one
// probe photon reflecting off the inner spins 1 and 2, V herald, then the
// documented frame corrections X on spins 0 and 2 followed by Z on spin 0.
// Ideal inputs and couplings give (|uuuu> + |dddd>)/sqrt2.
MergeResult entangle_four(const EntanglementResult& a,
                          const EntanglementResult& b, const QDPair& merge,
                          double omega);
// Solves the merge probe frequency internally (AntiSymmetric condition);
// throws NoRootInBracket when the merge pair cannot reach it.
MergeResult entangle_four(const EntanglementResult& a,
                          const EntanglementResult& b, const QDPair& merge);

// Exposed for oracle tests: the merge stage on two explicit two-spin states
// with explicit interaction coefficients for the inner spins.
MergeResult merge_with_coefficients(const PureState& ab, const PureState& cd,
                                    const InteractionCoefficients& inner1,
                                    const InteractionCoefficients& inner2);

// (1 + exp(-n t / T2)) / 2. Throws InvalidTime for t < 0 or T2 <= 0.
double decoherence_factor(double t, double T2, int n);

}  // namespace spinqec
