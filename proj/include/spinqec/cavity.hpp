#pragma once

#include <vector>

#include "spinqec/common.hpp"

namespace spinqec {

// Single-sided micropillar cavity containing one charged quantum dot.
// All frequencies and rates are expressed in units of the output-coupler
// decay rate kappa (kappa = 1 by convention).
struct CavitySystem {
    double omega_c = 0.0;  // cavity resonance
    double omega_X = 0.0;  // trion transition
    double g = 0.0;        // dot-cavity coupling
    double kappa = 1.0;    // output-mode decay (the normalization unit)
    double kappa_s = 0.0;  // side leakage
    double gamma = 0.0;    // trion dipole decay
};

// Resonant configuration (omega_c == omega_X == center).
CavitySystem resonant_system(double g, double gamma, double kappa_s = 0.0,
                             double center = 0.0);

// Throws Error if rates violate kappa > 0, g >= 0, kappa_s >= 0, gamma > 0.
void validate(const CavitySystem& sys);

struct ReflectionPair {
    cplx r_coupled;
    cplx r_cold;
};

// Reflection amplitude of the coupled (dot-active) cavity at probe frequency
// omega, and of the cold cavity (coupling switched off).
cplx reflection_coupled(const CavitySystem& sys, double omega);
cplx reflection_cold(const CavitySystem& sys, double omega);
ReflectionPair reflect(const CavitySystem& sys, double omega);

// Principal-value wrap to (-pi, pi].
double wrap_angle(double a);

// Conditional phase arg(r_coupled) - arg(r_cold), wrapped to (-pi, pi],
// evaluated at omega = omega_c - delta.
double phase_difference(const CavitySystem& sys, double delta);

struct SolveOptions {
    double bracket_lo = 0.0;
    double bracket_hi = 0.0;
    int scan_points = 4096;
};

// Default bracket delta in [-5 max(kappa, g), 5 max(kappa, g)].
SolveOptions default_solve_options(const CavitySystem& sys);

// All detunings delta inside the bracket with phase_difference(sys, delta)
// equal to target, each accurate to 1e-10 rad, sorted ascending and
// deduplicated. Throws NoRootInBracket when the scan finds none. The scan
// treats jumps larger than pi between adjacent cells as branch-cut wraps,
// not crossings.
std::vector<double> solve_detuning(const CavitySystem& sys, double target);
std::vector<double> solve_detuning(const CavitySystem& sys, double target,
                                   const SolveOptions& opt);

// Strict threshold g > (kappa + kappa_s) / 4.
bool is_strong_coupling(const CavitySystem& sys);

}  // namespace spinqec
