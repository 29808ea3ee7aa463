#include "spinqec/cavity.hpp"

#include <algorithm>
#include <cmath>

#include "spinqec/errors.hpp"

namespace spinqec {

CavitySystem resonant_system(double g, double gamma, double kappa_s,
                             double center) {
    CavitySystem sys;
    sys.omega_c = center;
    sys.omega_X = center;
    sys.g = g;
    sys.kappa = 1.0;
    sys.kappa_s = kappa_s;
    sys.gamma = gamma;
    validate(sys);
    return sys;
}

void validate(const CavitySystem& sys) {
    if (!(sys.kappa > 0.0)) throw Error("CavitySystem: kappa must be positive");
    if (!(sys.g >= 0.0)) throw Error("CavitySystem: g must be nonnegative");
    if (!(sys.kappa_s >= 0.0))
        throw Error("CavitySystem: kappa_s must be nonnegative");
    if (!(sys.gamma > 0.0)) throw Error("CavitySystem: gamma must be positive");
}

namespace {

// Shared by both reflection amplitudes so the cold cavity is exactly the
// coupled one with g = 0.
cplx reflection_impl(const CavitySystem& sys, double omega, double g) {
    const cplx dc(0.0, sys.omega_c - omega);
    const cplx dx(0.0, sys.omega_X - omega);
    const cplx a = dx + 0.5 * sys.gamma;
    const cplx num = (dc + 0.5 * (sys.kappa_s - sys.kappa)) * a + g * g;
    const cplx den = (dc + 0.5 * (sys.kappa_s + sys.kappa)) * a + g * g;
    return num / den;
}

}  // namespace

cplx reflection_coupled(const CavitySystem& sys, double omega) {
    validate(sys);
    return reflection_impl(sys, omega, sys.g);
}

cplx reflection_cold(const CavitySystem& sys, double omega) {
    validate(sys);
    return reflection_impl(sys, omega, 0.0);
}

ReflectionPair reflect(const CavitySystem& sys, double omega) {
    validate(sys);
    return {reflection_impl(sys, omega, sys.g),
            reflection_impl(sys, omega, 0.0)};
}

double wrap_angle(double a) {
    a = std::remainder(a, 2.0 * pi);  // (-pi, pi] up to the -pi edge
    if (a <= -pi) a = pi;
    return a;
}

double phase_difference(const CavitySystem& sys, double delta) {
    const double omega = sys.omega_c - delta;
    const ReflectionPair r = reflect(sys, omega);
    return wrap_angle(std::arg(r.r_coupled) - std::arg(r.r_cold));
}

SolveOptions default_solve_options(const CavitySystem& sys) {
    const double span = 5.0 * std::max(sys.kappa, sys.g);
    return {-span, span, 4096};
}

std::vector<double> solve_detuning(const CavitySystem& sys, double target) {
    return solve_detuning(sys, target, default_solve_options(sys));
}

std::vector<double> solve_detuning(const CavitySystem& sys, double target,
                                   const SolveOptions& opt) {
    validate(sys);
    if (!(target > -pi && target <= pi))
        throw Error("solve_detuning: target must lie in (-pi, pi]");
    if (opt.scan_points < 2 || !(opt.bracket_hi > opt.bracket_lo))
        throw Error("solve_detuning: bad bracket or scan resolution");

    // Distance from the target on the circle; roots are zero crossings.
    const auto f = [&](double d) {
        return wrap_angle(phase_difference(sys, d) - target);
    };

    const int n = opt.scan_points;
    const double lo = opt.bracket_lo, hi = opt.bracket_hi;
    const double step = (hi - lo) / n;

    std::vector<double> roots;
    double x0 = lo, f0 = f(x0);
    for (int i = 1; i <= n; ++i) {
        const double x1 = (i == n) ? hi : lo + i * step;
        const double f1 = f(x1);
        if (f0 == 0.0) roots.push_back(x0);
        // A swing wider than pi between adjacent cells is the principal
        // branch wrapping, not a crossing of the target.
        if (f0 * f1 < 0.0 && std::abs(f1 - f0) < pi) {
            double a = x0, b = x1, fa = f0;
            for (int it = 0; it < 200 && (b - a) > 1e-15 * (1.0 + std::abs(a));
                 ++it) {
                const double m = 0.5 * (a + b);
                const double fm = f(m);
                if (fm == 0.0) {
                    a = b = m;
                    break;
                }
                if (fa * fm < 0.0) {
                    b = m;
                } else {
                    a = m;
                    fa = fm;
                }
            }
            roots.push_back(0.5 * (a + b));
        }
        x0 = x1;
        f0 = f1;
    }
    if (f0 == 0.0) roots.push_back(x0);

    std::sort(roots.begin(), roots.end());
    std::vector<double> out;
    const double dedup = 1e-9 * std::max(1.0, hi - lo);
    for (double r : roots) {
        if (!out.empty() && r - out.back() < dedup) continue;
        if (std::abs(f(r)) < 1e-10) out.push_back(r);
    }
    if (out.empty())
        throw NoRootInBracket("solve_detuning: no phase root in bracket");
    return out;
}

bool is_strong_coupling(const CavitySystem& sys) {
    validate(sys);
    return sys.g > 0.25 * (sys.kappa + sys.kappa_s);
}

}  // namespace spinqec
