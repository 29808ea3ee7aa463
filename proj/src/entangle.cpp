#include "spinqec/entangle.hpp"

#include <algorithm>
#include <cmath>
#include <exception>

#include "spinqec/errors.hpp"

namespace spinqec {

QDPair make_qd_pair(double g, double gamma1, double gamma2, double kappa_s,
                    double delta_energy) {
    QDPair p;
    p.sys1 = resonant_system(g, gamma1, kappa_s, 0.5 * delta_energy);
    p.sys2 = resonant_system(g, gamma2, kappa_s, -0.5 * delta_energy);
    p.delta_energy = delta_energy;
    return p;
}

namespace {

void validate(const QDPair& pair) {
    validate(pair.sys1);
    validate(pair.sys2);
    if (pair.sys1.kappa != pair.sys2.kappa)
        throw Error("QDPair: systems must share the kappa normalization");
    if (std::abs((pair.sys1.omega_X - pair.sys2.omega_X) -
                 pair.delta_energy) > 1e-9)
        throw Error("QDPair: delta_energy inconsistent with frequencies");
}

double phase_at(const CavitySystem& sys, double omega) {
    return phase_difference(sys, sys.omega_c - omega);
}

constexpr double phase_floor = 1e-8;  // trivial-root rejection threshold

bool usable_phases(const QDPair& pair, double omega) {
    const double p1 = std::abs(phase_at(pair.sys1, omega));
    const double p2 = std::abs(phase_at(pair.sys2, omega));
    return p1 > phase_floor && p1 < pi - phase_floor && p2 > phase_floor &&
           p2 < pi - phase_floor;
}

}  // namespace

double solve_probe_frequency(const QDPair& pair, ProbeMode mode) {
    validate(pair);
    const double mid = 0.5 * (pair.sys1.omega_X + pair.sys2.omega_X);
    const double span =
        0.5 * std::abs(pair.delta_energy) +
        5.0 * std::max({pair.sys1.kappa, pair.sys1.g, pair.sys2.g});
    const double lo = mid - span, hi = mid + span;

    const auto f = [&](double w) {
        const double p1 = phase_at(pair.sys1, w);
        const double p2 = phase_at(pair.sys2, w);
        return mode == ProbeMode::AntiSymmetric ? wrap_angle(p1 + p2)
                                                : wrap_angle(p1 - p2);
    };

    const int n = 4096;
    const double step = (hi - lo) / n;

    double max_abs = 0.0;
    std::vector<double> roots;
    double x0 = lo, f0 = f(x0);
    for (int i = 1; i <= n; ++i) {
        const double x1 = (i == n) ? hi : lo + i * step;
        const double f1 = f(x1);
        max_abs = std::max(max_abs, std::abs(f1));
        if (f0 == 0.0) roots.push_back(x0);
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
    if (f0 == 0.0) roots.push_back(hi);

    if (mode == ProbeMode::Symmetric && max_abs < 1e-9) {
        // Identical systems: the condition is degenerate; pin the frequency
        // where the common phase reaches +-pi/2, nearest the midpoint.
        std::vector<double> deltas;
        for (const double target : {0.5 * pi, -0.5 * pi}) {
            try {
                for (double d : solve_detuning(pair.sys1, target))
                    deltas.push_back(d);
            } catch (const NoRootInBracket&) {
            }
        }
        if (deltas.empty())
            throw NoRootInBracket("no pi/2 phase point for degenerate pair");
        const double best = *std::min_element(
            deltas.begin(), deltas.end(),
            [](double a, double b) { return std::abs(a) < std::abs(b); });
        return pair.sys1.omega_c - best;
    }

    double best = 0.0;
    bool found = false;
    for (double r : roots) {
        if (!usable_phases(pair, r)) continue;
        if (!found || std::abs(r - mid) < std::abs(best - mid)) {
            best = r;
            found = true;
        }
    }
    if (!found)
        throw NoRootInBracket("no probe frequency satisfies the mode");
    return best;
}

EntanglementResult entangle_pair(const QDPair& pair, double omega,
                                 ProbeMode mode) {
    validate(pair);
    const QubitLabel probe = photon(0);
    const QubitLabel s1 = spin(0), s2 = spin(1);
    const double s = 1.0 / std::sqrt(2.0);
    const cplx amps[] = {s, s, s, s, s, s};
    PureState st = PureState::product({probe, s1, s2}, amps);

    const ReflectionPair r1 = reflect(pair.sys1, omega);
    const ReflectionPair r2 = reflect(pair.sys2, omega);
    st = apply_two_qubit_diagonal(
        st, probe, s1, {r1.r_coupled, r1.r_cold, r1.r_cold, r1.r_coupled});
    st = apply_two_qubit_diagonal(
        st, probe, s2, {r2.r_coupled, r2.r_cold, r2.r_cold, r2.r_coupled});

    // |V> = -i(|L> - |R>)/sqrt2, |H> = (|L> + |R>)/sqrt2.
    const std::array<cplx, 2> v_vec = {cplx(0.0, -s), cplx(0.0, s)};
    const std::array<cplx, 2> h_vec = {s, s};
    const PureState v_branch = project_out(st, probe, v_vec);
    const PureState h_branch = project_out(st, probe, h_vec);

    const double eta = v_branch.norm2();
    const double ph = h_branch.norm2();
    if (eta < 1e-300)
        throw Indeterminate("V herald has vanishing probability");

    PureState heralded = v_branch.normalized();
    PureState target = heralded;  // placeholder, reassigned below
    if (mode == ProbeMode::Symmetric) {
        heralded = apply_single_qubit(heralded, s1, pauli_z_gate());
        target = PureState({s1, s2}, {s, 0.0, 0.0, s});
    } else {
        target = PureState({s1, s2}, {0.0, s, -s, 0.0});
    }
    const double fid = state_fidelity(heralded, target);

    return EntanglementResult{omega,    eta,
                              fid,      std::move(heralded),
                              ph,       std::max(0.0, 1.0 - ph - eta)};
}

double fidelity_formula(cplx r_h1, cplx r_01, cplx r_h2, cplx r_02) {
    const double a2 = std::norm(r_h1 * r_h2 - r_01 * r_02);
    const double b2 = std::norm(r_h1 * r_02 - r_01 * r_h2);
    if (a2 < 1e-300 && b2 < 1e-300)
        throw Indeterminate("both heralded components vanish");
    return b2 / (a2 + b2);
}

SweepResult efficiency_sweep(const QDPair& pair_template,
                             std::span<const double> delta_range,
                             ProbeMode mode, Exec ex) {
    validate(pair_template.sys1);
    validate(pair_template.sys2);
    const std::int64_t npts = static_cast<std::int64_t>(delta_range.size());
    SweepResult result;
    result.rows.resize(delta_range.size());
    std::exception_ptr failure = nullptr;

    const bool par = ex == Exec::Par && npts > 1;
#if defined(_OPENMP)
#pragma omp parallel for schedule(dynamic) if (par)
#endif
    for (std::int64_t i = 0; i < npts; ++i) {
        const double delta = delta_range[static_cast<std::size_t>(i)];
        SweepRow row;
        row.delta_energy = delta;
        try {
            QDPair p = pair_template;
            p.sys1.omega_c = p.sys1.omega_X = 0.5 * delta;
            p.sys2.omega_c = p.sys2.omega_X = -0.5 * delta;
            p.delta_energy = delta;
            const double omega = solve_probe_frequency(p, mode);
            const EntanglementResult r = entangle_pair(p, omega, mode);
            row.probe_frequency = omega;
            row.eta = r.efficiency;
            row.eta_ratio = r.efficiency / eta_max;
            row.fidelity = r.fidelity;
        } catch (const NoRootInBracket&) {
            row.gap = true;
        } catch (...) {
#if defined(_OPENMP)
#pragma omp critical
#endif
            {
                if (!failure) failure = std::current_exception();
            }
            row.gap = true;
        }
        result.rows[static_cast<std::size_t>(i)] = std::move(row);
    }
    if (failure) std::rethrow_exception(failure);
    return result;
}

MergeResult merge_with_coefficients(const PureState& ab, const PureState& cd,
                                    const InteractionCoefficients& inner1,
                                    const InteractionCoefficients& inner2) {
    const QubitLabel s0 = spin(0), s1 = spin(1), s2 = spin(2), s3 = spin(3);
    PureState left = ab.relabeled({s0, s1});
    PureState right = cd.relabeled({s2, s3});
    PureState st = tensor(left, right);

    const QubitLabel probe = photon(0);
    const double s = 1.0 / std::sqrt(2.0);
    st = tensor(st, PureState({probe}, {s, s}));
    st = apply_two_qubit_diagonal(
        st, probe, s1, {inner1.l_up, inner1.l_dn, inner1.r_up, inner1.r_dn});
    st = apply_two_qubit_diagonal(
        st, probe, s2, {inner2.l_up, inner2.l_dn, inner2.r_up, inner2.r_dn});

    const std::array<cplx, 2> v_vec = {cplx(0.0, -s), cplx(0.0, s)};
    PureState v_branch = project_out(st, probe, v_vec);
    const double p_merge = v_branch.norm2();
    if (p_merge < 1e-300)
        throw Indeterminate("merge V herald has vanishing probability");

    PureState out = v_branch.normalized();
    out = apply_single_qubit(out, s0, pauli_x_gate());
    out = apply_single_qubit(out, s2, pauli_x_gate());
    out = apply_single_qubit(out, s0, pauli_z_gate());
    return MergeResult{std::move(out), p_merge, p_merge};
}

MergeResult entangle_four(const EntanglementResult& a,
                          const EntanglementResult& b, const QDPair& merge,
                          double omega) {
    validate(merge);
    const ReflectionPair r1 = reflect(merge.sys1, omega);
    const ReflectionPair r2 = reflect(merge.sys2, omega);
    MergeResult m = merge_with_coefficients(
        a.heralded_state, b.heralded_state,
        {r1.r_coupled, r1.r_cold, r1.r_cold, r1.r_coupled},
        {r2.r_coupled, r2.r_cold, r2.r_cold, r2.r_coupled});
    m.total_probability = a.efficiency * b.efficiency * m.merge_probability;
    return m;
}

MergeResult entangle_four(const EntanglementResult& a,
                          const EntanglementResult& b, const QDPair& merge) {
    return entangle_four(a, b, merge,
                         solve_probe_frequency(merge, ProbeMode::AntiSymmetric));
}

double decoherence_factor(double t, double T2, int n) {
    if (t < 0.0) throw InvalidTime("decoherence_factor: t must be >= 0");
    if (!(T2 > 0.0)) throw InvalidTime("decoherence_factor: T2 must be > 0");
    if (n < 1) throw InvalidTime("decoherence_factor: n must be >= 1");
    return 0.5 * (1.0 + std::exp(-(static_cast<double>(n) * t) / T2));
}

}  // namespace spinqec
