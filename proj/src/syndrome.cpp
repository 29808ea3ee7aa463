#include "spinqec/syndrome.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "spinqec/errors.hpp"
#include "spinqec/rng.hpp"

namespace spinqec {

InteractionModel InteractionModel::ideal(PhaseSign sign) {
    InteractionModel m;
    m.mode = InteractionMode::IdealPhase;
    m.phase_sign = sign;
    return m;
}

InteractionModel InteractionModel::physical(const CavitySystem& sys,
                                            double delta) {
    validate(sys);
    InteractionModel m;
    m.mode = InteractionMode::Physical;
    m.system = sys;
    m.delta = delta;
    const double phi = phase_difference(sys, delta);
    if (phi == 0.0)
        throw Error("InteractionModel: conditional phase vanishes at delta");
    return m;
}

double model_phase(const InteractionModel& model) {
    if (model.mode == InteractionMode::IdealPhase)
        return model.phase_sign == PhaseSign::Plus ? 0.5 * pi : -0.5 * pi;
    return phase_difference(model.system, model.delta);
}

InteractionCoefficients interaction_coefficients(
    const InteractionModel& model) {
    if (model.mode == InteractionMode::IdealPhase) {
        const cplx c = model.phase_sign == PhaseSign::Plus ? cplx(0.0, 1.0)
                                                           : cplx(0.0, -1.0);
        return {c, 1.0, 1.0, c};
    }
    const ReflectionPair r =
        reflect(model.system, model.system.omega_c - model.delta);
    return {r.r_coupled, r.r_cold, r.r_cold, r.r_coupled};
}

namespace {

QubitLabel fresh_spin(const PureState& state) {
    int idx = 0;
    while (state.has_label(spin(idx))) ++idx;
    return spin(idx);
}

std::vector<QubitLabel> sorted_support(const StabilizerRecord& stab) {
    std::vector<QubitLabel> s(stab.support);
    std::sort(s.begin(), s.end());
    return s;
}

bool in_lattice(const SurfaceCodeLattice& lattice,
                const StabilizerRecord& stab) {
    const auto& group = stab.kind == StabKind::Star ? lattice.stars
                                                    : lattice.plaquettes;
    return std::any_of(group.begin(), group.end(),
                       [&](const StabilizerRecord& s) {
                           return s.support == stab.support;
                       });
}

// Shared pipeline: optional Hadamard sandwich (star), ancilla spin prepared
// in |+S> or |-S>, one conditional reflection per support photon in id
// order, phase correction per photon, spin readout in X (weight 4) or Y
// (weight 3), ancilla projected out.
MeasurementResult measure_stabilizer(const PureState& state,
                                     const StabilizerRecord& stab,
                                     const InteractionModel& model,
                                     SpinInit init) {
    const std::vector<QubitLabel> support = sorted_support(stab);
    const int w = static_cast<int>(support.size());
    if (w != 3 && w != 4)
        throw WeightMismatch("stabilizer weight must be 3 or 4");
    for (QubitLabel l : support) state.position(l);

    const double base_norm2 = state.norm2();
    const bool rotate = stab.kind == StabKind::Star;

    PureState work = state;
    if (rotate)
        for (QubitLabel l : support)
            work = apply_single_qubit(work, l, hadamard_gate());

    const QubitLabel anc = fresh_spin(work);
    const double s = 1.0 / std::sqrt(2.0);
    const cplx down = init == SpinInit::Plus ? s : -s;
    work = tensor(work, PureState({anc}, {s, down}));

    const InteractionCoefficients co = interaction_coefficients(model);
    const Diag4 diag = {co.l_up, co.l_dn, co.r_up, co.r_dn};
    for (QubitLabel l : support)
        work = apply_two_qubit_diagonal(work, l, anc, diag);

    const double phi = model_phase(model);
    for (QubitLabel l : support)
        work = apply_single_qubit(work, l, phase_gate(phi));

    const MeasureBasis mb = w == 4 ? MeasureBasis::X : MeasureBasis::Y;
    // Weight-3 Y readout maps +1 to |LS> for positive conditional phase and
    // to |RS> for negative; |-S> preparation inverts the labels again.
    int sign_map = 1;
    if (w == 3 && phi < 0.0) sign_map = -sign_map;
    if (init == SpinInit::Minus) sign_map = -sign_map;

    const auto vecs = basis_vectors(mb);
    MeasurementResult res;
    double total = 0.0;
    for (const PureBranch& br : measure_in_basis(work, anc, mb)) {
        total += br.probability;
        PureState stripped =
            project_out(br.post, anc, vecs[br.outcome == 1 ? 0 : 1])
                .normalized();
        if (rotate)
            for (QubitLabel l : support)
                stripped = apply_single_qubit(stripped, l, hadamard_gate());
        const ReadoutBasis rb = w == 4 ? ReadoutBasis::X : ReadoutBasis::Y;
        res.branches.push_back(MeasurementBranch{
            SyndromeOutcome{br.outcome * sign_map, rb, false, br.probability},
            std::move(stripped)});
    }
    std::sort(res.branches.begin(), res.branches.end(),
              [](const MeasurementBranch& a, const MeasurementBranch& b) {
                  return a.outcome.value > b.outcome.value;
              });
    res.loss_probability = std::max(0.0, base_norm2 - total);
    return res;
}

}  // namespace

MeasurementResult measure_plaquette(const PureState& state,
                                    const SurfaceCodeLattice& lattice,
                                    const StabilizerRecord& stab,
                                    const InteractionModel& model,
                                    SpinInit init) {
    if (stab.kind != StabKind::Plaquette)
        throw UnknownSupport("measure_plaquette needs a plaquette record");
    if (!in_lattice(lattice, stab))
        throw UnknownSupport("stabilizer not part of the lattice");
    if (stab.support.size() != 4)
        throw WeightMismatch(
            "measure_plaquette handles weight 4; use measure_boundary");
    return measure_stabilizer(state, stab, model, init);
}

MeasurementResult measure_star(const PureState& state,
                               const SurfaceCodeLattice& lattice,
                               const StabilizerRecord& stab,
                               const InteractionModel& model, SpinInit init) {
    if (stab.kind != StabKind::Star)
        throw UnknownSupport("measure_star needs a star record");
    if (!in_lattice(lattice, stab))
        throw UnknownSupport("stabilizer not part of the lattice");
    return measure_stabilizer(state, stab, model, init);
}

MeasurementResult measure_boundary(const PureState& state,
                                   const SurfaceCodeLattice& lattice,
                                   const StabilizerRecord& stab,
                                   const InteractionModel& model,
                                   SpinInit init) {
    if (stab.support.size() != 3)
        throw WeightMismatch("measure_boundary handles weight-3 operators");
    if (!in_lattice(lattice, stab))
        throw UnknownSupport("stabilizer not part of the lattice");
    return measure_stabilizer(state, stab, model, init);
}

MeasurementResult measure_swapped(const PureState& spins_state,
                                  const InteractionModel& model) {
    const int n = spins_state.num_qubits();
    if (n < 3 || n > 4)
        throw BadRegisterSize("swapped protocol needs 3 or 4 data spins");
    for (QubitLabel l : spins_state.labels())
        if (l.kind != QubitKind::Spin)
            throw BadRegisterSize("swapped protocol register must be spins");

    const QubitLabel probe = photon(0);

    const double s = 1.0 / std::sqrt(2.0);
    const double base_norm2 = spins_state.norm2();
    PureState work = tensor(spins_state, PureState({probe}, {s, s}));

    const InteractionCoefficients co = interaction_coefficients(model);
    const Diag4 diag = {co.l_up, co.l_dn, co.r_up, co.r_dn};
    for (QubitLabel l : spins_state.labels())
        work = apply_two_qubit_diagonal(work, probe, l, diag);

    const double phi = model_phase(model);
    if (n == 3)
        // Resolve |L> +- i|R> onto H/V with a polarization phase shift.
        work = apply_single_qubit(work, probe,
                                  phase_gate(phi < 0.0 ? 0.5 * pi : -0.5 * pi));

    const auto vecs = basis_vectors(MeasureBasis::X);
    MeasurementResult res;
    double total = 0.0;
    for (const PureBranch& br : measure_in_basis(work, probe, MeasureBasis::X)) {
        total += br.probability;
        PureState stripped =
            project_out(br.post, probe, vecs[br.outcome == 1 ? 0 : 1])
                .normalized();
        res.branches.push_back(MeasurementBranch{
            SyndromeOutcome{br.outcome, ReadoutBasis::PhotonHV, false,
                            br.probability},
            std::move(stripped)});
    }
    res.loss_probability = std::max(0.0, base_norm2 - total);
    return res;
}

PureState correct_swapped_phases(const PureState& spins_state,
                                 const InteractionModel& model) {
    const InteractionCoefficients co = interaction_coefficients(model);
    const double phi0 = std::arg(co.l_dn);
    const double phih = std::arg(co.l_up);
    const Mat2 frame = {std::polar(1.0, phi0), 0.0, 0.0,
                        std::polar(1.0, phih)};
    PureState out = spins_state;
    for (QubitLabel l : spins_state.labels())
        if (l.kind == QubitKind::Spin) out = apply_single_qubit(out, l, frame);
    return out;
}

namespace {

// Trace of (product Pauli on support) times rho; X product for stars,
// Z product for plaquettes.
double trace_with_pauli_product(const DensityOperator& rho,
                                const std::vector<QubitLabel>& support,
                                StabKind kind) {
    std::size_t mask = 0;
    const int n = rho.num_qubits();
    for (QubitLabel l : support)
        mask |= std::size_t{1} << (n - 1 - rho.position(l));
    cplx acc = 0.0;
    if (kind == StabKind::Star) {
        for (std::size_t i = 0; i < rho.dim(); ++i)
            acc += rho.at(i ^ mask, i);
    } else {
        for (std::size_t i = 0; i < rho.dim(); ++i) {
            const double sign =
                (std::popcount(i & mask) % 2 == 0) ? 1.0 : -1.0;
            acc += sign * rho.at(i, i);
        }
    }
    return acc.real();
}

}  // namespace

double confidence(const SurfaceCodeLattice& lattice, const PauliChannel& ch,
                  const InteractionModel& model, StabKind kind, int readout) {
    if (readout != 1 && readout != -1)
        throw Error("confidence: readout must be +1 or -1");
    validate(ch);
    const auto& group =
        kind == StabKind::Star ? lattice.stars : lattice.plaquettes;
    if (group.empty()) throw UnknownSupport("lattice has no such stabilizer");
    // Canonical choice: the first stabilizer of the requested kind.
    const StabilizerRecord& stab = group.front();
    const std::vector<QubitLabel> support = sorted_support(stab);
    const int w = static_cast<int>(support.size());

    // Channels on qubits outside the support commute with tracing them out,
    // so reducing the quiescent state first is exact.
    DensityOperator rho = partial_trace(quiescent_state(lattice), support);
    for (QubitLabel l : support) rho = apply_pauli_channel(rho, l, ch);

    const bool rotate = kind == StabKind::Star;
    if (rotate)
        for (QubitLabel l : support)
            rho = apply_single_qubit(rho, l, hadamard_gate());

    const QubitLabel anc = spin(0);
    const double s = 1.0 / std::sqrt(2.0);
    rho = tensor(rho, DensityOperator::from_pure(PureState({anc}, {s, s})));

    const InteractionCoefficients co = interaction_coefficients(model);
    const Diag4 diag = {co.l_up, co.l_dn, co.r_up, co.r_dn};
    for (QubitLabel l : support)
        rho = apply_two_qubit_diagonal(rho, l, anc, diag);

    if (rotate)
        for (QubitLabel l : support)
            rho = apply_single_qubit(rho, l, hadamard_gate());

    const double phi = model_phase(model);
    const MeasureBasis mb = w == 4 ? MeasureBasis::X : MeasureBasis::Y;
    int sign_map = 1;
    if (w == 3 && phi < 0.0) sign_map = -1;
    const auto vecs = basis_vectors(mb);
    const auto v = vecs[readout * sign_map == 1 ? 0 : 1];

    const Mat2 proj = {std::conj(v[0]) * v[0], std::conj(v[1]) * v[0],
                       std::conj(v[0]) * v[1], std::conj(v[1]) * v[1]};
    const DensityOperator sigma = apply_single_qubit(rho, anc, proj);
    const double den = sigma.trace_real();
    if (den < 1e-300)
        throw ZeroProbabilityReadout("readout probability vanishes");
    const double num =
        0.5 * (den + readout * trace_with_pauli_product(sigma, support, kind));
    return std::clamp(num / den, 0.0, 1.0);
}

SyndromeTally sample_syndromes(const SurfaceCodeLattice& lattice,
                               const PauliChannel& ch,
                               const InteractionModel& model,
                               std::int64_t shots, std::uint64_t seed,
                               Exec ex) {
    validate(ch);
    if (shots < 0) throw Error("sample_syndromes: negative shot count");

    std::vector<const StabilizerRecord*> stabs;
    SyndromeTally tally;
    tally.shots = shots;
    tally.seed = seed;
    for (std::size_t i = 0; i < lattice.stars.size(); ++i) {
        stabs.push_back(&lattice.stars[i]);
        tally.rows.push_back({StabKind::Star, static_cast<int>(i),
                              static_cast<int>(lattice.stars[i].support.size()),
                              0, 0, 0});
    }
    for (std::size_t i = 0; i < lattice.plaquettes.size(); ++i) {
        stabs.push_back(&lattice.plaquettes[i]);
        tally.rows.push_back(
            {StabKind::Plaquette, static_cast<int>(i),
             static_cast<int>(lattice.plaquettes[i].support.size()), 0, 0, 0});
    }

    const PureState quiescent = quiescent_state(lattice);
    const std::size_t nstab = stabs.size();
    std::vector<std::int64_t> plus(nstab, 0), minus(nstab, 0), loss(nstab, 0);

    const bool par = ex == Exec::Par && shots > 1;
#if defined(_OPENMP)
#pragma omp parallel if (par)
#endif
    {
        std::vector<std::int64_t> lp(nstab, 0), lm(nstab, 0), ll(nstab, 0);
#if defined(_OPENMP)
#pragma omp for schedule(static)
#endif
        for (std::int64_t shot = 0; shot < shots; ++shot) {
            SplitMix64 rng =
                shot_stream(seed, static_cast<std::uint64_t>(shot));
            PureState st = quiescent;
            for (const DataQubit& d : lattice.data_qubits) {
                const double u = rng.next_double();
                if (u < ch.x)
                    st = apply_single_qubit(st, d.label, pauli_x_gate(),
                                            Exec::Seq);
                else if (u < ch.x + ch.y)
                    st = apply_single_qubit(st, d.label, pauli_y_gate(),
                                            Exec::Seq);
                else if (u < ch.x + ch.y + ch.z)
                    st = apply_single_qubit(st, d.label, pauli_z_gate(),
                                            Exec::Seq);
            }
            for (std::size_t k = 0; k < nstab; ++k) {
                const MeasurementResult r =
                    measure_stabilizer(st, *stabs[k], model, SpinInit::Plus);
                const double u = rng.next_double();
                double cum = 0.0;
                int picked = -1;
                for (std::size_t b = 0; b < r.branches.size(); ++b) {
                    cum += r.branches[b].outcome.probability;
                    if (u < cum) {
                        picked = static_cast<int>(b);
                        break;
                    }
                }
                if (picked < 0 && r.loss_probability < 1e-12 &&
                    !r.branches.empty())
                    // Rounding sliver, not a physical loss channel.
                    picked = static_cast<int>(r.branches.size()) - 1;
                if (picked < 0) {
                    // Photon lost: record and abort the remaining cycle.
                    ++ll[k];
                    break;
                }
                const MeasurementBranch& br = r.branches[picked];
                if (br.outcome.value == 1)
                    ++lp[k];
                else
                    ++lm[k];
                st = br.post;
            }
        }
#if defined(_OPENMP)
#pragma omp critical
#endif
        {
            for (std::size_t k = 0; k < nstab; ++k) {
                plus[k] += lp[k];
                minus[k] += lm[k];
                loss[k] += ll[k];
            }
        }
    }

    for (std::size_t k = 0; k < nstab; ++k) {
        tally.rows[k].n_plus = plus[k];
        tally.rows[k].n_minus = minus[k];
        tally.rows[k].n_loss = loss[k];
    }
    return tally;
}

double exact_minus_rate(const PauliChannel& ch, StabKind kind, int weight) {
    validate(ch);
    const double q = kind == StabKind::Plaquette ? ch.x + ch.y : ch.z + ch.y;
    return 0.5 * (1.0 - std::pow(1.0 - 2.0 * q, weight));
}

}  // namespace spinqec
