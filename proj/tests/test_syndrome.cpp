#include "doctest.h"

#include <bit>
#include <cmath>
#include <complex>
#include <vector>

#include "oracles.hpp"
#include "spinqec/errors.hpp"
#include "spinqec/rng.hpp"
#include "spinqec/syndrome.hpp"

using namespace spinqec;

namespace {

// Basis state of the full lattice register with the sorted-support qubits
// set according to bits; everything else stays |L>.
PureState support_basis(const SurfaceCodeLattice& lat,
                        const StabilizerRecord& stab, unsigned bits) {
    std::vector<QubitLabel> support(stab.support);
    std::sort(support.begin(), support.end());
    const int n = static_cast<int>(lat.data_qubits.size());
    std::uint64_t index = 0;
    for (std::size_t j = 0; j < support.size(); ++j)
        if ((bits >> j) & 1)
            index |= std::uint64_t{1} << (n - 1 - support[j].index);
    std::vector<QubitLabel> labels;
    for (const DataQubit& d : lat.data_qubits) labels.push_back(d.label);
    return PureState::computational(labels, index);
}

PureState hadamard_all(const PureState& psi) {
    PureState out = psi;
    for (QubitLabel l : psi.labels())
        out = apply_single_qubit(out, l, hadamard_gate());
    return out;
}

PureState random_spins(int n, std::uint64_t seed) {
    SplitMix64 rng{seed};
    std::vector<QubitLabel> labels;
    for (int i = 0; i < n; ++i) labels.push_back(spin(i));
    std::vector<cplx> amp(std::size_t{1} << n);
    double n2 = 0.0;
    for (cplx& a : amp) {
        a = cplx(rng.next_double() - 0.5, rng.next_double() - 0.5);
        n2 += std::norm(a);
    }
    const double inv = 1.0 / std::sqrt(n2);
    for (cplx& a : amp) a *= inv;
    return PureState(std::move(labels), std::move(amp));
}

MeasurementResult measure_any(const PureState& st,
                              const SurfaceCodeLattice& lat,
                              const StabilizerRecord& stab,
                              const InteractionModel& model,
                              SpinInit init = SpinInit::Plus) {
    if (stab.support.size() == 3 && stab.kind == StabKind::Plaquette)
        return measure_boundary(st, lat, stab, model, init);
    if (stab.kind == StabKind::Plaquette)
        return measure_plaquette(st, lat, stab, model, init);
    return measure_star(st, lat, stab, model, init);
}

}  // namespace

TEST_CASE("interaction coefficients") {
    const InteractionCoefficients plus =
        interaction_coefficients(InteractionModel::ideal(PhaseSign::Plus));
    CHECK(plus.l_up == cplx(0.0, 1.0));
    CHECK(plus.l_dn == cplx(1.0, 0.0));
    CHECK(plus.r_up == cplx(1.0, 0.0));
    CHECK(plus.r_dn == cplx(0.0, 1.0));
    CHECK(model_phase(InteractionModel::ideal(PhaseSign::Plus)) ==
          doctest::Approx(0.5 * pi).epsilon(1e-15));

    const InteractionCoefficients minus =
        interaction_coefficients(InteractionModel::ideal(PhaseSign::Minus));
    CHECK(minus.l_up == cplx(0.0, -1.0));
    CHECK(minus.r_dn == cplx(0.0, -1.0));

    const CavitySystem sys = resonant_system(2.4, 0.1);
    const InteractionModel phys = InteractionModel::physical(sys, 0.9);
    const ReflectionPair r = reflect(sys, sys.omega_c - 0.9);
    const InteractionCoefficients co = interaction_coefficients(phys);
    CHECK(co.l_up == r.r_coupled);
    CHECK(co.l_dn == r.r_cold);
    CHECK(co.r_up == r.r_cold);
    CHECK(co.r_dn == r.r_coupled);
    CHECK(model_phase(phys) ==
          doctest::Approx(phase_difference(sys, 0.9)).epsilon(1e-15));

    CHECK_THROWS_AS(
        InteractionModel::physical(resonant_system(0.0, 0.1), 1.0), Error);
}

TEST_CASE("plaquette outcomes follow the support parity") {
    const SurfaceCodeLattice lat = build_toric(2);
    const StabilizerRecord& stab = lat.plaquettes[0];
    for (PhaseSign sign : {PhaseSign::Plus, PhaseSign::Minus}) {
        const InteractionModel model = InteractionModel::ideal(sign);
        for (unsigned bits = 0; bits < 16; ++bits) {
            const PureState psi = support_basis(lat, stab, bits);
            const MeasurementResult r =
                measure_plaquette(psi, lat, stab, model);
            REQUIRE(r.branches.size() == 1);
            const int parity = std::popcount(bits) % 2 ? -1 : 1;
            CHECK(r.branches[0].outcome.value == parity);
            CHECK(r.branches[0].outcome.readout_basis == ReadoutBasis::X);
            CHECK(!r.branches[0].outcome.heralded_loss);
            CHECK(std::abs(r.branches[0].outcome.probability - 1.0) < 1e-12);
            CHECK(r.loss_probability < 1e-12);
            CHECK(state_fidelity(r.branches[0].post, psi) ==
                  doctest::Approx(1.0).epsilon(1e-12));
        }
    }
}

TEST_CASE("minus ancilla preparation keeps the outcome mapping") {
    const SurfaceCodeLattice lat = build_toric(2);
    const StabilizerRecord& stab = lat.plaquettes[0];
    const InteractionModel model = InteractionModel::ideal(PhaseSign::Plus);
    for (unsigned bits = 0; bits < 16; ++bits) {
        const PureState psi = support_basis(lat, stab, bits);
        const MeasurementResult r =
            measure_plaquette(psi, lat, stab, model, SpinInit::Minus);
        REQUIRE(r.branches.size() == 1);
        const int parity = std::popcount(bits) % 2 ? -1 : 1;
        CHECK(r.branches[0].outcome.value == parity);
    }
}

TEST_CASE("star outcomes follow the conjugate-basis parity") {
    const SurfaceCodeLattice lat = build_toric(2);
    const StabilizerRecord& stab = lat.stars[1];
    for (PhaseSign sign : {PhaseSign::Plus, PhaseSign::Minus}) {
        const InteractionModel model = InteractionModel::ideal(sign);
        for (unsigned bits = 0; bits < 16; ++bits) {
            const PureState psi = hadamard_all(support_basis(lat, stab, bits));
            const MeasurementResult r = measure_star(psi, lat, stab, model);
            REQUIRE(r.branches.size() == 1);
            const int parity = std::popcount(bits) % 2 ? -1 : 1;
            CHECK(r.branches[0].outcome.value == parity);
            CHECK(std::abs(r.branches[0].outcome.probability - 1.0) < 1e-12);
            CHECK(state_fidelity(r.branches[0].post, psi) ==
                  doctest::Approx(1.0).epsilon(1e-12));
        }
    }
}

TEST_CASE("weight-3 boundary operators use the Y readout") {
    const SurfaceCodeLattice lat = build_planar(2);
    for (PhaseSign sign : {PhaseSign::Plus, PhaseSign::Minus}) {
        const InteractionModel model = InteractionModel::ideal(sign);
        for (SpinInit init : {SpinInit::Plus, SpinInit::Minus}) {
            for (unsigned bits = 0; bits < 8; ++bits) {
                const StabilizerRecord& pstab = lat.plaquettes[1];
                const PureState psi = support_basis(lat, pstab, bits);
                const MeasurementResult r =
                    measure_boundary(psi, lat, pstab, model, init);
                REQUIRE(r.branches.size() == 1);
                const int parity = std::popcount(bits) % 2 ? -1 : 1;
                CHECK(r.branches[0].outcome.value == parity);
                CHECK(r.branches[0].outcome.readout_basis == ReadoutBasis::Y);

                const StabilizerRecord& sstab = lat.stars[0];
                const PureState chi =
                    hadamard_all(support_basis(lat, sstab, bits));
                const MeasurementResult rs =
                    measure_star(chi, lat, sstab, model, init);
                REQUIRE(rs.branches.size() == 1);
                CHECK(rs.branches[0].outcome.value == parity);
            }
        }
    }
}

TEST_CASE("physical branch weights match the closed form on basis states") {
    const CavitySystem sys = resonant_system(2.4, 0.1, 0.3);
    const SurfaceCodeLattice toric = build_toric(2);
    const SurfaceCodeLattice planar = build_planar(2);
    for (double delta : {0.9, -0.9, 1.7}) {
        const InteractionModel model = InteractionModel::physical(sys, delta);
        const ReflectionPair refl = reflect(sys, sys.omega_c - delta);
        const double phi = model_phase(model);

        for (unsigned bits = 0; bits < 16; ++bits) {
            const PureState psi = support_basis(toric, toric.plaquettes[0], bits);
            const MeasurementResult r =
                measure_plaquette(psi, toric, toric.plaquettes[0], model);
            cplx c_up = 1.0, c_dn = 1.0;
            for (int j = 0; j < 4; ++j) {
                const bool b = (bits >> j) & 1;
                c_up *= b ? refl.r_cold : refl.r_coupled;
                c_dn *= b ? refl.r_coupled : refl.r_cold;
            }
            const double p_plus = 0.25 * std::norm(c_up + c_dn);
            const double p_minus = 0.25 * std::norm(c_up - c_dn);
            double got_plus = 0.0, got_minus = 0.0;
            for (const MeasurementBranch& br : r.branches)
                (br.outcome.value == 1 ? got_plus : got_minus) =
                    br.outcome.probability;
            CHECK(std::abs(got_plus - p_plus) < 1e-12);
            CHECK(std::abs(got_minus - p_minus) < 1e-12);
            CHECK(std::abs(r.loss_probability -
                           (1.0 - p_plus - p_minus)) < 1e-12);
        }

        for (unsigned bits = 0; bits < 8; ++bits) {
            const PureState psi =
                support_basis(planar, planar.plaquettes[0], bits);
            const MeasurementResult r =
                measure_boundary(psi, planar, planar.plaquettes[0], model);
            cplx c_up = 1.0, c_dn = 1.0;
            for (int j = 0; j < 3; ++j) {
                const bool b = (bits >> j) & 1;
                c_up *= b ? refl.r_cold : refl.r_coupled;
                c_dn *= b ? refl.r_coupled : refl.r_cold;
            }
            const cplx i_unit(0.0, 1.0);
            const double p_yplus = 0.25 * std::norm(c_up - i_unit * c_dn);
            const double p_yminus = 0.25 * std::norm(c_up + i_unit * c_dn);
            const double want_plus = phi > 0.0 ? p_yplus : p_yminus;
            double got_plus = 0.0;
            for (const MeasurementBranch& br : r.branches)
                if (br.outcome.value == 1) got_plus = br.outcome.probability;
            CHECK(std::abs(got_plus - want_plus) < 1e-12);
        }
    }
}

TEST_CASE("stabilizer measurements preserve the quiescent state") {
    const SurfaceCodeLattice lat = build_planar(2);
    const PureState q = quiescent_state(lat);
    for (PhaseSign sign : {PhaseSign::Plus, PhaseSign::Minus}) {
        const InteractionModel model = InteractionModel::ideal(sign);
        for (const auto* group : {&lat.stars, &lat.plaquettes})
            for (const StabilizerRecord& stab : *group) {
                const MeasurementResult r = measure_any(q, lat, stab, model);
                REQUIRE(!r.branches.empty());
                CHECK(r.branches[0].outcome.value == 1);
                CHECK(std::abs(r.branches[0].outcome.probability - 1.0) <
                      1e-12);
                CHECK(state_fidelity(r.branches[0].post, q) >= 1.0 - 1e-12);
            }
    }
}

TEST_CASE("physical measurement keeps the stabilizer sector") {
    const SurfaceCodeLattice lat = build_planar(2);
    const PureState q = quiescent_state(lat);
    const InteractionModel model =
        InteractionModel::physical(resonant_system(2.4, 0.1), 0.9);
    for (const auto* group : {&lat.stars, &lat.plaquettes})
        for (const StabilizerRecord& stab : *group) {
            const MeasurementResult r = measure_any(q, lat, stab, model);
            double total = r.loss_probability;
            for (const MeasurementBranch& br : r.branches) {
                total += br.outcome.probability;
                if (br.outcome.value == 1)
                    CHECK(stabilizer_expectation(br.post, stab) ==
                          doctest::Approx(1.0).epsilon(1e-10));
            }
            CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
        }
}

TEST_CASE("record validation") {
    const SurfaceCodeLattice planar = build_planar(2);
    const SurfaceCodeLattice toric = build_toric(2);
    const InteractionModel model = InteractionModel::ideal();
    const PureState qp = quiescent_state(planar);
    const PureState qt = quiescent_state(toric);

    CHECK_THROWS_AS(
        measure_plaquette(qp, planar, planar.stars[0], model), UnknownSupport);
    CHECK_THROWS_AS(
        measure_plaquette(qp, planar, planar.plaquettes[0], model),
        WeightMismatch);
    CHECK_THROWS_AS(measure_star(qp, planar, planar.plaquettes[0], model),
                    UnknownSupport);
    CHECK_THROWS_AS(
        measure_boundary(qt, toric, toric.plaquettes[0], model),
        WeightMismatch);

    StabilizerRecord foreign{StabKind::Plaquette,
                             {photon(0), photon(1), photon(3), photon(4)}};
    CHECK_THROWS_AS(measure_plaquette(qt, toric, foreign, model),
                    UnknownSupport);
}

TEST_CASE("swapped protocol validates its register") {
    const InteractionModel model = InteractionModel::ideal();
    CHECK_THROWS_AS(measure_swapped(random_spins(2, 5), model),
                    BadRegisterSize);
    CHECK_THROWS_AS(
        measure_swapped(PureState::computational(
                            {spin(0), spin(1), spin(2), spin(3), spin(4)}, 0),
                        model),
        BadRegisterSize);
    CHECK_THROWS_AS(
        measure_swapped(
            PureState::computational({photon(1), spin(1), spin(2)}, 0), model),
        BadRegisterSize);
}

TEST_CASE("swapped protocol agrees with the ancilla protocol") {
    const CavitySystem sys = resonant_system(2.4, 0.1, 0.2);
    const std::vector<InteractionModel> models = {
        InteractionModel::ideal(PhaseSign::Plus),
        InteractionModel::ideal(PhaseSign::Minus),
        InteractionModel::physical(sys, 0.9),
        InteractionModel::physical(sys, -0.9),
    };

    const SurfaceCodeLattice toric = build_toric(2);
    const SurfaceCodeLattice planar = build_planar(2);

    for (const InteractionModel& model : models) {
        for (std::uint64_t seed = 1; seed <= 4; ++seed) {
            // Weight 4: four data spins against the toric plaquette.
            {
                const PureState spins4 = random_spins(4, 900 + seed);
                std::vector<QubitLabel> support(toric.plaquettes[0].support);
                std::sort(support.begin(), support.end());
                const PureState photons = spins4.relabeled(support);
                const MeasurementResult a = measure_swapped(spins4, model);
                const MeasurementResult b = measure_plaquette(
                    photons, toric, toric.plaquettes[0], model);
                REQUIRE(a.branches.size() == b.branches.size());
                CHECK(std::abs(a.loss_probability - b.loss_probability) <
                      1e-12);
                for (std::size_t i = 0; i < a.branches.size(); ++i) {
                    CHECK(a.branches[i].outcome.value ==
                          b.branches[i].outcome.value);
                    CHECK(a.branches[i].outcome.readout_basis ==
                          ReadoutBasis::PhotonHV);
                    CHECK(std::abs(a.branches[i].outcome.probability -
                                   b.branches[i].outcome.probability) < 1e-12);
                    const PureState corrected = correct_swapped_phases(
                        a.branches[i].post, model);
                    const PureState mapped =
                        b.branches[i].post.relabeled(spins4.labels());
                    CHECK(state_fidelity(corrected, mapped) ==
                          doctest::Approx(1.0).epsilon(1e-12));
                }
            }
            // Weight 3: three data spins against the planar boundary.
            {
                const PureState spins3 = random_spins(3, 950 + seed);
                std::vector<QubitLabel> support(planar.plaquettes[0].support);
                std::sort(support.begin(), support.end());
                const PureState photons = spins3.relabeled(support);
                const MeasurementResult a = measure_swapped(spins3, model);
                const MeasurementResult b = measure_boundary(
                    photons, planar, planar.plaquettes[0], model);
                REQUIRE(a.branches.size() == b.branches.size());
                for (std::size_t i = 0; i < a.branches.size(); ++i) {
                    CHECK(a.branches[i].outcome.value ==
                          b.branches[i].outcome.value);
                    CHECK(std::abs(a.branches[i].outcome.probability -
                                   b.branches[i].outcome.probability) < 1e-12);
                    const PureState corrected = correct_swapped_phases(
                        a.branches[i].post, model);
                    const PureState mapped =
                        b.branches[i].post.relabeled(spins3.labels());
                    CHECK(state_fidelity(corrected, mapped) ==
                          doctest::Approx(1.0).epsilon(1e-12));
                }
            }
        }
    }
}

TEST_CASE("swapped frame correction is a pure phase") {
    const InteractionModel ideal = InteractionModel::ideal(PhaseSign::Plus);
    const PureState psi = random_spins(3, 31);
    const PureState corrected = correct_swapped_phases(psi, ideal);
    PureState want = psi;
    const Mat2 frame = {cplx(1.0, 0.0), 0.0, 0.0, cplx(0.0, 1.0)};
    for (QubitLabel l : psi.labels())
        want = apply_single_qubit(want, l, frame);
    CHECK(state_fidelity(corrected, want) ==
          doctest::Approx(1.0).epsilon(1e-14));

    const InteractionModel phys =
        InteractionModel::physical(resonant_system(1.2, 0.1, 0.2), 0.7);
    const PureState scaled = correct_swapped_phases(psi, phys);
    CHECK(scaled.norm2() == doctest::Approx(psi.norm2()).epsilon(1e-12));
}

TEST_CASE("ideal swapped run on a shared-parity state heralds H") {
    const double s = 1.0 / std::sqrt(2.0);
    std::vector<cplx> amp(16, 0.0);
    amp[0] = s;
    amp[15] = s;
    const PureState ghz({spin(0), spin(1), spin(2), spin(3)}, amp);
    const MeasurementResult r =
        measure_swapped(ghz, InteractionModel::ideal(PhaseSign::Plus));
    REQUIRE(r.branches.size() == 1);
    CHECK(r.branches[0].outcome.value == 1);
    CHECK(state_fidelity(r.branches[0].post, ghz) ==
          doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("confidence matches the dense mixture oracle") {
    const CavitySystem sys = resonant_system(2.4, 0.1);
    const SurfaceCodeLattice planar = build_planar(2);
    for (double delta : {0.3, 0.9, 1.7}) {
        const InteractionModel model = InteractionModel::physical(sys, delta);
        const InteractionCoefficients co = interaction_coefficients(model);
        const double phi = model_phase(model);
        for (int readout : {1, -1}) {
            const PauliChannel chx{0.05, 0.0, 0.0};
            CHECK(std::abs(confidence(planar, chx, model, StabKind::Plaquette,
                                      readout) -
                           oracle::dense_confidence(planar, chx, co, phi,
                                                    StabKind::Plaquette,
                                                    readout)) < 1e-10);
            const PauliChannel chz{0.0, 0.0, 0.05};
            CHECK(std::abs(confidence(planar, chz, model, StabKind::Star,
                                      readout) -
                           oracle::dense_confidence(planar, chz, co, phi,
                                                    StabKind::Star,
                                                    readout)) < 1e-10);
            const PauliChannel mixed{0.03, 0.02, 0.04};
            CHECK(std::abs(confidence(planar, mixed, model,
                                      StabKind::Plaquette, readout) -
                           oracle::dense_confidence(planar, mixed, co, phi,
                                                    StabKind::Plaquette,
                                                    readout)) < 1e-10);
        }
    }

    const SurfaceCodeLattice toric = build_toric(2);
    const InteractionModel model = InteractionModel::physical(sys, 0.9);
    const InteractionCoefficients co = interaction_coefficients(model);
    const double phi = model_phase(model);
    const PauliChannel chx{0.05, 0.0, 0.0};
    for (int readout : {1, -1})
        CHECK(std::abs(confidence(toric, chx, model, StabKind::Plaquette,
                                  readout) -
                       oracle::dense_confidence(toric, chx, co, phi,
                                                StabKind::Plaquette,
                                                readout)) < 1e-10);
}

TEST_CASE("reference confidence values stay fixed") {
    const InteractionModel model =
        InteractionModel::physical(resonant_system(2.4, 0.1), 0.9);
    const PauliChannel ch{0.05, 0.0, 0.0};
    CHECK(std::abs(confidence(build_planar(2), ch, model, StabKind::Plaquette,
                              1) -
                   0.983362962204) < 1e-9);
    CHECK(std::abs(confidence(build_toric(2), ch, model, StabKind::Plaquette,
                              1) -
                   0.969354695168) < 1e-9);
}

TEST_CASE("confidence duality between star and plaquette") {
    const SurfaceCodeLattice lat = build_planar(2);
    const CavitySystem sys = resonant_system(2.4, 0.1);
    for (double delta : {0.4, 0.9, 2.0}) {
        const InteractionModel model = InteractionModel::physical(sys, delta);
        for (int readout : {1, -1}) {
            const double plaq = confidence(lat, PauliChannel{0.05, 0.0, 0.0},
                                           model, StabKind::Plaquette, readout);
            const double star = confidence(lat, PauliChannel{0.0, 0.0, 0.05},
                                           model, StabKind::Star, readout);
            CHECK(std::abs(plaq - star) < 1e-10);
        }
    }
}

TEST_CASE("confidence does not depend on the code distance") {
    const SurfaceCodeLattice d2 = build_planar(2);
    const SurfaceCodeLattice d3 = build_planar(3);
    const CavitySystem sys = resonant_system(2.4, 0.1);
    const PauliChannel ch{0.05, 0.0, 0.0};
    for (double delta : {0.5, 0.9, 1.5, 2.5}) {
        const InteractionModel model = InteractionModel::physical(sys, delta);
        for (int readout : {1, -1})
            CHECK(std::abs(
                      confidence(d2, ch, model, StabKind::Plaquette, readout) -
                      confidence(d3, ch, model, StabKind::Plaquette,
                                 readout)) < 1e-9);
    }
}

TEST_CASE("ideal interactions give full confidence") {
    const SurfaceCodeLattice lat = build_planar(2);
    const PauliChannel ch{0.07, 0.0, 0.07};
    for (PhaseSign sign : {PhaseSign::Plus, PhaseSign::Minus}) {
        const InteractionModel model = InteractionModel::ideal(sign);
        for (int readout : {1, -1}) {
            CHECK(confidence(lat, ch, model, StabKind::Plaquette, readout) ==
                  doctest::Approx(1.0).epsilon(1e-12));
            CHECK(confidence(lat, ch, model, StabKind::Star, readout) ==
                  doctest::Approx(1.0).epsilon(1e-12));
        }
    }
}

TEST_CASE("error-free channel pins the confidence endpoints") {
    const SurfaceCodeLattice lat = build_planar(2);
    const PauliChannel none{0.0, 0.0, 0.0};
    CHECK(confidence(lat, none, InteractionModel::ideal(), StabKind::Plaquette,
                     1) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK_THROWS_AS(confidence(lat, none, InteractionModel::ideal(),
                               StabKind::Plaquette, -1),
                    ZeroProbabilityReadout);

    const InteractionModel phys =
        InteractionModel::physical(resonant_system(2.4, 0.1), 0.9);
    CHECK(confidence(lat, none, phys, StabKind::Plaquette, 1) ==
          doctest::Approx(1.0).epsilon(1e-12));
    CHECK(confidence(lat, none, phys, StabKind::Plaquette, -1) ==
          doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("confidence validates the readout") {
    const SurfaceCodeLattice lat = build_planar(2);
    CHECK_THROWS_AS(confidence(lat, PauliChannel{0.05, 0.0, 0.0},
                               InteractionModel::ideal(), StabKind::Plaquette,
                               0),
                    Error);
}

TEST_CASE("syndrome sampling is deterministic and statistically sound") {
    const SurfaceCodeLattice lat = build_planar(2);
    const PauliChannel ch{0.05, 0.0, 0.05};
    const InteractionModel model = InteractionModel::ideal();
    const std::int64_t shots = 20000;

    const SyndromeTally a = sample_syndromes(lat, ch, model, shots, 4242);
    const SyndromeTally b = sample_syndromes(lat, ch, model, shots, 4242);
    const SyndromeTally c =
        sample_syndromes(lat, ch, model, shots, 4242, Exec::Seq);
    REQUIRE(a.rows.size() == 4);
    bool any_diff = false;
    const SyndromeTally other = sample_syndromes(lat, ch, model, shots, 7);
    for (std::size_t k = 0; k < a.rows.size(); ++k) {
        CHECK(a.rows[k].n_plus == b.rows[k].n_plus);
        CHECK(a.rows[k].n_minus == b.rows[k].n_minus);
        CHECK(a.rows[k].n_plus == c.rows[k].n_plus);
        CHECK(a.rows[k].n_minus == c.rows[k].n_minus);
        CHECK(a.rows[k].n_loss == 0);
        CHECK(a.rows[k].n_plus + a.rows[k].n_minus == shots);
        any_diff = any_diff || a.rows[k].n_minus != other.rows[k].n_minus;

        const double exact = exact_minus_rate(ch, a.rows[k].kind,
                                              a.rows[k].weight);
        const double emp =
            static_cast<double>(a.rows[k].n_minus) / static_cast<double>(shots);
        const double sigma =
            std::sqrt(exact * (1.0 - exact) / static_cast<double>(shots));
        CHECK(std::abs(emp - exact) < 4.0 * sigma);
    }
    CHECK(any_diff);
}

TEST_CASE("lossy interactions abort the remaining cycle") {
    const SurfaceCodeLattice lat = build_planar(2);
    const CavitySystem sys = resonant_system(2.4, 0.1, 0.5);
    const double delta = solve_detuning(sys, 0.5 * pi)[0];
    const InteractionModel model = InteractionModel::physical(sys, delta);
    const PauliChannel ch{0.05, 0.0, 0.05};
    const std::int64_t shots = 2000;

    const SyndromeTally t = sample_syndromes(lat, ch, model, shots, 99);
    const SyndromeTally t2 = sample_syndromes(lat, ch, model, shots, 99);
    std::int64_t attempted_prev = shots;
    std::int64_t lost_so_far = 0;
    bool any_loss = false;
    for (std::size_t k = 0; k < t.rows.size(); ++k) {
        const SyndromeTallyRow& row = t.rows[k];
        CHECK(row.n_plus == t2.rows[k].n_plus);
        CHECK(row.n_loss == t2.rows[k].n_loss);
        const std::int64_t attempted = shots - lost_so_far;
        CHECK(row.n_plus + row.n_minus + row.n_loss == attempted);
        CHECK(attempted <= attempted_prev);
        attempted_prev = attempted;
        lost_so_far += row.n_loss;
        any_loss = any_loss || row.n_loss > 0;
    }
    CHECK(any_loss);
}

TEST_CASE("sampling edge cases") {
    const SurfaceCodeLattice lat = build_planar(2);
    const InteractionModel model = InteractionModel::ideal();
    const SyndromeTally empty =
        sample_syndromes(lat, PauliChannel{0.0, 0.0, 0.0}, model, 0, 1);
    for (const SyndromeTallyRow& row : empty.rows) {
        CHECK(row.n_plus == 0);
        CHECK(row.n_minus == 0);
    }
    CHECK_THROWS_AS(
        sample_syndromes(lat, PauliChannel{0.0, 0.0, 0.0}, model, -1, 1),
        Error);
}

TEST_CASE("exact minus rate") {
    CHECK(exact_minus_rate(PauliChannel{0.0, 0.0, 0.0}, StabKind::Plaquette,
                           4) == 0.0);
    CHECK(exact_minus_rate(PauliChannel{0.5, 0.0, 0.0}, StabKind::Plaquette,
                           4) == doctest::Approx(0.5).epsilon(1e-15));
    const double q = 0.05;
    CHECK(exact_minus_rate(PauliChannel{q, 0.0, 0.0}, StabKind::Plaquette, 3) ==
          doctest::Approx(0.5 * (1.0 - std::pow(1.0 - 2.0 * q, 3)))
              .epsilon(1e-15));
    CHECK(exact_minus_rate(PauliChannel{q, 0.0, 0.0}, StabKind::Star, 3) ==
          0.0);
    CHECK(exact_minus_rate(PauliChannel{0.0, q, 0.0}, StabKind::Star, 4) ==
          exact_minus_rate(PauliChannel{0.0, 0.0, q}, StabKind::Star, 4));
}
