#include "spinqec/lattice.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>

#include "json.hpp"

#include "spinqec/errors.hpp"

namespace spinqec {

namespace {

// Orthogonal grid neighbors of a stabilizer site, mapped to data-qubit ids
// and sorted ascending.
std::vector<QubitLabel> planar_support(
    const std::map<std::pair<int, int>, int>& ids, int r, int c, int size) {
    std::vector<int> q;
    const int dr[] = {-1, 1, 0, 0};
    const int dc[] = {0, 0, -1, 1};
    for (int k = 0; k < 4; ++k) {
        const int rr = r + dr[k], cc = c + dc[k];
        if (rr < 0 || rr >= size || cc < 0 || cc >= size) continue;
        q.push_back(ids.at({rr, cc}));
    }
    std::sort(q.begin(), q.end());
    std::vector<QubitLabel> out;
    for (int id : q) out.push_back(photon(id));
    return out;
}

}  // namespace

SurfaceCodeLattice build_planar(int distance) {
    if (distance < 2) throw InvalidDistance("planar distance must be >= 2");
    const int size = 2 * distance - 1;

    SurfaceCodeLattice lat;
    lat.geometry = Geometry::Planar;
    lat.distance = distance;

    std::map<std::pair<int, int>, int> ids;
    for (int r = 0; r < size; ++r)
        for (int c = 0; c < size; ++c)
            if ((r + c) % 2 == 0) {
                const int id = static_cast<int>(lat.data_qubits.size());
                ids[{r, c}] = id;
                lat.data_qubits.push_back({photon(id), r, c});
            }

    for (int r = 0; r < size; ++r)
        for (int c = 0; c < size; ++c) {
            if (r % 2 == 1 && c % 2 == 0)
                lat.stars.push_back(
                    {StabKind::Star, planar_support(ids, r, c, size)});
            else if (r % 2 == 0 && c % 2 == 1)
                lat.plaquettes.push_back(
                    {StabKind::Plaquette, planar_support(ids, r, c, size)});
        }
    return lat;
}

SurfaceCodeLattice build_toric(int distance) {
    if (distance < 2) throw InvalidDistance("toric distance must be >= 2");
    const int size = 2 * distance;

    SurfaceCodeLattice lat;
    lat.geometry = Geometry::Toric;
    lat.distance = distance;

    std::map<std::pair<int, int>, int> ids;
    for (int r = 0; r < size; ++r)
        for (int c = 0; c < size; ++c)
            if ((r + c) % 2 == 1) {
                const int id = static_cast<int>(lat.data_qubits.size());
                ids[{r, c}] = id;
                lat.data_qubits.push_back({photon(id), r, c});
            }

    const auto wrap_support = [&](int r, int c) {
        std::vector<int> q;
        const int dr[] = {-1, 1, 0, 0};
        const int dc[] = {0, 0, -1, 1};
        for (int k = 0; k < 4; ++k)
            q.push_back(ids.at({(r + dr[k] + size) % size,
                                (c + dc[k] + size) % size}));
        std::sort(q.begin(), q.end());
        std::vector<QubitLabel> out;
        for (int id : q) out.push_back(photon(id));
        return out;
    };

    for (int r = 0; r < size; ++r)
        for (int c = 0; c < size; ++c) {
            if (r % 2 == 0 && c % 2 == 0)
                lat.stars.push_back({StabKind::Star, wrap_support(r, c)});
            else if (r % 2 == 1 && c % 2 == 1)
                lat.plaquettes.push_back(
                    {StabKind::Plaquette, wrap_support(r, c)});
        }
    return lat;
}

PureState quiescent_state(const SurfaceCodeLattice& lattice) {
    const int n = static_cast<int>(lattice.data_qubits.size());
    if (n > 13) throw TooLarge("quiescent state beyond the 13-qubit cap");

    std::vector<QubitLabel> labels;
    labels.reserve(lattice.data_qubits.size());
    for (const DataQubit& d : lattice.data_qubits) labels.push_back(d.label);

    std::vector<cplx> amp(std::size_t{1} << n, 0.0);
    amp[0] = 1.0;
    for (const StabilizerRecord& s : lattice.stars) {
        std::size_t mask = 0;
        for (QubitLabel l : s.support)
            mask |= std::size_t{1} << (n - 1 - l.index);
        // (1 + X_s): both members of each index pair become their sum.
        for (std::size_t i = 0; i < amp.size(); ++i) {
            const std::size_t j = i ^ mask;
            if (i < j) {
                const cplx v = amp[i] + amp[j];
                amp[i] = v;
                amp[j] = v;
            }
        }
    }
    double n2 = 0.0;
    for (const cplx& a : amp) n2 += std::norm(a);
    const double inv = 1.0 / std::sqrt(n2);
    for (cplx& a : amp) a *= inv;
    return PureState(std::move(labels), std::move(amp));
}

double stabilizer_expectation(const PureState& psi,
                              const StabilizerRecord& stab) {
    const int n = psi.num_qubits();
    std::size_t mask = 0;
    for (QubitLabel l : stab.support)
        mask |= std::size_t{1} << (n - 1 - psi.position(l));

    const auto& a = psi.amplitudes();
    cplx acc = 0.0;
    if (stab.kind == StabKind::Star) {
        for (std::size_t i = 0; i < a.size(); ++i)
            acc += std::conj(a[i]) * a[i ^ mask];
    } else {
        for (std::size_t i = 0; i < a.size(); ++i) {
            const double sign =
                (std::popcount(i & mask) % 2 == 0) ? 1.0 : -1.0;
            acc += sign * std::norm(a[i]);
        }
    }
    return acc.real() / psi.norm2();
}

std::string lattice_json(const SurfaceCodeLattice& lattice) {
    nlohmann::ordered_json j;
    j["geometry"] = lattice.geometry == Geometry::Planar ? "planar" : "toric";
    j["distance"] = lattice.distance;
    j["qubits"] = nlohmann::ordered_json::array();
    for (const DataQubit& d : lattice.data_qubits)
        j["qubits"].push_back(
            {{"id", d.label.index}, {"row", d.row}, {"col", d.col}});
    const auto dump_group = [](const std::vector<StabilizerRecord>& v) {
        nlohmann::ordered_json arr = nlohmann::ordered_json::array();
        for (const StabilizerRecord& s : v) {
            nlohmann::ordered_json ids = nlohmann::ordered_json::array();
            for (QubitLabel l : s.support) ids.push_back(l.index);
            arr.push_back(ids);
        }
        return arr;
    };
    j["stars"] = dump_group(lattice.stars);
    j["plaquettes"] = dump_group(lattice.plaquettes);
    return j.dump(2) + "\n";
}

}  // namespace spinqec
