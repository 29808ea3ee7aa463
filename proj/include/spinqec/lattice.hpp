#pragma once

#include <string>
#include <vector>

#include "spinqec/state.hpp"

namespace spinqec {

enum class Geometry { Planar, Toric };
enum class StabKind { Star, Plaquette };

struct DataQubit {
    QubitLabel label;  // photon(id); id equals the position in data_qubits
    int row = 0;
    int col = 0;
};

struct StabilizerRecord {
    StabKind kind;
    std::vector<QubitLabel> support;  // sorted by data-qubit id
};

struct SurfaceCodeLattice {
    Geometry geometry;
    int distance = 0;
    std::vector<DataQubit> data_qubits;
    std::vector<StabilizerRecord> stars;
    std::vector<StabilizerRecord> plaquettes;
};

// Unrotated planar layout on a (2d-1) x (2d-1) grid: d^2 + (d-1)^2 data
// qubits, d(d-1) stars, d(d-1) plaquettes, boundary operators of weight 3.
SurfaceCodeLattice build_planar(int distance);

// Periodic 2d x 2d layout: 2 d^2 data qubits, d^2 stars and d^2 plaquettes,
// every support of weight 4. Used for support generation and commutation
// checks; quiescent-state preparation obeys the dense-engine qubit cap.
SurfaceCodeLattice build_toric(int distance);

// Normalized product of (1 + X_s) over all stars applied to |0...0>.
// Throws TooLarge beyond 13 data qubits.
PureState quiescent_state(const SurfaceCodeLattice& lattice);

// <psi| P |psi> / <psi|psi> with P the X (star) or Z (plaquette) product
// over the support. The state may carry extra qubits beyond the support.
double stabilizer_expectation(const PureState& psi,
                              const StabilizerRecord& stab);

// {geometry, distance, qubits:[{id,row,col}], stars:[[ids]],
//  plaquettes:[[ids]]} serialized deterministically.
std::string lattice_json(const SurfaceCodeLattice& lattice);

}  // namespace spinqec
