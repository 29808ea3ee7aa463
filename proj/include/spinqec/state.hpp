#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "spinqec/common.hpp"
#include "spinqec/parallel.hpp"

namespace spinqec {

enum class QubitKind : std::uint8_t { Photon, Spin };

struct QubitLabel {
    QubitKind kind;
    int index;

    friend constexpr bool operator==(QubitLabel, QubitLabel) = default;
    friend constexpr auto operator<=>(QubitLabel, QubitLabel) = default;
};

constexpr QubitLabel photon(int index) { return {QubitKind::Photon, index}; }
constexpr QubitLabel spin(int index) { return {QubitKind::Spin, index}; }

std::string to_string(QubitLabel l);

inline constexpr int max_register_qubits = 14;

// Row-major 2x2 gate.
using Mat2 = std::array<cplx, 4>;
// Diagonal coefficients for |00>, |01>, |10>, |11> of an ordered label pair.
using Diag4 = std::array<cplx, 4>;

Mat2 identity_gate();
Mat2 pauli_x_gate();
Mat2 pauli_y_gate();
Mat2 pauli_z_gate();
Mat2 hadamard_gate();
// diag(1, e^{i phi})
Mat2 phase_gate(double phi);

// Dense state vector over an ordered list of labeled qubits. The first label
// is the most significant bit of the amplitude index. Basis encoding:
// photon |L> = |0>, |R> = |1>; spin |up> = |0>, |down> = |1>.
// Norm below 1 is only legal on states flagged subnormalized (loss branches
// produced by non-unitary gates).
class PureState {
   public:
    PureState(std::vector<QubitLabel> labels, std::vector<cplx> amplitudes,
              bool subnormalized = false);

    static PureState computational(std::vector<QubitLabel> labels,
                                   std::uint64_t bits = 0);
    // Product of single-qubit states; qubit_amps has two entries per label.
    static PureState product(std::vector<QubitLabel> labels,
                             std::span<const cplx> qubit_amps);

    const std::vector<QubitLabel>& labels() const { return labels_; }
    const std::vector<cplx>& amplitudes() const { return amp_; }
    int num_qubits() const { return static_cast<int>(labels_.size()); }
    std::size_t dim() const { return amp_.size(); }
    bool subnormalized() const { return subnormalized_; }

    double norm2() const;
    PureState normalized() const;
    // Position of a label in the register; throws UnknownLabel.
    int position(QubitLabel l) const;
    bool has_label(QubitLabel l) const;

    PureState relabeled(std::vector<QubitLabel> new_labels) const;

   private:
    std::vector<QubitLabel> labels_;
    std::vector<cplx> amp_;
    bool subnormalized_ = false;
};

// Dense density operator, row-major 2^n x 2^n, same label conventions.
class DensityOperator {
   public:
    DensityOperator(std::vector<QubitLabel> labels, std::vector<cplx> matrix,
                    bool subnormalized = false);

    static DensityOperator from_pure(const PureState& psi);

    const std::vector<QubitLabel>& labels() const { return labels_; }
    const std::vector<cplx>& matrix() const { return m_; }
    int num_qubits() const { return static_cast<int>(labels_.size()); }
    std::size_t dim() const { return dim_; }
    bool subnormalized() const { return subnormalized_; }

    cplx at(std::size_t r, std::size_t c) const { return m_[r * dim_ + c]; }
    double trace_real() const;
    int position(QubitLabel l) const;
    bool has_label(QubitLabel l) const;

   private:
    std::vector<QubitLabel> labels_;
    std::vector<cplx> m_;
    std::size_t dim_ = 0;
    bool subnormalized_ = false;
};

struct PauliChannel {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;
};

// Throws InvalidChannel unless x, y, z >= 0 and x + y + z <= 1.
void validate(const PauliChannel& ch);

PureState apply_single_qubit(const PureState& psi, QubitLabel l, const Mat2& g,
                             Exec ex = default_exec());
DensityOperator apply_single_qubit(const DensityOperator& rho, QubitLabel l,
                                   const Mat2& g, Exec ex = default_exec());

PureState apply_two_qubit_diagonal(const PureState& psi, QubitLabel a,
                                   QubitLabel b, const Diag4& d,
                                   Exec ex = default_exec());
DensityOperator apply_two_qubit_diagonal(const DensityOperator& rho,
                                         QubitLabel a, QubitLabel b,
                                         const Diag4& d,
                                         Exec ex = default_exec());

// (1-p) rho + x X rho X + y Y rho Y + z Z rho Z on the addressed qubit.
DensityOperator apply_pauli_channel(const DensityOperator& rho, QubitLabel l,
                                    const PauliChannel& ch,
                                    Exec ex = default_exec());

DensityOperator partial_trace(const DensityOperator& rho,
                              std::span<const QubitLabel> keep,
                              Exec ex = default_exec());
// Reduction of |psi><psi| without materializing the full outer product.
DensityOperator partial_trace(const PureState& psi,
                              std::span<const QubitLabel> keep,
                              Exec ex = default_exec());

enum class MeasureBasis { X, Y, Z };

// +1 eigenvector first: X (|0>+|1>)/sqrt2, Y (|0>+i|1>)/sqrt2, Z |0>.
std::array<std::array<cplx, 2>, 2> basis_vectors(MeasureBasis basis);

struct PureBranch {
    int outcome;         // +1 or -1
    double probability;  // Born weight; branch probabilities sum to norm^2
    PureState post;      // renormalized
};
struct DensityBranch {
    int outcome;
    double probability;
    DensityOperator post;
};

// Branches with probability below 1e-13 are dropped; +1 listed first.
std::vector<PureBranch> measure_in_basis(const PureState& psi, QubitLabel l,
                                         MeasureBasis basis);
std::vector<DensityBranch> measure_in_basis(const DensityOperator& rho,
                                            QubitLabel l, MeasureBasis basis);

// Projects qubit l onto the single-qubit state v and removes it from the
// register. The result is NOT renormalized; its norm^2 is the projection
// probability times the input norm^2.
PureState project_out(const PureState& psi, QubitLabel l,
                      const std::array<cplx, 2>& v);

double state_fidelity(const PureState& a, const PureState& b);
double state_fidelity(const PureState& a, const DensityOperator& b);
double state_fidelity(const DensityOperator& a, const PureState& b);
double state_fidelity(const DensityOperator& a, const DensityOperator& b);

PureState tensor(const PureState& a, const PureState& b);
DensityOperator tensor(const DensityOperator& a, const DensityOperator& b);

}  // namespace spinqec
