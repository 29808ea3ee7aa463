#include "spinqec/state.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>

#include "spinqec/errors.hpp"

#if defined(_OPENMP)
#define SPINQEC_PRAGMA(text) _Pragma(#text)
#define SPINQEC_OMP_FOR(cond) \
    SPINQEC_PRAGMA(omp parallel for schedule(static) if (cond))
#else
#define SPINQEC_OMP_FOR(cond) (void)(cond);
#endif

namespace spinqec {

std::string to_string(QubitLabel l) {
    return (l.kind == QubitKind::Photon ? "ph" : "sp") + std::to_string(l.index);
}

Mat2 identity_gate() { return {1.0, 0.0, 0.0, 1.0}; }
Mat2 pauli_x_gate() { return {0.0, 1.0, 1.0, 0.0}; }
Mat2 pauli_y_gate() {
    return {0.0, cplx(0.0, -1.0), cplx(0.0, 1.0), 0.0};
}
Mat2 pauli_z_gate() { return {1.0, 0.0, 0.0, -1.0}; }
Mat2 hadamard_gate() {
    const double s = 1.0 / std::sqrt(2.0);
    return {s, s, s, -s};
}
Mat2 phase_gate(double phi) {
    return {1.0, 0.0, 0.0, std::polar(1.0, phi)};
}

namespace {

void check_labels(const std::vector<QubitLabel>& labels) {
    if (labels.size() > static_cast<std::size_t>(max_register_qubits))
        throw TooLarge("register exceeds " +
                       std::to_string(max_register_qubits) + " qubits");
    for (std::size_t i = 0; i < labels.size(); ++i)
        for (std::size_t j = i + 1; j < labels.size(); ++j)
            if (labels[i] == labels[j])
                throw DuplicateLabel("duplicate label " + to_string(labels[i]));
}

int find_label(const std::vector<QubitLabel>& labels, QubitLabel l) {
    for (std::size_t i = 0; i < labels.size(); ++i)
        if (labels[i] == l) return static_cast<int>(i);
    throw UnknownLabel("label " + to_string(l) + " not in register");
}

bool is_unitary(const Mat2& g) {
    // Columns orthonormal to 1e-12.
    const cplx c00 = std::conj(g[0]) * g[0] + std::conj(g[2]) * g[2];
    const cplx c11 = std::conj(g[1]) * g[1] + std::conj(g[3]) * g[3];
    const cplx c01 = std::conj(g[0]) * g[1] + std::conj(g[2]) * g[3];
    return std::abs(c00 - 1.0) < 1e-12 && std::abs(c11 - 1.0) < 1e-12 &&
           std::abs(c01) < 1e-12;
}

bool is_unit_diag(const Diag4& d) {
    for (const cplx& c : d)
        if (std::abs(std::abs(c) - 1.0) > 1e-12) return false;
    return true;
}

// Applies a 2x2 gate to axis `axis` (0 = most significant) of a length-2^nq
// coefficient vector. Writes are elementwise-disjoint, so Seq and Par give
// bit-identical output.
void gate_axis(std::vector<cplx>& v, int nq, int axis, const Mat2& g,
               Exec ex) {
    const std::size_t stride = std::size_t{1} << (nq - 1 - axis);
    const std::int64_t pairs = static_cast<std::int64_t>(v.size() / 2);
    const bool par =
        ex == Exec::Par && v.size() >= par_grain;
    const cplx g00 = g[0], g01 = g[1], g10 = g[2], g11 = g[3];
    SPINQEC_OMP_FOR(par)
    for (std::int64_t k = 0; k < pairs; ++k) {
        const std::size_t off = static_cast<std::size_t>(k) & (stride - 1);
        const std::size_t blk = static_cast<std::size_t>(k) & ~(stride - 1);
        const std::size_t i0 = (blk << 1) | off;
        const std::size_t i1 = i0 | stride;
        const cplx a = v[i0], b = v[i1];
        v[i0] = g00 * a + g01 * b;
        v[i1] = g10 * a + g11 * b;
    }
}

// Multiplies each coefficient by d[bit_a bit_b] read from two axes.
void diag_axes(std::vector<cplx>& v, int nq, int axis_a, int axis_b,
               const Diag4& d, Exec ex) {
    const int shift_a = nq - 1 - axis_a;
    const int shift_b = nq - 1 - axis_b;
    const std::int64_t n = static_cast<std::int64_t>(v.size());
    const bool par = ex == Exec::Par && v.size() >= par_grain;
    SPINQEC_OMP_FOR(par)
    for (std::int64_t i = 0; i < n; ++i) {
        const std::size_t u = static_cast<std::size_t>(i);
        const std::size_t a = (u >> shift_a) & 1u;
        const std::size_t b = (u >> shift_b) & 1u;
        v[u] *= d[(a << 1) | b];
    }
}

Mat2 conj_gate(const Mat2& g) {
    return {std::conj(g[0]), std::conj(g[1]), std::conj(g[2]),
            std::conj(g[3])};
}

Diag4 conj_diag(const Diag4& d) {
    return {std::conj(d[0]), std::conj(d[1]), std::conj(d[2]),
            std::conj(d[3])};
}

}  // namespace

PureState::PureState(std::vector<QubitLabel> labels,
                     std::vector<cplx> amplitudes, bool subnormalized)
    : labels_(std::move(labels)),
      amp_(std::move(amplitudes)),
      subnormalized_(subnormalized) {
    check_labels(labels_);
    if (amp_.size() != (std::size_t{1} << labels_.size()))
        throw BadRegisterSize("amplitude count does not match label count");
    const double n2 = norm2();
    if (n2 > 1.0 + 1e-9)
        throw Error("PureState: norm exceeds 1");
    if (!subnormalized_ && std::abs(n2 - 1.0) > 1e-6)
        throw Error("PureState: unnormalized state without loss flag");
}

PureState PureState::computational(std::vector<QubitLabel> labels,
                                   std::uint64_t bits) {
    std::vector<cplx> amp(std::size_t{1} << labels.size(), 0.0);
    if (bits >= amp.size())
        throw BadRegisterSize("computational basis index out of range");
    amp[bits] = 1.0;
    return PureState(std::move(labels), std::move(amp));
}

PureState PureState::product(std::vector<QubitLabel> labels,
                             std::span<const cplx> qubit_amps) {
    if (qubit_amps.size() != 2 * labels.size())
        throw BadRegisterSize("product: need two amplitudes per label");
    std::vector<cplx> amp(std::size_t{1} << labels.size(), 1.0);
    for (std::size_t i = 0; i < amp.size(); ++i) {
        for (std::size_t q = 0; q < labels.size(); ++q) {
            const std::size_t bit = (i >> (labels.size() - 1 - q)) & 1u;
            amp[i] *= qubit_amps[2 * q + bit];
        }
    }
    return PureState(std::move(labels), std::move(amp));
}

double PureState::norm2() const {
    double s = 0.0;
    for (const cplx& a : amp_) s += std::norm(a);
    return s;
}

PureState PureState::normalized() const {
    const double n = std::sqrt(norm2());
    if (!(n > 0.0)) throw Error("cannot normalize a zero state");
    std::vector<cplx> amp(amp_);
    for (cplx& a : amp) a /= n;
    return PureState(labels_, std::move(amp), false);
}

int PureState::position(QubitLabel l) const { return find_label(labels_, l); }

bool PureState::has_label(QubitLabel l) const {
    return std::find(labels_.begin(), labels_.end(), l) != labels_.end();
}

PureState PureState::relabeled(std::vector<QubitLabel> new_labels) const {
    if (new_labels.size() != labels_.size())
        throw LabelMismatch("relabeled: label count changed");
    return PureState(std::move(new_labels), amp_, subnormalized_);
}

DensityOperator::DensityOperator(std::vector<QubitLabel> labels,
                                 std::vector<cplx> matrix, bool subnormalized)
    : labels_(std::move(labels)),
      m_(std::move(matrix)),
      subnormalized_(subnormalized) {
    check_labels(labels_);
    dim_ = std::size_t{1} << labels_.size();
    if (m_.size() != dim_ * dim_)
        throw BadRegisterSize("matrix size does not match label count");
    for (std::size_t r = 0; r < dim_; ++r)
        for (std::size_t c = r; c < dim_; ++c)
            if (std::abs(m_[r * dim_ + c] - std::conj(m_[c * dim_ + r])) >
                1e-9)
                throw Error("DensityOperator: not Hermitian");
    const double tr = trace_real();
    if (tr > 1.0 + 1e-9) throw Error("DensityOperator: trace exceeds 1");
    if (!subnormalized_ && std::abs(tr - 1.0) > 1e-6)
        throw Error("DensityOperator: trace not 1 without loss flag");
}

DensityOperator DensityOperator::from_pure(const PureState& psi) {
    const std::size_t dim = psi.dim();
    std::vector<cplx> m(dim * dim);
    const auto& a = psi.amplitudes();
    for (std::size_t r = 0; r < dim; ++r)
        for (std::size_t c = 0; c < dim; ++c)
            m[r * dim + c] = a[r] * std::conj(a[c]);
    return DensityOperator(psi.labels(), std::move(m), psi.subnormalized());
}

double DensityOperator::trace_real() const {
    double s = 0.0;
    for (std::size_t i = 0; i < dim_; ++i) s += m_[i * dim_ + i].real();
    return s;
}

int DensityOperator::position(QubitLabel l) const {
    return find_label(labels_, l);
}

bool DensityOperator::has_label(QubitLabel l) const {
    return std::find(labels_.begin(), labels_.end(), l) != labels_.end();
}

void validate(const PauliChannel& ch) {
    if (!(ch.x >= 0.0 && ch.y >= 0.0 && ch.z >= 0.0))
        throw InvalidChannel("channel probabilities must be nonnegative");
    if (ch.x + ch.y + ch.z > 1.0 + 1e-12)
        throw InvalidChannel("channel probabilities exceed 1");
}

PureState apply_single_qubit(const PureState& psi, QubitLabel l, const Mat2& g,
                             Exec ex) {
    const int q = psi.position(l);
    std::vector<cplx> amp(psi.amplitudes());
    gate_axis(amp, psi.num_qubits(), q, g, ex);
    const bool sub = psi.subnormalized() || !is_unitary(g);
    return PureState(psi.labels(), std::move(amp), sub);
}

DensityOperator apply_single_qubit(const DensityOperator& rho, QubitLabel l,
                                   const Mat2& g, Exec ex) {
    const int q = rho.position(l);
    const int n = rho.num_qubits();
    std::vector<cplx> m(rho.matrix());
    gate_axis(m, 2 * n, q, g, ex);          // row index
    gate_axis(m, 2 * n, n + q, conj_gate(g), ex);  // column index
    const bool sub = rho.subnormalized() || !is_unitary(g);
    return DensityOperator(rho.labels(), std::move(m), sub);
}

PureState apply_two_qubit_diagonal(const PureState& psi, QubitLabel a,
                                   QubitLabel b, const Diag4& d, Exec ex) {
    if (a == b) throw DuplicateLabel("diagonal gate needs distinct labels");
    const int qa = psi.position(a), qb = psi.position(b);
    std::vector<cplx> amp(psi.amplitudes());
    diag_axes(amp, psi.num_qubits(), qa, qb, d, ex);
    const bool sub = psi.subnormalized() || !is_unit_diag(d);
    return PureState(psi.labels(), std::move(amp), sub);
}

DensityOperator apply_two_qubit_diagonal(const DensityOperator& rho,
                                         QubitLabel a, QubitLabel b,
                                         const Diag4& d, Exec ex) {
    if (a == b) throw DuplicateLabel("diagonal gate needs distinct labels");
    const int qa = rho.position(a), qb = rho.position(b);
    const int n = rho.num_qubits();
    std::vector<cplx> m(rho.matrix());
    diag_axes(m, 2 * n, qa, qb, d, ex);
    diag_axes(m, 2 * n, n + qa, n + qb, conj_diag(d), ex);
    const bool sub = rho.subnormalized() || !is_unit_diag(d);
    return DensityOperator(rho.labels(), std::move(m), sub);
}

DensityOperator apply_pauli_channel(const DensityOperator& rho, QubitLabel l,
                                    const PauliChannel& ch, Exec ex) {
    validate(ch);
    rho.position(l);
    const double p = ch.x + ch.y + ch.z;
    const DensityOperator rx = apply_single_qubit(rho, l, pauli_x_gate(), ex);
    const DensityOperator ry = apply_single_qubit(rho, l, pauli_y_gate(), ex);
    const DensityOperator rz = apply_single_qubit(rho, l, pauli_z_gate(), ex);
    const std::int64_t sz = static_cast<std::int64_t>(rho.matrix().size());
    std::vector<cplx> m(rho.matrix().size());
    const bool par = ex == Exec::Par && m.size() >= par_grain;
    const cplx* src = rho.matrix().data();
    const cplx* mx = rx.matrix().data();
    const cplx* my = ry.matrix().data();
    const cplx* mz = rz.matrix().data();
    SPINQEC_OMP_FOR(par)
    for (std::int64_t i = 0; i < sz; ++i)
        m[i] = (1.0 - p) * src[i] + ch.x * mx[i] + ch.y * my[i] + ch.z * mz[i];
    return DensityOperator(rho.labels(), std::move(m), rho.subnormalized());
}

namespace {

struct TraceSplit {
    std::vector<int> keep_shift;    // source bit shift per kept qubit
    std::vector<int> traced_shift;  // source bit shift per traced qubit
};

TraceSplit split_for_trace(const std::vector<QubitLabel>& labels,
                           std::span<const QubitLabel> keep) {
    const int n = static_cast<int>(labels.size());
    std::vector<bool> kept(labels.size(), false);
    TraceSplit s;
    for (QubitLabel l : keep) {
        const int q = find_label(labels, l);
        if (kept[q]) throw DuplicateLabel("partial_trace: duplicate keep label");
        kept[q] = true;
        s.keep_shift.push_back(n - 1 - q);
    }
    for (int q = 0; q < n; ++q)
        if (!kept[q]) s.traced_shift.push_back(n - 1 - q);
    return s;
}

std::size_t scatter(std::size_t packed, const std::vector<int>& shifts) {
    std::size_t out = 0;
    const std::size_t k = shifts.size();
    for (std::size_t j = 0; j < k; ++j)
        out |= ((packed >> (k - 1 - j)) & 1u) << shifts[j];
    return out;
}

}  // namespace

DensityOperator partial_trace(const DensityOperator& rho,
                              std::span<const QubitLabel> keep, Exec ex) {
    const TraceSplit s = split_for_trace(rho.labels(), keep);
    const std::size_t kd = std::size_t{1} << s.keep_shift.size();
    const std::size_t td = std::size_t{1} << s.traced_shift.size();
    const std::size_t dim = rho.dim();
    std::vector<std::size_t> kidx(kd), tidx(td);
    for (std::size_t r = 0; r < kd; ++r) kidx[r] = scatter(r, s.keep_shift);
    for (std::size_t t = 0; t < td; ++t) tidx[t] = scatter(t, s.traced_shift);

    std::vector<cplx> out(kd * kd);
    const cplx* m = rho.matrix().data();
    const std::int64_t entries = static_cast<std::int64_t>(kd * kd);
    const bool par = ex == Exec::Par && kd * kd * td >= par_grain;
    SPINQEC_OMP_FOR(par)
    for (std::int64_t e = 0; e < entries; ++e) {
        const std::size_t r = static_cast<std::size_t>(e) / kd;
        const std::size_t c = static_cast<std::size_t>(e) % kd;
        cplx acc = 0.0;
        for (std::size_t t = 0; t < td; ++t)
            acc += m[(kidx[r] | tidx[t]) * dim + (kidx[c] | tidx[t])];
        out[e] = acc;
    }
    return DensityOperator(std::vector<QubitLabel>(keep.begin(), keep.end()),
                           std::move(out), rho.subnormalized());
}

DensityOperator partial_trace(const PureState& psi,
                              std::span<const QubitLabel> keep, Exec ex) {
    const TraceSplit s = split_for_trace(psi.labels(), keep);
    const std::size_t kd = std::size_t{1} << s.keep_shift.size();
    const std::size_t td = std::size_t{1} << s.traced_shift.size();
    // Rectangular slice M[r][t]; the reduction is M M^dagger.
    std::vector<cplx> slice(kd * td);
    const auto& a = psi.amplitudes();
    for (std::size_t r = 0; r < kd; ++r) {
        const std::size_t base = scatter(r, s.keep_shift);
        for (std::size_t t = 0; t < td; ++t)
            slice[r * td + t] = a[base | scatter(t, s.traced_shift)];
    }
    std::vector<cplx> out(kd * kd);
    const std::int64_t entries = static_cast<std::int64_t>(kd * kd);
    const bool par = ex == Exec::Par && kd * kd * td >= par_grain;
    SPINQEC_OMP_FOR(par)
    for (std::int64_t e = 0; e < entries; ++e) {
        const std::size_t r = static_cast<std::size_t>(e) / kd;
        const std::size_t c = static_cast<std::size_t>(e) % kd;
        cplx acc = 0.0;
        for (std::size_t t = 0; t < td; ++t)
            acc += slice[r * td + t] * std::conj(slice[c * td + t]);
        out[e] = acc;
    }
    return DensityOperator(std::vector<QubitLabel>(keep.begin(), keep.end()),
                           std::move(out), psi.subnormalized());
}

std::array<std::array<cplx, 2>, 2> basis_vectors(MeasureBasis basis) {
    const double s = 1.0 / std::sqrt(2.0);
    switch (basis) {
        case MeasureBasis::X:
            return {{{s, s}, {s, -s}}};
        case MeasureBasis::Y:
            return {{{s, cplx(0.0, s)}, {s, cplx(0.0, -s)}}};
        case MeasureBasis::Z:
        default:
            return {{{1.0, 0.0}, {0.0, 1.0}}};
    }
}

std::vector<PureBranch> measure_in_basis(const PureState& psi, QubitLabel l,
                                         MeasureBasis basis) {
    const int q = psi.position(l);
    const auto vecs = basis_vectors(basis);
    const std::size_t stride = std::size_t{1}
                               << (psi.num_qubits() - 1 - q);
    std::vector<PureBranch> out;
    for (int k = 0; k < 2; ++k) {
        PureState proj = project_out(psi, l, vecs[k]);
        const double p = proj.norm2();
        if (p < 1e-13) continue;
        // Re-attach the collapsed qubit so the register shape is preserved.
        std::vector<cplx> amp(psi.dim(), 0.0);
        const auto& pa = proj.amplitudes();
        const double inv = 1.0 / std::sqrt(p);
        for (std::size_t j = 0; j < pa.size(); ++j) {
            const std::size_t lowbits = j & (stride - 1);
            const std::size_t high = (j >> (psi.num_qubits() - 1 - q))
                                     << (psi.num_qubits() - q);
            const std::size_t base = high | lowbits;
            amp[base] += vecs[k][0] * pa[j] * inv;
            amp[base | stride] += vecs[k][1] * pa[j] * inv;
        }
        out.push_back(PureBranch{k == 0 ? 1 : -1, p,
                                 PureState(psi.labels(), std::move(amp))});
    }
    return out;
}

std::vector<DensityBranch> measure_in_basis(const DensityOperator& rho,
                                            QubitLabel l, MeasureBasis basis) {
    rho.position(l);
    const auto vecs = basis_vectors(basis);
    std::vector<DensityBranch> out;
    for (int k = 0; k < 2; ++k) {
        // P rho P with P = |v><v| on the addressed qubit.
        const Mat2 p_gate = {std::conj(vecs[k][0]) * vecs[k][0],
                             std::conj(vecs[k][1]) * vecs[k][0],
                             std::conj(vecs[k][0]) * vecs[k][1],
                             std::conj(vecs[k][1]) * vecs[k][1]};
        DensityOperator proj = apply_single_qubit(rho, l, p_gate);
        const double p = proj.trace_real();
        if (p < 1e-13) continue;
        std::vector<cplx> m(proj.matrix());
        for (cplx& c : m) c /= p;
        out.push_back(DensityBranch{
            k == 0 ? 1 : -1, p, DensityOperator(rho.labels(), std::move(m))});
    }
    return out;
}

PureState project_out(const PureState& psi, QubitLabel l,
                      const std::array<cplx, 2>& v) {
    const int q = psi.position(l);
    const int n = psi.num_qubits();
    const std::size_t stride = std::size_t{1} << (n - 1 - q);
    std::vector<QubitLabel> labels;
    labels.reserve(psi.labels().size() - 1);
    for (QubitLabel lab : psi.labels())
        if (!(lab == l)) labels.push_back(lab);
    std::vector<cplx> amp(psi.dim() / 2);
    const auto& a = psi.amplitudes();
    const cplx c0 = std::conj(v[0]), c1 = std::conj(v[1]);
    for (std::size_t j = 0; j < amp.size(); ++j) {
        const std::size_t lowbits = j & (stride - 1);
        const std::size_t high = (j >> (n - 1 - q)) << (n - q);
        const std::size_t base = high | lowbits;
        amp[j] = c0 * a[base] + c1 * a[base | stride];
    }
    return PureState(std::move(labels), std::move(amp), true);
}

namespace {

void require_same_labels(const std::vector<QubitLabel>& a,
                         const std::vector<QubitLabel>& b) {
    if (a != b) throw LabelMismatch("states are over different registers");
}

using EigenMat =
    Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

EigenMat to_eigen(const DensityOperator& rho) {
    return Eigen::Map<const EigenMat>(rho.matrix().data(),
                                      static_cast<Eigen::Index>(rho.dim()),
                                      static_cast<Eigen::Index>(rho.dim()));
}

EigenMat psd_sqrt(const EigenMat& m) {
    Eigen::SelfAdjointEigenSolver<EigenMat> es(m);
    Eigen::VectorXd ev = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    return es.eigenvectors() * ev.asDiagonal() *
           es.eigenvectors().adjoint();
}

}  // namespace

double state_fidelity(const PureState& a, const PureState& b) {
    require_same_labels(a.labels(), b.labels());
    cplx ov = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i)
        ov += std::conj(a.amplitudes()[i]) * b.amplitudes()[i];
    return std::norm(ov) / (a.norm2() * b.norm2());
}

double state_fidelity(const PureState& a, const DensityOperator& b) {
    require_same_labels(a.labels(), b.labels());
    const std::size_t dim = a.dim();
    cplx acc = 0.0;
    for (std::size_t r = 0; r < dim; ++r)
        for (std::size_t c = 0; c < dim; ++c)
            acc += std::conj(a.amplitudes()[r]) * b.at(r, c) *
                   a.amplitudes()[c];
    return std::max(0.0, acc.real() / (a.norm2() * b.trace_real()));
}

double state_fidelity(const DensityOperator& a, const PureState& b) {
    return state_fidelity(b, a);
}

double state_fidelity(const DensityOperator& a, const DensityOperator& b) {
    require_same_labels(a.labels(), b.labels());
    const EigenMat sa = psd_sqrt(to_eigen(a));
    const EigenMat inner = sa * to_eigen(b) * sa;
    Eigen::SelfAdjointEigenSolver<EigenMat> es(inner);
    const double root_sum =
        es.eigenvalues().cwiseMax(0.0).cwiseSqrt().sum();
    const double f =
        root_sum * root_sum / (a.trace_real() * b.trace_real());
    return std::clamp(f, 0.0, 1.0);
}

PureState tensor(const PureState& a, const PureState& b) {
    std::vector<QubitLabel> labels(a.labels());
    labels.insert(labels.end(), b.labels().begin(), b.labels().end());
    std::vector<cplx> amp(a.dim() * b.dim());
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t j = 0; j < b.dim(); ++j)
            amp[i * b.dim() + j] = a.amplitudes()[i] * b.amplitudes()[j];
    return PureState(std::move(labels), std::move(amp),
                     a.subnormalized() || b.subnormalized());
}

DensityOperator tensor(const DensityOperator& a, const DensityOperator& b) {
    std::vector<QubitLabel> labels(a.labels());
    labels.insert(labels.end(), b.labels().begin(), b.labels().end());
    const std::size_t da = a.dim(), db = b.dim(), dim = da * db;
    std::vector<cplx> m(dim * dim);
    for (std::size_t ra = 0; ra < da; ++ra)
        for (std::size_t rb = 0; rb < db; ++rb)
            for (std::size_t ca = 0; ca < da; ++ca)
                for (std::size_t cb = 0; cb < db; ++cb)
                    m[(ra * db + rb) * dim + (ca * db + cb)] =
                        a.at(ra, ca) * b.at(rb, cb);
    return DensityOperator(std::move(labels), std::move(m),
                           a.subnormalized() || b.subnormalized());
}

}  // namespace spinqec
