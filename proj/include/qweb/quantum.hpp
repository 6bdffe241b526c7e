#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <variant>
#include <vector>

namespace qweb {

using Complex = std::complex<double>;

inline constexpr double kNormTolerance = 1e-12;     // state normalization
inline constexpr double kMatrixTolerance = 1e-10;   // projector idempotence / hermiticity
inline constexpr double kNullEventTolerance = 1e-12;
inline constexpr int kDenseDimLimit = 2048;         // dense projectors are desk scale

/// Unit-norm complex amplitude vector over the document basis.
/// Construction normalizes; a numerically zero input throws.
class QState {
public:
    explicit QState(std::vector<Complex> amplitudes);

    int dim() const { return static_cast<int>(amp_.size()); }
    const std::vector<Complex>& amplitudes() const { return amp_; }
    Complex amplitude(int j) const { return amp_[static_cast<std::size_t>(j)]; }

private:
    std::vector<Complex> amp_;
};

/// State from explicit (modulus, phase) pairs; moduli are rescaled to unit norm.
QState make_general_state(std::span<const double> moduli, std::span<const double> phases);

/// Amplitude 1/sqrt(n) * e^{i phase_j} on every basis state. Empty phases mean zero.
QState make_uniform_state(int n, std::span<const double> phases = {});

/// Uniform modulus 1/sqrt(|support|) on `support`, zero elsewhere. Phases are
/// aligned with the ascending order of `support`; empty means zero.
QState make_characteristic_state(const std::vector<int>& support, std::span<const double> phases,
                                 int n);

/// Two-level step state: inside `support` the amplitudes carry the complex
/// weight `inside` scaled by 1/sqrt(|support|); outside they carry the real
/// weight sqrt(1-|inside|^2) scaled by 1/sqrt(n-|support|). `support` must be
/// a proper non-empty subset of [0, n).
QState make_step_state(Complex inside, const std::vector<int>& support,
                       std::span<const double> phases_in, std::span<const double> phases_out,
                       int n);

/// Diagonal projector onto a set of basis indices. Idempotent and self-adjoint
/// by construction.
class IndexProjector {
public:
    IndexProjector(std::vector<int> indices, int dim);
    static IndexProjector identity(int dim);

    const std::vector<int>& indices() const { return indices_; }
    int dim() const { return dim_; }
    bool contains(int j) const;

private:
    std::vector<int> indices_;  // sorted, duplicate-free
    int dim_ = 0;
};

/// Dense Hermitian idempotent matrix (general, possibly non-diagonal projector).
class DenseProjector {
public:
    /// Validates hermiticity and idempotence within kMatrixTolerance.
    static DenseProjector from_matrix(std::vector<Complex> row_major, int dim);
    /// Sum of |v><v| over an orthonormal family (checked within kMatrixTolerance).
    static DenseProjector span_of(const std::vector<std::vector<Complex>>& orthonormal, int dim);
    /// Dense form of an index projector.
    static DenseProjector from_indices(const IndexProjector& p);

    int dim() const { return dim_; }
    Complex at(int row, int col) const { return m_[static_cast<std::size_t>(row) * dim_ + col]; }
    std::vector<Complex> apply(std::span<const Complex> v) const;

private:
    DenseProjector(std::vector<Complex> m, int dim) : m_(std::move(m)), dim_(dim) {}
    std::vector<Complex> m_;  // row-major
    int dim_ = 0;
};

using Projector = std::variant<IndexProjector, DenseProjector>;

int projector_dim(const Projector& p);
std::vector<Complex> apply_projector(const Projector& p, std::span<const Complex> v);

/// <a|b>
Complex inner_product(const QState& a, const QState& b);
/// <a|M|b>
Complex matrix_element(const QState& a, const Projector& M, const QState& b);

/// Born rule <psi|M|psi>, clamped to [0, 1].
double born_probability(const QState& psi, const Projector& M);

struct CollapseResult {
    QState state;        // M|psi> / ||M|psi>||
    double probability;  // <psi|M|psi>
};

/// Projection postulate. Throws when the projector annihilates the state.
CollapseResult collapse(const Projector& M, const QState& psi);

/// (|a> + |b>) normalized. Throws "destructive annihilation" on a zero sum.
QState superpose(const QState& a, const QState& b);

/// Detection counts per cell of a partitioned screen.
struct ImpactRecord {
    std::vector<std::int64_t> cell_counts;

    std::int64_t total() const;  // m
};

/// Per-cell relative frequencies count_i / m. Throws when m = 0.
std::vector<double> empirical_probabilities(const ImpactRecord& rec);

/// Aggregate frequency of a subset of cells, summed in integers before the
/// single division so that exact ratios stay exact.
double aggregate_probability(const ImpactRecord& rec, const std::vector<int>& cells);

/// Pointwise (a + b) / 2 over equal-length probability profiles.
std::vector<double> classical_average(std::span<const double> a, std::span<const double> b);

}  // namespace qweb
