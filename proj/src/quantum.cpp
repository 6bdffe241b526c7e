#include "qweb/quantum.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace qweb {

namespace {

double clamp01(double x) { return std::clamp(x, 0.0, 1.0); }

double norm_squared(std::span<const Complex> v) {
    double s = 0.0;
    for (const auto& a : v) s += std::norm(a);
    return s;
}

Complex raw_inner(std::span<const Complex> a, std::span<const Complex> b) {
    Complex s{0.0, 0.0};
    for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
    return s;
}

void require_same_dim(int a, int b) {
    if (a != b) throw std::invalid_argument("dimension mismatch");
}

std::vector<int> normalize_indices(std::vector<int> indices, int dim) {
    std::sort(indices.begin(), indices.end());
    indices.erase(std::unique(indices.begin(), indices.end()), indices.end());
    if (!indices.empty() && (indices.front() < 0 || indices.back() >= dim))
        throw std::invalid_argument("projector index out of range");
    return indices;
}

}  // namespace

QState::QState(std::vector<Complex> amplitudes) : amp_(std::move(amplitudes)) {
    if (amp_.empty()) throw std::invalid_argument("state must have dimension >= 1");
    const double n2 = norm_squared(amp_);
    if (n2 < 1e-300) throw std::invalid_argument("cannot normalize a zero state");
    const double inv = 1.0 / std::sqrt(n2);
    for (auto& a : amp_) a *= inv;
}

QState make_general_state(std::span<const double> moduli, std::span<const double> phases) {
    if (moduli.size() != phases.size())
        throw std::invalid_argument("moduli and phases must have equal length");
    if (moduli.empty()) throw std::invalid_argument("state must have dimension >= 1");
    double sum = 0.0;
    for (const double r : moduli) {
        if (r < 0.0) throw std::invalid_argument("moduli must be non-negative");
        sum += r * r;
    }
    if (sum == 0.0) throw std::invalid_argument("all-zero moduli");
    std::vector<Complex> amp(moduli.size());
    for (std::size_t j = 0; j < moduli.size(); ++j) amp[j] = std::polar(moduli[j], phases[j]);
    return QState(std::move(amp));
}

QState make_uniform_state(int n, std::span<const double> phases) {
    if (n < 1) throw std::invalid_argument("uniform state requires n >= 1");
    if (!phases.empty() && static_cast<int>(phases.size()) != n)
        throw std::invalid_argument("phases must be empty or of length n");
    const double r = 1.0 / std::sqrt(static_cast<double>(n));
    std::vector<Complex> amp(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j)
        amp[static_cast<std::size_t>(j)] = std::polar(r, phases.empty() ? 0.0 : phases[j]);
    return QState(std::move(amp));
}

QState make_characteristic_state(const std::vector<int>& support, std::span<const double> phases,
                                 int n) {
    const auto idx = normalize_indices(support, n);
    if (idx.empty()) throw std::invalid_argument("characteristic state requires a non-empty support");
    if (!phases.empty() && phases.size() != idx.size())
        throw std::invalid_argument("phases must be empty or aligned with the support");
    const double r = 1.0 / std::sqrt(static_cast<double>(idx.size()));
    std::vector<Complex> amp(static_cast<std::size_t>(n), Complex{0.0, 0.0});
    for (std::size_t k = 0; k < idx.size(); ++k)
        amp[static_cast<std::size_t>(idx[k])] = std::polar(r, phases.empty() ? 0.0 : phases[k]);
    return QState(std::move(amp));
}

QState make_step_state(Complex inside, const std::vector<int>& support,
                       std::span<const double> phases_in, std::span<const double> phases_out,
                       int n) {
    const auto idx = normalize_indices(support, n);
    if (idx.empty() || static_cast<int>(idx.size()) == n)
        throw std::invalid_argument("step state requires a proper non-empty support");
    const double w = std::abs(inside);
    if (w > 1.0 + 1e-12) throw std::invalid_argument("inside weight must have modulus <= 1");
    const std::size_t m = idx.size();
    const std::size_t outside = static_cast<std::size_t>(n) - m;
    if (!phases_in.empty() && phases_in.size() != m)
        throw std::invalid_argument("phases_in must be empty or aligned with the support");
    if (!phases_out.empty() && phases_out.size() != outside)
        throw std::invalid_argument("phases_out must be empty or aligned with the complement");
    const double w_out = std::sqrt(std::max(0.0, 1.0 - w * w));
    const Complex in_scale = inside / std::sqrt(static_cast<double>(m));
    const double out_scale = w_out / std::sqrt(static_cast<double>(outside));

    std::vector<Complex> amp(static_cast<std::size_t>(n));
    std::size_t k_in = 0, k_out = 0;
    for (int j = 0; j < n; ++j) {
        if (k_in < m && idx[k_in] == j) {
            amp[static_cast<std::size_t>(j)] =
                in_scale * std::polar(1.0, phases_in.empty() ? 0.0 : phases_in[k_in]);
            ++k_in;
        } else {
            amp[static_cast<std::size_t>(j)] =
                std::polar(out_scale, phases_out.empty() ? 0.0 : phases_out[k_out]);
            ++k_out;
        }
    }
    return QState(std::move(amp));
}

IndexProjector::IndexProjector(std::vector<int> indices, int dim)
    : indices_(normalize_indices(std::move(indices), dim)), dim_(dim) {
    if (dim_ < 1) throw std::invalid_argument("projector requires dimension >= 1");
}

IndexProjector IndexProjector::identity(int dim) {
    std::vector<int> all(static_cast<std::size_t>(dim));
    std::iota(all.begin(), all.end(), 0);
    return IndexProjector(std::move(all), dim);
}

bool IndexProjector::contains(int j) const {
    return std::binary_search(indices_.begin(), indices_.end(), j);
}

DenseProjector DenseProjector::from_matrix(std::vector<Complex> row_major, int dim) {
    if (dim < 1 || dim > kDenseDimLimit)
        throw std::invalid_argument("dense projector dimension out of range");
    if (row_major.size() != static_cast<std::size_t>(dim) * static_cast<std::size_t>(dim))
        throw std::invalid_argument("matrix size does not match dimension");
    const auto& m = row_major;
    auto at = [&](int r, int c) { return m[static_cast<std::size_t>(r) * dim + c]; };
    for (int r = 0; r < dim; ++r)
        for (int c = 0; c < dim; ++c)
            if (std::abs(at(r, c) - std::conj(at(c, r))) > kMatrixTolerance)
                throw std::invalid_argument("matrix is not Hermitian");
    for (int r = 0; r < dim; ++r) {
        for (int c = 0; c < dim; ++c) {
            Complex s{0.0, 0.0};
            for (int k = 0; k < dim; ++k) s += at(r, k) * at(k, c);
            if (std::abs(s - at(r, c)) > kMatrixTolerance)
                throw std::invalid_argument("matrix is not idempotent");
        }
    }
    return DenseProjector(std::move(row_major), dim);
}

DenseProjector DenseProjector::span_of(const std::vector<std::vector<Complex>>& orthonormal,
                                       int dim) {
    if (dim < 1 || dim > kDenseDimLimit)
        throw std::invalid_argument("dense projector dimension out of range");
    for (std::size_t i = 0; i < orthonormal.size(); ++i) {
        if (orthonormal[i].size() != static_cast<std::size_t>(dim))
            throw std::invalid_argument("basis vector has wrong dimension");
        for (std::size_t j = 0; j <= i; ++j) {
            const Complex g = raw_inner(orthonormal[j], orthonormal[i]);
            const Complex expected = (i == j) ? Complex{1.0, 0.0} : Complex{0.0, 0.0};
            if (std::abs(g - expected) > kMatrixTolerance)
                throw std::invalid_argument("basis vectors are not orthonormal");
        }
    }
    std::vector<Complex> m(static_cast<std::size_t>(dim) * dim, Complex{0.0, 0.0});
    for (const auto& v : orthonormal)
        for (int r = 0; r < dim; ++r)
            for (int c = 0; c < dim; ++c)
                m[static_cast<std::size_t>(r) * dim + c] +=
                    v[static_cast<std::size_t>(r)] * std::conj(v[static_cast<std::size_t>(c)]);
    return DenseProjector(std::move(m), dim);
}

DenseProjector DenseProjector::from_indices(const IndexProjector& p) {
    const int dim = p.dim();
    if (dim > kDenseDimLimit) throw std::invalid_argument("dense projector dimension out of range");
    std::vector<Complex> m(static_cast<std::size_t>(dim) * dim, Complex{0.0, 0.0});
    for (const int j : p.indices())
        m[static_cast<std::size_t>(j) * dim + j] = Complex{1.0, 0.0};
    return DenseProjector(std::move(m), dim);
}

std::vector<Complex> DenseProjector::apply(std::span<const Complex> v) const {
    if (static_cast<int>(v.size()) != dim_) throw std::invalid_argument("dimension mismatch");
    std::vector<Complex> out(static_cast<std::size_t>(dim_), Complex{0.0, 0.0});
    for (int r = 0; r < dim_; ++r) {
        Complex s{0.0, 0.0};
        for (int c = 0; c < dim_; ++c) s += m_[static_cast<std::size_t>(r) * dim_ + c] * v[c];
        out[static_cast<std::size_t>(r)] = s;
    }
    return out;
}

int projector_dim(const Projector& p) {
    return std::visit([](const auto& proj) { return proj.dim(); }, p);
}

std::vector<Complex> apply_projector(const Projector& p, std::span<const Complex> v) {
    if (std::holds_alternative<IndexProjector>(p)) {
        const auto& ip = std::get<IndexProjector>(p);
        require_same_dim(ip.dim(), static_cast<int>(v.size()));
        std::vector<Complex> out(v.size(), Complex{0.0, 0.0});
        for (const int j : ip.indices()) out[static_cast<std::size_t>(j)] = v[j];
        return out;
    }
    return std::get<DenseProjector>(p).apply(v);
}

Complex inner_product(const QState& a, const QState& b) {
    require_same_dim(a.dim(), b.dim());
    return raw_inner(a.amplitudes(), b.amplitudes());
}

Complex matrix_element(const QState& a, const Projector& M, const QState& b) {
    require_same_dim(a.dim(), b.dim());
    require_same_dim(projector_dim(M), b.dim());
    const auto mv = apply_projector(M, b.amplitudes());
    return raw_inner(a.amplitudes(), mv);
}

double born_probability(const QState& psi, const Projector& M) {
    require_same_dim(projector_dim(M), psi.dim());
    if (std::holds_alternative<IndexProjector>(M)) {
        double p = 0.0;
        for (const int j : std::get<IndexProjector>(M).indices()) p += std::norm(psi.amplitude(j));
        return clamp01(p);
    }
    const double p = matrix_element(psi, M, psi).real();
    return clamp01(p);
}

CollapseResult collapse(const Projector& M, const QState& psi) {
    require_same_dim(projector_dim(M), psi.dim());
    auto projected = apply_projector(M, psi.amplitudes());
    const double n2 = norm_squared(projected);
    if (std::sqrt(n2) < 1e-12) throw std::domain_error("state annihilated by context");
    const double p = clamp01(raw_inner(psi.amplitudes(), projected).real());
    return CollapseResult{QState(std::move(projected)), p};
}

QState superpose(const QState& a, const QState& b) {
    require_same_dim(a.dim(), b.dim());
    std::vector<Complex> sum(a.amplitudes());
    for (int j = 0; j < b.dim(); ++j) sum[static_cast<std::size_t>(j)] += b.amplitude(j);
    if (std::sqrt(norm_squared(sum)) < 1e-12)
        throw std::domain_error("destructive annihilation: the superposition vanishes");
    return QState(std::move(sum));
}

std::int64_t ImpactRecord::total() const {
    std::int64_t m = 0;
    for (const auto c : cell_counts) {
        if (c < 0) throw std::invalid_argument("cell counts must be non-negative");
        m += c;
    }
    return m;
}

std::vector<double> empirical_probabilities(const ImpactRecord& rec) {
    const std::int64_t m = rec.total();
    if (m <= 0) throw std::domain_error("no impacts recorded");
    std::vector<double> freq(rec.cell_counts.size());
    for (std::size_t i = 0; i < freq.size(); ++i)
        freq[i] = static_cast<double>(rec.cell_counts[i]) / static_cast<double>(m);
    return freq;
}

double aggregate_probability(const ImpactRecord& rec, const std::vector<int>& cells) {
    const std::int64_t m = rec.total();
    if (m <= 0) throw std::domain_error("no impacts recorded");
    std::int64_t sum = 0;
    for (const int i : cells) {
        if (i < 0 || static_cast<std::size_t>(i) >= rec.cell_counts.size())
            throw std::invalid_argument("cell index out of range");
        sum += rec.cell_counts[static_cast<std::size_t>(i)];
    }
    return static_cast<double>(sum) / static_cast<double>(m);
}

std::vector<double> classical_average(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) throw std::invalid_argument("profiles must have equal length");
    std::vector<double> out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = 0.5 * (a[i] + b[i]);
    return out;
}

}  // namespace qweb
