#include "vncap/qmat.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

namespace vncap {

namespace {

constexpr double kHermitianTol = 1e-10;
constexpr double kUnitaryTol = 1e-10;
constexpr double kNormTol = 1e-12;
constexpr double kTraceTol = 1e-10;
constexpr double kNegativeEigenTol = 1e-10;

// Offsets into the full index space for every multi-index over `factors`
// (first listed factor slowest).
std::vector<std::size_t> factor_offsets(const SubsystemLayout& layout,
                                        std::span<const std::size_t> factors) {
    const auto& dims = layout.dims();
    std::vector<std::size_t> strides(dims.size(), 1);
    for (std::size_t i = dims.size(); i-- > 1;) strides[i - 1] = strides[i] * dims[i];

    std::vector<std::size_t> offsets{0};
    for (std::size_t f : factors) {
        std::vector<std::size_t> next;
        next.reserve(offsets.size() * dims[f]);
        for (std::size_t base : offsets)
            for (std::size_t k = 0; k < dims[f]; ++k) next.push_back(base + k * strides[f]);
        offsets = std::move(next);
    }
    return offsets;
}

std::vector<std::size_t> complement(std::size_t n, std::span<const std::size_t> keep) {
    std::vector<bool> kept(n, false);
    for (std::size_t k : keep) kept[k] = true;
    std::vector<std::size_t> rest;
    for (std::size_t i = 0; i < n; ++i)
        if (!kept[i]) rest.push_back(i);
    return rest;
}

// Validated and sorted copy of a factor selection.
std::vector<std::size_t> checked_selection(const SubsystemLayout& layout,
                                           std::span<const std::size_t> keep, bool sort) {
    std::vector<std::size_t> sel(keep.begin(), keep.end());
    std::vector<bool> seen(layout.factors(), false);
    for (std::size_t k : sel) {
        if (k >= layout.factors() || seen[k]) throw std::invalid_argument("bad subsystem index");
        seen[k] = true;
    }
    if (sort) std::sort(sel.begin(), sel.end());
    return sel;
}

}  // namespace

// ---------------------------------------------------------------- ComplexMatrix

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
    if (data_.size() != rows * cols)
        throw std::invalid_argument("matrix entries do not match rows x cols");
}

ComplexMatrix ComplexMatrix::identity(std::size_t dim) {
    ComplexMatrix m(dim, dim);
    for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
    return m;
}

ComplexMatrix ComplexMatrix::column(std::span<const Complex> v) {
    return {v.size(), 1, std::vector<Complex>(v.begin(), v.end())};
}

ComplexMatrix ComplexMatrix::outer(std::span<const Complex> a, std::span<const Complex> b) {
    ComplexMatrix m(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) m(i, j) = a[i] * std::conj(b[j]);
    return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const double> d) {
    ComplexMatrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix m(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) m(j, i) = std::conj((*this)(i, j));
    return m;
}

Complex ComplexMatrix::trace() const {
    Complex t = 0.0;
    for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
    return t;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& other) {
    if (rows_ != other.rows_ || cols_ != other.cols_)
        throw std::invalid_argument("matrix dimension mismatch");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& other) {
    if (rows_ != other.rows_ || cols_ != other.cols_)
        throw std::invalid_argument("matrix dimension mismatch");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex s) {
    for (auto& x : data_) x *= s;
    return *this;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("matrix dimension mismatch");
    ComplexMatrix m(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
        for (std::size_t k = 0; k < a.cols_; ++k) {
            const Complex aik = a(i, k);
            if (aik == Complex{}) continue;
            for (std::size_t j = 0; j < b.cols_; ++j) m(i, j) += aik * b(k, j);
        }
    return m;
}

std::vector<Complex> ComplexMatrix::apply(std::span<const Complex> v) const {
    if (v.size() != cols_) throw std::invalid_argument("matrix dimension mismatch");
    std::vector<Complex> out(rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
        Complex acc = 0.0;
        for (std::size_t j = 0; j < cols_; ++j) acc += (*this)(i, j) * v[j];
        out[i] = acc;
    }
    return out;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw std::invalid_argument("matrix dimension mismatch");
    double worst = 0.0;
    for (std::size_t i = 0; i < a.entries().size(); ++i)
        worst = std::max(worst, std::abs(a.entries()[i] - b.entries()[i]));
    return worst;
}

bool is_hermitian(const ComplexMatrix& m, double tol) {
    if (!m.is_square()) return false;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = i; j < m.cols(); ++j)
            if (std::abs(m(i, j) - std::conj(m(j, i))) > tol) return false;
    return true;
}

bool is_unitary(const ComplexMatrix& m, double tol) {
    if (!m.is_square()) return false;
    return max_abs_diff(m * m.adjoint(), ComplexMatrix::identity(m.rows())) <= tol;
}

ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix m(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            const Complex aij = a(i, j);
            for (std::size_t k = 0; k < b.rows(); ++k)
                for (std::size_t l = 0; l < b.cols(); ++l)
                    m(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
        }
    return m;
}

std::vector<Complex> tensor(std::span<const Complex> a, std::span<const Complex> b) {
    std::vector<Complex> out;
    out.reserve(a.size() * b.size());
    for (Complex x : a)
        for (Complex y : b) out.push_back(x * y);
    return out;
}

// -------------------------------------------------------------- SubsystemLayout

SubsystemLayout::SubsystemLayout(std::vector<std::size_t> dims) : dims_(std::move(dims)) {
    for (std::size_t d : dims_) {
        if (d == 0) throw std::invalid_argument("subsystem dimension must be positive");
        total_ *= d;
    }
}

SubsystemLayout SubsystemLayout::select(std::span<const std::size_t> factors) const {
    std::vector<std::size_t> d;
    for (std::size_t f : factors) d.push_back(dims_.at(f));
    return SubsystemLayout(std::move(d));
}

SubsystemLayout SubsystemLayout::concat(const SubsystemLayout& other) const {
    std::vector<std::size_t> d = dims_;
    d.insert(d.end(), other.dims_.begin(), other.dims_.end());
    return SubsystemLayout(std::move(d));
}

// -------------------------------------------------------------------- PureState

PureState::PureState(std::vector<Complex> amplitudes, SubsystemLayout layout)
    : amps_(std::move(amplitudes)), layout_(std::move(layout)) {
    if (amps_.size() != layout_.total())
        throw std::invalid_argument("state size does not match its layout");
    if (std::abs(norm() - 1.0) > kNormTol) throw std::invalid_argument("state is not normalized");
}

PureState PureState::normalized(std::vector<Complex> amplitudes, SubsystemLayout layout) {
    double n = 0.0;
    for (Complex a : amplitudes) n += std::norm(a);
    n = std::sqrt(n);
    if (n == 0.0) throw std::invalid_argument("cannot normalize a zero vector");
    for (Complex& a : amplitudes) a /= n;
    return {std::move(amplitudes), std::move(layout)};
}

PureState PureState::basis(std::size_t index, SubsystemLayout layout) {
    std::vector<Complex> v(layout.total());
    v.at(index) = 1.0;
    return {std::move(v), std::move(layout)};
}

double PureState::norm() const {
    double n = 0.0;
    for (Complex a : amps_) n += std::norm(a);
    return std::sqrt(n);
}

Complex PureState::inner(const PureState& other) const {
    if (other.dim() != dim()) throw std::invalid_argument("state dimension mismatch");
    Complex acc = 0.0;
    for (std::size_t i = 0; i < amps_.size(); ++i) acc += std::conj(amps_[i]) * other.amps_[i];
    return acc;
}

ComplexMatrix PureState::projector() const { return ComplexMatrix::outer(amps_, amps_); }

PureState tensor(const PureState& a, const PureState& b) {
    return {tensor(a.amplitudes(), b.amplitudes()), a.layout().concat(b.layout())};
}

// ---------------------------------------------------------------- DensityMatrix

DensityMatrix::DensityMatrix(ComplexMatrix m, SubsystemLayout layout)
    : m_(std::move(m)), layout_(std::move(layout)) {
    if (!m_.is_square() || m_.rows() != layout_.total())
        throw std::invalid_argument("density matrix does not match its layout");
    if (!is_hermitian(m_, kHermitianTol)) throw std::invalid_argument("not Hermitian");
    if (std::abs(m_.trace() - 1.0) > kTraceTol)
        throw std::invalid_argument("density matrix trace is not 1");
}

DensityMatrix::DensityMatrix(const PureState& psi)
    : DensityMatrix(psi.projector(), psi.layout()) {}

DensityMatrix DensityMatrix::maximally_mixed(SubsystemLayout layout) {
    const std::size_t d = layout.total();
    return {ComplexMatrix::identity(d) * Complex(1.0 / static_cast<double>(d)),
            std::move(layout)};
}

DensityMatrix DensityMatrix::diagonal(std::span<const double> probs, SubsystemLayout layout) {
    return {ComplexMatrix::diagonal(probs), std::move(layout)};
}

std::vector<double> DensityMatrix::spectrum() const {
    std::vector<double> ev = hermitian_eigenvalues(m_);
    double sum = 0.0;
    for (double& x : ev) {
        if (x < -kNegativeEigenTol)
            throw std::domain_error("density matrix has a negative eigenvalue " + std::to_string(x));
        if (x < 0.0) x = 0.0;
        sum += x;
    }
    for (double& x : ev) x /= sum;
    return ev;
}

DensityMatrix DensityMatrix::mix(double w, const DensityMatrix& a, const DensityMatrix& b) {
    if (a.layout() != b.layout()) throw std::invalid_argument("mixing states of different layouts");
    if (w < 0.0 || w > 1.0) throw std::invalid_argument("mixing weight outside [0, 1]");
    return {a.matrix() * Complex(w) + b.matrix() * Complex(1.0 - w), a.layout()};
}

DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b) {
    return {tensor(a.matrix(), b.matrix()), a.layout().concat(b.layout())};
}

DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const std::size_t> keep) {
    const auto& layout = rho.layout();
    const auto sel = checked_selection(layout, keep, true);
    const auto rest = complement(layout.factors(), sel);
    const auto kept_off = factor_offsets(layout, sel);
    const auto rest_off = factor_offsets(layout, rest);

    const auto& m = rho.matrix();
    ComplexMatrix out(kept_off.size(), kept_off.size());
    for (std::size_t i = 0; i < kept_off.size(); ++i)
        for (std::size_t j = 0; j < kept_off.size(); ++j) {
            Complex acc = 0.0;
            for (std::size_t t : rest_off) acc += m(kept_off[i] + t, kept_off[j] + t);
            out(i, j) = acc;
        }
    return {std::move(out), layout.select(sel)};
}

DensityMatrix partial_trace(const DensityMatrix& rho, std::initializer_list<std::size_t> keep) {
    return partial_trace(rho, std::span<const std::size_t>(keep.begin(), keep.size()));
}

DensityMatrix reduced_state(const PureState& psi, std::span<const std::size_t> keep) {
    const auto& layout = psi.layout();
    const auto sel = checked_selection(layout, keep, true);
    const auto rest = complement(layout.factors(), sel);
    const auto kept_off = factor_offsets(layout, sel);
    const auto rest_off = factor_offsets(layout, rest);

    const auto a = psi.amplitudes();
    ComplexMatrix out(kept_off.size(), kept_off.size());
    for (std::size_t i = 0; i < kept_off.size(); ++i)
        for (std::size_t j = i; j < kept_off.size(); ++j) {
            Complex acc = 0.0;
            for (std::size_t t : rest_off) acc += a[kept_off[i] + t] * std::conj(a[kept_off[j] + t]);
            out(i, j) = acc;
            out(j, i) = std::conj(acc);
        }
    return {std::move(out), layout.select(sel)};
}

DensityMatrix reduced_state(const PureState& psi, std::initializer_list<std::size_t> keep) {
    return reduced_state(psi, std::span<const std::size_t>(keep.begin(), keep.size()));
}

// ------------------------------------------------------------------- eigensolver

EigenSystem hermitian_eigensystem(const ComplexMatrix& m) {
    if (!is_hermitian(m, kHermitianTol)) throw std::invalid_argument("not Hermitian");
    const std::size_t n = m.rows();

    ComplexMatrix a(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) a(i, j) = 0.5 * (m(i, j) + std::conj(m(j, i)));
    ComplexMatrix v = ComplexMatrix::identity(n);

    double frob = 0.0;
    for (Complex x : a.entries()) frob += std::norm(x);
    const double threshold = 1e-13 * std::max(1.0, std::sqrt(frob));

    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (i != j) off += std::norm(a(i, j));
        if (std::sqrt(off) < threshold) break;

        for (std::size_t p = 0; p + 1 < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) {
                const Complex b = a(p, q);
                const double mag = std::abs(b);
                if (mag == 0.0) continue;
                const Complex phase = b / mag;  // e^{i phi}
                const double app = a(p, p).real();
                const double aqq = a(q, q).real();
                const double theta = 0.5 * std::atan2(2.0 * mag, aqq - app);
                const double c = std::cos(theta);
                const double s = std::sin(theta);
                const Complex ph_c = std::conj(phase);

                // A <- A J with J = [[c, s], [-s e^{-i phi}, c e^{-i phi}]]
                for (std::size_t k = 0; k < n; ++k) {
                    const Complex akp = a(k, p), akq = a(k, q);
                    a(k, p) = c * akp - s * ph_c * akq;
                    a(k, q) = s * akp + c * ph_c * akq;
                    const Complex vkp = v(k, p), vkq = v(k, q);
                    v(k, p) = c * vkp - s * ph_c * vkq;
                    v(k, q) = s * vkp + c * ph_c * vkq;
                }
                // A <- J^dagger A
                for (std::size_t k = 0; k < n; ++k) {
                    const Complex apk = a(p, k), aqk = a(q, k);
                    a(p, k) = c * apk - s * phase * aqk;
                    a(q, k) = s * apk + c * phase * aqk;
                }
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                a(p, p) = a(p, p).real();
                a(q, q) = a(q, q).real();
            }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t i, std::size_t j) { return a(i, i).real() > a(j, j).real(); });

    EigenSystem es{std::vector<double>(n), ComplexMatrix(n, n)};
    for (std::size_t c = 0; c < n; ++c) {
        es.values[c] = a(order[c], order[c]).real();
        for (std::size_t r = 0; r < n; ++r) es.vectors(r, c) = v(r, order[c]);
    }
    return es;
}

std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m) {
    return hermitian_eigensystem(m).values;
}

// --------------------------------------------------------------------- unitaries

PureState apply_unitary(const ComplexMatrix& u, const PureState& psi) {
    if (!u.is_square() || u.rows() != psi.dim())
        throw std::invalid_argument("unitary dimension mismatch");
    if (!is_unitary(u, kUnitaryTol)) throw std::invalid_argument("not unitary");
    return {u.apply(psi.amplitudes()), psi.layout()};
}

std::vector<Complex> apply_local(const ComplexMatrix& op, std::span<const std::size_t> targets,
                                 const SubsystemLayout& layout, std::span<const Complex> psi) {
    const auto sel = checked_selection(layout, targets, false);
    const auto rest = complement(layout.factors(), sel);
    const auto tgt_off = factor_offsets(layout, sel);
    const auto rest_off = factor_offsets(layout, rest);
    if (!op.is_square() || op.rows() != tgt_off.size())
        throw std::invalid_argument("operator does not match target subsystems");
    if (psi.size() != layout.total()) throw std::invalid_argument("state does not match layout");

    std::vector<Complex> out(psi.size());
    for (std::size_t r : rest_off)
        for (std::size_t i = 0; i < tgt_off.size(); ++i) {
            Complex acc = 0.0;
            for (std::size_t j = 0; j < tgt_off.size(); ++j) acc += op(i, j) * psi[tgt_off[j] + r];
            out[tgt_off[i] + r] = acc;
        }
    return out;
}

PureState apply_local_unitary(const ComplexMatrix& u, std::span<const std::size_t> targets,
                              const PureState& psi) {
    if (!is_unitary(u, kUnitaryTol)) throw std::invalid_argument("not unitary");
    return {apply_local(u, targets, psi.layout(), psi.amplitudes()), psi.layout()};
}

ComplexMatrix embed_operator(const ComplexMatrix& op, std::span<const std::size_t> targets,
                             const SubsystemLayout& layout) {
    const std::size_t d = layout.total();
    ComplexMatrix full(d, d);
    std::vector<Complex> e(d);
    for (std::size_t c = 0; c < d; ++c) {
        std::fill(e.begin(), e.end(), Complex{});
        e[c] = 1.0;
        const auto col = apply_local(op, targets, layout, e);
        for (std::size_t r = 0; r < d; ++r) full(r, c) = col[r];
    }
    return full;
}

// ---------------------------------------------------------------------- random

double Rng::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

double Rng::normal() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    const double u1 = 1.0 - uniform();  // (0, 1]
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double phi = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(phi);
    has_spare_ = true;
    return r * std::cos(phi);
}

ComplexMatrix random_unitary(std::size_t dim, Rng& rng) {
    if (dim == 0) throw std::invalid_argument("dimension must be positive");
    ComplexMatrix g(dim, dim);
    for (auto& x : g.entries()) x = Complex(rng.normal(), rng.normal()) * std::sqrt(0.5);

    // Modified Gram-Schmidt on columns, two passes for orthogonality at 1e-15.
    for (std::size_t c = 0; c < dim; ++c) {
        for (int pass = 0; pass < 2; ++pass)
            for (std::size_t k = 0; k < c; ++k) {
                Complex proj = 0.0;
                for (std::size_t r = 0; r < dim; ++r) proj += std::conj(g(r, k)) * g(r, c);
                for (std::size_t r = 0; r < dim; ++r) g(r, c) -= proj * g(r, k);
            }
        double n = 0.0;
        for (std::size_t r = 0; r < dim; ++r) n += std::norm(g(r, c));
        n = std::sqrt(n);
        for (std::size_t r = 0; r < dim; ++r) g(r, c) /= n;
    }
    return g;
}

ComplexMatrix random_unitary(std::size_t dim, std::uint64_t seed) {
    Rng rng(seed);
    return random_unitary(dim, rng);
}

}  // namespace vncap
