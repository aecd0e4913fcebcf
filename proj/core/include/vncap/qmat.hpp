#pragma once

// Dense complex linear algebra for small multi-part Hilbert spaces.
//
// Matrices are row-major. Composite spaces follow the convention that the
// leftmost factor of a SubsystemLayout is the slowest-varying index, so the
// basis state |a b c> of dims [da, db, dc] sits at a*db*dc + b*dc + c.

#include <complex>
#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <stdexcept>
#include <vector>

namespace vncap {

using Complex = std::complex<double>;

class ComplexMatrix {
public:
    ComplexMatrix() = default;
    ComplexMatrix(std::size_t rows, std::size_t cols);
    ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries);

    static ComplexMatrix identity(std::size_t dim);
    static ComplexMatrix zeros(std::size_t rows, std::size_t cols) { return {rows, cols}; }
    /// Column vector |v>.
    static ComplexMatrix column(std::span<const Complex> v);
    /// Outer product |a><b|.
    static ComplexMatrix outer(std::span<const Complex> a, std::span<const Complex> b);
    static ComplexMatrix diagonal(std::span<const double> d);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool is_square() const noexcept { return rows_ == cols_; }

    Complex& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Complex& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::span<const Complex> entries() const noexcept { return data_; }
    std::span<Complex> entries() noexcept { return data_; }

    ComplexMatrix adjoint() const;
    Complex trace() const;

    ComplexMatrix& operator+=(const ComplexMatrix& other);
    ComplexMatrix& operator-=(const ComplexMatrix& other);
    ComplexMatrix& operator*=(Complex s);

    friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
    friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
    friend ComplexMatrix operator*(ComplexMatrix a, Complex s) { return a *= s; }
    friend ComplexMatrix operator*(Complex s, ComplexMatrix a) { return a *= s; }
    friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
    friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

    std::vector<Complex> apply(std::span<const Complex> v) const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Complex> data_;
};

/// Largest entrywise modulus of a - b.
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);
bool is_hermitian(const ComplexMatrix& m, double tol = 1e-10);
bool is_unitary(const ComplexMatrix& m, double tol = 1e-10);

/// Kronecker product; a is the slower-varying factor.
ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b);
std::vector<Complex> tensor(std::span<const Complex> a, std::span<const Complex> b);

class SubsystemLayout {
public:
    SubsystemLayout() = default;
    explicit SubsystemLayout(std::vector<std::size_t> dims);

    std::size_t factors() const noexcept { return dims_.size(); }
    std::size_t dim(std::size_t i) const { return dims_.at(i); }
    std::size_t total() const noexcept { return total_; }
    const std::vector<std::size_t>& dims() const noexcept { return dims_; }

    /// Layout of the listed factors, in the listed order.
    SubsystemLayout select(std::span<const std::size_t> factors) const;
    SubsystemLayout concat(const SubsystemLayout& other) const;

    friend bool operator==(const SubsystemLayout&, const SubsystemLayout&) = default;

private:
    std::vector<std::size_t> dims_;
    std::size_t total_ = 1;
};

class PureState {
public:
    /// Throws if the norm is off by more than 1e-12 or the layout size differs.
    PureState(std::vector<Complex> amplitudes, SubsystemLayout layout);
    /// Normalizes first; throws on a zero vector.
    static PureState normalized(std::vector<Complex> amplitudes, SubsystemLayout layout);
    static PureState basis(std::size_t index, SubsystemLayout layout);

    std::span<const Complex> amplitudes() const noexcept { return amps_; }
    const SubsystemLayout& layout() const noexcept { return layout_; }
    std::size_t dim() const noexcept { return amps_.size(); }

    double norm() const;
    Complex inner(const PureState& other) const;  // <this|other>
    ComplexMatrix projector() const;

private:
    std::vector<Complex> amps_;
    SubsystemLayout layout_;
};

PureState tensor(const PureState& a, const PureState& b);

class DensityMatrix {
public:
    /// Checks Hermiticity and unit trace (1e-10). Positivity is checked when
    /// the spectrum is requested, see spectrum().
    DensityMatrix(ComplexMatrix m, SubsystemLayout layout);
    explicit DensityMatrix(const PureState& psi);

    static DensityMatrix maximally_mixed(SubsystemLayout layout);
    static DensityMatrix diagonal(std::span<const double> probs, SubsystemLayout layout);

    const ComplexMatrix& matrix() const noexcept { return m_; }
    const SubsystemLayout& layout() const noexcept { return layout_; }
    std::size_t dim() const noexcept { return m_.rows(); }

    /// Eigenvalues, descending, with jitter in [-1e-10, 0) clamped to zero and
    /// the result renormalized to sum 1. Throws below -1e-10.
    std::vector<double> spectrum() const;

    /// Convex combination w*a + (1-w)*b.
    static DensityMatrix mix(double w, const DensityMatrix& a, const DensityMatrix& b);

private:
    ComplexMatrix m_;
    SubsystemLayout layout_;
};

DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b);

/// Reduced state on `keep` (original factor order kept). Throws
/// std::invalid_argument("bad subsystem index") on out-of-range or duplicates.
DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const std::size_t> keep);
DensityMatrix partial_trace(const DensityMatrix& rho, std::initializer_list<std::size_t> keep);
/// Reduced state of |psi><psi| without forming the full projector.
DensityMatrix reduced_state(const PureState& psi, std::span<const std::size_t> keep);
DensityMatrix reduced_state(const PureState& psi, std::initializer_list<std::size_t> keep);

struct EigenSystem {
    std::vector<double> values;  // descending
    ComplexMatrix vectors;       // column i belongs to values[i]
};

/// Cyclic complex Jacobi. Stops when the off-diagonal Frobenius norm drops
/// below 1e-13 (scaled by the matrix norm when that exceeds 1) or after 100
/// sweeps. Throws std::invalid_argument("not Hermitian").
EigenSystem hermitian_eigensystem(const ComplexMatrix& m);
std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m);

/// u|psi>. Throws "not unitary" or on a dimension mismatch.
PureState apply_unitary(const ComplexMatrix& u, const PureState& psi);

/// Applies `op` to the product of the `targets` factors (in the listed
/// order) and the identity elsewhere. No unitarity check.
std::vector<Complex> apply_local(const ComplexMatrix& op, std::span<const std::size_t> targets,
                                 const SubsystemLayout& layout, std::span<const Complex> psi);
PureState apply_local_unitary(const ComplexMatrix& u, std::span<const std::size_t> targets,
                              const PureState& psi);

/// Full-space matrix of `op` acting on `targets` of `layout`.
ComplexMatrix embed_operator(const ComplexMatrix& op, std::span<const std::size_t> targets,
                             const SubsystemLayout& layout);

/// Seeded 64-bit generator with a portable uniform and Box-Muller normal.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }
    /// Uniform in [0, 1).
    double uniform();
    double normal();

private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

/// Haar-like random unitary by Gram-Schmidt on a complex Gaussian matrix.
ComplexMatrix random_unitary(std::size_t dim, Rng& rng);
ComplexMatrix random_unitary(std::size_t dim, std::uint64_t seed);

}  // namespace vncap
