#pragma once

// Reference computations written independently of the library internals.

#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

#include "vncap/qmat.hpp"

namespace vtest {

using vncap::Complex;
using vncap::ComplexMatrix;

inline double h2(double p) {
    double s = 0.0;
    if (p > 0.0) s -= p * std::log2(p);
    if (p < 1.0) s -= (1.0 - p) * std::log2(1.0 - p);
    return s;
}

inline double shannon(std::initializer_list<double> ps) {
    double s = 0.0;
    for (double p : ps)
        if (p > 0.0) s -= p * std::log2(p);
    return s;
}

inline const double kLog3 = std::log2(3.0);

// Two-qubit ket from the four amplitudes of |00>, |01>, |10>, |11> (first bit = Q).
inline std::vector<Complex> ket2(double a00, double a01, double a10, double a11) {
    return {a00, a01, a10, a11};
}

inline std::vector<Complex> phi_minus(double q) { return ket2(std::sqrt(1 - q), 0, 0, -std::sqrt(q)); }
inline std::vector<Complex> phi_plus(double q) { return ket2(std::sqrt(q), 0, 0, std::sqrt(1 - q)); }
inline std::vector<Complex> psi_minus(double q) { return ket2(0, -std::sqrt(q), std::sqrt(1 - q), 0); }
inline std::vector<Complex> psi_plus(double q) { return ket2(0, std::sqrt(1 - q), std::sqrt(q), 0); }

inline ComplexMatrix proj(const std::vector<Complex>& v) {
    ComplexMatrix m(v.size(), v.size());
    for (std::size_t i = 0; i < v.size(); ++i)
        for (std::size_t j = 0; j < v.size(); ++j) m(i, j) = v[i] * std::conj(v[j]);
    return m;
}

// (1-p) P[Psi-(q)] + p/3 (P[Phi-(q)] + P[Phi+(1-q)] + P[Psi+(1-q)]).
inline ComplexMatrix depolarized_qr(double p, double q) {
    ComplexMatrix m = proj(psi_minus(q)) * Complex(1 - p);
    m += (proj(phi_minus(q)) + proj(phi_plus(1 - q)) + proj(psi_plus(1 - q))) * Complex(p / 3);
    return m;
}

// Trace out the second factor of a (da*db)-dimensional operator.
inline ComplexMatrix trace_second(const ComplexMatrix& m, std::size_t da, std::size_t db) {
    ComplexMatrix out(da, da);
    for (std::size_t i = 0; i < da; ++i)
        for (std::size_t j = 0; j < da; ++j)
            for (std::size_t k = 0; k < db; ++k) out(i, j) += m(i * db + k, j * db + k);
    return out;
}

inline ComplexMatrix trace_first(const ComplexMatrix& m, std::size_t da, std::size_t db) {
    ComplexMatrix out(db, db);
    for (std::size_t i = 0; i < db; ++i)
        for (std::size_t j = 0; j < db; ++j)
            for (std::size_t k = 0; k < da; ++k) out(i, j) += m(k * db + i, k * db + j);
    return out;
}

inline double max_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
    double d = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) d = std::max(d, std::abs(a(i, j) - b(i, j)));
    return d;
}

// Random mixed state: G G^dagger / tr, G complex Gaussian.
inline vncap::DensityMatrix random_density(vncap::SubsystemLayout layout, vncap::Rng& rng) {
    const std::size_t d = layout.total();
    ComplexMatrix g(d, d);
    for (auto& z : g.entries()) z = {rng.normal(), rng.normal()};
    ComplexMatrix m = g * g.adjoint();
    m *= Complex(1.0 / m.trace().real());
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = i + 1; j < d; ++j) m(j, i) = std::conj(m(i, j));
    return {std::move(m), std::move(layout)};
}

inline vncap::PureState random_pure(vncap::SubsystemLayout layout, vncap::Rng& rng) {
    std::vector<Complex> v(layout.total());
    for (auto& z : v) z = {rng.normal(), rng.normal()};
    return vncap::PureState::normalized(std::move(v), std::move(layout));
}

}  // namespace vtest
