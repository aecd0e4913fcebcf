#include <gtest/gtest.h>

#include <algorithm>
#include <stdexcept>

#include "support.hpp"
#include "vncap/channel.hpp"
#include "vncap/depolarizing.hpp"
#include "vncap/qmat.hpp"

using namespace vncap;

namespace {

const ComplexMatrix kSigmaX(2, 2, {0.0, 1.0, 1.0, 0.0});

std::string message_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const std::exception& e) {
        return e.what();
    }
    return {};
}

}  // namespace

TEST(Tensor, IdentityTimesIdentity) {
    EXPECT_EQ(tensor(ComplexMatrix::identity(2), ComplexMatrix::identity(2)), ComplexMatrix::identity(4));
}

TEST(Tensor, LeftFactorIsSlowIndex) {
    const ComplexMatrix p0(2, 2, {1.0, 0.0, 0.0, 0.0});
    const auto m = tensor(kSigmaX, p0);
    ASSERT_EQ(m.rows(), 4u);
    for (std::size_t r = 0; r < 4; ++r)
        for (std::size_t c = 0; c < 4; ++c) {
            const bool one = (r == 2 && c == 0) || (r == 0 && c == 2);
            EXPECT_EQ(m(r, c), Complex(one ? 1.0 : 0.0)) << r << "," << c;
        }
}

TEST(Tensor, ZzFixesBellState) {
    const ComplexMatrix z(2, 2, {1.0, 0.0, 0.0, -1.0});
    const auto zz = tensor(z, z);
    const auto bell = vtest::phi_plus(0.5);
    const auto out = zz.apply(bell);
    for (std::size_t i = 0; i < 4; ++i) EXPECT_NEAR(std::abs(out[i] - bell[i]), 0.0, 1e-15);
}

TEST(Tensor, AssociativeExactlyOnIntegerEntries) {
    const ComplexMatrix a(2, 2, {Complex(1, 2), 3.0, Complex(0, -1), 2.0});
    const ComplexMatrix b(3, 1, {Complex(2, 1), -1.0, Complex(4, 0)});
    const ComplexMatrix c(2, 2, {Complex(-3, 1), 1.0, 5.0, Complex(0, 2)});
    EXPECT_EQ(tensor(tensor(a, b), c), tensor(a, tensor(b, c)));
}

TEST(Tensor, AssociativeOnRandomUnitaries) {
    Rng rng(7);
    const auto a = random_unitary(2, rng), b = random_unitary(3, rng), c = random_unitary(2, rng);
    EXPECT_LT(vtest::max_diff(tensor(tensor(a, b), c), tensor(a, tensor(b, c))), 1e-15);
}

TEST(PartialTrace, BellMarginalIsMaximallyMixed) {
    const DensityMatrix rho(PureState(vtest::psi_minus(0.5), SubsystemLayout({2, 2})));
    const auto q = partial_trace(rho, {0});
    EXPECT_LT(vtest::max_diff(q.matrix(), ComplexMatrix::identity(2) * Complex(0.5)), 1e-15);
}

TEST(PartialTrace, ProductStateFactorizes) {
    Rng rng(11);
    const auto a = vtest::random_density(SubsystemLayout({2}), rng);
    const auto b = vtest::random_density(SubsystemLayout({3}), rng);
    const auto ab = tensor(a, b);
    EXPECT_LT(vtest::max_diff(partial_trace(ab, {0}).matrix(), a.matrix()), 1e-15);
    EXPECT_LT(vtest::max_diff(partial_trace(ab, {1}).matrix(), b.matrix()), 1e-15);
}

TEST(PartialTrace, AgreesWithIndexLoops) {
    Rng rng(3);
    const auto rho = vtest::random_density(SubsystemLayout({2, 3}), rng);
    EXPECT_LT(vtest::max_diff(partial_trace(rho, {0}).matrix(), vtest::trace_second(rho.matrix(), 2, 3)), 1e-14);
    EXPECT_LT(vtest::max_diff(partial_trace(rho, {1}).matrix(), vtest::trace_first(rho.matrix(), 2, 3)), 1e-14);
}

TEST(PartialTrace, DilatedOutputMatchesDepolarizedClosedForm) {
    const double p = 0.3, q = 0.25;
    const auto setup = build_dilation({p, q});
    const auto run = run_on_purification(setup.channel, setup.initial_qr);
    const auto qr = reduced_state(run.state, {0, 1});
    EXPECT_LT(vtest::max_diff(qr.matrix(), vtest::depolarized_qr(p, q)), 1e-12);
    EXPECT_NEAR(qr.matrix().trace().real(), 1.0, 1e-12);
}

TEST(PartialTrace, CommutesWithMixtures) {
    Rng rng(5);
    const SubsystemLayout l({2, 2, 2});
    const auto a = vtest::random_density(l, rng), b = vtest::random_density(l, rng);
    const double w = 0.37;
    const auto lhs = partial_trace(DensityMatrix::mix(w, a, b), {0, 2});
    const auto rhs = DensityMatrix::mix(w, partial_trace(a, {0, 2}), partial_trace(b, {0, 2}));
    EXPECT_LT(vtest::max_diff(lhs.matrix(), rhs.matrix()), 1e-12);
}

TEST(PartialTrace, PureShortcutMatchesDensityPath) {
    Rng rng(9);
    const auto psi = vtest::random_pure(SubsystemLayout({2, 3, 2}), rng);
    for (auto keep : {std::vector<std::size_t>{0}, {1}, {2}, {0, 2}, {1, 2}}) {
        const auto a = reduced_state(psi, keep);
        const auto b = partial_trace(DensityMatrix(psi), keep);
        EXPECT_LT(vtest::max_diff(a.matrix(), b.matrix()), 1e-14);
    }
}

TEST(PartialTrace, RejectsBadIndices) {
    const auto rho = DensityMatrix::maximally_mixed(SubsystemLayout({2, 2}));
    EXPECT_EQ(message_of([&] { partial_trace(rho, {2}); }), "bad subsystem index");
    EXPECT_EQ(message_of([&] { partial_trace(rho, {0, 0}); }), "bad subsystem index");
}

TEST(Eigen, Identity) {
    const auto v = hermitian_eigenvalues(ComplexMatrix::identity(2));
    EXPECT_NEAR(v[0], 1.0, 1e-15);
    EXPECT_NEAR(v[1], 1.0, 1e-15);
}

TEST(Eigen, PauliX) {
    const auto v = hermitian_eigenvalues(kSigmaX);
    EXPECT_NEAR(v[0], 1.0, 1e-14);
    EXPECT_NEAR(v[1], -1.0, 1e-14);
}

TEST(Eigen, DepolarizedSpectrum) {
    const double p = 0.3, q = 0.25;
    const double t = 1 - 2 * p / 3;
    const double delta = std::sqrt(t * t - 16.0 / 3 * p * (1 - p) * q * (1 - q));
    std::vector<double> want{2 * p / 3 * (1 - q), 2 * p * q / 3, (t + delta) / 2, (t - delta) / 2};
    std::sort(want.rbegin(), want.rend());
    const auto got = hermitian_eigenvalues(vtest::depolarized_qr(p, q));
    ASSERT_EQ(got.size(), 4u);
    for (std::size_t i = 0; i < 4; ++i) EXPECT_NEAR(got[i], want[i], 1e-9);
}

TEST(Eigen, Descending) {
    Rng rng(21);
    const auto rho = vtest::random_density(SubsystemLayout({8}), rng);
    const auto v = hermitian_eigenvalues(rho.matrix());
    EXPECT_TRUE(std::is_sorted(v.rbegin(), v.rend()));
}

TEST(Eigen, VectorsDiagonalize) {
    Rng rng(22);
    const auto m = vtest::random_density(SubsystemLayout({6}), rng).matrix();
    const auto es = hermitian_eigensystem(m);
    const auto d = es.vectors.adjoint() * m * es.vectors;
    for (std::size_t i = 0; i < 6; ++i)
        for (std::size_t j = 0; j < 6; ++j)
            EXPECT_NEAR(std::abs(d(i, j) - Complex(i == j ? es.values[i] : 0.0)), 0.0, 1e-12);
}

TEST(Eigen, InvariantUnderConjugation) {
    Rng rng(23);
    for (int trial = 0; trial < 10; ++trial) {
        const auto m = vtest::random_density(SubsystemLayout({4}), rng).matrix();
        const auto u = random_unitary(4, rng);
        const auto a = hermitian_eigenvalues(m);
        const auto b = hermitian_eigenvalues(u * m * u.adjoint());
        for (std::size_t i = 0; i < 4; ++i) EXPECT_NEAR(a[i], b[i], 1e-9);
    }
}

TEST(Eigen, RejectsNonHermitian) {
    const ComplexMatrix m(2, 2, {0.0, 1.0, 0.0, 0.0});
    EXPECT_EQ(message_of([&] { hermitian_eigenvalues(m); }), "not Hermitian");
}

TEST(DensityMatrixTest, ClampsJitterAndRejectsNegative) {
    const SubsystemLayout l({2});
    const double jitter[] = {1.0 + 5e-11, -5e-11};
    const auto s = DensityMatrix::diagonal(jitter, l).spectrum();
    EXPECT_EQ(s[1], 0.0);
    EXPECT_NEAR(s[0], 1.0, 1e-15);

    const ComplexMatrix bad(2, 2, {1.1, 0.0, 0.0, -0.1});
    EXPECT_THROW(DensityMatrix(bad, l).spectrum(), std::domain_error);
}

TEST(DensityMatrixTest, ChecksInvariants) {
    const SubsystemLayout l({2});
    EXPECT_THROW(DensityMatrix(ComplexMatrix(2, 2, {0.5, 1.0, 0.0, 0.5}), l), std::invalid_argument);
    EXPECT_THROW(DensityMatrix(ComplexMatrix(2, 2, {0.5, 0.0, 0.0, 0.6}), l), std::invalid_argument);
}

TEST(PureStateTest, NormChecked) {
    EXPECT_THROW(PureState({1.0, 1.0}, SubsystemLayout({2})), std::invalid_argument);
    EXPECT_NO_THROW(PureState::normalized({1.0, 1.0}, SubsystemLayout({2})));
}

TEST(ApplyUnitary, IdentityLeavesStateAlone) {
    Rng rng(1);
    const auto psi = vtest::random_pure(SubsystemLayout({2, 2}), rng);
    const auto out = apply_unitary(ComplexMatrix::identity(4), psi);
    for (std::size_t i = 0; i < 4; ++i) EXPECT_EQ(out.amplitudes()[i], psi.amplitudes()[i]);
}

TEST(ApplyUnitary, PauliXMapsPsiMinusToPhiMinus) {
    for (double q : {0.0, 0.2, 0.5, 0.9}) {
        const PureState psi(vtest::psi_minus(q), SubsystemLayout({2, 2}));
        const auto out = apply_unitary(tensor(sigma_x(), ComplexMatrix::identity(2)), psi);
        const auto want = vtest::phi_minus(q);
        for (std::size_t i = 0; i < 4; ++i) EXPECT_NEAR(std::abs(out.amplitudes()[i] - want[i]), 0.0, 1e-15);
    }
}

TEST(ApplyUnitary, MinusISigmaYMapsPsiMinusToPhiPlusOfComplement) {
    for (double q : {0.0, 0.2, 0.5, 0.9}) {
        const PureState psi(vtest::psi_minus(q), SubsystemLayout({2, 2}));
        const auto out = apply_unitary(tensor(minus_i_sigma_y(), ComplexMatrix::identity(2)), psi);
        const auto want = vtest::phi_plus(1 - q);
        for (std::size_t i = 0; i < 4; ++i) EXPECT_NEAR(std::abs(out.amplitudes()[i] - want[i]), 0.0, 1e-15);
    }
}

TEST(ApplyUnitary, SigmaZMapsPsiMinusToPsiPlusOfComplement) {
    const double q = 0.3;
    const PureState psi(vtest::psi_minus(q), SubsystemLayout({2, 2}));
    const auto out = apply_unitary(tensor(sigma_z(), ComplexMatrix::identity(2)), psi);
    const auto want = vtest::psi_plus(1 - q);
    for (std::size_t i = 0; i < 4; ++i) EXPECT_NEAR(std::abs(out.amplitudes()[i] - want[i]), 0.0, 1e-15);
}

TEST(ApplyUnitary, Errors) {
    const auto psi = PureState::basis(0, SubsystemLayout({2}));
    EXPECT_EQ(message_of([&] { apply_unitary(ComplexMatrix(2, 2, {1.0, 1.0, 0.0, 1.0}), psi); }), "not unitary");
    EXPECT_THROW(apply_unitary(ComplexMatrix::identity(4), psi), std::invalid_argument);
}

TEST(ApplyLocal, MatchesEmbeddedOperator) {
    Rng rng(31);
    const SubsystemLayout l({2, 3, 2});
    const auto psi = vtest::random_pure(l, rng);
    const auto u = random_unitary(4, rng);
    const std::size_t targets[] = {2, 0};
    const auto fast = apply_local(u, targets, l, psi.amplitudes());
    const auto slow = embed_operator(u, targets, l).apply(psi.amplitudes());
    for (std::size_t i = 0; i < fast.size(); ++i) EXPECT_NEAR(std::abs(fast[i] - slow[i]), 0.0, 1e-14);
}

TEST(RandomUnitary, DimOneIsPhase) {
    const auto u = random_unitary(1, 99);
    EXPECT_NEAR(std::abs(u(0, 0)), 1.0, 1e-15);
}

TEST(RandomUnitary, IsUnitary) {
    for (std::uint64_t seed = 0; seed < 20; ++seed)
        for (std::size_t d : {2u, 4u, 8u, 16u}) {
            const auto u = random_unitary(d, seed);
            EXPECT_LT(vtest::max_diff(u * u.adjoint(), ComplexMatrix::identity(d)), 1e-10);
        }
}

TEST(RandomUnitary, Deterministic) {
    EXPECT_EQ(random_unitary(8, 1234), random_unitary(8, 1234));
    EXPECT_NE(random_unitary(8, 1234), random_unitary(8, 1235));
}

TEST(RngTest, UniformRange) {
    Rng rng(0);
    for (int i = 0; i < 10000; ++i) {
        const double u = rng.uniform();
        ASSERT_GE(u, 0.0);
        ASSERT_LT(u, 1.0);
    }
}
