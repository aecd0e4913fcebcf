#include <gtest/gtest.h>

#include <algorithm>
#include <stdexcept>

#include "support.hpp"
#include "vncap/channel.hpp"
#include "vncap/depolarizing.hpp"
#include "vncap/entropy.hpp"

using namespace vncap;

TEST(BinaryEntropy, KnownValues) {
    EXPECT_DOUBLE_EQ(binary_entropy(0.5), 1.0);
    EXPECT_EQ(binary_entropy(0.0), 0.0);
    EXPECT_EQ(binary_entropy(1.0), 0.0);
    EXPECT_NEAR(binary_entropy(0.3), 0.881291, 1e-6);
    EXPECT_NEAR(binary_entropy(0.3), vtest::h2(0.3), 1e-15);
}

TEST(BinaryEntropy, Symmetric) {
    for (double p = 0.0; p <= 1.0; p += 0.01) EXPECT_NEAR(binary_entropy(p), binary_entropy(1 - p), 1e-14);
}

TEST(BinaryEntropy, RejectsOutOfRange) {
    EXPECT_THROW(binary_entropy(-0.1), std::invalid_argument);
    EXPECT_THROW(binary_entropy(1.1), std::invalid_argument);
    EXPECT_NO_THROW(binary_entropy(1.0 + 1e-13));
}

TEST(Shannon, KnownValues) {
    EXPECT_EQ(shannon_entropy({1, 0, 0, 0}), 0.0);
    EXPECT_DOUBLE_EQ(shannon_entropy({0.25, 0.25, 0.25, 0.25}), 2.0);
    const double p = 0.3;
    const double s = shannon_entropy({1 - p, p / 3, p / 3, p / 3});
    EXPECT_NEAR(s, vtest::h2(p) + p * vtest::kLog3, 1e-14);
    EXPECT_NEAR(s, 1.356780, 1e-6);
}

TEST(Shannon, ProbVectorValidation) {
    EXPECT_THROW(ProbVector({0.5, 0.6}), std::invalid_argument);
    EXPECT_THROW(ProbVector({1.2, -0.2}), std::invalid_argument);
    EXPECT_NO_THROW(ProbVector({1.0 + 1e-13, -1e-13}));
}

TEST(RelativeEntropy, KnownValues) {
    EXPECT_NEAR(relative_entropy_binary(0.3, 0.3), 0.0, 1e-15);
    EXPECT_NEAR(relative_entropy_binary(0.1, 0.5), 1 - vtest::h2(0.1), 1e-14);
    EXPECT_NEAR(relative_entropy_binary(0.1, 0.5), 0.531004, 1e-6);
    const double q = 2 - vtest::h2(0.1) - 0.1 * vtest::kLog3 - 1;
    EXPECT_NEAR(relative_entropy_binary(0.1, 0.75) - 1, q, 1e-14);
    EXPECT_NEAR(relative_entropy_binary(0.1, 0.75) - 1, 0.372508, 1e-6);
}

TEST(RelativeEntropy, NonNegativeAndDegenerateReference) {
    for (double p = 0.0; p <= 1.0; p += 0.05)
        for (double r = 0.05; r < 1.0; r += 0.05) EXPECT_GE(relative_entropy_binary(p, r), -1e-15);
    try {
        relative_entropy_binary(0.3, 0.0);
        FAIL();
    } catch (const std::invalid_argument& e) {
        EXPECT_STREQ(e.what(), "degenerate reference");
    }
    EXPECT_THROW(relative_entropy_binary(0.3, 1.0), std::invalid_argument);
}

TEST(VonNeumann, KnownValues) {
    Rng rng(4);
    EXPECT_NEAR(von_neumann_entropy(DensityMatrix(vtest::random_pure(SubsystemLayout({4}), rng))), 0.0, 1e-10);
    EXPECT_NEAR(von_neumann_entropy(DensityMatrix::maximally_mixed(SubsystemLayout({2}))), 1.0, 1e-14);
}

TEST(VonNeumann, DepolarizedOutput) {
    const double p = 0.3, q = 0.2;
    const auto rho_q = vtest::trace_second(vtest::depolarized_qr(p, q), 2, 2);
    const double s = von_neumann_entropy(DensityMatrix(rho_q, SubsystemLayout({2})));
    EXPECT_NEAR(s, vtest::h2(0.32), 1e-12);
    EXPECT_NEAR(s, 0.904381, 1e-6);
}

TEST(Venn2, BellState) {
    const DensityMatrix bell(PureState(vtest::psi_minus(0.5), SubsystemLayout({2, 2})));
    const auto v = venn2(bell, {0}, {1});
    EXPECT_NEAR(v.cond_a_given_b, -1.0, 1e-12);
    EXPECT_NEAR(v.mutual, 2.0, 1e-12);
    EXPECT_NEAR(v.cond_b_given_a, -1.0, 1e-12);
}

TEST(Venn2, ProductState) {
    Rng rng(8);
    const auto rho = tensor(vtest::random_density(SubsystemLayout({2}), rng),
                            vtest::random_density(SubsystemLayout({3}), rng));
    EXPECT_NEAR(venn2(rho, {0}, {1}).mutual, 0.0, 1e-10);
}

TEST(Venn2, ClassicallyCorrelated) {
    const double d[] = {0.5, 0.0, 0.0, 0.5};
    const auto v = venn2(DensityMatrix::diagonal(d, SubsystemLayout({2, 2})), {0}, {1});
    EXPECT_NEAR(v.mutual, 1.0, 1e-12);
    EXPECT_NEAR(v.cond_a_given_b, 0.0, 1e-12);
    EXPECT_NEAR(v.cond_b_given_a, 0.0, 1e-12);
}

TEST(Venn2, BadPartition) {
    const auto rho = DensityMatrix::maximally_mixed(SubsystemLayout({2, 2, 2}));
    EXPECT_THROW(venn2(rho, {0}, {1}), std::invalid_argument);
    EXPECT_THROW(venn2(rho, {0, 1}, {1, 2}), std::invalid_argument);
    EXPECT_THROW(venn2(rho, {}, {0, 1, 2}), std::invalid_argument);
    EXPECT_THROW(venn2(rho, {0, 1}, {3}), std::invalid_argument);
}

TEST(Venn2, PropertiesOnRandomStates) {
    Rng rng(2024);
    for (int trial = 0; trial < 40; ++trial) {
        const auto rho = vtest::random_density(SubsystemLayout({2, 3}), rng);
        const auto v = venn2(rho, {0}, {1});
        EXPECT_NEAR(v.cond_a_given_b, v.s_ab - v.s_b, 1e-10);
        EXPECT_NEAR(v.mutual, v.s_a + v.s_b - v.s_ab, 1e-10);
        EXPECT_LE(v.mutual, 2 * std::min(v.s_a, v.s_b) + 1e-9);
        EXPECT_LE(v.s_ab, v.s_a + v.s_b + 1e-9);
        EXPECT_LE(std::abs(v.s_a - v.s_b), v.s_ab + 1e-9);
    }
}

TEST(Venn2, DiagonalStatesMatchClassicalMutualInformation) {
    Rng rng(77);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<double> joint(6);
        double sum = 0;
        for (double& x : joint) sum += (x = rng.uniform());
        for (double& x : joint) x /= sum;
        const auto v = venn2(DensityMatrix::diagonal(joint, SubsystemLayout({2, 3})), {0}, {1});
        EXPECT_NEAR(v.mutual, classical_mutual_information(joint, 2, 3), 1e-10);
        EXPECT_GE(v.cond_a_given_b, -1e-12);
        EXPECT_GE(v.cond_b_given_a, -1e-12);
    }
}

namespace {

void expect_recombines(const EntropyVenn3& v) {
    EXPECT_NEAR(v.region_sum_a(), v.s_a, 1e-9);
    EXPECT_NEAR(v.region_sum_b(), v.s_b, 1e-9);
    EXPECT_NEAR(v.region_sum_c(), v.s_c, 1e-9);
    EXPECT_NEAR(v.region_sum_ab(), v.s_ab, 1e-9);
    EXPECT_NEAR(v.region_sum_ac(), v.s_ac, 1e-9);
    EXPECT_NEAR(v.region_sum_bc(), v.s_bc, 1e-9);
    EXPECT_NEAR(v.region_sum_abc(), v.s_abc, 1e-9);
}

}  // namespace

TEST(Venn3, IdentityChannelLeavesEnvironmentDecoupled) {
    const auto setup = build_dilation({0.0, 0.5});
    const auto run = run_on_purification(setup.channel, setup.initial_qr);
    // factors [Q, R, E]; A = R, B = Q', C = E'
    const auto v = venn3(DensityMatrix(run.state), {1}, {0}, {2});
    expect_recombines(v);
    EXPECT_NEAR(v.s_c, 0.0, 1e-10);
    EXPECT_NEAR(v.s_a + v.s_b - v.s_ab, 2.0, 1e-10);
    EXPECT_NEAR(v.ac_given_b, 0.0, 1e-10);
}

TEST(Venn3, DepolarizedRegions) {
    for (double p : {0.1, 0.3, 0.5, 0.75}) {
        const auto setup = build_dilation({p, 0.5});
        const auto run = run_on_purification(setup.channel, setup.initial_qr);
        const auto v = venn3(DensityMatrix(run.state), {1}, {0}, {2});  // R, Q', E'
        expect_recombines(v);
        const double se = vtest::h2(p) + p * vtest::kLog3;
        EXPECT_NEAR(v.s_a, 1.0, 1e-9);
        EXPECT_NEAR(v.s_b, 1.0, 1e-9);
        EXPECT_NEAR(v.s_c, se, 1e-9);
        // S(R:E'|Q') = S + S_e - S'
        EXPECT_NEAR(v.ac_given_b, se, 1e-9);
        // S(R:Q'|E') = 2S - L
        EXPECT_NEAR(v.ab_given_c, 2.0 - se, 1e-9);
        EXPECT_NEAR(v.center, 0.0, 1e-9);
    }
}

TEST(Venn3, PureStatesHaveZeroCenter) {
    Rng rng(99);
    for (int trial = 0; trial < 20; ++trial) {
        const auto psi = vtest::random_pure(SubsystemLayout({2, 2, 3}), rng);
        const auto v = venn3(DensityMatrix(psi), {0}, {1}, {2});
        EXPECT_NEAR(v.center, 0.0, 1e-9);
        expect_recombines(v);
    }
}

TEST(Venn3, MixedStatesRecombine) {
    Rng rng(100);
    for (int trial = 0; trial < 10; ++trial) {
        const auto rho = vtest::random_density(SubsystemLayout({2, 2, 2}), rng);
        expect_recombines(venn3(rho, {0}, {1}, {2}));
    }
}

TEST(Venn3, GroupsMayHoldSeveralFactors) {
    Rng rng(101);
    const auto psi = vtest::random_pure(SubsystemLayout({2, 2, 2, 2}), rng);
    const auto v = venn3(DensityMatrix(psi), {0, 3}, {1}, {2});
    EXPECT_NEAR(v.center, 0.0, 1e-9);
    EXPECT_THROW(venn3(DensityMatrix(psi), {0}, {1}, {2}), std::invalid_argument);
}

TEST(ClassicalMutual, KnownValues) {
    const double indep[] = {0.25, 0.25, 0.25, 0.25};
    EXPECT_NEAR(classical_mutual_information(indep, 2, 2), 0.0, 1e-15);
    const double corr[] = {0.5, 0.0, 0.0, 0.5};
    EXPECT_NEAR(classical_mutual_information(corr, 2, 2), 1.0, 1e-15);
    const double f = 0.2;
    const double bsc[] = {0.5 * (1 - f), 0.5 * f, 0.5 * f, 0.5 * (1 - f)};
    EXPECT_NEAR(classical_mutual_information(bsc, 2, 2), 1 - vtest::h2(f), 1e-14);
    EXPECT_NEAR(classical_mutual_information(bsc, 2, 2), 0.278072, 1e-6);
}

TEST(ClassicalMutual, RejectsInvalidJoint) {
    const double neg[] = {0.6, -0.1, 0.25, 0.25};
    EXPECT_THROW(classical_mutual_information(neg, 2, 2), std::invalid_argument);
    const double unnorm[] = {0.5, 0.5, 0.5, 0.5};
    EXPECT_THROW(classical_mutual_information(unnorm, 2, 2), std::invalid_argument);
    EXPECT_THROW(classical_mutual_information(unnorm, 3, 2), std::invalid_argument);
}

TEST(ClassicalFano, KnownValues) {
    EXPECT_EQ(classical_fano_bound(0.0, 2), 0.0);
    EXPECT_EQ(classical_fano_bound(0.0, 16), 0.0);
    EXPECT_EQ(classical_fano_bound(1.0, 2), 0.0);
    EXPECT_NEAR(classical_fano_bound(0.1, 4), vtest::h2(0.1) + 0.1 * vtest::kLog3, 1e-14);
    EXPECT_NEAR(classical_fano_bound(0.1, 4), 0.627492, 1e-6);
    EXPECT_THROW(classical_fano_bound(0.1, 1), std::invalid_argument);
}
