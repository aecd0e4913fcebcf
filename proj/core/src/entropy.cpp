#include "vncap/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace vncap {

namespace {

constexpr double kProbSlack = 1e-12;
constexpr double kSumTol = 1e-10;

double checked_probability(double p, const char* what) {
    if (!(p >= -kProbSlack && p <= 1.0 + kProbSlack))
        throw std::invalid_argument(std::string(what) + " outside [0, 1]");
    return std::clamp(p, 0.0, 1.0);
}

void check_partition(const SubsystemLayout& layout, std::initializer_list<const FactorGroup*> groups) {
    std::vector<int> hits(layout.factors(), 0);
    for (const FactorGroup* g : groups) {
        if (g->empty()) throw std::invalid_argument("bad partition");
        for (std::size_t f : *g) {
            if (f >= layout.factors()) throw std::invalid_argument("bad partition");
            ++hits[f];
        }
    }
    for (int h : hits)
        if (h != 1) throw std::invalid_argument("bad partition");
}

FactorGroup join(const FactorGroup& a, const FactorGroup& b) {
    FactorGroup out = a;
    out.insert(out.end(), b.begin(), b.end());
    return out;
}

}  // namespace

ProbVector::ProbVector(std::vector<double> probs) : probs_(std::move(probs)) {
    double sum = 0.0;
    for (double& p : probs_) {
        p = checked_probability(p, "probability");
        sum += p;
    }
    if (std::abs(sum - 1.0) > kSumTol) throw std::invalid_argument("probabilities do not sum to 1");
}

double entropy_term(double x) { return x > 0.0 ? -x * std::log2(x) : 0.0; }

double binary_entropy(double p) {
    p = checked_probability(p, "p");
    return entropy_term(p) + entropy_term(1.0 - p);
}

double shannon_entropy(const ProbVector& p) {
    double h = 0.0;
    for (double x : p.probs()) h += entropy_term(x);
    return h;
}

double relative_entropy_binary(double p, double r) {
    p = checked_probability(p, "p");
    r = checked_probability(r, "r");
    if (r <= 0.0 || r >= 1.0) throw std::invalid_argument("degenerate reference");
    double d = 0.0;
    if (p > 0.0) d += p * std::log2(p / r);
    if (p < 1.0) d += (1.0 - p) * std::log2((1.0 - p) / (1.0 - r));
    return d;
}

double von_neumann_entropy(const DensityMatrix& rho) {
    double h = 0.0;
    for (double x : rho.spectrum()) h += entropy_term(x);
    return h;
}

double marginal_entropy(const PureState& psi, std::span<const std::size_t> factors) {
    if (factors.empty()) return 0.0;
    return von_neumann_entropy(reduced_state(psi, factors));
}

double marginal_entropy(const PureState& psi, std::initializer_list<std::size_t> factors) {
    return marginal_entropy(psi, std::span<const std::size_t>(factors.begin(), factors.size()));
}

double marginal_entropy(const DensityMatrix& rho, std::span<const std::size_t> factors) {
    if (factors.empty()) return 0.0;
    return von_neumann_entropy(partial_trace(rho, factors));
}

double classical_mutual_information(std::span<const double> joint, std::size_t rows,
                                    std::size_t cols) {
    if (rows == 0 || cols == 0 || joint.size() != rows * cols)
        throw std::invalid_argument("joint distribution shape mismatch");
    std::vector<double> px(rows, 0.0), py(cols, 0.0);
    double sum = 0.0, hxy = 0.0;
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) {
            const double p = joint[i * cols + j];
            if (p < 0.0) throw std::invalid_argument("negative joint probability");
            px[i] += p;
            py[j] += p;
            sum += p;
            hxy += entropy_term(p);
        }
    if (std::abs(sum - 1.0) > kSumTol) throw std::invalid_argument("joint distribution does not sum to 1");
    double hx = 0.0, hy = 0.0;
    for (double p : px) hx += entropy_term(p);
    for (double p : py) hy += entropy_term(p);
    return hx + hy - hxy;
}

double classical_fano_bound(double p_error, std::size_t codewords) {
    if (codewords < 2) throw std::invalid_argument("need at least two codewords");
    p_error = checked_probability(p_error, "p_error");
    return binary_entropy(p_error) + p_error * std::log2(static_cast<double>(codewords - 1));
}

EntropyVenn2 venn2(const DensityMatrix& rho, const FactorGroup& a, const FactorGroup& b) {
    check_partition(rho.layout(), {&a, &b});
    EntropyVenn2 v;
    v.s_a = marginal_entropy(rho, a);
    v.s_b = marginal_entropy(rho, b);
    v.s_ab = von_neumann_entropy(rho);
    v.cond_a_given_b = v.s_ab - v.s_b;
    v.cond_b_given_a = v.s_ab - v.s_a;
    v.mutual = v.s_a + v.s_b - v.s_ab;
    return v;
}

EntropyVenn3 venn3(const DensityMatrix& rho, const FactorGroup& a, const FactorGroup& b,
                   const FactorGroup& c) {
    check_partition(rho.layout(), {&a, &b, &c});
    EntropyVenn3 v;
    v.s_a = marginal_entropy(rho, a);
    v.s_b = marginal_entropy(rho, b);
    v.s_c = marginal_entropy(rho, c);
    v.s_ab = marginal_entropy(rho, join(a, b));
    v.s_ac = marginal_entropy(rho, join(a, c));
    v.s_bc = marginal_entropy(rho, join(b, c));
    v.s_abc = von_neumann_entropy(rho);

    v.a_given_bc = v.s_abc - v.s_bc;
    v.b_given_ac = v.s_abc - v.s_ac;
    v.c_given_ab = v.s_abc - v.s_ab;
    v.ab_given_c = v.s_ac + v.s_bc - v.s_c - v.s_abc;
    v.ac_given_b = v.s_ab + v.s_bc - v.s_b - v.s_abc;
    v.bc_given_a = v.s_ab + v.s_ac - v.s_a - v.s_abc;
    v.center = v.s_a + v.s_b + v.s_c - v.s_ab - v.s_ac - v.s_bc + v.s_abc;
    return v;
}

}  // namespace vncap
