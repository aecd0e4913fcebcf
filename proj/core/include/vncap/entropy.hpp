#pragma once

// Shannon and von Neumann entropies (bits), classical channel quantities,
// and entropy Venn diagrams for bi- and tripartite states.

#include <cstddef>
#include <span>
#include <vector>

#include "vncap/qmat.hpp"

namespace vncap {

/// Probability vector. Entries within 1e-12 of [0, 1] are clamped; the sum
/// must be 1 within 1e-10.
class ProbVector {
public:
    explicit ProbVector(std::vector<double> probs);
    ProbVector(std::initializer_list<double> probs) : ProbVector(std::vector<double>(probs)) {}

    std::span<const double> probs() const noexcept { return probs_; }
    std::size_t size() const noexcept { return probs_.size(); }
    double operator[](std::size_t i) const { return probs_[i]; }

private:
    std::vector<double> probs_;
};

/// -x log2 x with 0 log 0 = 0.
double entropy_term(double x);

double binary_entropy(double p);
double shannon_entropy(const ProbVector& p);
/// D(p || r) for binary distributions, in bits. r must lie strictly inside (0, 1).
double relative_entropy_binary(double p, double r);
double von_neumann_entropy(const DensityMatrix& rho);
/// S of the reduced state of a pure state on `factors`.
double marginal_entropy(const PureState& psi, std::span<const std::size_t> factors);
double marginal_entropy(const PureState& psi, std::initializer_list<std::size_t> factors);
double marginal_entropy(const DensityMatrix& rho, std::span<const std::size_t> factors);

/// H(X) + H(Y) - H(X,Y) for a row-major joint distribution p(x, y).
double classical_mutual_information(std::span<const double> joint, std::size_t rows,
                                    std::size_t cols);

/// H2[p_error] + p_error log2(s - 1).
double classical_fano_bound(double p_error, std::size_t codewords);

/// A split of a layout's factors into disjoint groups covering all of them.
using FactorGroup = std::vector<std::size_t>;

struct EntropyVenn2 {
    double s_a = 0, s_b = 0, s_ab = 0;
    double cond_a_given_b = 0, cond_b_given_a = 0, mutual = 0;
};

/// Seven regions of the tripartite diagram plus the entropies they came from.
struct EntropyVenn3 {
    // S(A|BC), S(B|AC), S(C|AB)
    double a_given_bc = 0, b_given_ac = 0, c_given_ab = 0;
    // S(A:B|C), S(A:C|B), S(B:C|A)
    double ab_given_c = 0, ac_given_b = 0, bc_given_a = 0;
    // S(A:B:C)
    double center = 0;

    double s_a = 0, s_b = 0, s_c = 0, s_ab = 0, s_ac = 0, s_bc = 0, s_abc = 0;

    double region_sum_a() const { return a_given_bc + ab_given_c + ac_given_b + center; }
    double region_sum_b() const { return b_given_ac + ab_given_c + bc_given_a + center; }
    double region_sum_c() const { return c_given_ab + ac_given_b + bc_given_a + center; }
    double region_sum_ab() const {
        return a_given_bc + b_given_ac + ab_given_c + ac_given_b + bc_given_a + center;
    }
    double region_sum_ac() const {
        return a_given_bc + c_given_ab + ab_given_c + ac_given_b + bc_given_a + center;
    }
    double region_sum_bc() const {
        return b_given_ac + c_given_ab + ab_given_c + ac_given_b + bc_given_a + center;
    }
    double region_sum_abc() const {
        return a_given_bc + b_given_ac + c_given_ab + ab_given_c + ac_given_b + bc_given_a +
               center;
    }
};

/// Throws std::invalid_argument("bad partition") unless the groups are
/// non-empty, disjoint and cover every factor.
EntropyVenn2 venn2(const DensityMatrix& rho, const FactorGroup& a, const FactorGroup& b);
EntropyVenn3 venn3(const DensityMatrix& rho, const FactorGroup& a, const FactorGroup& b,
                   const FactorGroup& c);

}  // namespace vncap
