#pragma once

// Capacity maximization over the diagonal input family, randomized audits of
// the channel inequalities, and classical / quantum / entanglement Hamming
// bounds.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "vncap/channel.hpp"

namespace vncap {

struct CapacityResult {
    double value = 0;
    double argmax_q = 0;
    std::size_t evaluations = 0;
};

/// 101-point grid over q in [0, 1], ties broken toward q = 1/2, then a
/// golden-section refinement (to `tol` in q) around the best grid point.
/// Throws std::domain_error on a non-finite objective value.
CapacityResult maximize_objective(const std::function<double(double)>& objective,
                                  double tol = 1e-10);
/// Maximizes I_Q of a transcript family q -> transcript.
CapacityResult maximize_capacity(const std::function<ChannelTranscript(double)>& family,
                                 double tol = 1e-10);

// ------------------------------------------------------------------------ audits

struct Violation {
    std::string id;
    std::string params;
    double slack = 0;
};

struct AuditReport {
    std::size_t trials = 0;
    std::vector<Violation> violations;
    double max_negative_slack = 0;  // min(0, smallest slack seen)
    std::size_t checks = 0;

    /// Records the check; a violation is kept iff slack < -tol.
    void record(std::string_view id, std::string_view params, double slack, double tol);
    void merge(const AuditReport& other);
};

/// Triangle bounds on one transcript: 0 <= L, L <= 2S, L <= 2S_e.
void audit_transcript(const ChannelTranscript& t, std::string_view params, double tol,
                      AuditReport& report);

/// Slacks (rhs - lhs) for one chained pair of channels on an input.
struct ChainSlacks {
    double dpi_forward = 0;          // S(R:Q1) - S(R:Q2)
    double dpi_forward_bound = 0;    // 2S - S(R:Q1)
    double dpi_reverse = 0;          // S(RE1:Q2) - S(R:Q2)
    double dpi_reverse_bound = 0;    // 2S(Q2) - S(RE1:Q2)
    double loss_chaining = 0;        // L12 - L1
    double schumacher_first = 0;     // Fano-type bound on S(E1')
    double schumacher_chain = 0;     // same for the composite channel
    double quantum_fano = 0;         // 2[H2(F) + (1-F) log2(d-1)] - L12
    ChannelTranscript first;
    ChannelTranscript composite;
};

/// Runs `first` then `second` stage by stage, with R (x) E1 purifying the
/// intermediate state for the second leg.
ChainSlacks chain_slacks(const DilationChannel& first, const DilationChannel& second,
                         const DensityMatrix& rho_q);

/// S(RQ2:Q1') + S(RQ1:Q2') - S(R:Q1'Q2') for a two-qubit input.
double parallel_subadditivity_slack(const DilationChannel& a, const DilationChannel& b,
                                    const DensityMatrix& rho_q1q2);

/// Random single-qubit dilation on Q(2) (x) E(4), environment starting in |0>.
DilationChannel random_qubit_channel(Rng& rng);

/// Per trial: two random qubit channels, a random diagonal input, their
/// chain, and their parallel composition on a random two-qubit input.
AuditReport audit_inequalities(std::uint64_t seed, std::size_t trials, double tol = 1e-9);

struct AxiomReport {
    AuditReport audit;
    /// Instances where the coherent information failed concavity in the input.
    std::size_t coherent_concavity_witnesses = 0;
    double worst_coherent_slack = 0;
};

/// Concavity of I_Q in the input and convexity in the channel on random
/// mixtures; also searches for coherent-information concavity failures.
AxiomReport audit_axioms(std::uint64_t seed, std::size_t trials, double tol = 1e-9);

// ---------------------------------------------------------------- Hamming bounds

enum class HammingMode { Classical, Quantum, Entanglement };

std::string_view to_string(HammingMode mode);
/// Throws std::invalid_argument on an unknown name.
HammingMode parse_hamming_mode(std::string_view name);

struct HammingQuery {
    std::size_t n = 0;  // block length
    std::size_t k = 0;  // message bits, s = 2^k codewords
    std::size_t t = 0;  // correctable errors
    HammingMode mode = HammingMode::Classical;
};

struct HammingVerdict {
    bool holds = false;
    double slack_log2 = 0;  // log2(space / needed), >= 0 iff holds
};

/// Exact big-integer check. Throws unless 0 <= t <= n and k >= 1.
HammingVerdict hamming_holds(const HammingQuery& query);
/// Largest k with the bound holding at (n, t); 0 if none.
std::size_t max_message_bits(std::size_t n, std::size_t t, HammingMode mode);

/// Asymptotic rate limit: 1 - H2(p), D(p || 3/4) - 1, D(p || 3/4).
double rate_bound(double p, HammingMode mode);

struct RateRow {
    std::size_t n = 0;
    std::size_t t = 0;
    std::size_t k = 0;
    double rate = 0;   // k / n
    double limit = 0;  // rate_bound(p, mode)
};

/// t = floor(p n) for each n. Throws unless p in (0, 1) and every n >= 10.
std::vector<RateRow> asymptotic_consistency(double p, std::span<const std::size_t> block_lengths,
                                            HammingMode mode);

}  // namespace vncap
