#include "vncap/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

#include <boost/multiprecision/cpp_int.hpp>

#include "vncap/optimize.hpp"

namespace vncap {

namespace {

using BigInt = boost::multiprecision::cpp_int;

constexpr std::size_t kGridPoints = 101;
constexpr double kRefineHalfWidth = 0.01;
constexpr double kTieTol = 1e-12;

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

std::string format_params(std::size_t trial, double q) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "trial=%zu q=%.6f", trial, q);
    return buf;
}

DensityMatrix diag_qubit(double q) {
    const double d[] = {q, 1.0 - q};
    return DensityMatrix::diagonal(d, SubsystemLayout({2}));
}

// U diag(probs) U^dagger with random probabilities.
DensityMatrix random_mixed_state(std::size_t dim, Rng& rng, SubsystemLayout layout) {
    std::vector<double> probs(dim);
    double sum = 0.0;
    for (double& p : probs) {
        p = rng.uniform();
        sum += p;
    }
    for (double& p : probs) p /= sum;
    const auto u = random_unitary(dim, rng);
    return {u * ComplexMatrix::diagonal(probs) * u.adjoint(), std::move(layout)};
}

// Swap the first two factors of a state laid out as [A, B, rest...].
PureState swap_leading(const PureState& psi) {
    const auto& dims = psi.layout().dims();
    const std::size_t da = dims[0], db = dims[1];
    const std::size_t rest = psi.dim() / (da * db);
    std::vector<Complex> out(psi.dim());
    for (std::size_t a = 0; a < da; ++a)
        for (std::size_t b = 0; b < db; ++b)
            for (std::size_t r = 0; r < rest; ++r)
                out[(b * da + a) * rest + r] = psi.amplitudes()[(a * db + b) * rest + r];
    std::vector<std::size_t> swapped = dims;
    std::swap(swapped[0], swapped[1]);
    return {std::move(out), SubsystemLayout(std::move(swapped))};
}

std::vector<std::size_t> iota_vec(std::size_t begin, std::size_t end) {
    std::vector<std::size_t> v;
    for (std::size_t i = begin; i < end; ++i) v.push_back(i);
    return v;
}

std::vector<std::size_t> join(std::vector<std::size_t> a, const std::vector<std::size_t>& b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
}

double log2_big(const BigInt& v) {
    if (v <= 0) throw std::domain_error("log2 of a non-positive integer");
    const std::size_t bits = boost::multiprecision::msb(v);
    if (bits < 53) return std::log2(v.convert_to<double>());
    const BigInt top = v >> (bits - 52);
    return std::log2(top.convert_to<double>()) + static_cast<double>(bits - 52);
}

// sum_{i <= t} C(n, i) w^i with w = 1 or 3.
BigInt syndrome_count(std::size_t n, std::size_t t, HammingMode mode) {
    // Pascal's rule, keeping only the first t + 1 columns.
    std::vector<BigInt> row(t + 1, 0);
    row[0] = 1;
    for (std::size_t m = 1; m <= n; ++m)
        for (std::size_t i = std::min(m, t); i >= 1; --i) row[i] += row[i - 1];
    BigInt total = 0;
    BigInt weight = 1;
    const unsigned factor = mode == HammingMode::Classical ? 1 : 3;
    for (std::size_t i = 0; i <= t; ++i) {
        total += row[i] * weight;
        weight *= factor;
    }
    return total;
}

std::size_t coding_space_bits(std::size_t n, HammingMode mode) {
    return mode == HammingMode::Entanglement ? 2 * n : n;
}

}  // namespace

// ---------------------------------------------------------------- maximization

CapacityResult maximize_objective(const std::function<double(double)>& objective, double tol) {
    if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
    std::size_t evals = 0;
    auto f = [&](double q) {
        ++evals;
        const double v = objective(q);
        if (!std::isfinite(v)) throw std::domain_error("objective is not finite");
        return v;
    };

    std::vector<double> grid(kGridPoints);
    for (std::size_t i = 0; i < kGridPoints; ++i) {
        const double q = static_cast<double>(i) / static_cast<double>(kGridPoints - 1);
        grid[i] = f(q);
    }
    const double top = *std::max_element(grid.begin(), grid.end());
    double best_q = 0.0;
    double best_dist = std::numeric_limits<double>::infinity();
    double best_value = top;
    for (std::size_t i = 0; i < kGridPoints; ++i) {
        if (grid[i] < top - kTieTol) continue;
        const double q = static_cast<double>(i) / static_cast<double>(kGridPoints - 1);
        if (std::abs(q - 0.5) < best_dist) {
            best_dist = std::abs(q - 0.5);
            best_q = q;
            best_value = grid[i];
        }
    }

    const double lo = std::max(0.0, best_q - kRefineHalfWidth);
    const double hi = std::min(1.0, best_q + kRefineHalfWidth);
    const auto refined = golden_section_maximize(f, lo, hi, tol);
    if (refined.value > best_value) {
        best_q = refined.x;
        best_value = refined.value;
    }
    return {best_value, best_q, evals};
}

CapacityResult maximize_capacity(const std::function<ChannelTranscript(double)>& family,
                                 double tol) {
    return maximize_objective([&](double q) { return family(q).mutual_entanglement; }, tol);
}

// ---------------------------------------------------------------------- audits

void AuditReport::record(std::string_view id, std::string_view params, double slack, double tol) {
    ++checks;
    max_negative_slack = std::min(max_negative_slack, slack);
    if (slack < -tol) violations.push_back({std::string(id), std::string(params), slack});
}

void AuditReport::merge(const AuditReport& other) {
    trials += other.trials;
    checks += other.checks;
    max_negative_slack = std::min(max_negative_slack, other.max_negative_slack);
    violations.insert(violations.end(), other.violations.begin(), other.violations.end());
}

void audit_transcript(const ChannelTranscript& t, std::string_view params, double tol,
                      AuditReport& report) {
    report.record("loss_nonnegative", params, t.loss, tol);
    report.record("loss_le_2S", params, 2.0 * t.s_in - t.loss, tol);
    report.record("loss_le_2Se", params, 2.0 * t.s_env - t.loss, tol);
}

ChainSlacks chain_slacks(const DilationChannel& first, const DilationChannel& second,
                         const DensityMatrix& rho_q) {
    if (first.input_dim() != second.input_dim())
        throw std::invalid_argument("chained channel dimensions do not match");
    ChainSlacks out;

    const ChannelRun run1 = run_channel_full(first, rho_q);
    out.first = run1.transcript;

    // Second leg: E2 joins [Q, R, E1]; R (x) E1 purifies the intermediate Q1.
    const PureState start = tensor(run1.state, second.env_initial());
    const auto q = run1.input_factors();
    const auto r = run1.reference_factors();
    const auto e1 = run1.env_factors();
    const std::size_t e2_begin = run1.n_in + run1.n_ref + run1.n_env;
    const auto e2 = iota_vec(e2_begin, e2_begin + second.env_layout().factors());
    const PureState state2 = apply_local_unitary(second.unitary(), join(q, e2), start);

    const double s = out.first.s_in;
    const double s_q2 = marginal_entropy(state2, q);
    const double s_r = marginal_entropy(state2, r);
    const double s_rq2 = marginal_entropy(state2, join(r, q));
    const double s_re1 = marginal_entropy(state2, join(r, e1));
    const double s_re1q2 = marginal_entropy(state2, join(join(r, e1), q));
    const double i_r_q2 = s_r + s_q2 - s_rq2;
    const double i_re1_q2 = s_re1 + s_q2 - s_re1q2;

    out.composite = run_on_purification(chain(first, second), run1.initial).transcript;

    const std::size_t d = first.input_dim();
    out.dpi_forward = out.first.mutual_entanglement - i_r_q2;
    out.dpi_forward_bound = 2.0 * s - out.first.mutual_entanglement;
    out.dpi_reverse = i_re1_q2 - i_r_q2;
    out.dpi_reverse_bound = 2.0 * s_q2 - i_re1_q2;
    out.loss_chaining = out.composite.loss - out.first.loss;
    out.schumacher_first = schumacher_fano_bound(out.first.fidelity, d, d) - out.first.s_env;
    out.schumacher_chain =
        schumacher_fano_bound(out.composite.fidelity, d, d) - out.composite.s_env;
    out.quantum_fano = quantum_fano_bound(out.composite.fidelity, d * d) - out.composite.loss;
    return out;
}

double parallel_subadditivity_slack(const DilationChannel& a, const DilationChannel& b,
                                    const DensityMatrix& rho_q1q2) {
    if (rho_q1q2.dim() != a.input_dim() * b.input_dim())
        throw std::invalid_argument("parallel input dimension mismatch");
    const SubsystemLayout layout({a.input_dim(), b.input_dim()});
    const PureState qqr = purify(DensityMatrix(rho_q1q2.matrix(), layout));  // [Q1, Q2, R]

    const double joint = run_on_purification(parallel(a, b), qqr).transcript.mutual_entanglement;
    // Channel a alone: Q2 R is the reference; likewise for b with Q1 R.
    const double first = run_on_purification(a, qqr).transcript.mutual_entanglement;
    const double second = run_on_purification(b, swap_leading(qqr)).transcript.mutual_entanglement;
    return first + second - joint;
}

DilationChannel random_qubit_channel(Rng& rng) {
    std::vector<Complex> env0(4);
    env0[0] = 1.0;
    return {random_unitary(8, rng), {2}, {4}, std::move(env0)};
}

AuditReport audit_inequalities(std::uint64_t seed, std::size_t trials, double tol) {
    AuditReport report;
    for (std::size_t trial = 0; trial < trials; ++trial) {
        Rng rng(splitmix64(seed ^ splitmix64(trial)));
        const auto ch1 = random_qubit_channel(rng);
        const auto ch2 = random_qubit_channel(rng);
        const double q = rng.uniform();
        const std::string params = format_params(trial, q);

        const auto cs = chain_slacks(ch1, ch2, diag_qubit(q));
        audit_transcript(cs.first, params, tol, report);
        audit_transcript(cs.composite, params, tol, report);
        report.record("dpi_forward", params, cs.dpi_forward, tol);
        report.record("dpi_forward_bound", params, cs.dpi_forward_bound, tol);
        report.record("dpi_reverse", params, cs.dpi_reverse, tol);
        report.record("dpi_reverse_bound", params, cs.dpi_reverse_bound, tol);
        report.record("loss_chaining", params, cs.loss_chaining, tol);
        report.record("schumacher_fano", params, cs.schumacher_first, tol);
        report.record("schumacher_fano_chain", params, cs.schumacher_chain, tol);
        report.record("quantum_fano", params, cs.quantum_fano, tol);

        const auto rho12 = random_mixed_state(4, rng, SubsystemLayout({2, 2}));
        report.record("parallel_subadditivity", params,
                      parallel_subadditivity_slack(ch1, ch2, rho12), tol);
        ++report.trials;
    }
    return report;
}

AxiomReport audit_axioms(std::uint64_t seed, std::size_t trials, double tol) {
    AxiomReport out;
    auto& report = out.audit;
    const SubsystemLayout qubit({2});
    for (std::size_t trial = 0; trial < trials; ++trial) {
        Rng rng(splitmix64(~seed ^ splitmix64(trial)));
        const auto ch = random_qubit_channel(rng);
        const auto rho1 = random_mixed_state(2, rng, qubit);
        const auto rho2 = random_mixed_state(2, rng, qubit);
        const double w = rng.uniform();
        const std::string params = format_params(trial, w);

        const auto t1 = run_channel(ch, rho1);
        const auto t2 = run_channel(ch, rho2);
        const auto tm = run_channel(ch, DensityMatrix::mix(w, rho1, rho2));
        report.record("nonnegativity", params, tm.mutual_entanglement, tol);
        report.record("concavity_input", params,
                      tm.mutual_entanglement -
                          (w * t1.mutual_entanglement + (1.0 - w) * t2.mutual_entanglement),
                      tol);

        const double coherent_slack =
            tm.coherent_info - (w * t1.coherent_info + (1.0 - w) * t2.coherent_info);
        out.worst_coherent_slack = std::min(out.worst_coherent_slack, coherent_slack);
        if (coherent_slack < -tol) ++out.coherent_concavity_witnesses;

        // Convexity in the channel: mix two channels with weight w on a fixed input.
        const auto other = random_qubit_channel(rng);
        const auto ka = kraus_from_dilation(ch);
        const auto kb = kraus_from_dilation(other);
        std::vector<ComplexMatrix> mixed;
        for (const auto& k : ka.operators()) mixed.push_back(k * Complex(std::sqrt(w)));
        for (const auto& k : kb.operators()) mixed.push_back(k * Complex(std::sqrt(1.0 - w)));
        const auto tb = run_channel(other, rho1);
        const auto tmix = run_channel(KrausChannel(std::move(mixed)), rho1);
        report.record("convexity_channel", params,
                      w * t1.mutual_entanglement + (1.0 - w) * tb.mutual_entanglement -
                          tmix.mutual_entanglement,
                      tol);
        ++report.trials;
    }
    return out;
}

// ---------------------------------------------------------------------- Hamming

std::string_view to_string(HammingMode mode) {
    switch (mode) {
        case HammingMode::Classical: return "classical";
        case HammingMode::Quantum: return "quantum";
        case HammingMode::Entanglement: return "entanglement";
    }
    return "unknown";
}

HammingMode parse_hamming_mode(std::string_view name) {
    if (name == "classical") return HammingMode::Classical;
    if (name == "quantum") return HammingMode::Quantum;
    if (name == "entanglement") return HammingMode::Entanglement;
    throw std::invalid_argument("unknown Hamming mode: " + std::string(name));
}

HammingVerdict hamming_holds(const HammingQuery& query) {
    if (query.t > query.n || query.k < 1 || query.n < 1)
        throw std::invalid_argument("invalid Hamming query");
    const BigInt needed = (BigInt(1) << query.k) * syndrome_count(query.n, query.t, query.mode);
    const BigInt space = BigInt(1) << coding_space_bits(query.n, query.mode);
    return {needed <= space, static_cast<double>(coding_space_bits(query.n, query.mode)) -
                                 log2_big(needed)};
}

std::size_t max_message_bits(std::size_t n, std::size_t t, HammingMode mode) {
    if (t > n) throw std::invalid_argument("invalid Hamming query");
    const BigInt v = syndrome_count(n, t, mode);
    const std::size_t msb = boost::multiprecision::msb(v);
    const std::size_t ceil_log2 = (v == (BigInt(1) << msb)) ? msb : msb + 1;
    const std::size_t m = coding_space_bits(n, mode);
    return m > ceil_log2 ? m - ceil_log2 : 0;
}

double rate_bound(double p, HammingMode mode) {
    switch (mode) {
        case HammingMode::Classical: return relative_entropy_binary(p, 0.5);
        case HammingMode::Quantum: return relative_entropy_binary(p, 0.75) - 1.0;
        case HammingMode::Entanglement: return relative_entropy_binary(p, 0.75);
    }
    throw std::invalid_argument("unknown Hamming mode");
}

std::vector<RateRow> asymptotic_consistency(double p, std::span<const std::size_t> block_lengths,
                                            HammingMode mode) {
    if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("p must lie in (0, 1)");
    const double limit = rate_bound(p, mode);
    std::vector<RateRow> rows;
    for (std::size_t n : block_lengths) {
        if (n < 10) throw std::invalid_argument("block length must be at least 10");
        const auto t = static_cast<std::size_t>(std::floor(p * static_cast<double>(n) + 1e-9));
        const std::size_t k = max_message_bits(n, t, mode);
        rows.push_back({n, t, k, static_cast<double>(k) / static_cast<double>(n), limit});
    }
    return rows;
}

}  // namespace vncap
