#include "vncap/depolarizing.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "vncap/optimize.hpp"

namespace vncap {

namespace {

const double kLog2Of3 = std::log2(3.0);

ComplexMatrix projector(const PureState& s) { return s.projector(); }

double h(std::initializer_list<double> probs) {
    double sum = 0.0;
    for (double x : probs) sum += entropy_term(std::max(x, 0.0));
    return sum;
}

void check_probability(double p, const char* name) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument(std::string(name) + " outside [0, 1]");
}

}  // namespace

DepolParams::DepolParams(double p_, double q_) : p(p_), q(q_) {
    check_probability(p, "p");
    check_probability(q, "q");
}

ComplexMatrix sigma_x() { return {2, 2, {0.0, 1.0, 1.0, 0.0}}; }
ComplexMatrix sigma_z() { return {2, 2, {-1.0, 0.0, 0.0, 1.0}}; }
ComplexMatrix minus_i_sigma_y() { return sigma_x() * sigma_z(); }

std::array<PureState, 4> q_basis(double q) {
    check_probability(q, "q");
    const double a = std::sqrt(1.0 - q);
    const double b = std::sqrt(q);
    const SubsystemLayout two_qubits({2, 2});
    // index = 2 * (first bit) + (second bit)
    return {PureState({a, 0.0, 0.0, -b}, two_qubits),   // Phi-
            PureState({b, 0.0, 0.0, a}, two_qubits),    // Phi+
            PureState({0.0, -b, a, 0.0}, two_qubits),   // Psi-
            PureState({0.0, a, b, 0.0}, two_qubits)};   // Psi+
}

DensityMatrix input_state(double q) {
    check_probability(q, "q");
    const double d[] = {q, 1.0 - q};
    return DensityMatrix::diagonal(d, SubsystemLayout({2}));
}

DepolarizingSetup build_dilation(const DepolParams& params) {
    const auto basis = q_basis(params.q);
    const auto& phi_m = basis[static_cast<int>(QBasis::PhiMinus)];
    const auto& phi_p = basis[static_cast<int>(QBasis::PhiPlus)];
    const auto& psi_m = basis[static_cast<int>(QBasis::PsiMinus)];
    const auto& psi_p = basis[static_cast<int>(QBasis::PsiPlus)];

    ComplexMatrix u = tensor(ComplexMatrix::identity(2), projector(psi_m));
    u += tensor(sigma_x(), projector(phi_m));
    u += tensor(minus_i_sigma_y(), projector(phi_p));
    u += tensor(sigma_z(), projector(psi_p));

    const double a = std::sqrt(1.0 - params.p);
    const double b = std::sqrt(params.p / 3.0);
    std::vector<Complex> env(4);
    for (std::size_t i = 0; i < 4; ++i)
        env[i] = a * psi_m.amplitudes()[i] +
                 b * (phi_m.amplitudes()[i] + phi_p.amplitudes()[i] + psi_p.amplitudes()[i]);

    return {DilationChannel(std::move(u), {2}, {4}, std::move(env)), psi_m};
}

KrausChannel depolarizing_kraus(double p) {
    check_probability(p, "p");
    const Complex a = std::sqrt(1.0 - p);
    const Complex b = std::sqrt(p / 3.0);
    return KrausChannel(
        {ComplexMatrix::identity(2) * a, sigma_x() * b, minus_i_sigma_y() * b, sigma_z() * b});
}

double depolarizing_delta(double p, double q) {
    const double t = 1.0 - 2.0 * p / 3.0;
    const double radicand = t * t - 16.0 / 3.0 * p * (1.0 - p) * q * (1.0 - q);
    return std::sqrt(std::max(radicand, 0.0));
}

double exchange_entropy(double p, double q) {
    const double t = 1.0 - 2.0 * p / 3.0;
    const double delta = depolarizing_delta(p, q);
    return h({2.0 * p / 3.0 * (1.0 - q), 2.0 * p * q / 3.0, 0.5 * (t + delta), 0.5 * (t - delta)});
}

double output_entropy(double p, double q) {
    return binary_entropy(std::clamp(q + 2.0 * p / 3.0 * (1.0 - 2.0 * q), 0.0, 1.0));
}

double entanglement_fidelity_closed_form(double p, double q) {
    const double x = 1.0 - 2.0 * q;
    return 1.0 - p + p / 3.0 * x * x;
}

ChannelTranscript analytic_transcript(const DepolParams& params) {
    const double p = params.p, q = params.q;
    ChannelTranscript t;
    t.s_in = binary_entropy(q);
    t.s_out = output_entropy(p, q);
    t.s_env = exchange_entropy(p, q);
    t.loss = t.s_in - t.s_out + t.s_env;
    t.mutual_entanglement = 2.0 * t.s_in - t.loss;
    t.coherent_info = t.s_in - t.loss;
    t.fidelity = entanglement_fidelity_closed_form(p, q);
    return t;
}

double quantum_capacity(double p) {
    check_probability(p, "p");
    return 2.0 - binary_entropy(p) - p * kLog2Of3;
}

bool beyond_full_depolarization(double p) { return p > 0.75; }

ClassicalUse classical_use_transcript(const DepolParams& params) {
    const double p = params.p, q = params.q;
    const double f = 2.0 * p / 3.0;
    ClassicalUse c;
    c.loss = h({f * (1.0 - q), f * q, (1.0 - f) * (1.0 - q), (1.0 - f) * q}) - output_entropy(p, q);
    c.mutual_info = binary_entropy(q) - c.loss;
    return c;
}

ClassicalUse simulate_classical_use(const DepolParams& params) {
    const auto setup = build_dilation(params);
    const double a = std::sqrt(1.0 - params.q);
    const double b = std::sqrt(params.q);
    // |Psi-_X(q)> = sqrt(1-q)|110> - sqrt(q)|001> on Q X R
    std::vector<Complex> qxr(8);
    qxr[0b110] = a;
    qxr[0b001] = -b;
    const PureState initial(std::move(qxr), SubsystemLayout({2, 2, 2}));

    const PureState start = tensor(initial, setup.channel.env_initial());  // Q X R E
    constexpr std::size_t kQE[] = {0, 3};
    const PureState out = apply_local_unitary(setup.channel.unitary(), kQE, start);

    const double s_r = marginal_entropy(out, {2});
    const double s_q = marginal_entropy(out, {0});
    const double s_qr = marginal_entropy(out, {0, 2});
    const double s_xq = marginal_entropy(out, {0, 1});
    const double s_qe = marginal_entropy(out, {0, 3});
    const double s_xqe = marginal_entropy(out, {0, 1, 3});

    ClassicalUse c;
    c.mutual_info = s_r + s_q - s_qr;
    c.loss = s_xq + s_qe - s_q - s_xqe;
    return c;
}

double classical_capacity(double p) {
    check_probability(p, "p");
    return 1.0 - binary_entropy(2.0 * p / 3.0);
}

double kholevo_chi(const ProbVector& probs, std::span<const DensityMatrix> outputs) {
    if (probs.size() != outputs.size() || outputs.empty())
        throw std::invalid_argument("ensemble length mismatch");
    const std::size_t d = outputs.front().dim();
    ComplexMatrix avg(d, d);
    double avg_entropy = 0.0;
    for (std::size_t i = 0; i < outputs.size(); ++i) {
        if (outputs[i].dim() != d) throw std::invalid_argument("ensemble dimension mismatch");
        avg += outputs[i].matrix() * Complex(probs[i]);
        if (probs[i] > 0.0) avg_entropy += probs[i] * von_neumann_entropy(outputs[i]);
    }
    return von_neumann_entropy(DensityMatrix(std::move(avg), outputs.front().layout())) -
           avg_entropy;
}

Ensemble classical_ensemble(const KrausChannel& channel, double q) {
    check_probability(q, "q");
    if (channel.input_dim() != 2) throw std::invalid_argument("classical ensemble needs a qubit channel");
    const SubsystemLayout qubit({2});
    const double zero[] = {1.0, 0.0};
    const double one[] = {0.0, 1.0};
    return {ProbVector{q, 1.0 - q},
            {channel.apply(DensityMatrix::diagonal(zero, qubit)),
             channel.apply(DensityMatrix::diagonal(one, qubit))}};
}

KrausChannel dephasing_kraus(double p) {
    check_probability(p, "p");
    return KrausChannel(
        {ComplexMatrix::identity(2) * Complex(std::sqrt(1.0 - p)), sigma_z() * Complex(std::sqrt(p))});
}

double dephasing_mutual(double p) { return 2.0 - binary_entropy(p); }

double simulate_dephasing_mutual(double p) {
    return run_channel(dephasing_kraus(p), DensityMatrix::maximally_mixed(SubsystemLayout({2})))
        .mutual_entanglement;
}

SuperdenseReport superdense_scenario(double p) {
    const auto channel = depolarizing_kraus(p);
    const auto bell = q_basis(0.5);
    constexpr std::size_t kQ[] = {0};

    // C(4) (x) Q(2) (x) R(2)
    ComplexMatrix rho(16, 16);
    for (std::size_t c = 0; c < 4; ++c) {
        const auto sent = channel.apply_on(DensityMatrix(bell[c]), kQ);
        ComplexMatrix label(4, 4);
        label(c, c) = 0.25;
        rho += tensor(label, sent.matrix());
    }
    const DensityMatrix joint(std::move(rho), SubsystemLayout({4, 2, 2}));

    const std::size_t c_only[] = {0}, rc[] = {0, 2}, qc[] = {0, 1}, rq[] = {1, 2};
    const double s_c = marginal_entropy(joint, c_only);
    const double s_rc = marginal_entropy(joint, rc);
    const double s_qc = marginal_entropy(joint, qc);
    const double s_rq = marginal_entropy(joint, rq);
    const double s_all = von_neumann_entropy(joint);

    return {s_rc + s_qc - s_all - s_c, s_rq + s_c - s_all, p};
}

double superdense_threshold() {
    return bisect([](double p) { return quantum_capacity(p) - 1.0; }, 0.0, 0.75, 1e-10);
}

}  // namespace vncap
