#pragma once

// Quantum channels in Kraus and unitary-dilation form, channel transcripts
// and the fidelity bounds that go with them.
//
// A dilation acts on Q (x) E with E starting in a fixed pure state. Running a
// channel purifies the input with a reference R of the same dimension as Q and
// produces a pure state laid out as [Q factors..., R factors..., E factors...].

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "vncap/entropy.hpp"
#include "vncap/qmat.hpp"

namespace vncap {

class KrausChannel {
public:
    /// Throws unless all operators are d x d and sum K^dagger K = I within 1e-10.
    explicit KrausChannel(std::vector<ComplexMatrix> operators);

    const std::vector<ComplexMatrix>& operators() const noexcept { return ops_; }
    std::size_t input_dim() const noexcept { return ops_.front().rows(); }

    DensityMatrix apply(const DensityMatrix& rho) const;
    /// Applies the channel to the listed factors of a multi-part state.
    DensityMatrix apply_on(const DensityMatrix& rho, std::span<const std::size_t> targets) const;

private:
    std::vector<ComplexMatrix> ops_;
};

class DilationChannel {
public:
    /// `unitary` acts on (input factors) (x) (environment factors).
    DilationChannel(ComplexMatrix unitary, std::vector<std::size_t> input_dims,
                    std::vector<std::size_t> env_dims, std::vector<Complex> env_initial);

    static DilationChannel identity(std::size_t dim);

    const ComplexMatrix& unitary() const noexcept { return u_; }
    const SubsystemLayout& input_layout() const noexcept { return in_; }
    const SubsystemLayout& env_layout() const noexcept { return env_; }
    std::size_t input_dim() const noexcept { return in_.total(); }
    std::size_t env_dim() const noexcept { return env_.total(); }
    const PureState& env_initial() const noexcept { return env0_; }

    DensityMatrix apply(const DensityMatrix& rho) const;

private:
    ComplexMatrix u_;
    SubsystemLayout in_;
    SubsystemLayout env_;
    PureState env0_;
};

struct ChannelTranscript {
    double s_in = 0;                 // S = S(R)
    double s_out = 0;                // S' = S(Q')
    double s_env = 0;                // S_e = S(E')
    double loss = 0;                 // L_Q = S(R:E'|Q')
    double mutual_entanglement = 0;  // I_Q = S(R:Q')
    double coherent_info = 0;        // I_e = S - L_Q
    double fidelity = 0;             // F_e = <QR| rho_Q'R |QR>
};

/// Largest deviation from L = S_e + S - S', I_Q + L = 2S and I_e = S - L.
double transcript_identity_error(const ChannelTranscript& t);

/// A channel run that keeps the full output state for audits.
struct ChannelRun {
    PureState initial;  // |QR>, layout [Q..., R...]
    PureState state;    // |Q'R'E'>, layout [Q..., R..., E...]
    std::size_t n_in = 0, n_ref = 0, n_env = 0;
    ChannelTranscript transcript;

    std::vector<std::size_t> input_factors() const;
    std::vector<std::size_t> reference_factors() const;
    std::vector<std::size_t> env_factors() const;
};

/// |QR> = sum_i sqrt(p_i) |v_i>|i> from the clamped eigendecomposition.
/// R is one factor of dimension dim(Q).
PureState purify(const DensityMatrix& rho_q);

/// Environment basis defaults to the computational one; otherwise the columns
/// of `env_basis` are used. Operators with Frobenius norm below 1e-14 are dropped.
KrausChannel kraus_from_dilation(const DilationChannel& ch);
KrausChannel kraus_from_dilation(const DilationChannel& ch, const ComplexMatrix& env_basis);
/// Stinespring dilation with one environment level per Kraus operator.
DilationChannel dilation_from_kraus(const KrausChannel& ch);

/// Runs the channel on an explicit purification. The first
/// ch.input_layout().factors() factors of `qr` are the channel input; the
/// rest form the reference. Throws std::logic_error if a transcript identity
/// fails by more than 1e-9.
ChannelRun run_on_purification(const DilationChannel& ch, const PureState& qr);
ChannelRun run_channel_full(const DilationChannel& ch, const DensityMatrix& rho_q);
ChannelTranscript run_channel(const DilationChannel& ch, const DensityMatrix& rho_q);
ChannelTranscript run_channel(const KrausChannel& ch, const DensityMatrix& rho_q);

/// <QR| rho_out |QR>. Throws if rho_in is not pure (top eigenvalue 1 within 1e-9).
double entanglement_fidelity(const DensityMatrix& rho_in, const DensityMatrix& rho_out);

/// ch2 after ch1 with independent environments E1 (x) E2.
DilationChannel chain(const DilationChannel& first, const DilationChannel& second);
/// ch1 on Q1 and ch2 on Q2; input layout [Q1..., Q2...], env [E1..., E2...].
DilationChannel parallel(const DilationChannel& a, const DilationChannel& b);

/// H2[F] + (1 - F) log2(d_q d_r - 1).
double schumacher_fano_bound(double fidelity, std::size_t d_q, std::size_t d_r);
/// 2 [H2(F) + (1 - F) log2(d - 1)].
double quantum_fano_bound(double fidelity, std::size_t code_dim);

/// {"kraus": [[[re, im], ...], ...]}, one flat row-major d x d list per operator.
KrausChannel kraus_from_json(std::string_view text);
KrausChannel load_kraus_json(const std::string& path);
std::string kraus_to_json(const KrausChannel& ch);

}  // namespace vncap
