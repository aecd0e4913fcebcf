#pragma once

// The single-qubit depolarizing channel worked out in full: q-basis states,
// the minimal four-dimensional environment dilation, closed-form entropies
// for quantum and classical use, the dephasing variant and the noisy
// superdense-coding scenario.
//
// Basis convention: sigma_z |1> = |1>, i.e. sigma_z = diag(-1, 1). With it,
// sigma_x, -i sigma_y = sigma_x sigma_z and sigma_z map |Psi-(q)> onto
// |Phi-(q)>, |Phi+(1-q)> and |Psi+(1-q)> with no extra phases.

#include <array>
#include <span>
#include <vector>

#include "vncap/channel.hpp"
#include "vncap/entropy.hpp"
#include "vncap/qmat.hpp"

namespace vncap {

struct DepolParams {
    double p = 0.0;  // error probability
    double q = 0.5;  // input mixing, rho_Q = diag(q, 1 - q)

    DepolParams() = default;
    /// Throws unless both lie in [0, 1].
    DepolParams(double p, double q);
};

enum class QBasis { PhiMinus = 0, PhiPlus = 1, PsiMinus = 2, PsiPlus = 3 };

ComplexMatrix sigma_x();
ComplexMatrix sigma_z();
/// -i sigma_y in the convention above: |0> -> -|1>, |1> -> |0>.
ComplexMatrix minus_i_sigma_y();

/// (Phi-, Phi+, Psi-, Psi+) on two qubits.
std::array<PureState, 4> q_basis(double q);

/// rho_Q = diag(q, 1 - q) on one qubit.
DensityMatrix input_state(double q);

struct DepolarizingSetup {
    DilationChannel channel;  // Q(2) (x) E(4)
    PureState initial_qr;     // |Psi-(q)>, layout [Q, R]
};

DepolarizingSetup build_dilation(const DepolParams& params);
/// {1-p: 1, p/3: sigma_x, p/3: -i sigma_y, p/3: sigma_z}.
KrausChannel depolarizing_kraus(double p);

double depolarizing_delta(double p, double q);
/// S(Q'R') from the four-eigenvalue closed form.
double exchange_entropy(double p, double q);
double output_entropy(double p, double q);
double entanglement_fidelity_closed_form(double p, double q);

/// Transcript from closed forms only.
ChannelTranscript analytic_transcript(const DepolParams& params);

/// 2 - H2(p) - p log2 3.
double quantum_capacity(double p);
/// True when p > 3/4, beyond the fully depolarizing point.
bool beyond_full_depolarization(double p);

struct ClassicalUse {
    double mutual_info = 0;  // S(Q':R) = chi
    double loss = 0;         // S(X:E'|Q')
};

ClassicalUse classical_use_transcript(const DepolParams& params);
/// Same quantities from the 32-dimensional Q X R (x) E simulation.
ClassicalUse simulate_classical_use(const DepolParams& params);
/// 1 - H2(2p/3).
double classical_capacity(double p);

/// S(sum p_i rho_i) - sum p_i S(rho_i).
double kholevo_chi(const ProbVector& probs, std::span<const DensityMatrix> outputs);

struct Ensemble {
    ProbVector probs;
    std::vector<DensityMatrix> outputs;
};

/// {q: |0>, 1-q: |1>} sent through `channel`.
Ensemble classical_ensemble(const KrausChannel& channel, double q);

/// {sqrt(1-p) 1, sqrt(p) sigma_z}.
KrausChannel dephasing_kraus(double p);
/// 2 - H2(p).
double dephasing_mutual(double p);
/// I_Q of the dephasing Kraus pair on the maximally mixed input.
double simulate_dephasing_mutual(double p);

struct SuperdenseReport {
    double conditional_mutual = 0;  // S(R:Q'|C)
    double kholevo_chi = 0;         // S(RQ':C)
    double p = 0;
};

SuperdenseReport superdense_scenario(double p);
/// Root of quantum_capacity(p) = 1 on (0, 3/4), bisection to 1e-10.
double superdense_threshold();

}  // namespace vncap
