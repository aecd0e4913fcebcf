#include "vncap/channel.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace vncap {

namespace {

constexpr double kCompletenessTol = 1e-10;
constexpr double kIdentityTol = 1e-9;

std::vector<std::size_t> range(std::size_t begin, std::size_t end) {
    std::vector<std::size_t> v(end - begin);
    std::iota(v.begin(), v.end(), begin);
    return v;
}

std::vector<std::size_t> concat(std::vector<std::size_t> a, const std::vector<std::size_t>& b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
}

double frobenius(const ComplexMatrix& m) {
    double s = 0.0;
    for (Complex x : m.entries()) s += std::norm(x);
    return std::sqrt(s);
}

// <psi| rho |psi>, real part.
double expectation(std::span<const Complex> psi, const ComplexMatrix& rho) {
    Complex acc = 0.0;
    for (std::size_t i = 0; i < psi.size(); ++i) {
        Complex row = 0.0;
        for (std::size_t j = 0; j < psi.size(); ++j) row += rho(i, j) * psi[j];
        acc += std::conj(psi[i]) * row;
    }
    return acc.real();
}

}  // namespace

// ----------------------------------------------------------------- KrausChannel

KrausChannel::KrausChannel(std::vector<ComplexMatrix> operators) : ops_(std::move(operators)) {
    if (ops_.empty()) throw std::invalid_argument("Kraus channel needs at least one operator");
    const std::size_t d = ops_.front().rows();
    ComplexMatrix sum(d, d);
    for (const auto& k : ops_) {
        if (!k.is_square() || k.rows() != d)
            throw std::invalid_argument("Kraus operators must all be d x d");
        sum += k.adjoint() * k;
    }
    if (max_abs_diff(sum, ComplexMatrix::identity(d)) > kCompletenessTol)
        throw std::invalid_argument("Kraus operators are not trace preserving");
}

DensityMatrix KrausChannel::apply(const DensityMatrix& rho) const {
    if (rho.dim() != input_dim()) throw std::invalid_argument("channel dimension mismatch");
    ComplexMatrix out(rho.dim(), rho.dim());
    for (const auto& k : ops_) out += k * rho.matrix() * k.adjoint();
    return {std::move(out), rho.layout()};
}

DensityMatrix KrausChannel::apply_on(const DensityMatrix& rho,
                                     std::span<const std::size_t> targets) const {
    ComplexMatrix out(rho.dim(), rho.dim());
    for (const auto& k : ops_) {
        const auto full = embed_operator(k, targets, rho.layout());
        out += full * rho.matrix() * full.adjoint();
    }
    return {std::move(out), rho.layout()};
}

// -------------------------------------------------------------- DilationChannel

DilationChannel::DilationChannel(ComplexMatrix unitary, std::vector<std::size_t> input_dims,
                                 std::vector<std::size_t> env_dims,
                                 std::vector<Complex> env_initial)
    : u_(std::move(unitary)),
      in_(std::move(input_dims)),
      env_(std::move(env_dims)),
      env0_(std::move(env_initial), env_) {
    if (!u_.is_square() || u_.rows() != in_.total() * env_.total())
        throw std::invalid_argument("dilation unitary does not match Q (x) E");
    if (!is_unitary(u_)) throw std::invalid_argument("not unitary");
}

DilationChannel DilationChannel::identity(std::size_t dim) {
    return {ComplexMatrix::identity(dim), {dim}, {1}, {Complex(1.0)}};
}

DensityMatrix DilationChannel::apply(const DensityMatrix& rho) const {
    if (rho.dim() != input_dim()) throw std::invalid_argument("channel dimension mismatch");
    const auto full = tensor(rho.matrix(), env0_.projector());
    const auto evolved = u_ * full * u_.adjoint();
    const SubsystemLayout layout({input_dim(), env_dim()});
    const auto reduced = partial_trace(DensityMatrix(evolved, layout), {0});
    return {reduced.matrix(), rho.layout()};
}

// ------------------------------------------------------------------- transcript

double transcript_identity_error(const ChannelTranscript& t) {
    return std::max({std::abs(t.loss - (t.s_env + t.s_in - t.s_out)),
                     std::abs(t.mutual_entanglement + t.loss - 2.0 * t.s_in),
                     std::abs(t.coherent_info - (t.s_in - t.loss))});
}

std::vector<std::size_t> ChannelRun::input_factors() const { return range(0, n_in); }
std::vector<std::size_t> ChannelRun::reference_factors() const {
    return range(n_in, n_in + n_ref);
}
std::vector<std::size_t> ChannelRun::env_factors() const {
    return range(n_in + n_ref, n_in + n_ref + n_env);
}

PureState purify(const DensityMatrix& rho_q) {
    const auto es = hermitian_eigensystem(rho_q.matrix());
    std::vector<double> p = es.values;
    double sum = 0.0;
    for (double& x : p) {
        if (x < -1e-10) throw std::domain_error("density matrix has a negative eigenvalue");
        x = std::max(x, 0.0);
        sum += x;
    }
    const std::size_t d = rho_q.dim();
    std::vector<Complex> amps(d * d);
    for (std::size_t k = 0; k < d; ++k) {
        const double w = std::sqrt(p[k] / sum);
        if (w == 0.0) continue;
        for (std::size_t i = 0; i < d; ++i) amps[i * d + k] = w * es.vectors(i, k);
    }
    return PureState::normalized(std::move(amps), rho_q.layout().concat(SubsystemLayout({d})));
}

KrausChannel kraus_from_dilation(const DilationChannel& ch) {
    return kraus_from_dilation(ch, ComplexMatrix::identity(ch.env_dim()));
}

KrausChannel kraus_from_dilation(const DilationChannel& ch, const ComplexMatrix& env_basis) {
    const std::size_t d = ch.input_dim();
    const std::size_t m = ch.env_dim();
    if (env_basis.rows() != m || env_basis.cols() != m || !is_unitary(env_basis))
        throw std::invalid_argument("environment basis must be an orthonormal m x m matrix");
    const auto& u = ch.unitary();
    const auto e0 = ch.env_initial().amplitudes();

    // V(i*m + e', j) = <i, e'| U |j, e0>
    ComplexMatrix v(d * m, d);
    for (std::size_t r = 0; r < d * m; ++r)
        for (std::size_t j = 0; j < d; ++j) {
            Complex acc = 0.0;
            for (std::size_t e = 0; e < m; ++e) acc += u(r, j * m + e) * e0[e];
            v(r, j) = acc;
        }

    std::vector<ComplexMatrix> ops;
    for (std::size_t k = 0; k < m; ++k) {
        ComplexMatrix op(d, d);
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j) {
                Complex acc = 0.0;
                for (std::size_t e = 0; e < m; ++e) acc += std::conj(env_basis(e, k)) * v(i * m + e, j);
                op(i, j) = acc;
            }
        if (frobenius(op) >= 1e-14) ops.push_back(std::move(op));
    }
    return KrausChannel(std::move(ops));
}

DilationChannel dilation_from_kraus(const KrausChannel& ch) {
    const std::size_t d = ch.input_dim();
    const std::size_t m = ch.operators().size();
    const std::size_t n = d * m;

    std::vector<std::vector<Complex>> cols(n);
    std::vector<bool> filled(n, false);
    std::vector<std::size_t> basis_cols;
    for (std::size_t j = 0; j < d; ++j) {
        std::vector<Complex> c(n);
        for (std::size_t k = 0; k < m; ++k)
            for (std::size_t i = 0; i < d; ++i) c[i * m + k] = ch.operators()[k](i, j);
        cols[j * m] = std::move(c);
        filled[j * m] = true;
        basis_cols.push_back(j * m);
    }

    // Complete the isometry to a unitary with Gram-Schmidt on unit vectors.
    std::size_t next_slot = 0;
    for (std::size_t cand = 0; cand < n && basis_cols.size() < n; ++cand) {
        std::vector<Complex> c(n);
        c[cand] = 1.0;
        for (int pass = 0; pass < 2; ++pass)
            for (std::size_t b : basis_cols) {
                Complex proj = 0.0;
                for (std::size_t r = 0; r < n; ++r) proj += std::conj(cols[b][r]) * c[r];
                for (std::size_t r = 0; r < n; ++r) c[r] -= proj * cols[b][r];
            }
        double nn = 0.0;
        for (Complex x : c) nn += std::norm(x);
        nn = std::sqrt(nn);
        if (nn < 1e-6) continue;
        for (Complex& x : c) x /= nn;
        while (filled[next_slot]) ++next_slot;
        cols[next_slot] = std::move(c);
        filled[next_slot] = true;
        basis_cols.push_back(next_slot);
    }

    ComplexMatrix u(n, n);
    for (std::size_t c = 0; c < n; ++c)
        for (std::size_t r = 0; r < n; ++r) u(r, c) = cols[c][r];
    std::vector<Complex> env0(m);
    env0[0] = 1.0;
    return {std::move(u), {d}, {m}, std::move(env0)};
}

ChannelRun run_on_purification(const DilationChannel& ch, const PureState& qr) {
    const auto& in = ch.input_layout();
    const std::size_t n_in = in.factors();
    const auto& qr_dims = qr.layout().dims();
    if (qr_dims.size() < n_in || !std::equal(in.dims().begin(), in.dims().end(), qr_dims.begin()))
        throw std::invalid_argument("channel dimension mismatch");

    ChannelRun run{qr, tensor(qr, ch.env_initial()), n_in, qr_dims.size() - n_in,
                   ch.env_layout().factors(), {}};
    const auto q = run.input_factors();
    const auto r = run.reference_factors();
    const auto e = run.env_factors();
    run.state = PureState(apply_local(ch.unitary(), concat(q, e), run.state.layout(),
                                      run.state.amplitudes()),
                          run.state.layout());

    auto& t = run.transcript;
    t.s_in = marginal_entropy(run.state, r);
    t.s_out = marginal_entropy(run.state, q);
    t.s_env = marginal_entropy(run.state, e);
    const double s_rq = marginal_entropy(run.state, concat(q, r));
    const double s_qe = marginal_entropy(run.state, concat(q, e));
    // S(R:E'|Q') with S(Q'R'E') = 0 for the pure output.
    t.loss = s_rq + s_qe - t.s_out;
    t.mutual_entanglement = t.s_in + t.s_out - s_rq;
    t.coherent_info = t.s_in - t.loss;
    t.fidelity = expectation(qr.amplitudes(), reduced_state(run.state, concat(q, r)).matrix());

    if (transcript_identity_error(t) > kIdentityTol)
        throw std::logic_error("channel transcript identities violated");
    return run;
}

ChannelRun run_channel_full(const DilationChannel& ch, const DensityMatrix& rho_q) {
    if (rho_q.dim() != ch.input_dim()) throw std::invalid_argument("channel dimension mismatch");
    const SubsystemLayout layout = ch.input_layout();
    const DensityMatrix rho(rho_q.matrix(), layout);
    return run_on_purification(ch, purify(rho));
}

ChannelTranscript run_channel(const DilationChannel& ch, const DensityMatrix& rho_q) {
    return run_channel_full(ch, rho_q).transcript;
}

ChannelTranscript run_channel(const KrausChannel& ch, const DensityMatrix& rho_q) {
    return run_channel(dilation_from_kraus(ch), rho_q);
}

double entanglement_fidelity(const DensityMatrix& rho_in, const DensityMatrix& rho_out) {
    if (rho_in.dim() != rho_out.dim()) throw std::invalid_argument("state dimension mismatch");
    const auto es = hermitian_eigensystem(rho_in.matrix());
    if (std::abs(es.values.front() - 1.0) > 1e-9) throw std::invalid_argument("input is not pure");
    std::vector<Complex> psi(rho_in.dim());
    for (std::size_t i = 0; i < psi.size(); ++i) psi[i] = es.vectors(i, 0);
    const double f = expectation(psi, rho_out.matrix());
    if (f < -1e-10 || f > 1.0 + 1e-10) throw std::logic_error("fidelity outside [0, 1]");
    return std::clamp(f, 0.0, 1.0);
}

DilationChannel chain(const DilationChannel& first, const DilationChannel& second) {
    if (first.input_dim() != second.input_dim())
        throw std::invalid_argument("chained channel dimensions do not match");
    const auto& in = first.input_layout().dims();
    const auto& e1 = first.env_layout().dims();
    const auto& e2 = second.env_layout().dims();
    const std::size_t n_in = in.size(), n_e1 = e1.size(), n_e2 = e2.size();

    std::vector<std::size_t> env = e1;
    env.insert(env.end(), e2.begin(), e2.end());
    const SubsystemLayout layout(concat(in, env));

    const auto q = range(0, n_in);
    const auto u1 = embed_operator(first.unitary(), concat(q, range(n_in, n_in + n_e1)), layout);
    const auto u2 = embed_operator(second.unitary(),
                                   concat(q, range(n_in + n_e1, n_in + n_e1 + n_e2)), layout);
    auto env0 = tensor(first.env_initial().amplitudes(), second.env_initial().amplitudes());
    return {u2 * u1, in, std::move(env), std::move(env0)};
}

DilationChannel parallel(const DilationChannel& a, const DilationChannel& b) {
    const auto& qa = a.input_layout().dims();
    const auto& qb = b.input_layout().dims();
    const auto& ea = a.env_layout().dims();
    const auto& eb = b.env_layout().dims();
    const std::size_t n_qa = qa.size(), n_qb = qb.size(), n_ea = ea.size(), n_eb = eb.size();

    const auto in = concat(qa, qb);
    const auto env = concat(ea, eb);
    const SubsystemLayout layout(concat(in, env));
    const std::size_t e_start = n_qa + n_qb;

    const auto ua = embed_operator(a.unitary(),
                                   concat(range(0, n_qa), range(e_start, e_start + n_ea)), layout);
    const auto ub = embed_operator(
        b.unitary(), concat(range(n_qa, n_qa + n_qb), range(e_start + n_ea, e_start + n_ea + n_eb)),
        layout);
    auto env0 = tensor(a.env_initial().amplitudes(), b.env_initial().amplitudes());
    return {ub * ua, in, env, std::move(env0)};
}

double schumacher_fano_bound(double fidelity, std::size_t d_q, std::size_t d_r) {
    const std::size_t d = d_q * d_r;
    if (d < 2) throw std::invalid_argument("need d_q d_r >= 2");
    return binary_entropy(fidelity) + (1.0 - fidelity) * std::log2(static_cast<double>(d - 1));
}

double quantum_fano_bound(double fidelity, std::size_t code_dim) {
    if (code_dim < 2) throw std::invalid_argument("code dimension must be at least 2");
    return 2.0 * (binary_entropy(fidelity) +
                  (1.0 - fidelity) * std::log2(static_cast<double>(code_dim - 1)));
}

// ------------------------------------------------------------------------- JSON

KrausChannel kraus_from_json(std::string_view text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::invalid_argument(std::string("malformed channel JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("kraus") || !doc["kraus"].is_array() ||
        doc["kraus"].empty())
        throw std::invalid_argument("channel JSON needs a non-empty \"kraus\" array");

    std::vector<ComplexMatrix> ops;
    for (const auto& op : doc["kraus"]) {
        if (!op.is_array()) throw std::invalid_argument("Kraus operator must be an array");
        const std::size_t n = op.size();
        const auto d = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(n))));
        if (d == 0 || d * d != n) throw std::invalid_argument("Kraus operator is not d x d");
        std::vector<Complex> entries;
        entries.reserve(n);
        for (const auto& z : op) {
            if (!z.is_array() || z.size() != 2 || !z[0].is_number() || !z[1].is_number())
                throw std::invalid_argument("matrix entries must be [re, im] pairs");
            entries.emplace_back(z[0].get<double>(), z[1].get<double>());
        }
        ops.emplace_back(d, d, std::move(entries));
    }
    return KrausChannel(std::move(ops));
}

KrausChannel load_kraus_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return kraus_from_json(buf.str());
}

std::string kraus_to_json(const KrausChannel& ch) {
    nlohmann::json ops = nlohmann::json::array();
    for (const auto& k : ch.operators()) {
        nlohmann::json flat = nlohmann::json::array();
        for (Complex z : k.entries()) flat.push_back({z.real(), z.imag()});
        ops.push_back(std::move(flat));
    }
    return nlohmann::json{{"kraus", std::move(ops)}}.dump();
}

}  // namespace vncap
