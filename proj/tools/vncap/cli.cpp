#include "vncap/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <exception>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "vncap/analysis.hpp"
#include "vncap/depolarizing.hpp"
#include "vncap/format.hpp"

namespace vncap::cli {

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct CapacityArgs {
    std::string channel = "depolarizing";
    std::string use = "quantum";
    std::optional<double> p;
    std::string kraus_path;
};

struct SweepArgs {
    std::string channel = "depolarizing";
    std::string use = "quantum";
    std::string method = "analytic";
    std::string p_range = "0:0.75:0.05";
    std::string q_range = "0:1:0.02";
};

struct AuditArgs {
    std::optional<unsigned long long> seed;
    std::size_t trials = 200;
    double tol = 1e-9;
};

struct HammingArgs {
    std::string mode;
    double p = 0.1;
    std::optional<std::size_t> n, k, t;
    std::vector<std::size_t> n_list{50, 100, 200, 400, 800};
};

struct SuperdenseArgs {
    std::optional<double> p;
    bool threshold = false;
};

void line(std::ostream& out, const char* key, double value) {
    out << key << ": " << format_number(value) << '\n';
}

KrausChannel named_channel(const std::string& name, double p) {
    return name == "dephasing" ? dephasing_kraus(p) : depolarizing_kraus(p);
}

int cmd_capacity(const CapacityArgs& a, std::ostream& out) {
    if (a.kraus_path.empty() && !a.p) throw UsageError("--p is required unless --kraus is given");
    const KrausChannel channel =
        a.kraus_path.empty() ? named_channel(a.channel, *a.p) : load_kraus_json(a.kraus_path);
    if (channel.input_dim() != 2) throw UsageError("capacity needs a single-qubit channel");

    CapacityResult best;
    if (a.use == "quantum") {
        best = maximize_capacity([&](double q) { return run_channel(channel, input_state(q)); });
    } else {
        best = maximize_objective([&](double q) {
            const auto e = classical_ensemble(channel, q);
            return kholevo_chi(e.probs, e.outputs);
        });
    }
    line(out, "capacity", best.value);
    line(out, "argmax_q", best.argmax_q);
    out << "evaluations: " << best.evaluations << '\n';
    if (!a.kraus_path.empty()) return kExitOk;

    const double p = *a.p;
    double closed = 0.0;
    if (a.channel == "depolarizing")
        closed = a.use == "quantum" ? quantum_capacity(p) : classical_capacity(p);
    else
        closed = a.use == "quantum" ? dephasing_mutual(p) : 1.0;
    line(out, "closed_form", closed);
    if (a.channel == "depolarizing" && beyond_full_depolarization(p))
        out << "note: p > 3/4 lies beyond the fully depolarizing point\n";
    return kExitOk;
}

int cmd_sweep(const SweepArgs& a, std::ostream& out) {
    std::vector<double> ps, qs;
    try {
        ps = parse_range(a.p_range, 0.05).values();
        qs = parse_range(a.q_range, 0.02).values();
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    const bool quantum = a.use == "quantum";
    const bool analytic = a.channel == "depolarizing" && a.method == "analytic";

    out << (quantum ? "p,q,S,S_prime,S_env,loss,I_Q,fidelity\n" : "p,q,mutual,loss\n");
    for (double p : ps) {
        const KrausChannel channel = named_channel(a.channel, p);
        for (double q : qs) {
            std::vector<double> row{p, q};
            if (quantum) {
                const ChannelTranscript t =
                    analytic ? analytic_transcript({p, q}) : run_channel(channel, input_state(q));
                row.insert(row.end(), {t.s_in, t.s_out, t.s_env, t.loss, t.mutual_entanglement,
                                       t.fidelity});
            } else if (a.channel == "depolarizing") {
                const ClassicalUse c =
                    analytic ? classical_use_transcript({p, q}) : simulate_classical_use({p, q});
                row.insert(row.end(), {c.mutual_info, c.loss});
            } else {
                const auto e = classical_ensemble(channel, q);
                const double chi = kholevo_chi(e.probs, e.outputs);
                row.insert(row.end(), {chi, binary_entropy(q) - chi});
            }
            for (std::size_t i = 0; i < row.size(); ++i)
                out << (i ? "," : "") << format_number(row[i]);
            out << '\n';
        }
    }
    return kExitOk;
}

int cmd_audit(const AuditArgs& a, std::ostream& out) {
    unsigned long long seed = kDefaultSeed;
    if (a.seed) {
        seed = *a.seed;
    } else if (const char* env = std::getenv("VN_SEED"); env && *env) {
        try {
            std::size_t used = 0;
            seed = std::stoull(env, &used);
            if (env[used] != '\0') throw std::invalid_argument(env);
        } catch (const std::exception&) {
            throw UsageError(std::string("VN_SEED is not an unsigned integer: ") + env);
        }
    }
    const AuditReport report = audit_inequalities(seed, a.trials, a.tol);

    nlohmann::ordered_json doc;
    doc["trials"] = report.trials;
    doc["violations"] = nlohmann::ordered_json::array();
    for (const auto& v : report.violations)
        doc["violations"].push_back({{"id", v.id}, {"params", v.params}, {"slack", v.slack}});
    doc["max_negative_slack"] = report.max_negative_slack;
    out << doc.dump(2) << '\n';
    return report.violations.empty() ? kExitOk : kExitViolation;
}

int cmd_hamming(const HammingArgs& a, std::ostream& out) {
    const HammingMode mode = parse_hamming_mode(a.mode);
    out << "mode: " << to_string(mode) << '\n';
    line(out, "p", a.p);
    line(out, "rate_bound", rate_bound(a.p, mode));

    if (a.n || a.t || a.k) {
        if (!a.n || !a.t) throw UsageError("--n and --t go together");
        out << "n: " << *a.n << "\nt: " << *a.t << '\n';
        if (a.k) {
            const HammingVerdict v = hamming_holds({*a.n, *a.k, *a.t, mode});
            out << "k: " << *a.k << "\nholds: " << (v.holds ? "true" : "false") << '\n';
            line(out, "slack_log2", v.slack_log2);
        } else {
            out << "max_k: " << max_message_bits(*a.n, *a.t, mode) << '\n';
        }
    }

    out << "n,t,k,rate,limit\n";
    for (const RateRow& r : asymptotic_consistency(a.p, a.n_list, mode))
        out << r.n << ',' << r.t << ',' << r.k << ',' << format_number(r.rate) << ','
            << format_number(r.limit) << '\n';
    return kExitOk;
}

int cmd_superdense(const SuperdenseArgs& a, std::ostream& out) {
    if (a.threshold && !a.p) {
        line(out, "threshold_p", superdense_threshold());
        return kExitOk;
    }
    if (!a.p) throw UsageError("superdense needs --p or --threshold");
    const SuperdenseReport r = superdense_scenario(*a.p);
    line(out, "p", r.p);
    line(out, "conditional_mutual", r.conditional_mutual);
    line(out, "kholevo_chi", r.kholevo_chi);
    line(out, "threshold_p", superdense_threshold());
    return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Entropy bookkeeping for noisy quantum channels", "vncap"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "vncap 0.1.0");

    const auto unit = CLI::Range(0.0, 1.0);
    const auto channels = CLI::IsMember({"depolarizing", "dephasing"});
    const auto uses = CLI::IsMember({"quantum", "classical"});

    CapacityArgs cap;
    auto* capacity = app.add_subcommand("capacity", "Maximize over diagonal inputs and compare to the closed form");
    capacity->add_option("--channel", cap.channel)->check(channels);
    capacity->add_option("--use", cap.use)->check(uses);
    capacity->add_option("--p", cap.p, "Error probability")->check(unit);
    capacity->add_option("--kraus", cap.kraus_path, "JSON file with single-qubit Kraus operators")
        ->check(CLI::ExistingFile);

    SweepArgs sw;
    auto* sweep = app.add_subcommand("sweep", "CSV over a (p, q) grid");
    sweep->add_option("--channel", sw.channel)->check(channels);
    sweep->add_option("--use", sw.use)->check(uses);
    sweep->add_option("--method", sw.method)->check(CLI::IsMember({"analytic", "simulate"}));
    sweep->add_option("--p", sw.p_range, "start[:stop[:step]]");
    sweep->add_option("--q", sw.q_range, "start[:stop[:step]]");

    AuditArgs au;
    auto* audit = app.add_subcommand("audit", "Randomized inequality audit, JSON report");
    audit->add_option("--seed", au.seed);
    audit->add_option("--trials", au.trials)->check(CLI::PositiveNumber);
    audit->add_option("--tol", au.tol)->check(CLI::NonNegativeNumber);

    HammingArgs hm;
    auto* hamming = app.add_subcommand("hamming", "Hamming bounds and rate table");
    hamming->add_option("--mode", hm.mode)
        ->required()
        ->check(CLI::IsMember({"classical", "quantum", "entanglement"}));
    hamming->add_option("--p", hm.p)->check(CLI::Range(0.0, 1.0).description("(0, 1)"));
    hamming->add_option("--n", hm.n);
    hamming->add_option("--k", hm.k);
    hamming->add_option("--t", hm.t);
    hamming->add_option("--n-list", hm.n_list)->delimiter(',');

    SuperdenseArgs sd;
    auto* superdense = app.add_subcommand("superdense", "Noisy superdense coding");
    superdense->add_option("--p", sd.p)->check(unit);
    superdense->add_flag("--threshold", sd.threshold);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (capacity->parsed()) return cmd_capacity(cap, out);
        if (sweep->parsed()) return cmd_sweep(sw, out);
        if (audit->parsed()) return cmd_audit(au, out);
        if (hamming->parsed()) return cmd_hamming(hm, out);
        return cmd_superdense(sd, out);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }
}

}  // namespace vncap::cli
