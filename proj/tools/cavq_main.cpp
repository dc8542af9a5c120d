// Experiment runner: reproducible, config-driven runs of the library's
// simulations with machine-readable CSV/JSON output.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>

#include "cavq/dfs.hpp"
#include "cavq/hamiltonians.hpp"
#include "cavq/paritymeter.hpp"
#include "cavq/propagation.hpp"
#include "cavq/protocol.hpp"
#include "cavq/version.hpp"

using json = nlohmann::ordered_json;
using namespace cavq;

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;
constexpr int kExitConfig = 2;
constexpr int kExitConvergence = 3;

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ConvergenceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    std::string experiment;
    std::uint64_t seed = 0;
    std::size_t n_max = 14;
    std::string output_path;       // empty: stdout
    std::string output_format = "csv";
    json parameters = json::object();

    json resolved() const {
        json out;
        out["experiment"] = experiment;
        out["seed"] = seed;
        out["n_max"] = n_max;
        out["output_format"] = output_format;
        out["parameters"] = parameters;
        return out;
    }
};

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void check_allowed_keys(const json& obj, const std::set<std::string>& allowed,
                        const std::string& where) {
    for (const auto& item : obj.items())
        if (!allowed.contains(item.key()))
            throw ConfigError("unknown " + where + " field: " + item.key());
}

double param_number(const json& params, const std::string& key, std::optional<double> fallback) {
    if (!params.contains(key)) {
        if (fallback) return *fallback;
        throw ConfigError("missing required parameter: " + key);
    }
    if (!params[key].is_number()) throw ConfigError("parameter must be a number: " + key);
    return params[key].get<double>();
}

std::vector<double> param_number_list(const json& params, const std::string& key) {
    if (!params.contains(key) || !params[key].is_array() || params[key].empty())
        throw ConfigError("missing required list parameter: " + key);
    std::vector<double> out;
    for (const auto& v : params[key]) {
        if (!v.is_number()) throw ConfigError("parameter list must hold numbers: " + key);
        out.push_back(v.get<double>());
    }
    return out;
}

std::string param_string(const json& params, const std::string& key, const std::string& fallback) {
    if (!params.contains(key)) return fallback;
    if (!params[key].is_string()) throw ConfigError("parameter must be a string: " + key);
    return params[key].get<std::string>();
}

bool param_bool(const json& params, const std::string& key, bool fallback) {
    if (!params.contains(key)) return fallback;
    if (!params[key].is_boolean()) throw ConfigError("parameter must be a boolean: " + key);
    return params[key].get<bool>();
}

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
    json extra = json::object();  // experiment-level scalars (summaries)
};

void emit(const RunConfig& cfg, const Table& table) {
    std::ostringstream out;
    if (cfg.output_format == "csv") {
        out << "# cavq " << kVersion << "\n";
        out << "# config " << cfg.resolved().dump() << "\n";
        for (const auto& item : table.extra.items())
            out << "# " << item.key() << " " << item.value().dump() << "\n";
        for (std::size_t i = 0; i < table.header.size(); ++i)
            out << table.header[i] << (i + 1 < table.header.size() ? "," : "\n");
        for (const auto& row : table.rows)
            for (std::size_t i = 0; i < row.size(); ++i)
                out << row[i] << (i + 1 < row.size() ? "," : "\n");
    } else {
        json doc;
        doc["version"] = kVersion;
        doc["config"] = cfg.resolved();
        for (const auto& item : table.extra.items()) doc[item.key()] = item.value();
        json rows = json::array();
        for (const auto& row : table.rows) {
            json r;
            for (std::size_t i = 0; i < row.size(); ++i) {
                // numbers were preformatted; keep them as strings for
                // byte-stable output
                r[table.header[i]] = row[i];
            }
            rows.push_back(std::move(r));
        }
        doc["rows"] = std::move(rows);
        out << doc.dump(2) << "\n";
    }
    if (cfg.output_path.empty()) {
        std::cout << out.str();
    } else {
        std::ofstream f(cfg.output_path, std::ios::binary);
        if (!f) throw ConfigError("cannot open output file: " + cfg.output_path);
        f << out.str();
    }
}

// ---------------------------------------------------------------------------
// effective-vs-exact: Jx^2 phase accumulated by the driven cavity coupling

Table run_effective_vs_exact(const RunConfig& cfg) {
    check_allowed_keys(cfg.parameters,
                       {"beta", "delta_over_beta", "delta_t_over_2pi", "devices", "steps",
                        "check_convergence", "convergence_tol"},
                       "parameter");
    const double beta = param_number(cfg.parameters, "beta", 0.05);
    const auto ratios = param_number_list(cfg.parameters, "delta_over_beta");
    const auto taus = param_number_list(cfg.parameters, "delta_t_over_2pi");
    const auto devices = static_cast<std::size_t>(param_number(cfg.parameters, "devices", 2));
    const auto steps = static_cast<std::size_t>(param_number(cfg.parameters, "steps", 400));
    const bool check_conv = param_bool(cfg.parameters, "check_convergence", true);
    const double conv_tol = param_number(cfg.parameters, "convergence_tol", 1e-6);
    if (devices < 1) throw ConfigError("devices must be >= 1");
    if (steps < 1) throw ConfigError("steps must be >= 1");
    if (beta < 0.0) throw ConfigError("beta must be nonnegative");
    if (conv_tol <= 0.0) throw ConfigError("convergence_tol must be positive");

    Table t;
    t.header = {"delta_over_beta", "delta_t_over_2pi", "n_max", "overlap_with_effective",
                "cavity_factorization_overlap"};

    for (const double ratio : ratios) {
        if (ratio <= 0.0) throw ConfigError("delta_over_beta entries must be positive");
        const double delta = ratio * beta;
        for (const double tau : taus) {
            ham::FluxConfig fc;
            fc.e_j = 1.0;
            fc.g = beta;
            fc.omega_c = 1.0;
            fc.omega = fc.omega_c + delta;
            std::vector<ham::FluxConfig> cfgs(devices, fc);
            const ham::EffectiveParams params = ham::EffectiveParams::from_config(fc);
            const double horizon = tau * kTwoPi / delta;

            auto run = [&](std::size_t nmax, std::size_t nsteps) {
                const auto sampler = [&](double time) {
                    return ham::rwa_hamiltonian(cfgs, time, params, nmax);
                };
                const OperatorMatrix u =
                    propagate_timedep(sampler, 0.0, horizon, nsteps, fc.hbar);
                const OperatorMatrix udev =
                    ham::effective_propagator(PauliAxis::X, devices, params.chi, horizon, fc.hbar);
                const double overlap = trace_overlap(subsystem_block(u, "cav", 0, 0), udev);
                const double fact = sector_factorization_overlap(u, "cav");
                return std::make_pair(overlap, fact);
            };

            const auto [overlap, fact] = run(cfg.n_max, steps);
            if (check_conv && beta > 0.0) {
                // re-run at doubled steps and n_max + 10; for the second-order
                // stepper the Richardson-extrapolated remaining error is
                // (4/3) of the observed change
                const auto [overlap2, fact2] = run(cfg.n_max + 10, steps * 2);
                const double est = (4.0 / 3.0) *
                                   std::max(std::abs(overlap - overlap2), std::abs(fact - fact2));
                if (est > conv_tol)
                    throw ConvergenceError(
                        "overlap not converged in n_max/steps (estimated error " +
                        fmt_double(est) + " > " + fmt_double(conv_tol) + ") at delta_over_beta=" +
                        fmt_double(ratio) + ", delta_t_over_2pi=" + fmt_double(tau));
            }
            t.rows.push_back({fmt_double(ratio), fmt_double(tau), std::to_string(cfg.n_max),
                              fmt_double(overlap), fmt_double(fact)});
        }
    }
    return t;
}

// ---------------------------------------------------------------------------
// dfs-dephasing: collective-dephasing ensemble vs encoded and bare states

Table run_dfs_dephasing(const RunConfig& cfg) {
    check_allowed_keys(cfg.parameters, {"ensemble_size"}, "parameter");
    const auto ensemble =
        static_cast<std::size_t>(param_number(cfg.parameters, "ensemble_size", std::nullopt));
    if (ensemble < 1) throw ConfigError("ensemble_size must be >= 1");

    Rng rng(cfg.seed);
    const double s = 1.0 / std::sqrt(2.0);
    const dfs::LogicalQubit q{"d0", "d1"};
    const StateVector encoded = dfs::encode(cd{s, 0}, cd{s, 0}, q);
    const StateVector bell = StateVector::normalized(
        q.pair_layout(), {cd{s, 0}, cd{0, 0}, cd{0, 0}, cd{s, 0}});
    const StateVector plus = StateVector::normalized(
        q.pair_layout(), {cd{0.5, 0}, cd{0.5, 0}, cd{0.5, 0}, cd{0.5, 0}});

    cd enc_coh{0, 0};
    cd bell_coh{0, 0};
    cd plus_coh{0, 0};
    for (std::size_t k = 0; k < ensemble; ++k) {
        const double phi = rng.uniform(0.0, kTwoPi);
        const OperatorMatrix u = dfs::collective_dephasing(phi, 2);
        const StateVector e = apply(u, encoded);
        enc_coh += e.amplitude(1) * std::conj(e.amplitude(2));
        const StateVector b = apply(u, bell);
        bell_coh += b.amplitude(0) * std::conj(b.amplitude(3));
        const StateVector p = apply(u, plus);
        // single-device coherence <0|Tr_2 rho|1>
        plus_coh += p.amplitude(0) * std::conj(p.amplitude(2)) +
                    p.amplitude(1) * std::conj(p.amplitude(3));
    }
    const double inv = 1.0 / static_cast<double>(ensemble);

    Table t;
    t.header = {"state_kind", "ensemble_size", "residual_coherence"};
    t.rows.push_back({"encoded", std::to_string(ensemble), fmt_double(std::abs(enc_coh) * inv)});
    t.rows.push_back({"bare_bell", std::to_string(ensemble), fmt_double(std::abs(bell_coh) * inv)});
    t.rows.push_back({"bare_plus", std::to_string(ensemble), fmt_double(std::abs(plus_coh) * inv)});
    return t;
}

// ---------------------------------------------------------------------------
// cnot: branch report of the measurement-based gate

proto::CnotInputs preset_inputs(const std::string& name) {
    const cd one{1, 0};
    const cd nil{0, 0};
    if (name == "basis-00") return {one, nil, one, nil};
    if (name == "basis-01") return {one, nil, nil, one};
    if (name == "basis-10") return {nil, one, one, nil};
    if (name == "basis-11") return {nil, one, nil, one};
    if (name == "generic") {
        proto::CnotInputs in;
        in.alpha = cd{0.6, 0.0};
        in.zeta = cd{0.0, 0.8};
        in.xi = cd{0.5, 0.5};
        in.tau = std::polar(1.0 / std::sqrt(2.0), 0.44879895051282760549);  // pi/7
        return in;
    }
    throw ConfigError("unknown cnot preset: " + name);
}

const char* parity_kind_name(meter::ParityKind k) {
    switch (k) {
        case meter::ParityKind::EvenPP: return "even_pp";
        case meter::ParityKind::EvenMM: return "even_mm";
        case meter::ParityKind::Even: return "even";
        case meter::ParityKind::Odd: return "odd";
    }
    return "?";
}

Table run_cnot(const RunConfig& cfg) {
    check_allowed_keys(cfg.parameters, {"meter_mode", "preset", "amplitudes"}, "parameter");
    const std::string mode_name = param_string(cfg.parameters, "meter_mode", "ideal");
    proto::MeterMode mode;
    if (mode_name == "ideal")
        mode = proto::MeterMode::Ideal;
    else if (mode_name == "physical")
        mode = proto::MeterMode::Physical;
    else
        throw ConfigError("meter_mode must be \"ideal\" or \"physical\"");

    proto::CnotInputs in;
    if (cfg.parameters.contains("amplitudes")) {
        const json& a = cfg.parameters["amplitudes"];
        check_allowed_keys(a,
                           {"alpha_re", "alpha_im", "zeta_re", "zeta_im", "xi_re", "xi_im",
                            "tau_re", "tau_im"},
                           "amplitude");
        in.alpha = cd{param_number(a, "alpha_re", 0.0), param_number(a, "alpha_im", 0.0)};
        in.zeta = cd{param_number(a, "zeta_re", 0.0), param_number(a, "zeta_im", 0.0)};
        in.xi = cd{param_number(a, "xi_re", 0.0), param_number(a, "xi_im", 0.0)};
        in.tau = cd{param_number(a, "tau_re", 0.0), param_number(a, "tau_im", 0.0)};
        if (std::abs(std::norm(in.alpha) + std::norm(in.zeta) - 1.0) > 1e-12 ||
            std::abs(std::norm(in.xi) + std::norm(in.tau) - 1.0) > 1e-12)
            throw ConfigError("amplitudes: each logical pair must be normalized");
    } else {
        in = preset_inputs(param_string(cfg.parameters, "preset", "generic"));
    }

    Table t;
    t.header = {"p1", "p2", "m", "p1_kind", "p2_kind", "probability", "fidelity_to_ideal_cnot",
                "correction_c", "correction_t"};
    for (const proto::BranchRecord& b : proto::run_cnot_enumerate(in, mode)) {
        t.rows.push_back({std::to_string(b.p1.parity_bit()), std::to_string(b.p2.parity_bit()),
                          std::to_string(b.m), parity_kind_name(b.p1.kind),
                          parity_kind_name(b.p2.kind), fmt_double(b.probability),
                          fmt_double(proto::branch_fidelity(b, in)),
                          b.correction_c == proto::GateOnC::Z ? "Z" : "I",
                          b.correction_t == proto::GateOnT::X ? "X" : "I"});
    }
    t.extra["summary_process_fidelity"] = fmt_double(proto::process_fidelity(mode, cfg.seed));
    return t;
}

// ---------------------------------------------------------------------------
// parity-demo: switching-current readout of the sigma_x product/entangled states

Table run_parity_demo(const RunConfig& cfg) {
    check_allowed_keys(cfg.parameters, {"i1", "i2", "ic", "ib", "armed", "disarmed"}, "parameter");
    const double i1 = param_number(cfg.parameters, "i1", std::nullopt);
    const double i2 = param_number(cfg.parameters, "i2", std::nullopt);
    const double ic = param_number(cfg.parameters, "ic", std::nullopt);
    const bool armed = param_bool(cfg.parameters, "armed", true);
    const bool disarmed = param_bool(cfg.parameters, "disarmed", false);
    if (armed && disarmed) throw ConfigError("armed and disarmed flags are mutually exclusive");

    meter::MeterConfig mc = [&] {
        try {
            if (disarmed) {
                const double ib =
                    param_number(cfg.parameters, "ib", 0.5 * (ic - i1 - i2));
                return meter::MeterConfig::disarmed(i1, i2, ic, ib, meter::ReadoutBasis::PlusMinus);
            }
            if (cfg.parameters.contains("ib"))
                throw ConfigError("ib is derived for the armed meter; set disarmed=true to choose it");
            return meter::MeterConfig::armed(i1, i2, ic, meter::ReadoutBasis::PlusMinus);
        } catch (const std::invalid_argument& e) {
            throw ConfigError(e.what());
        }
    }();

    const SystemLayout pair{{Subsystem{"d0", 2}, Subsystem{"d1", 2}}};
    const auto pm_state = [&](int s1, int s2) {
        return StateVector::normalized(
            pair, {cd{0.5, 0}, cd{0.5 * s2, 0}, cd{0.5 * s1, 0}, cd{0.5 * s1 * s2, 0}});
    };
    const double s = 1.0 / std::sqrt(2.0);
    std::vector<std::pair<std::string, StateVector>> states;
    states.emplace_back("++", pm_state(+1, +1));
    states.emplace_back("+-", pm_state(+1, -1));
    states.emplace_back("-+", pm_state(-1, +1));
    states.emplace_back("--", pm_state(-1, -1));
    {
        std::vector<cd> odd(4, cd{0, 0});
        std::vector<cd> even(4, cd{0, 0});
        for (std::size_t i = 0; i < 4; ++i) {
            odd[i] = s * (pm_state(+1, -1).amplitude(i) + pm_state(-1, +1).amplitude(i));
            even[i] = s * (pm_state(+1, +1).amplitude(i) + pm_state(-1, -1).amplitude(i));
        }
        states.emplace_back("(+-)+(-+)", StateVector::normalized(pair, odd));
        states.emplace_back("(++)+(--)", StateVector::normalized(pair, even));
    }

    Table t;
    t.header = {"state", "i0_forward", "switched_forward", "i0_reversed", "switched_reversed",
                "inferred_outcome"};
    for (const auto& [name, psi] : states) {
        const auto fwd = meter::switching_decision(psi, mc, meter::BiasDirection::Forward);
        const auto rev = meter::switching_decision(psi, mc, meter::BiasDirection::Reversed);
        const char* inferred = !mc.is_armed()        ? "none"
                               : fwd.switched        ? "even_pp"
                               : rev.switched        ? "even_mm"
                                                     : "odd";
        t.rows.push_back({name, fmt_double(fwd.i0), fwd.switched ? "true" : "false",
                          fmt_double(rev.i0), rev.switched ? "true" : "false", inferred});
    }
    return t;
}

RunConfig load_config(const std::string& path, const std::string& subcommand,
                      std::optional<std::uint64_t> seed_flag,
                      const std::string& out_flag, const std::string& format_flag) {
    std::ifstream f(path);
    if (!f) throw ConfigError("cannot open config file: " + path);
    json doc;
    try {
        doc = json::parse(f);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    check_allowed_keys(doc, {"experiment", "seed", "n_max", "output_path", "output_format",
                             "parameters"},
                       "config");

    RunConfig cfg;
    cfg.experiment = subcommand;
    if (doc.contains("experiment")) {
        if (!doc["experiment"].is_string()) throw ConfigError("experiment must be a string");
        if (doc["experiment"].get<std::string>() != subcommand)
            throw ConfigError("config experiment \"" + doc["experiment"].get<std::string>() +
                              "\" does not match subcommand \"" + subcommand + "\"");
    }
    if (seed_flag) {
        cfg.seed = *seed_flag;
    } else if (doc.contains("seed")) {
        if (!doc["seed"].is_number_unsigned()) throw ConfigError("seed must be unsigned");
        cfg.seed = doc["seed"].get<std::uint64_t>();
    } else {
        throw ConfigError("seed is required (config field \"seed\" or --seed)");
    }
    if (doc.contains("n_max")) {
        if (!doc["n_max"].is_number_unsigned() || doc["n_max"].get<std::uint64_t>() < 1)
            throw ConfigError("n_max must be a positive integer");
        cfg.n_max = doc["n_max"].get<std::size_t>();
    }
    if (doc.contains("output_path")) cfg.output_path = doc["output_path"].get<std::string>();
    if (!out_flag.empty()) cfg.output_path = out_flag;
    if (doc.contains("output_format")) cfg.output_format = doc["output_format"].get<std::string>();
    if (!format_flag.empty()) cfg.output_format = format_flag;
    if (cfg.output_format != "csv" && cfg.output_format != "json")
        throw ConfigError("output_format must be \"csv\" or \"json\"");
    if (doc.contains("parameters")) {
        if (!doc["parameters"].is_object()) throw ConfigError("parameters must be an object");
        cfg.parameters = doc["parameters"];
    }
    return cfg;
}

int run_subcommand(const std::string& name, const std::string& config_path,
                   std::optional<std::uint64_t> seed_flag, const std::string& out_flag,
                   const std::string& format_flag) {
    try {
        const RunConfig cfg = load_config(config_path, name, seed_flag, out_flag, format_flag);
        Table table;
        if (name == "effective-vs-exact")
            table = run_effective_vs_exact(cfg);
        else if (name == "dfs-dephasing")
            table = run_dfs_dephasing(cfg);
        else if (name == "cnot")
            table = run_cnot(cfg);
        else
            table = run_parity_demo(cfg);
        emit(cfg, table);
        return 0;
    } catch (const ConvergenceError& e) {
        std::cerr << "convergence error: " << e.what() << "\n";
        return kExitConvergence;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "cavq: cavity-coupled charge-device simulator.\n"
        "Energies and frequencies are angular-frequency units with hbar = 1 by default."};
    app.require_subcommand(1);

    struct SubArgs {
        std::string config;
        std::optional<std::uint64_t> seed;
        std::string out;
        std::string format;
    };

    const std::vector<std::pair<std::string, std::string>> subs = {
        {"effective-vs-exact",
         "Compare driven-coupling propagation against the effective Jx^2 phase"},
        {"dfs-dephasing", "Collective-dephasing ensemble on encoded vs bare states"},
        {"cnot", "Measurement-based CNOT branch report"},
        {"parity-demo", "Switching-current parity meter on sigma_x states"},
    };

    std::map<std::string, SubArgs> args;
    for (const auto& [name, desc] : subs) {
        CLI::App* sub = app.add_subcommand(name, desc);
        SubArgs& a = args[name];
        sub->add_option("--config", a.config, "JSON experiment config")->required();
        sub->add_option("--seed", a.seed, "Override the config seed");
        sub->add_option("--out", a.out, "Output file (default: config output_path or stdout)");
        sub->add_option("--format", a.format, "Output format: csv or json")
            ->check(CLI::IsMember({"csv", "json"}));
    }

    CLI11_PARSE(app, argc, argv);

    for (const auto& [name, desc] : subs) {
        if (app.got_subcommand(name)) {
            const SubArgs& a = args[name];
            return run_subcommand(name, a.config, a.seed, a.out, a.format);
        }
    }
    std::cerr << "no subcommand selected\n";
    return kExitConfig;
}
