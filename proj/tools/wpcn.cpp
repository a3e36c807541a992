// Command-line front end: simulate | analyze | sweep | compare | validate.
//
// Exit codes: 0 success, 1 a validation check failed, 2 configuration or I/O error.

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "wpcn/wpcn.hpp"

#ifndef WPCN_DEFAULT_FIXTURES
#define WPCN_DEFAULT_FIXTURES "data/oracle_fixtures.txt"
#endif

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitConfig = 2;

// Config keys exposed as flags: canonical key plus a short alias.
const std::vector<std::pair<std::string, std::string>> kConfigFlags = {
    {"n_relays", "N"},          {"eta", ""},           {"p_source_dbw", "Ps"}, {"p_relay_dbw", "Pr"},
    {"rate_target", "R"},       {"noise_var", "sigma2"}, {"lambda_rate", "lambda"}, {"slot_duration", "T"},
    {"m_decode", "M"},          {"horizon_slots", "slots"}, {"warmup_slots", "warmup"}, {"rng_seed", "seed"},
    {"policy", ""},             {"path_loss_d_si", ""}, {"path_loss_d_id", ""}, {"path_loss_alpha", ""},
};

struct ConfigFlags {
    std::string config_path;
    std::map<std::string, std::string> values;

    void attach(CLI::App* app, const std::vector<std::string>& skip = {}) {
        app->add_option("--config", config_path, "key = value configuration file");
        for (const auto& [key, alias] : kConfigFlags) {
            if (std::find(skip.begin(), skip.end(), key) != skip.end()) continue;
            std::string names = "--" + key;
            if (!alias.empty()) names = "--" + alias + "," + names;
            app->add_option_function<std::string>(
                names, [this, key = key](const std::string& v) { values[key] = v; }, "overrides '" + key + "'");
        }
    }

    wpcn::SystemConfig load() const {
        wpcn::ConfigDocument doc;
        if (!config_path.empty()) {
            std::ifstream in(config_path);
            if (!in) throw wpcn::ConfigError("cannot open config file '" + config_path + "'");
            std::stringstream ss;
            ss << in.rdbuf();
            doc = wpcn::parse_document(ss.str());
        }
        for (const auto& [k, v] : values) doc[k] = v;
        return wpcn::config_from_document(doc);
    }
};

class Output {
public:
    explicit Output(const std::string& path) {
        if (!path.empty()) {
            file_ = std::make_unique<std::ofstream>(path);
            if (!*file_) throw wpcn::ConfigError("cannot open output file '" + path + "'");
        }
    }
    std::ostream& stream() { return file_ ? *file_ : std::cout; }

private:
    std::unique_ptr<std::ofstream> file_;
};

std::string command_line(int argc, char** argv) {
    std::string s;
    for (int i = 1; i < argc; ++i) {
        if (i > 1) s += ' ';
        s += argv[i];
    }
    return s;
}

wpcn::Policy policy_from(const std::string& name) {
    auto p = wpcn::parse_policy(name);
    if (!p) throw wpcn::ConfigError("unknown policy '" + name + "'");
    return *p;
}

const char* trace_outcome(const wpcn::SlotTrace& t) {
    if (t.forward_outcome == wpcn::SlotOutcome::Delivered) return "delivered";
    if (t.forward_outcome == wpcn::SlotOutcome::Outage) return "outage";
    return "";
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Relay selection in wireless-powered cooperative networks: simulation and closed-form outage"};
    app.require_subcommand(1);
    const std::string cmdline = command_line(argc, argv);

    // simulate
    auto* sim = app.add_subcommand("simulate", "run one slot-level simulation");
    ConfigFlags sim_flags;
    sim_flags.attach(sim);
    std::string sim_out, sim_trace;
    sim->add_option("--out", sim_out, "CSV output file (default stdout)");
    sim->add_option("--trace", sim_trace, "per-slot trace CSV file");

    // analyze
    auto* ana = app.add_subcommand("analyze", "evaluate the closed-form tagged-relay outage");
    std::string ana_prop = "all";
    std::vector<int> ana_k{2}, ana_n{0};
    std::vector<double> ana_r{1.0};
    double ana_eta = 1.0, ana_ps = 10.0, ana_pr = 10.0, ana_sigma2 = 1.0, ana_lambda = 1.0;
    std::string ana_out;
    ana->add_option("--prop", ana_prop, "1 (fixed power), 2 (CSIT), sel (selection probability) or all")
        ->check(CLI::IsMember({"1", "2", "sel", "all"}));
    ana->add_option("--k", ana_k, "elapsed slots (list)")->delimiter(',');
    ana->add_option("--n", ana_n, "earlier transmissions (list)")->delimiter(',');
    ana->add_option("--R", ana_r, "rate targets (list)")->delimiter(',');
    ana->add_option("--eta", ana_eta);
    ana->add_option("--Ps", ana_ps, "source power, dBW");
    ana->add_option("--Pr", ana_pr, "relay power, dBW");
    ana->add_option("--sigma2", ana_sigma2);
    ana->add_option("--lambda", ana_lambda);
    ana->add_option("--out", ana_out);

    // sweep
    auto* swp = app.add_subcommand("sweep", "sweep one parameter");
    ConfigFlags swp_flags;
    swp_flags.attach(swp);
    std::string swp_axis;
    std::vector<double> swp_values, swp_rgrid;
    int swp_reps = 3;
    int swp_k = 2, swp_n = 0;
    std::string swp_out;
    swp->add_option("--axis", swp_axis, "R, N, M, eta, k or n")->required()->check(CLI::IsMember({"R", "N", "M", "eta", "k", "n"}));
    swp->add_option("--values", swp_values, "axis values, strictly increasing")->delimiter(',')->required();
    swp->add_option("--R-grid", swp_rgrid, "outer loop over R")->delimiter(',');
    swp->add_option("--reps", swp_reps, "independent seeds per point (seed, seed+1, ...)");
    swp->add_option("--k", swp_k, "k for an n-axis analytic sweep");
    swp->add_option("--n", swp_n, "n for a k-axis analytic sweep");
    swp->add_option("--out", swp_out);

    // compare
    auto* cmp = app.add_subcommand("compare", "compare selection schemes over an R grid");
    ConfigFlags cmp_flags;
    cmp_flags.attach(cmp, {"policy"});
    std::vector<std::string> cmp_policies;
    std::vector<double> cmp_rgrid;
    int cmp_reps = 3;
    int cmp_m_best_energy = 5;
    std::string cmp_out;
    cmp->add_option("--policies", cmp_policies, "scheme names")->delimiter(',')->required();
    cmp->add_option("--R-grid", cmp_rgrid, "rate targets")->delimiter(',');
    cmp->add_option("--reps", cmp_reps);
    cmp->add_option("--m-best-energy", cmp_m_best_energy, "decode-set size of mrs-acsi-best-energy");
    cmp->add_option("--out", cmp_out);

    // validate
    auto* val = app.add_subcommand("validate", "cross-check closed forms, oracles, fixtures and the simulator");
    wpcn::ValidateOptions vopt;
    vopt.fixture_path = WPCN_DEFAULT_FIXTURES;
    std::string val_out;
    val->add_option("--fixtures", vopt.fixture_path, "pinned reference values");
    val->add_option("--samples", vopt.mc_samples, "Monte Carlo samples per oracle");
    val->add_option("--slots", vopt.sim_slots, "simulated slots for the simulator check");
    val->add_option("--tolerance-scale", vopt.tolerance_scale, "multiplies every tolerance");
    val->add_option("--seed", vopt.seed);
    val->add_option("--out", val_out);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    }

    try {
        if (sim->parsed()) {
            auto cfg = sim_flags.load();
            std::unique_ptr<std::ofstream> trace;
            wpcn::TraceCallback cb;
            if (!sim_trace.empty()) {
                trace = std::make_unique<std::ofstream>(sim_trace);
                if (!*trace) throw wpcn::ConfigError("cannot open trace file '" + sim_trace + "'");
                *trace << "slot,forwarded_message,forwarder,forward_power_w,outcome,forward_cause,new_message,"
                          "decoders,new_cause\n";
                cb = [&trace](const wpcn::SlotTrace& t) {
                    auto& os = *trace;
                    os << t.slot << ',' << (t.forwarded_message ? std::to_string(*t.forwarded_message) : "") << ','
                       << (t.forwarder >= 0 ? std::to_string(t.forwarder) : "") << ','
                       << wpcn::format_double(t.forward_power_w) << ',' << trace_outcome(t) << ','
                       << (t.forward_cause ? wpcn::cause_name(*t.forward_cause) : "") << ','
                       << (t.new_message ? std::to_string(*t.new_message) : "") << ',';
                    for (std::size_t i = 0; i < t.decoders.size(); ++i) os << (i ? ";" : "") << t.decoders[i];
                    os << ',' << (t.new_cause ? wpcn::cause_name(*t.new_cause) : "") << '\n';
                };
            }
            const auto t0 = std::chrono::steady_clock::now();
            wpcn::ResultRow row{cfg, cfg.rng_seed, wpcn::RowSource::Simulation, wpcn::run(cfg, cb), 0.0};
            row.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
            Output out(sim_out);
            wpcn::write_metadata(out.stream(), cmdline, cfg.rng_seed);
            out.stream() << wpcn::kSimulationCsvHeader << '\n' << wpcn::format_row(row) << '\n';
            std::cerr << wpcn::policy_name(cfg.policy) << ": outage " << row.outage() << " +/- " << row.ci95()
                      << " over " << row.stats.attempts << " messages (" << row.wall_seconds << " s)\n";
            return kExitOk;
        }

        if (ana->parsed()) {
            wpcn::StaticScenario base;
            base.eta = ana_eta;
            base.p_source_w = wpcn::dbw_to_watt(ana_ps);
            base.p_relay_w = wpcn::dbw_to_watt(ana_pr);
            base.noise_var = ana_sigma2;
            base.lambda_rate = ana_lambda;
            Output out(ana_out);
            wpcn::write_metadata(out.stream(), cmdline);
            out.stream() << wpcn::kAnalyticsCsvHeader << '\n';
            for (double r : ana_r)
                for (int k : ana_k)
                    for (int n : ana_n) {
                        wpcn::StaticScenario sc = base;
                        sc.k = k;
                        sc.n = n;
                        sc.rate_target = r;
                        sc.validate();
                        for (const auto& row : wpcn::analytic_rows(sc)) {
                            const bool want = ana_prop == "all" || (ana_prop == "1" && row.quantity == "prop1") ||
                                              (ana_prop == "2" && row.quantity == "prop2") ||
                                              (ana_prop == "sel" && row.quantity == "selection");
                            if (want) out.stream() << wpcn::format_row(row) << '\n';
                        }
                    }
            return kExitOk;
        }

        if (swp->parsed()) {
            wpcn::SweepSpec spec;
            spec.axis = *wpcn::parse_axis(swp_axis);
            spec.values = swp_values;
            spec.r_grid = swp_rgrid;
            spec.repetitions = swp_reps;
            if (wpcn::axis_is_analytic(spec.axis)) {
                auto cfg = swp_flags.load();
                spec.scenario.k = swp_k;
                spec.scenario.n = swp_n;
                spec.scenario.eta = cfg.eta;
                spec.scenario.p_source_w = cfg.p_source_w;
                spec.scenario.p_relay_w = cfg.p_relay_w;
                spec.scenario.noise_var = cfg.noise_var;
                spec.scenario.lambda_rate = cfg.lambda_rate;
                spec.scenario.rate_target = cfg.rate_target;
            } else {
                spec.base = swp_flags.load();
            }
            auto result = wpcn::run_sweep(spec);
            Output out(swp_out);
            wpcn::write_metadata(out.stream(), cmdline, spec.base.rng_seed);
            wpcn::write_sweep(out.stream(), result);
            return kExitOk;
        }

        if (cmp->parsed()) {
            wpcn::CompareSpec spec;
            spec.base = cmp_flags.load();
            for (const auto& name : cmp_policies) spec.policies.push_back(policy_from(name));
            spec.r_grid = cmp_rgrid;
            spec.repetitions = cmp_reps;
            spec.m_override[wpcn::Policy::MrsAcsiBestEnergy] = std::min(cmp_m_best_energy, spec.base.n_relays);
            auto result = wpcn::run_compare(spec);
            Output out(cmp_out);
            wpcn::write_metadata(out.stream(), cmdline, spec.base.rng_seed);
            wpcn::write_compare(out.stream(), result);
            return kExitOk;
        }

        if (val->parsed()) {
            auto report = wpcn::run_validate(vopt);
            Output out(val_out);
            wpcn::write_metadata(out.stream(), cmdline, vopt.seed);
            wpcn::write_validate(out.stream(), report);
            for (const auto& c : report.checks)
                if (!c.passed) std::cerr << "FAIL " << c.name << ": " << c.detail << '\n';
            return report.all_passed() ? kExitOk : kExitCheckFailed;
        }
    } catch (const wpcn::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const wpcn::ValidationError& e) {
        std::cerr << "validation error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const wpcn::FixtureError& e) {
        std::cerr << "fixture error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitConfig;
    }
    return kExitOk;
}
