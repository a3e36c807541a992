#ifndef WPCN_EXPERIMENT_HPP
#define WPCN_EXPERIMENT_HPP

/// \file experiment.hpp
/// Sweep engine, scheme comparison and cross-validation behind the CLI.
///
/// Simulation rows share one CSV schema:
///   policy,N,M,eta,Ps_dBW,Pr_dBW,R,sigma2,lambda,T,slots,warmup,seed,source,
///   outage,ci95,share_decode,share_energy,share_forward
/// Closed-form rows use
///   quantity,k,n,eta,Ps_dBW,Pr_dBW,R,sigma2,lambda,source,value
/// Numbers are printed in shortest round-trip form, so output is byte-stable
/// for a fixed seed.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "analytics.hpp"
#include "config.hpp"
#include "fading.hpp"
#include "model.hpp"
#include "oracle.hpp"
#include "simulator.hpp"

namespace wpcn {

inline constexpr std::string_view kVersion = "1.0.0";

inline constexpr std::string_view kSimulationCsvHeader =
    "policy,N,M,eta,Ps_dBW,Pr_dBW,R,sigma2,lambda,T,slots,warmup,seed,source,outage,ci95,share_decode,"
    "share_energy,share_forward";
inline constexpr std::string_view kAnalyticsCsvHeader = "quantity,k,n,eta,Ps_dBW,Pr_dBW,R,sigma2,lambda,source,value";

/// Runs fn(0..count-1) on a small worker pool. Results must be written to
/// per-index slots by fn; completion order is irrelevant.
inline void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn,
                         unsigned max_threads = 0) {
    unsigned hw = max_threads ? max_threads : std::max(1u, std::thread::hardware_concurrency());
    unsigned workers = static_cast<unsigned>(std::min<std::size_t>(hw, count));
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < count; i = next++) {
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard lock(error_mutex);
                    if (!error) error = std::current_exception();
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

// ----------------------------------------------------------------------------
// Result rows

enum class RowSource { Simulation, ClosedForm };

inline std::string_view row_source_name(RowSource s) {
    return s == RowSource::Simulation ? "simulation" : "closed_form";
}

struct ResultRow {
    SystemConfig config;
    std::optional<std::uint64_t> seed; // empty for a pooled aggregate row
    RowSource source = RowSource::Simulation;
    OutageStats stats;
    double wall_seconds = 0.0;

    double outage() const { return stats.outage_prob(); }
    double ci95() const { return stats.ci95_halfwidth(); }
};

inline std::string optional_share(const std::optional<double>& x) { return x ? format_double(*x) : "NA"; }

inline std::string format_row(const ResultRow& r) {
    const auto& c = r.config;
    const auto shares = decompose_outage(r.stats);
    std::ostringstream os;
    os << policy_name(c.policy) << ',' << c.n_relays << ',' << c.m_decode << ',' << format_double(c.eta) << ','
       << format_double(c.p_source_dbw) << ',' << format_double(c.p_relay_dbw) << ','
       << format_double(c.rate_target) << ',' << format_double(c.noise_var) << ','
       << format_double(c.lambda_rate) << ',' << format_double(c.slot_duration) << ',' << c.horizon_slots << ','
       << c.warmup_slots << ',' << (r.seed ? std::to_string(*r.seed) : std::string("pooled")) << ','
       << row_source_name(r.source) << ',' << format_double(r.outage()) << ',' << format_double(r.ci95()) << ','
       << optional_share(shares.share_decode) << ',' << optional_share(shares.share_energy) << ','
       << optional_share(shares.share_forward);
    return os.str();
}

struct AnalyticsRow {
    std::string quantity; // selection | prop1 | prop2
    StaticScenario scenario;
    double value = 0.0;
};

inline std::string format_row(const AnalyticsRow& r) {
    const auto& s = r.scenario;
    std::ostringstream os;
    os << r.quantity << ',' << s.k << ',' << s.n << ',' << format_double(s.eta) << ','
       << format_double(watt_to_dbw(s.p_source_w)) << ',' << format_double(watt_to_dbw(s.p_relay_w)) << ','
       << format_double(s.rate_target) << ',' << format_double(s.noise_var) << ','
       << format_double(s.lambda_rate) << ",closed_form," << format_double(r.value);
    return os.str();
}

/// Comment lines identifying the producer; no timestamps, so output stays byte-stable.
inline void write_metadata(std::ostream& os, std::string_view command, std::optional<std::uint64_t> seed = {}) {
    os << "# wpcn " << kVersion << '\n';
    os << "# command " << command << '\n';
    os << "# rng " << kRngAlgorithm << '\n';
    if (seed) os << "# seed " << *seed << '\n';
}

// ----------------------------------------------------------------------------
// Simulation

inline ResultRow simulate_row(const SystemConfig& cfg) {
    const auto t0 = std::chrono::steady_clock::now();
    ResultRow row{cfg, cfg.rng_seed, RowSource::Simulation, run(cfg), 0.0};
    row.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return row;
}

inline ResultRow pool_rows(const std::vector<ResultRow>& reps) {
    ResultRow pooled = reps.front();
    pooled.seed.reset();
    pooled.stats = {};
    pooled.wall_seconds = 0.0;
    for (const auto& r : reps) {
        pooled.stats += r.stats;
        pooled.wall_seconds += r.wall_seconds;
    }
    return pooled;
}

inline bool intervals_overlap(const ResultRow& a, const ResultRow& b) {
    return std::abs(a.outage() - b.outage()) <= a.ci95() + b.ci95();
}

// ----------------------------------------------------------------------------
// Sweeps

enum class SweepAxis { R, N, M, Eta, K, SmallN };

inline std::optional<SweepAxis> parse_axis(std::string_view s) {
    if (s == "R") return SweepAxis::R;
    if (s == "N") return SweepAxis::N;
    if (s == "M") return SweepAxis::M;
    if (s == "eta") return SweepAxis::Eta;
    if (s == "k") return SweepAxis::K;
    if (s == "n") return SweepAxis::SmallN;
    return std::nullopt;
}

inline bool axis_is_analytic(SweepAxis a) { return a == SweepAxis::K || a == SweepAxis::SmallN; }

struct SweepSpec {
    SweepAxis axis = SweepAxis::R;
    std::vector<double> values;
    SystemConfig base;           // simulation axes
    StaticScenario scenario;     // analytic axes (k, n)
    std::vector<double> r_grid;  // extra outer R loop; empty means base R only
    int repetitions = 3;

    void validate() const {
        if (values.empty()) throw ValidationError("sweep values must be non-empty");
        for (std::size_t i = 1; i < values.size(); ++i)
            if (!(values[i] > values[i - 1])) throw ValidationError("sweep values must be strictly increasing");
        if (repetitions < 1) throw ValidationError("repetitions must be at least 1");
        auto integral = [](double x) { return std::floor(x) == x; };
        if (axis == SweepAxis::N || axis == SweepAxis::M || axis_is_analytic(axis))
            for (double x : values)
                if (!integral(x)) throw ValidationError("sweep values for this axis must be integers");
    }
};

/// Per R: the M with the lowest pooled outage and whether its CI clears both neighbours.
struct MOptimum {
    double rate_target = 0.0;
    int m_star = 0;
    double outage = 0.0;
    double ci95 = 0.0;
    bool separated_left = true;
    bool separated_right = true;
};

struct SweepResult {
    std::vector<ResultRow> rows;    // per repetition, in (R, value, repetition) order
    std::vector<ResultRow> pooled;  // one per (R, value)
    std::vector<AnalyticsRow> analytics;
    std::vector<MOptimum> optima;   // axis M only
};

inline SystemConfig apply_axis(SystemConfig cfg, SweepAxis axis, double value) {
    switch (axis) {
    case SweepAxis::R: cfg.rate_target = value; break;
    case SweepAxis::N: cfg.n_relays = static_cast<int>(value); break;
    case SweepAxis::M: cfg.m_decode = static_cast<int>(value); break;
    case SweepAxis::Eta: cfg.eta = value; break;
    default: throw ValidationError("axis is not a simulation axis");
    }
    cfg.validate();
    return cfg;
}

inline std::vector<MOptimum> find_m_optima(const std::vector<ResultRow>& pooled) {
    std::map<double, std::vector<const ResultRow*>> by_rate;
    for (const auto& r : pooled) by_rate[r.config.rate_target].push_back(&r);
    std::vector<MOptimum> out;
    for (auto& [rate, rows] : by_rate) {
        std::sort(rows.begin(), rows.end(),
                  [](const ResultRow* a, const ResultRow* b) { return a->config.m_decode < b->config.m_decode; });
        std::size_t best = 0;
        for (std::size_t i = 1; i < rows.size(); ++i)
            if (rows[i]->outage() < rows[best]->outage()) best = i;
        MOptimum opt{rate, rows[best]->config.m_decode, rows[best]->outage(), rows[best]->ci95()};
        if (best > 0) opt.separated_left = !intervals_overlap(*rows[best], *rows[best - 1]);
        if (best + 1 < rows.size()) opt.separated_right = !intervals_overlap(*rows[best], *rows[best + 1]);
        out.push_back(opt);
    }
    return out;
}

inline std::vector<AnalyticsRow> analytic_rows(const StaticScenario& sc) {
    return {{"selection", sc, selection_probability(sc)}, {"prop1", sc, outage_prop1(sc)},
            {"prop2", sc, outage_prop2(sc)}};
}

inline SweepResult run_sweep(const SweepSpec& spec) {
    spec.validate();
    SweepResult result;
    std::vector<double> rates = spec.r_grid;
    if (spec.axis == SweepAxis::R || rates.empty())
        rates = {axis_is_analytic(spec.axis) ? spec.scenario.rate_target : spec.base.rate_target};

    if (axis_is_analytic(spec.axis)) {
        for (double rate : rates) {
            for (double x : spec.values) {
                StaticScenario sc = spec.scenario;
                sc.rate_target = rate;
                if (spec.axis == SweepAxis::K) sc.k = static_cast<int>(x);
                else sc.n = static_cast<int>(x);
                sc.validate();
                for (auto& row : analytic_rows(sc)) result.analytics.push_back(std::move(row));
            }
        }
        return result;
    }

    std::vector<SystemConfig> jobs;
    for (double rate : rates) {
        for (double x : spec.values) {
            SystemConfig cfg = spec.base;
            cfg.rate_target = rate;
            cfg = apply_axis(cfg, spec.axis, x);
            for (int rep = 0; rep < spec.repetitions; ++rep) {
                SystemConfig c = cfg;
                c.rng_seed = spec.base.rng_seed + static_cast<std::uint64_t>(rep);
                jobs.push_back(c);
            }
        }
    }
    result.rows.resize(jobs.size());
    parallel_for(jobs.size(), [&](std::size_t i) { result.rows[i] = simulate_row(jobs[i]); });
    for (std::size_t i = 0; i < result.rows.size(); i += spec.repetitions) {
        std::vector<ResultRow> reps(result.rows.begin() + i, result.rows.begin() + i + spec.repetitions);
        result.pooled.push_back(pool_rows(reps));
    }
    if (spec.axis == SweepAxis::M) result.optima = find_m_optima(result.pooled);
    return result;
}

inline void write_sweep(std::ostream& os, const SweepResult& r) {
    if (!r.analytics.empty()) {
        os << kAnalyticsCsvHeader << '\n';
        for (const auto& row : r.analytics) os << format_row(row) << '\n';
        return;
    }
    os << kSimulationCsvHeader << '\n';
    for (const auto& row : r.rows) os << format_row(row) << '\n';
    for (const auto& row : r.pooled) os << format_row(row) << '\n';
    for (const auto& o : r.optima) {
        os << "# optimum R=" << format_double(o.rate_target) << " M*=" << o.m_star
           << " outage=" << format_double(o.outage) << " ci95=" << format_double(o.ci95)
           << " separated_left=" << (o.separated_left ? "yes" : "no")
           << " separated_right=" << (o.separated_right ? "yes" : "no") << '\n';
    }
}

// ----------------------------------------------------------------------------
// Scheme comparison

struct CompareSpec {
    std::vector<Policy> policies;
    SystemConfig base;
    std::vector<double> r_grid;
    int repetitions = 3;
    std::map<Policy, int> m_override; // per-policy decode-set size
};

struct OrderingStep {
    Policy better;
    Policy worse;
    bool separated = false; // non-overlapping 95% CIs
};

struct OrderingVerdict {
    double rate_target = 0.0;
    std::vector<Policy> ranking; // ascending pooled outage
    std::vector<OrderingStep> steps;
};

struct CompareResult {
    std::vector<ResultRow> rows;
    std::vector<ResultRow> pooled; // (R, policy) order
    std::vector<OrderingVerdict> verdicts;
};

/// Ranks the pooled rows of each R. Uses nothing but the rows themselves.
inline std::vector<OrderingVerdict> ordering_verdicts(const std::vector<ResultRow>& pooled) {
    std::map<double, std::vector<const ResultRow*>> by_rate;
    for (const auto& r : pooled) by_rate[r.config.rate_target].push_back(&r);
    std::vector<OrderingVerdict> out;
    for (auto& [rate, rows] : by_rate) {
        if (rows.size() < 2) continue;
        std::stable_sort(rows.begin(), rows.end(),
                         [](const ResultRow* a, const ResultRow* b) { return a->outage() < b->outage(); });
        OrderingVerdict v{rate, {}, {}};
        for (const auto* r : rows) v.ranking.push_back(r->config.policy);
        for (std::size_t i = 1; i < rows.size(); ++i)
            v.steps.push_back({rows[i - 1]->config.policy, rows[i]->config.policy,
                               !intervals_overlap(*rows[i - 1], *rows[i])});
        out.push_back(std::move(v));
    }
    return out;
}

inline CompareResult run_compare(const CompareSpec& spec) {
    if (spec.policies.empty()) throw ValidationError("compare needs at least one policy");
    if (spec.repetitions < 1) throw ValidationError("repetitions must be at least 1");
    std::vector<double> rates = spec.r_grid.empty() ? std::vector<double>{spec.base.rate_target} : spec.r_grid;
    std::vector<SystemConfig> jobs;
    for (double rate : rates) {
        for (Policy p : spec.policies) {
            SystemConfig cfg = spec.base;
            cfg.rate_target = rate;
            cfg.policy = p;
            if (auto it = spec.m_override.find(p); it != spec.m_override.end()) cfg.m_decode = it->second;
            cfg.validate();
            for (int rep = 0; rep < spec.repetitions; ++rep) {
                SystemConfig c = cfg;
                c.rng_seed = spec.base.rng_seed + static_cast<std::uint64_t>(rep);
                jobs.push_back(c);
            }
        }
    }
    CompareResult result;
    result.rows.resize(jobs.size());
    parallel_for(jobs.size(), [&](std::size_t i) { result.rows[i] = simulate_row(jobs[i]); });
    for (std::size_t i = 0; i < result.rows.size(); i += spec.repetitions) {
        std::vector<ResultRow> reps(result.rows.begin() + i, result.rows.begin() + i + spec.repetitions);
        result.pooled.push_back(pool_rows(reps));
    }
    if (spec.policies.size() > 1) result.verdicts = ordering_verdicts(result.pooled);
    return result;
}

inline void write_compare(std::ostream& os, const CompareResult& r) {
    os << kSimulationCsvHeader << '\n';
    for (const auto& row : r.rows) os << format_row(row) << '\n';
    for (const auto& row : r.pooled) os << format_row(row) << '\n';
    for (const auto& v : r.verdicts) {
        os << "# ordering R=" << format_double(v.rate_target) << ": " << policy_name(v.ranking.front());
        for (const auto& s : v.steps) os << (s.separated ? " < " : " ~ ") << policy_name(s.worse);
        os << '\n';
    }
}

// ----------------------------------------------------------------------------
// Cross-validation

class FixtureError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Fixture {
    std::string name;
    double value = 0.0;
    std::string provenance;
};

inline std::vector<Fixture> parse_fixtures(std::string_view text) {
    std::vector<Fixture> out;
    std::size_t line_no = 0;
    while (!text.empty()) {
        auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        ++line_no;
        std::string provenance;
        if (auto hash = line.find('#'); hash != std::string_view::npos) {
            provenance = std::string(detail::trim(line.substr(hash + 1)));
            line = line.substr(0, hash);
        }
        line = detail::trim(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string_view::npos)
            throw FixtureError("fixture line " + std::to_string(line_no) + ": expected 'name = value'");
        auto name = detail::trim(line.substr(0, eq));
        auto value = detail::trim(line.substr(eq + 1));
        double x = 0.0;
        auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), x);
        if (ec != std::errc{} || ptr != value.data() + value.size())
            throw FixtureError("fixture line " + std::to_string(line_no) + ": bad number '" + std::string(value) + "'");
        out.push_back({std::string(name), x, std::move(provenance)});
    }
    return out;
}

inline std::vector<Fixture> load_fixtures(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw FixtureError("cannot open fixture file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_fixtures(ss.str());
}

/// Recomputes a pinned constant by name with the library under test.
inline std::optional<double> evaluate_fixture(std::string_view name) {
    auto scen = [](int k, int n, double rate) {
        StaticScenario s;
        s.k = k;
        s.n = n;
        s.rate_target = rate;
        return s;
    };
    // b_factor_k*_q0.3: Q = (n+1) v sigma^2 / (eta P_s) = 0.3 with v = 3, eta = 1, P_s = 10.
    auto bq = [&](int k, double lambda) {
        StaticScenario s = scen(k, 0, 1.0);
        s.lambda_rate = lambda;
        return b_factor(s);
    };
    static const std::map<std::string, std::function<double()>, std::less<>> table = {
        {"rate_sr_gain1_ps10", [] { return rate_source_relay(1.0, 10.0, 1.0); }},
        {"lower_gamma_1_1", [] { return lower_incomplete_gamma(1.0, 1.0); }},
        {"lower_gamma_3_2", [] { return lower_incomplete_gamma(3.0, 2.0); }},
        {"erlang_cdf_2_1_2", [] { return erlang_cdf(2, 1.0, 2.0); }},
        {"erlang_cdf_5_1_4", [] { return erlang_cdf(5, 1.0, 4.0); }},
        {"regularized_p_7_3.5", [] { return regularized_gamma_p(7.0, 3.5); }},
        {"bessel_k0_1", [] { return bessel_k(0, 1.0); }},
        {"bessel_k1_1", [] { return bessel_k(1, 1.0); }},
        {"bessel_k1_0.1", [] { return bessel_k(1, 0.1); }},
        {"bessel_k2_1.5", [] { return bessel_k(2, 1.5); }},
        {"bessel_k5_3", [] { return bessel_k(5, 3.0); }},
        {"bessel_k0_10", [] { return bessel_k(0, 10.0); }},
        {"b_factor_k2_q0.3", [&] { return bq(2, 1.0); }},
        {"b_factor_k3_q0.3", [&] { return bq(3, 1.0); }},
        {"b_factor_k5_q0.3", [&] { return bq(5, 1.0); }},
        {"b_factor_k8_q0.3", [&] { return bq(8, 1.0); }},
        {"b_factor_k2_q0.3_lambda2", [&] { return bq(2, 2.0); }},
        {"selection_k2_n0_R1", [&] { return selection_probability(scen(2, 0, 1.0)); }},
        {"prop1_k2_n0_R1", [&] { return outage_prop1(scen(2, 0, 1.0)); }},
        {"prop1_k3_n0_R0", [&] { return outage_prop1(scen(3, 0, 0.0)); }},
        {"prop2_k2_n0_R1", [&] { return outage_prop2(scen(2, 0, 1.0)); }},
        {"grid_outage_R1", [] { return grid_outage(10.0, 10.0, 1.0, 1.0, 1.0); }},
    };
    auto it = table.find(name);
    if (it == table.end()) return std::nullopt;
    return it->second();
}

struct ValidateOptions {
    std::string fixture_path;
    std::int64_t mc_samples = 1'000'000;
    std::int64_t sim_slots = 200'000;
    double tolerance_scale = 1.0; // multiplies every tolerance
    std::uint64_t seed = 20240601;
};

struct CheckResult {
    std::string name;
    bool passed = false;
    double observed = 0.0;
    double expected = 0.0;
    double tolerance = 0.0;
    std::string detail;
};

struct ValidateReport {
    std::vector<CheckResult> checks;
    bool all_passed() const {
        return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
    }
};

inline CheckResult make_check(std::string name, double observed, double expected, double tolerance,
                              std::string detail = {}) {
    bool ok = std::abs(observed - expected) <= tolerance;
    return {std::move(name), ok, observed, expected, tolerance, std::move(detail)};
}

/// MC-vs-closed-form check at `sigmas` standard errors; a zero-variance
/// estimate must agree to 1e-12.
inline CheckResult mc_check(std::string name, double closed_form, const oracle::Estimate& est, double sigmas) {
    const double tol = est.standard_error > 0.0 ? sigmas * est.standard_error : 1e-12;
    return make_check(std::move(name), closed_form, est.mean, tol);
}

inline ValidateReport run_validate(const ValidateOptions& opt) {
    ValidateReport report;
    const double scale = opt.tolerance_scale;

    // Pinned constants.
    for (const auto& f : load_fixtures(opt.fixture_path)) {
        auto computed = evaluate_fixture(f.name);
        if (!computed) throw FixtureError("unknown fixture '" + f.name + "'");
        const double tol = 1e-9 * std::max(1.0, std::abs(f.value)) * scale;
        auto c = make_check("fixture:" + f.name, *computed, f.value, tol, f.provenance);
        if (!c.passed) c.detail = "fixture mismatch: " + c.detail;
        report.checks.push_back(std::move(c));
    }

    // Closed forms vs direct sampling.
    std::vector<oracle::GridPoint> grid;
    for (int k : {1, 2, 3, 5, 8})
        for (int n : {0, 1})
            for (double rate : {0.5, 1.0, 2.0})
                if (n <= k / 2) grid.push_back({k, n, rate});
    oracle::LinkParams lp;
    auto estimates = oracle::tagged_relay_grid(grid, lp, opt.mc_samples, opt.seed);
    for (const auto& e : estimates) {
        StaticScenario sc;
        sc.k = e.point.k;
        sc.n = e.point.n;
        sc.rate_target = e.point.rate_target;
        const std::string tag = "k=" + std::to_string(sc.k) + ";n=" + std::to_string(sc.n) +
                                ";R=" + format_double(sc.rate_target);
        report.checks.push_back(mc_check("prop1_mc:" + tag, outage_prop1(sc), e.outage_fixed, 4.0 * scale));
        report.checks.push_back(mc_check("prop2_mc:" + tag, outage_prop2(sc), e.outage_csit, 4.0 * scale));
    }

    // Quadrature vs Bessel closed form.
    for (int k = 2; k <= 8; ++k) {
        StaticScenario sc;
        sc.k = k;
        report.checks.push_back(make_check("b_factor_bessel:k=" + std::to_string(k), b_factor(sc),
                                           b_factor_bessel(sc), 1e-8 * scale));
    }

    // Simulator in the energy-unconstrained regime vs its limit.
    SystemConfig cfg;
    cfg.n_relays = 10;
    cfg.eta = 1.0;
    cfg.rate_target = 1.0;
    cfg.horizon_slots = opt.sim_slots;
    cfg.rng_seed = opt.seed;
    cfg.policy = Policy::SrsNcsi;
    cfg.validate();
    auto stats = run(cfg);
    const double limit = srs_grid_limit(10, cfg.p_source_w, cfg.p_relay_w, 1.0, 1.0, 1.0);
    report.checks.push_back(
        make_check("simulate_grid_limit:N=10;eta=1;R=1", stats.outage_prob(), limit, 4.0 * stats.standard_error() * scale));
    return report;
}

inline std::string csv_quote(std::string_view s) {
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') out.push_back('"');
        out.push_back(ch);
    }
    out.push_back('"');
    return out;
}

inline void write_validate(std::ostream& os, const ValidateReport& r) {
    os << "check,status,observed,expected,tolerance,detail\n";
    for (const auto& c : r.checks)
        os << c.name << ',' << (c.passed ? "pass" : "FAIL") << ',' << format_double(c.observed) << ','
           << format_double(c.expected) << ',' << format_double(c.tolerance) << ',' << csv_quote(c.detail) << '\n';
    os << "# result " << (r.all_passed() ? "pass" : "FAIL") << '\n';
}

} // namespace wpcn

#endif
