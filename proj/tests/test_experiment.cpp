#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "wpcn/experiment.hpp"

using namespace wpcn;

namespace {

SystemConfig quick(Policy p = Policy::SrsNcsi) {
    SystemConfig cfg;
    cfg.n_relays = 5;
    cfg.m_decode = 2;
    cfg.eta = 0.3;
    cfg.horizon_slots = 5'000;
    cfg.policy = p;
    cfg.validate();
    return cfg;
}

std::string temp_path(const std::string& name) {
    return (std::filesystem::temp_directory_path() / ("wpcn_test_" + name)).string();
}

} // namespace

TEST(Experiment, RowFormatIsStable) {
    ResultRow row{quick(), 7, RowSource::Simulation, {}, 0.0};
    row.stats.attempts = 8;
    row.stats.outages = 2;
    row.stats.cause_counts = {1, 1, 0};
    EXPECT_EQ(format_row(row), "srs-ncsi,5,2,0.3,10,10,1,1,1,1,5000,0,7,simulation,0.25,0.3000624934909393,0.5,0.5,0");
    row.seed.reset();
    row.stats = {};
    EXPECT_EQ(format_row(row), "srs-ncsi,5,2,0.3,10,10,1,1,1,1,5000,0,pooled,simulation,0,0,NA,NA,NA");
    EXPECT_EQ(std::string(kSimulationCsvHeader),
              "policy,N,M,eta,Ps_dBW,Pr_dBW,R,sigma2,lambda,T,slots,warmup,seed,source,outage,ci95,share_decode,"
              "share_energy,share_forward");
}

TEST(Experiment, AnalyticsRowFormat) {
    StaticScenario s;
    AnalyticsRow r{"prop1", s, outage_prop1(s)};
    EXPECT_EQ(format_row(r), "prop1,2,0,1,10,10,1,1,1,closed_form,0.7981034820053446");
}

TEST(Experiment, MetadataHasNoClock) {
    std::ostringstream a, b;
    write_metadata(a, "wpcn simulate", 3);
    write_metadata(b, "wpcn simulate", 3);
    EXPECT_EQ(a.str(), b.str());
    EXPECT_NE(a.str().find("# rng mt19937_64"), std::string::npos);
}

TEST(Experiment, SweepEqualsIndependentRuns) {
    SweepSpec spec;
    spec.axis = SweepAxis::N;
    spec.values = {3, 6};
    spec.base = quick();
    spec.repetitions = 2;
    auto res = run_sweep(spec);
    ASSERT_EQ(res.rows.size(), 4u);
    ASSERT_EQ(res.pooled.size(), 2u);
    for (const auto& row : res.rows) {
        SystemConfig cfg = row.config;
        EXPECT_EQ(run(cfg), row.stats);
    }
    OutageStats pooled = res.rows[0].stats;
    pooled += res.rows[1].stats;
    EXPECT_EQ(res.pooled[0].stats, pooled);
    EXPECT_EQ(res.rows[1].seed, spec.base.rng_seed + 1);
}

TEST(Experiment, SweepOutputIsByteStable) {
    SweepSpec spec;
    spec.axis = SweepAxis::M;
    spec.values = {1, 2, 3};
    spec.base = quick(Policy::MrsAcsi);
    spec.r_grid = {0.5, 1.5};
    std::ostringstream a, b;
    write_sweep(a, run_sweep(spec));
    write_sweep(b, run_sweep(spec));
    EXPECT_EQ(a.str(), b.str());
    EXPECT_NE(a.str().find("# optimum R=0.5 M*="), std::string::npos);
    EXPECT_NE(a.str().find("# optimum R=1.5 M*="), std::string::npos);
}

TEST(Experiment, SweepValidation) {
    SweepSpec spec;
    spec.axis = SweepAxis::R;
    spec.base = quick();
    EXPECT_THROW(run_sweep(spec), ValidationError);
    spec.values = {1.0, 0.5};
    EXPECT_THROW(run_sweep(spec), ValidationError);
    spec.axis = SweepAxis::M;
    spec.values = {1.5, 2.0};
    EXPECT_THROW(run_sweep(spec), ValidationError);
    spec.values = {1, 9};
    EXPECT_THROW(run_sweep(spec), ValidationError);
}

TEST(Experiment, AnalyticSweep) {
    SweepSpec spec;
    spec.axis = SweepAxis::K;
    spec.values = {1, 2, 3};
    auto res = run_sweep(spec);
    ASSERT_EQ(res.analytics.size(), 9u);
    EXPECT_EQ(res.analytics[4].quantity, "prop1");
    EXPECT_DOUBLE_EQ(res.analytics[4].value, outage_prop1(res.analytics[4].scenario));
}

TEST(Experiment, MOptimumFromRows) {
    std::vector<ResultRow> rows;
    for (int m : {1, 2, 3}) {
        ResultRow r{quick(Policy::MrsAcsi), {}, RowSource::Simulation, {}, 0.0};
        r.config.m_decode = m;
        r.stats.attempts = 1'000'000;
        r.stats.outages = m == 2 ? 100'000 : 200'000;
        rows.push_back(r);
    }
    auto opt = find_m_optima(rows);
    ASSERT_EQ(opt.size(), 1u);
    EXPECT_EQ(opt[0].m_star, 2);
    EXPECT_TRUE(opt[0].separated_left);
    EXPECT_TRUE(opt[0].separated_right);
    rows[0].stats.outages = 100'100;
    EXPECT_FALSE(find_m_optima(rows)[0].separated_left);
}

TEST(Experiment, CompareVerdictsAreRecomputable) {
    CompareSpec spec;
    spec.policies = {Policy::SrsNcsi, Policy::SrsNcsiBestDecoding, Policy::MrsAcsi};
    spec.base = quick();
    spec.r_grid = {0.5, 1.0};
    spec.repetitions = 2;
    spec.m_override[Policy::MrsAcsi] = 3;
    auto res = run_compare(spec);
    ASSERT_EQ(res.pooled.size(), 6u);
    EXPECT_EQ(res.pooled[2].config.m_decode, 3);
    auto again = ordering_verdicts(res.pooled);
    ASSERT_EQ(again.size(), res.verdicts.size());
    for (std::size_t i = 0; i < again.size(); ++i) {
        EXPECT_EQ(again[i].ranking, res.verdicts[i].ranking);
        for (std::size_t j = 0; j < again[i].steps.size(); ++j) {
            const auto& s = again[i].steps[j];
            EXPECT_EQ(s.separated, res.verdicts[i].steps[j].separated);
            const ResultRow* better = nullptr;
            const ResultRow* worse = nullptr;
            for (const auto& r : res.pooled) {
                if (r.config.rate_target != again[i].rate_target) continue;
                if (r.config.policy == s.better) better = &r;
                if (r.config.policy == s.worse) worse = &r;
            }
            ASSERT_TRUE(better && worse);
            EXPECT_LE(better->outage(), worse->outage());
            EXPECT_EQ(s.separated, std::abs(better->outage() - worse->outage()) > better->ci95() + worse->ci95());
        }
    }
}

TEST(Experiment, FixturesParse) {
    auto f = parse_fixtures("# c\n\nalpha = 1.5  # closed\nbeta=2\n");
    ASSERT_EQ(f.size(), 2u);
    EXPECT_EQ(f[0].name, "alpha");
    EXPECT_EQ(f[0].value, 1.5);
    EXPECT_EQ(f[0].provenance, "closed");
    EXPECT_THROW(parse_fixtures("alpha 1.5\n"), FixtureError);
    EXPECT_THROW(parse_fixtures("alpha = x\n"), FixtureError);
    EXPECT_THROW(load_fixtures("/nonexistent/fixtures.txt"), FixtureError);
}

TEST(Experiment, EveryPinnedFixtureReproduces) {
    for (const auto& f : load_fixtures(WPCN_FIXTURES)) {
        auto v = evaluate_fixture(f.name);
        ASSERT_TRUE(v) << f.name;
        EXPECT_NEAR(*v, f.value, 1e-12 * std::max(1.0, std::abs(f.value))) << f.name;
    }
}

TEST(Experiment, ValidatePassesAndDetectsCorruption) {
    ValidateOptions opt;
    opt.fixture_path = WPCN_FIXTURES;
    opt.mc_samples = 200'000;
    opt.sim_slots = 50'000;
    auto report = run_validate(opt);
    for (const auto& c : report.checks) EXPECT_TRUE(c.passed) << c.name;

    const std::string path = temp_path("corrupt_fixtures.txt");
    {
        std::ofstream out(path);
        out << "bessel_k0_1 = 0.4210254382407083  # one digit changed\n";
    }
    opt.fixture_path = path;
    report = run_validate(opt);
    EXPECT_FALSE(report.all_passed());
    EXPECT_EQ(report.checks.front().name, "fixture:bessel_k0_1");
    EXPECT_FALSE(report.checks.front().passed);
    EXPECT_EQ(report.checks.front().detail.rfind("fixture mismatch", 0), 0u);
    std::filesystem::remove(path);
}

TEST(Experiment, ValidateTightToleranceFails) {
    ValidateOptions opt;
    opt.fixture_path = WPCN_FIXTURES;
    opt.mc_samples = 100'000;
    opt.sim_slots = 20'000;
    opt.tolerance_scale = 0.01;
    EXPECT_FALSE(run_validate(opt).all_passed());
}

TEST(Experiment, ParallelForCoversAllIndices) {
    std::vector<int> hits(1000, 0);
    parallel_for(hits.size(), [&](std::size_t i) { hits[i] += 1; });
    for (int h : hits) EXPECT_EQ(h, 1);
}

TEST(Experiment, SingleValueSweepIsASimulate) {
    SweepSpec spec;
    spec.axis = SweepAxis::Eta;
    spec.values = {0.3};
    spec.base = quick();
    spec.repetitions = 1;
    auto res = run_sweep(spec);
    ASSERT_EQ(res.rows.size(), 1u);
    EXPECT_EQ(format_row(res.rows[0]), format_row(simulate_row(quick())));
}

TEST(Experiment, SinglePolicyCompareHasNoVerdict) {
    CompareSpec spec;
    spec.policies = {Policy::SrsNcsi};
    spec.base = quick();
    spec.r_grid = {0.5, 1.0};
    spec.repetitions = 1;
    auto res = run_compare(spec);
    EXPECT_EQ(res.pooled.size(), 2u);
    EXPECT_TRUE(res.verdicts.empty());
    std::ostringstream os;
    write_compare(os, res);
    EXPECT_EQ(os.str().find("# ordering"), std::string::npos);
}
