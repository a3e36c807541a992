#ifndef WPCN_ORACLE_HPP
#define WPCN_ORACLE_HPP

/// \file oracle.hpp
/// Monte Carlo estimators that check the closed forms by direct sampling of
/// the underlying events. Nothing here calls into analytics.hpp.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "fading.hpp"

namespace wpcn::oracle {

struct Estimate {
    double mean = 0.0;
    double standard_error = 0.0;
    std::int64_t samples = 0;
};

inline Estimate bernoulli_estimate(std::int64_t hits, std::int64_t samples) {
    const double p = static_cast<double>(hits) / static_cast<double>(samples);
    return {p, std::sqrt(p * (1.0 - p) / static_cast<double>(samples)), samples};
}

/// Shared link parameters of a tagged-relay experiment (watts, linear units).
struct LinkParams {
    double lambda_rate = 1.0;
    double eta = 1.0;
    double p_source_w = 10.0;
    double p_relay_w = 10.0;
    double noise_var = 1.0;
};

struct GridPoint {
    int k = 1;
    int n = 0;
    double rate_target = 1.0;
};

struct GridEstimate {
    GridPoint point;
    Estimate selection;    // decodes and holds (n+1) P_r worth of harvest
    Estimate outage_fixed; // fixed forward power P_r
    Estimate outage_csit;  // forward power allocated from the relay-destination gain
};

/// Samples (|h_si|^2, |h_id|^2, X_1..X_{kmax-1}) and scores every grid point on
/// the same draws. Harvest after k-1 slots is eta P_s S_{k-1} with S the prefix
/// sum of the X's; n earlier transmissions have consumed n P_r (fixed power) or
/// n v sigma^2 / |h|^2 worth of normalized energy.
inline std::vector<GridEstimate> tagged_relay_grid(const std::vector<GridPoint>& grid, const LinkParams& p,
                                                   std::int64_t samples, std::uint64_t seed) {
    int kmax = 1;
    for (const auto& g : grid) kmax = std::max(kmax, g.k);
    struct Thresholds {
        double decode_gain, relay_gain, energy, csit;
        bool csit_free;
    };
    std::vector<Thresholds> thr;
    for (const auto& g : grid) {
        const double v = std::exp2(2.0 * g.rate_target) - 1.0;
        thr.push_back({v * p.noise_var / p.p_source_w, v * p.noise_var / p.p_relay_w,
                       (g.n + 1) * p.p_relay_w / (p.eta * p.p_source_w),
                       (g.n + 1) * v * p.noise_var / (p.eta * p.p_source_w), v == 0.0});
    }
    std::vector<std::int64_t> sel(grid.size(), 0), ok_fixed(grid.size(), 0), ok_csit(grid.size(), 0);
    FadingSource src(seed, p.lambda_rate, /*stream_id=*/0x0AC1E);
    std::vector<double> prefix(static_cast<std::size_t>(kmax), 0.0);
    for (std::int64_t s = 0; s < samples; ++s) {
        const double h_sr = src.exponential();
        const double h_rd = src.exponential();
        prefix[0] = 0.0;
        for (int j = 1; j < kmax; ++j) prefix[j] = prefix[j - 1] + src.exponential();
        for (std::size_t i = 0; i < grid.size(); ++i) {
            const int k = grid[i].k;
            if (k < 2) continue; // no harvest yet: always an outage
            if (h_sr < thr[i].decode_gain) continue;
            const double accumulated = prefix[k - 1];
            if (accumulated >= thr[i].energy) {
                ++sel[i];
                if (h_rd >= thr[i].relay_gain) ++ok_fixed[i];
            }
            if (thr[i].csit_free || h_rd * accumulated >= thr[i].csit) ++ok_csit[i];
        }
    }
    std::vector<GridEstimate> out;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        out.push_back({grid[i], bernoulli_estimate(sel[i], samples),
                       bernoulli_estimate(samples - ok_fixed[i], samples),
                       bernoulli_estimate(samples - ok_csit[i], samples)});
    }
    return out;
}

/// Empirical CDF at u of a sum of l Exp(lambda) draws.
inline Estimate erlang_cdf(int l, double lambda_rate, double u, std::int64_t samples, std::uint64_t seed) {
    FadingSource src(seed, lambda_rate, /*stream_id=*/0xE71A);
    std::int64_t hits = 0;
    for (std::int64_t s = 0; s < samples; ++s) {
        double sum = 0.0;
        for (int j = 0; j < l; ++j) sum += src.exponential();
        if (sum <= u) ++hits;
    }
    return bernoulli_estimate(hits, samples);
}

/// Outage of one always-powered relay: either hop below the SNR threshold.
inline Estimate grid_outage(double p_source_w, double p_relay_w, double noise_var, double rate_target,
                            double lambda_rate, std::int64_t samples, std::uint64_t seed) {
    FadingSource src(seed, lambda_rate, /*stream_id=*/0x6121D);
    const double v = std::exp2(2.0 * rate_target) - 1.0;
    std::int64_t hits = 0;
    for (std::int64_t s = 0; s < samples; ++s) {
        const double snr_sr = src.exponential() * p_source_w / noise_var;
        const double snr_rd = src.exponential() * p_relay_w / noise_var;
        if (std::min(snr_sr, snr_rd) < v) ++hits;
    }
    return bernoulli_estimate(hits, samples);
}

} // namespace wpcn::oracle

#endif
