#ifndef WPCN_TEST_HALF_DUPLEX_LIMIT_HPP
#define WPCN_TEST_HALF_DUPLEX_LIMIT_HPP

// Energy-rich outage of the minimum-rate single-relay scheme when the relay
// forwarding the previous message cannot take the next one.

#include <cmath>

#include "wpcn/config.hpp"

namespace wpcn::testkit {

inline double half_duplex_srs_limit(int n_relays, double p_source_w, double p_relay_w, double noise_var,
                                    double rate_target, double lambda_rate) {
    const double v = snr_threshold(rate_target);
    const double decode = std::exp(-lambda_rate * v * noise_var / p_source_w);
    const double relay_hop = std::exp(-lambda_rate * v * noise_var / p_relay_w);
    auto select = [&](int n) { return 1.0 - std::pow(1.0 - decode, n); };
    // Two-state chain on "a relay is busy forwarding"; stationary busy probability.
    const double busy = select(n_relays) / (1.0 + select(n_relays) - select(n_relays - 1));
    return 1.0 - busy * relay_hop;
}

} // namespace wpcn::testkit

#endif
