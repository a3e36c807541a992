#ifndef WPCN_TEST_LEDGER_CHECK_HPP
#define WPCN_TEST_LEDGER_CHECK_HPP

// Randomized energy-ledger audit shared by the unit tests and the acceptance gate.

#include <cmath>
#include <cstdint>
#include <random>
#include <sstream>
#include <string>

#include "wpcn/simulator.hpp"

namespace wpcn::testkit {

struct LedgerAudit {
    std::int64_t slots = 0;
    std::int64_t violations = 0;
    std::string first_violation;
};

// Steps randomized networks for at least `min_slots` slots and checks, per relay
// and slot: E >= 0, E' = E + harvested - spent, no harvesting while busy, no
// spending unless forwarding, never reserved and forwarding at once.
inline LedgerAudit audit_energy_ledger(std::int64_t min_slots, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    LedgerAudit audit;
    auto fail = [&](const std::string& what, std::int64_t t, int i) {
        if (audit.violations++ == 0) {
            std::ostringstream os;
            os << what << " at slot " << t << ", relay " << i;
            audit.first_violation = os.str();
        }
    };
    for (int episode = 0; audit.slots < min_slots; ++episode) {
        SystemConfig cfg;
        cfg.n_relays = 1 + static_cast<int>(rng() % 10);
        cfg.m_decode = 1 + static_cast<int>(rng() % cfg.n_relays);
        cfg.eta = u(rng);
        cfg.rate_target = 2.5 * u(rng);
        cfg.p_source_dbw = 15.0 * u(rng);
        cfg.p_relay_dbw = 15.0 * u(rng);
        cfg.slot_duration = 0.5 + u(rng);
        cfg.policy = kAllPolicies[episode % std::size(kAllPolicies)];
        cfg.validate();
        FadingSource src(rng(), 0.5 + u(rng));
        NetworkState s(cfg.n_relays);
        std::vector<double> before(cfg.n_relays);
        const int episode_slots = 2'000;
        for (int t = 0; t < episode_slots; ++t, ++audit.slots) {
            for (int i = 0; i < cfg.n_relays; ++i) before[i] = s.relays[i].stored_energy;
            step(s, draw_slot(src, cfg.n_relays), cfg, {t + 1 < episode_slots, 0});
            for (int i = 0; i < cfg.n_relays; ++i) {
                const auto& r = s.relays[i];
                const double expect = before[i] + s.last_harvested[i] - s.last_spent[i];
                if (r.stored_energy < 0.0) fail("negative energy", t, i);
                if (std::abs(r.stored_energy - expect) > 1e-9 * (1.0 + expect)) fail("ledger mismatch", t, i);
                if ((r.reserved_decode || r.forwarding) && s.last_harvested[i] != 0.0) fail("busy relay harvested", t, i);
                if (!r.forwarding && s.last_spent[i] != 0.0) fail("idle relay spent energy", t, i);
                if (r.reserved_decode && r.forwarding) fail("reserved while forwarding", t, i);
            }
        }
    }
    return audit;
}

} // namespace wpcn::testkit

#endif
