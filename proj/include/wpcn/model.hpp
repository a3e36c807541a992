#ifndef WPCN_MODEL_HPP
#define WPCN_MODEL_HPP

#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <variant>
#include <vector>

namespace wpcn {

/// Channel power gains |h|^2 of one slot, one entry per relay.
struct SlotRealization {
    std::vector<double> gains_sr;
    std::vector<double> gains_rd;
};

struct PendingMessage {
    std::int64_t message_id = 0;
    double forward_power_w = 0.0;

    bool operator==(const PendingMessage&) const = default;
};

struct RelayState {
    double stored_energy = 0.0;   // joules
    bool reserved_decode = false; // decoding the source message this slot
    bool forwarding = false;      // transmitting to the destination this slot
    std::optional<PendingMessage> pending_message;

    bool operator==(const RelayState&) const = default;
};

enum class OutageCause { NoDecoder, NoEnergy, ForwardChannelFail };

inline constexpr std::array<OutageCause, 3> kAllCauses = {
    OutageCause::NoDecoder, OutageCause::NoEnergy, OutageCause::ForwardChannelFail};

inline const char* cause_name(OutageCause c) {
    switch (c) {
    case OutageCause::NoDecoder: return "decode";
    case OutageCause::NoEnergy: return "energy";
    case OutageCause::ForwardChannelFail: return "forward";
    }
    return "unknown";
}

struct Forward {
    int relay = -1;
    double power_w = 0.0; // transmit power at forwarding time; 0 when allocated later from CSIT
    bool operator==(const Forward&) const = default;
};

/// Indices of the relays reserved for decoding, in selection order.
struct DecodeSet {
    std::vector<int> members;
    int capacity_m = 0;
    bool operator==(const DecodeSet&) const = default;
};

struct NoFeasibleRelay {
    OutageCause cause = OutageCause::NoDecoder;
    bool operator==(const NoFeasibleRelay&) const = default;
};

using PolicyDecision = std::variant<Forward, DecodeSet, NoFeasibleRelay>;

struct OutageStats {
    std::int64_t attempts = 0;
    std::int64_t outages = 0;
    std::array<std::int64_t, 3> cause_counts{};

    void record_success() { ++attempts; }
    void record_outage(OutageCause cause) {
        ++attempts;
        ++outages;
        ++cause_counts[static_cast<std::size_t>(cause)];
    }
    std::int64_t count(OutageCause cause) const { return cause_counts[static_cast<std::size_t>(cause)]; }

    double outage_prob() const {
        return attempts == 0 ? 0.0 : static_cast<double>(outages) / static_cast<double>(attempts);
    }
    double standard_error() const {
        if (attempts == 0) return 0.0;
        double p = outage_prob();
        return std::sqrt(p * (1.0 - p) / static_cast<double>(attempts));
    }
    double ci95_halfwidth() const { return 1.96 * standard_error(); }

    OutageStats& operator+=(const OutageStats& o) {
        attempts += o.attempts;
        outages += o.outages;
        for (std::size_t i = 0; i < cause_counts.size(); ++i) cause_counts[i] += o.cause_counts[i];
        return *this;
    }
    bool operator==(const OutageStats&) const = default;
};

/// Share of outages per cause; empty when there were no outages.
struct CauseReport {
    std::optional<double> share_decode;
    std::optional<double> share_energy;
    std::optional<double> share_forward;
};

inline CauseReport decompose_outage(const OutageStats& stats) {
    if (stats.outages == 0) return {};
    auto share = [&](OutageCause c) {
        return static_cast<double>(stats.count(c)) / static_cast<double>(stats.outages);
    };
    return {share(OutageCause::NoDecoder), share(OutageCause::NoEnergy),
            share(OutageCause::ForwardChannelFail)};
}

} // namespace wpcn

#endif
