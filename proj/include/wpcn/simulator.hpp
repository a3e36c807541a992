#ifndef WPCN_SIMULATOR_HPP
#define WPCN_SIMULATOR_HPP

/// \file simulator.hpp
/// Time-slotted pipeline: in every slot the forwarder chosen in the previous
/// slot transmits to the destination while the source broadcasts a new
/// message to the remaining relays. One source message is issued per slot.

#include <cstdint>
#include <functional>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "config.hpp"
#include "fading.hpp"
#include "model.hpp"
#include "policy.hpp"

namespace wpcn {

class InvariantViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Linear harvest model: eta * P_s * |h_si|^2 over one slot.
inline double harvest_energy(double gain_sr, double eta, double p_source_w, double slot_duration) {
    return eta * p_source_w * gain_sr * slot_duration;
}

/// Message decoded in the previous slot and awaiting forwarding.
struct InFlight {
    std::int64_t message_id = 0;
    // Fixed-power schemes pick the forwarder at decode time; CSIT schemes carry
    // the decode set and pick in the forwarding slot.
    std::variant<Forward, DecodeSet> route;
};

enum class SlotOutcome { None, Delivered, Outage };

/// What happened in one slot; handed to the optional trace callback.
struct SlotTrace {
    std::int64_t slot = 0;
    // Forwarding of the previous message.
    std::optional<std::int64_t> forwarded_message;
    int forwarder = -1;
    double forward_power_w = 0.0;
    SlotOutcome forward_outcome = SlotOutcome::None;
    std::optional<OutageCause> forward_cause;
    // Source broadcast of the new message.
    std::optional<std::int64_t> new_message;
    std::vector<int> decoders;
    std::optional<OutageCause> new_cause;
};

struct NetworkState {
    std::int64_t slot_index = 0;
    std::vector<RelayState> relays;
    std::optional<InFlight> in_flight;
    OutageStats stats;
    // Per-relay energy ledger of the last executed slot.
    std::vector<double> last_harvested;
    std::vector<double> last_spent;

    explicit NetworkState(int n_relays)
        : relays(static_cast<std::size_t>(n_relays)), last_harvested(relays.size(), 0.0),
          last_spent(relays.size(), 0.0) {}
};

namespace detail {

[[noreturn]] inline void invariant_failure(const NetworkState& s, int relay, const std::string& what) {
    std::ostringstream os;
    os << "invariant violated at slot " << s.slot_index << ", relay " << relay << ": " << what;
    throw InvariantViolation(os.str());
}

inline void record(NetworkState& s, std::int64_t message_id, std::int64_t warmup, std::optional<OutageCause> cause) {
    if (message_id < warmup) return;
    if (cause) s.stats.record_outage(*cause);
    else s.stats.record_success();
}

} // namespace detail

struct StepOptions {
    bool issue_new_message = true;
    std::int64_t warmup_slots = 0;
};

/// Advances the network by one slot. The realization's gains_sr drive the new
/// broadcast and harvesting; its gains_rd drive the pending forward.
inline void step(NetworkState& state, const SlotRealization& slot, const SystemConfig& cfg,
                 const StepOptions& opts = {}, SlotTrace* trace = nullptr) {
    const std::size_t n = state.relays.size();
    if (slot.gains_sr.size() != n || slot.gains_rd.size() != n)
        throw std::invalid_argument("slot realization size does not match relay count");

    const double v = cfg.snr_threshold();
    const double T = cfg.slot_duration;
#ifndef NDEBUG
    std::vector<double> energy_before(n);
    for (std::size_t i = 0; i < n; ++i) energy_before[i] = state.relays[i].stored_energy;
#endif
    std::fill(state.last_harvested.begin(), state.last_harvested.end(), 0.0);
    std::fill(state.last_spent.begin(), state.last_spent.end(), 0.0);

    // Nodes enter the slot idle; flags are re-derived from the in-flight message.
    for (auto& r : state.relays) {
        r.reserved_decode = false;
        r.forwarding = false;
    }
    if (trace) {
        *trace = SlotTrace{};
        trace->slot = state.slot_index;
    }

    auto debit = [&](int i, double power) {
        auto& r = state.relays[i];
        const double cost = power * T;
        // Feasibility is checked as E/T >= P; allow for the rounding of P*T.
        if (cost > r.stored_energy * (1.0 + 1e-12)) detail::invariant_failure(state, i, "debit exceeds stored energy");
        r.stored_energy -= cost;
        if (r.stored_energy < 0.0) r.stored_energy = 0.0;
        state.last_spent[i] += cost;
    };

    // (a) forwarding of the message decoded in the previous slot
    if (state.in_flight) {
        const InFlight flight = std::move(*state.in_flight);
        state.in_flight.reset();
        std::optional<OutageCause> cause;
        int forwarder = -1;
        double power = 0.0;
        if (const auto* fwd = std::get_if<Forward>(&flight.route)) {
            forwarder = fwd->relay;
            power = fwd->power_w;
            state.relays[forwarder].forwarding = true;
            // Blind fixed-power transmission: energy is spent whatever the channel.
            debit(forwarder, power);
            if (!(slot.gains_rd[forwarder] * power / cfg.noise_var >= v)) cause = OutageCause::ForwardChannelFail;
        } else {
            const auto& gamma = std::get<DecodeSet>(flight.route);
            PolicyDecision d = select_forward_stage(gamma, slot.gains_rd, state.relays, cfg);
            if (const auto* f = std::get_if<Forward>(&d)) {
                forwarder = f->relay;
                power = f->power_w;
                state.relays[forwarder].forwarding = true;
                debit(forwarder, power);
            } else {
                cause = std::get<NoFeasibleRelay>(d).cause;
            }
        }
        for (auto& r : state.relays) r.pending_message.reset();
        detail::record(state, flight.message_id, opts.warmup_slots, cause);
        if (trace) {
            trace->forwarded_message = flight.message_id;
            trace->forwarder = forwarder;
            trace->forward_power_w = power;
            trace->forward_outcome = cause ? SlotOutcome::Outage : SlotOutcome::Delivered;
            trace->forward_cause = cause;
        }
    }

    // (b) source broadcast of a new message
    if (opts.issue_new_message) {
        const std::int64_t id = state.slot_index;
        PolicyDecision d = select_source_stage(slot.gains_sr, state.relays, cfg);
        std::optional<OutageCause> cause;
        std::vector<int> decoders;
        if (const auto* f = std::get_if<Forward>(&d)) {
            decoders = {f->relay};
            state.in_flight = InFlight{id, *f};
            state.relays[f->relay].pending_message = PendingMessage{id, f->power_w};
        } else if (auto* g = std::get_if<DecodeSet>(&d)) {
            if (g->members.empty()) {
                cause = OutageCause::NoDecoder;
            } else {
                decoders = g->members;
                for (int i : g->members) state.relays[i].pending_message = PendingMessage{id, 0.0};
                state.in_flight = InFlight{id, std::move(*g)};
            }
        } else {
            cause = std::get<NoFeasibleRelay>(d).cause;
        }
        for (int i : decoders) {
            if (state.relays[i].forwarding) detail::invariant_failure(state, i, "forwarding relay selected to decode");
            state.relays[i].reserved_decode = true;
        }
        if (cause) detail::record(state, id, opts.warmup_slots, cause);
        if (trace) {
            trace->new_message = id;
            trace->decoders = decoders;
            trace->new_cause = cause;
        }
    }

    // (c) every idle relay harvests from the broadcast
    for (std::size_t i = 0; i < n; ++i) {
        auto& r = state.relays[i];
        if (r.reserved_decode || r.forwarding) continue;
        double h = harvest_energy(slot.gains_sr[i], cfg.eta, cfg.p_source_w, T);
        r.stored_energy += h;
        state.last_harvested[i] = h;
    }

#ifndef NDEBUG
    for (std::size_t i = 0; i < n; ++i) {
        const auto& r = state.relays[i];
        if (r.stored_energy < 0.0) detail::invariant_failure(state, static_cast<int>(i), "negative stored energy");
        const double expect = energy_before[i] + state.last_harvested[i] - state.last_spent[i];
        if (std::abs(r.stored_energy - expect) > 1e-9 * (1.0 + std::abs(expect)))
            detail::invariant_failure(state, static_cast<int>(i), "energy ledger mismatch");
    }
#endif
    ++state.slot_index;
}

/// Scales the raw fading gains by the configured path loss, if any.
inline void apply_path_loss(SlotRealization& slot, const SystemConfig& cfg) {
    if (!cfg.path_loss) return;
    const double sr = cfg.path_loss->sr_scale(), rd = cfg.path_loss->rd_scale();
    for (double& g : slot.gains_sr) g *= sr;
    for (double& g : slot.gains_rd) g *= rd;
}

using TraceCallback = std::function<void(const SlotTrace&)>;

/// Runs horizon_slots broadcast slots plus one final slot that only forwards the
/// last pending message. Messages issued before warmup_slots are not counted.
/// Relays start with empty batteries.
inline OutageStats run(const SystemConfig& cfg, const TraceCallback& on_slot = {}) {
    if (cfg.warmup_slots >= cfg.horizon_slots) throw ValidationError("no measured slots");
    FadingSource source(cfg.rng_seed, cfg.lambda_rate);
    NetworkState state(cfg.n_relays);
    SlotRealization slot{std::vector<double>(cfg.n_relays), std::vector<double>(cfg.n_relays)};
    SlotTrace trace;
    SlotTrace* trace_ptr = on_slot ? &trace : nullptr;
    StepOptions opts{true, cfg.warmup_slots};
    for (std::int64_t t = 0; t <= cfg.horizon_slots; ++t) {
        opts.issue_new_message = t < cfg.horizon_slots;
        draw_slot_into(source, slot);
        apply_path_loss(slot, cfg);
        step(state, slot, cfg, opts, trace_ptr);
        if (trace_ptr) on_slot(trace);
    }
    return state.stats;
}

} // namespace wpcn

#endif
