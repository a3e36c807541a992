#ifndef WPCN_POLICY_HPP
#define WPCN_POLICY_HPP

/// \file policy.hpp
/// Relay-selection rules. Every function is a pure function of a channel and
/// battery snapshot; nothing here mutates relay state.
///
/// Conventions shared by all rules:
///  - a relay flagged `forwarding` is busy transmitting and never a candidate;
///  - feasibility tests are non-strict (gain >= threshold, E/T >= P);
///  - argmin/argmax ties go to the lowest relay index.

#include <algorithm>
#include <numeric>
#include <span>
#include <stdexcept>
#include <vector>

#include "config.hpp"
#include "model.hpp"

namespace wpcn {

class InfeasiblePowerError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Transmit power that exactly meets the rate target on a relay-destination gain.
inline double required_forward_power(double gain_rd, double v, double noise_var) {
    if (!(gain_rd > 0.0)) throw InfeasiblePowerError("relay-destination gain must be positive");
    return v * noise_var / gain_rd;
}

/// Smallest source-relay gain that supports the rate target.
inline double decode_threshold_gain(const SystemConfig& cfg) {
    return cfg.snr_threshold() * cfg.noise_var / cfg.p_source_w;
}

inline bool has_energy_for(double stored_energy, double power_w, double slot_duration) {
    return stored_energy / slot_duration >= power_w;
}

namespace detail {

inline std::vector<int> decodable_candidates(std::span<const double> gains_sr,
                                             std::span<const RelayState> states, const SystemConfig& cfg) {
    const double thr = decode_threshold_gain(cfg);
    std::vector<int> out;
    for (std::size_t i = 0; i < gains_sr.size(); ++i)
        if (!states[i].forwarding && gains_sr[i] >= thr) out.push_back(static_cast<int>(i));
    return out;
}

} // namespace detail

inline PolicyDecision select_srs_ncsi(std::span<const double> gains_sr, std::span<const RelayState> states,
                                      const SystemConfig& cfg) {
    auto decoders = detail::decodable_candidates(gains_sr, states, cfg);
    if (decoders.empty()) return NoFeasibleRelay{OutageCause::NoDecoder};
    int best = -1;
    for (int i : decoders) {
        if (!has_energy_for(states[i].stored_energy, cfg.p_relay_w, cfg.slot_duration)) continue;
        if (best < 0 || gains_sr[i] < gains_sr[best]) best = i;
    }
    if (best < 0) return NoFeasibleRelay{OutageCause::NoEnergy};
    return Forward{best, cfg.p_relay_w};
}

/// Largest residual energy E - P_r T among decodable relays that can afford P_r.
inline PolicyDecision select_srs_best_energy(std::span<const double> gains_sr, std::span<const RelayState> states,
                                             const SystemConfig& cfg) {
    auto decoders = detail::decodable_candidates(gains_sr, states, cfg);
    if (decoders.empty()) return NoFeasibleRelay{OutageCause::NoDecoder};
    int best = -1;
    for (int i : decoders) {
        if (!has_energy_for(states[i].stored_energy, cfg.p_relay_w, cfg.slot_duration)) continue;
        if (best < 0 || states[i].stored_energy > states[best].stored_energy) best = i;
    }
    if (best < 0) return NoFeasibleRelay{OutageCause::NoEnergy};
    return Forward{best, cfg.p_relay_w};
}

/// Strongest decodable relay; the energy gate is applied to that relay only, so a
/// selected relay that cannot afford P_r is an outage rather than a re-selection.
inline PolicyDecision select_srs_best_decoding(std::span<const double> gains_sr,
                                               std::span<const RelayState> states, const SystemConfig& cfg) {
    auto decoders = detail::decodable_candidates(gains_sr, states, cfg);
    if (decoders.empty()) return NoFeasibleRelay{OutageCause::NoDecoder};
    int best = decoders.front();
    for (int i : decoders)
        if (gains_sr[i] > gains_sr[best]) best = i;
    if (!has_energy_for(states[best].stored_energy, cfg.p_relay_w, cfg.slot_duration))
        return NoFeasibleRelay{OutageCause::NoEnergy};
    return Forward{best, cfg.p_relay_w};
}

/// The min(M, U) weakest decodable relays, ordered by ascending gain.
inline DecodeSet select_mrs_phase1(std::span<const double> gains_sr, std::span<const RelayState> states,
                                   const SystemConfig& cfg) {
    auto decoders = detail::decodable_candidates(gains_sr, states, cfg);
    std::stable_sort(decoders.begin(), decoders.end(),
                     [&](int a, int b) { return gains_sr[a] < gains_sr[b]; });
    if (decoders.size() > static_cast<std::size_t>(cfg.m_decode)) decoders.resize(cfg.m_decode);
    return DecodeSet{std::move(decoders), cfg.m_decode};
}

/// Position of the cheapest affordable entry: sort by required power, take the
/// first one whose battery covers it. Returns -1 when none is affordable.
inline int first_affordable_by_power(std::span<const double> required_power, std::span<const double> energies,
                                     double slot_duration) {
    std::vector<int> order(required_power.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return required_power[a] < required_power[b]; });
    for (int pos : order)
        if (has_energy_for(energies[pos], required_power[pos], slot_duration)) return pos;
    return -1;
}

inline PolicyDecision select_mrs_phase2(const DecodeSet& decode_set, std::span<const double> gains_rd,
                                        std::span<const RelayState> states, const SystemConfig& cfg) {
    if (decode_set.members.empty()) return NoFeasibleRelay{OutageCause::NoDecoder};
    const double v = cfg.snr_threshold();
    // Sorting by (power, relay index) gives the lowest-index tie-break.
    std::vector<int> members = decode_set.members;
    std::sort(members.begin(), members.end());
    std::vector<double> power(members.size()), energy(members.size());
    for (std::size_t j = 0; j < members.size(); ++j) {
        power[j] = required_forward_power(gains_rd[members[j]], v, cfg.noise_var);
        energy[j] = states[members[j]].stored_energy;
    }
    int pos = first_affordable_by_power(power, energy, cfg.slot_duration);
    if (pos < 0) return NoFeasibleRelay{OutageCause::NoEnergy};
    return Forward{members[pos], power[pos]};
}

/// Phase 1 of the best-energy two-phase baseline: the M decodable relays with
/// the largest batteries.
inline DecodeSet select_mrs_best_energy_phase1(std::span<const double> gains_sr,
                                               std::span<const RelayState> states, const SystemConfig& cfg) {
    auto decoders = detail::decodable_candidates(gains_sr, states, cfg);
    std::stable_sort(decoders.begin(), decoders.end(),
                     [&](int a, int b) { return states[a].stored_energy > states[b].stored_energy; });
    if (decoders.size() > static_cast<std::size_t>(cfg.m_decode)) decoders.resize(cfg.m_decode);
    return DecodeSet{std::move(decoders), cfg.m_decode};
}

/// Phase 2 of the best-energy baseline: largest residual E - P_id T among
/// members that can afford their own P_id.
inline PolicyDecision select_mrs_best_energy_phase2(const DecodeSet& decode_set, std::span<const double> gains_rd,
                                                    std::span<const RelayState> states, const SystemConfig& cfg) {
    if (decode_set.members.empty()) return NoFeasibleRelay{OutageCause::NoDecoder};
    const double v = cfg.snr_threshold();
    int best = -1;
    double best_power = 0.0, best_residual = 0.0;
    for (int i : decode_set.members) {
        double p = required_forward_power(gains_rd[i], v, cfg.noise_var);
        if (!has_energy_for(states[i].stored_energy, p, cfg.slot_duration)) continue;
        double residual = states[i].stored_energy - p * cfg.slot_duration;
        if (best < 0 || residual > best_residual || (residual == best_residual && i < best)) {
            best = i;
            best_power = p;
            best_residual = residual;
        }
    }
    if (best < 0) return NoFeasibleRelay{OutageCause::NoEnergy};
    return Forward{best, best_power};
}

/// CSIT single-relay baseline: decodable relay with the largest battery. The
/// result is a one-member decode set; power is allocated at forwarding time.
inline DecodeSet select_srs_acsi_best_energy(std::span<const double> gains_sr, std::span<const RelayState> states,
                                             const SystemConfig& cfg) {
    auto decoders = detail::decodable_candidates(gains_sr, states, cfg);
    if (decoders.empty()) return DecodeSet{{}, 1};
    int best = decoders.front();
    for (int i : decoders)
        if (states[i].stored_energy > states[best].stored_energy) best = i;
    return DecodeSet{{best}, 1};
}

/// CSIT single-relay baseline: strongest decodable relay.
inline DecodeSet select_srs_acsi_best_decoding(std::span<const double> gains_sr,
                                               std::span<const RelayState> states, const SystemConfig& cfg) {
    auto decoders = detail::decodable_candidates(gains_sr, states, cfg);
    if (decoders.empty()) return DecodeSet{{}, 1};
    int best = decoders.front();
    for (int i : decoders)
        if (gains_sr[i] > gains_sr[best]) best = i;
    return DecodeSet{{best}, 1};
}

/// Slot-t stage of the configured scheme: a Forward for fixed-power schemes, a
/// DecodeSet for CSIT schemes, or NoFeasibleRelay.
inline PolicyDecision select_source_stage(std::span<const double> gains_sr, std::span<const RelayState> states,
                                          const SystemConfig& cfg) {
    switch (cfg.policy) {
    case Policy::SrsNcsi: return select_srs_ncsi(gains_sr, states, cfg);
    case Policy::SrsNcsiBestEnergy: return select_srs_best_energy(gains_sr, states, cfg);
    case Policy::SrsNcsiBestDecoding: return select_srs_best_decoding(gains_sr, states, cfg);
    case Policy::MrsAcsi: return select_mrs_phase1(gains_sr, states, cfg);
    case Policy::MrsAcsiBestEnergy: return select_mrs_best_energy_phase1(gains_sr, states, cfg);
    case Policy::SrsAcsiBestEnergy: return select_srs_acsi_best_energy(gains_sr, states, cfg);
    case Policy::SrsAcsiBestDecoding: return select_srs_acsi_best_decoding(gains_sr, states, cfg);
    }
    throw std::logic_error("unhandled policy");
}

/// Forwarding-slot stage of a CSIT scheme.
inline PolicyDecision select_forward_stage(const DecodeSet& decode_set, std::span<const double> gains_rd,
                                           std::span<const RelayState> states, const SystemConfig& cfg) {
    if (cfg.policy == Policy::MrsAcsiBestEnergy)
        return select_mrs_best_energy_phase2(decode_set, gains_rd, states, cfg);
    return select_mrs_phase2(decode_set, gains_rd, states, cfg);
}

} // namespace wpcn

#endif
