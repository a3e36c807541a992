#ifndef WPCN_FADING_HPP
#define WPCN_FADING_HPP

/// \file fading.hpp
/// Seedable i.i.d. Rayleigh block fading, generated directly as exponential
/// channel power gains, plus the per-hop achievable-rate formulas.
///
/// Reproducibility: the engine is std::mt19937_64, whose output sequence is fixed
/// by the C++ standard. Uniforms are built from the top 53 bits of each draw and
/// mapped to Exp(lambda) by inversion, so no implementation-defined
/// distribution object is involved. A (seed, stream) pair is folded into the
/// engine seed with two rounds of SplitMix64.

#include <cmath>
#include <cstdint>
#include <random>
#include <span>
#include <string_view>

#include "model.hpp"

namespace wpcn {

inline constexpr std::string_view kRngAlgorithm = "mt19937_64+splitmix64-seed+inversion-exp";

inline constexpr std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

inline constexpr std::uint64_t derive_stream_seed(std::uint64_t seed, std::uint64_t stream_id) {
    return splitmix64(splitmix64(seed) ^ stream_id);
}

class FadingSource {
public:
    FadingSource(std::uint64_t seed, double lambda_rate, std::uint64_t stream_id = 0)
        : seed_(seed), stream_id_(stream_id), lambda_(lambda_rate), engine_(derive_stream_seed(seed, stream_id)) {}

    /// Uniform in the open interval (0, 1).
    double uniform() {
        ++position_;
        return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
    }

    /// Exp(lambda) channel power gain; strictly positive.
    double exponential() { return -std::log(uniform()) / lambda_; }

    void fill(std::span<double> out) {
        for (double& g : out) g = exponential();
    }

    std::uint64_t seed() const { return seed_; }
    std::uint64_t stream_id() const { return stream_id_; }
    std::uint64_t position() const { return position_; }
    double lambda_rate() const { return lambda_; }

private:
    std::uint64_t seed_;
    std::uint64_t stream_id_;
    double lambda_;
    std::mt19937_64 engine_;
    std::uint64_t position_ = 0;
};

/// Draws N source-relay gains then N relay-destination gains (2N draws).
inline SlotRealization draw_slot(FadingSource& source, int n_relays) {
    SlotRealization r;
    r.gains_sr.resize(static_cast<std::size_t>(n_relays));
    r.gains_rd.resize(static_cast<std::size_t>(n_relays));
    source.fill(r.gains_sr);
    source.fill(r.gains_rd);
    return r;
}

/// In-place variant that reuses the buffers of an existing realization.
inline void draw_slot_into(FadingSource& source, SlotRealization& r) {
    source.fill(r.gains_sr);
    source.fill(r.gains_rd);
}

inline double rate_source_relay(double gain, double p_source_w, double noise_var) {
    return 0.5 * std::log2(1.0 + gain * p_source_w / noise_var);
}

inline double rate_relay_dest(double gain, double p_relay_w, double noise_var) {
    return 0.5 * std::log2(1.0 + gain * p_relay_w / noise_var);
}

} // namespace wpcn

#endif
