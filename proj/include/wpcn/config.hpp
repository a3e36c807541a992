#ifndef WPCN_CONFIG_HPP
#define WPCN_CONFIG_HPP

/// \file config.hpp
/// Scenario configuration, unit conversions and the plain-text config format.

#include <charconv>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

namespace wpcn {

/// Malformed configuration text (syntax, unknown key, duplicate key, bad number).
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Well-formed configuration whose values violate a model invariant.
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

inline double dbw_to_watt(double dbw) { return std::pow(10.0, dbw / 10.0); }
inline double watt_to_dbw(double watt) { return 10.0 * std::log10(watt); }

/// SNR threshold v = 2^(2R) - 1 for a two-hop rate target R (bits/s/Hz).
inline double snr_threshold(double rate_target) { return std::exp2(2.0 * rate_target) - 1.0; }

enum class Policy {
    SrsNcsi,
    SrsNcsiBestEnergy,
    SrsNcsiBestDecoding,
    MrsAcsi,
    MrsAcsiBestEnergy,
    SrsAcsiBestEnergy,
    SrsAcsiBestDecoding,
};

inline constexpr Policy kAllPolicies[] = {
    Policy::SrsNcsi,           Policy::SrsNcsiBestEnergy, Policy::SrsNcsiBestDecoding,
    Policy::MrsAcsi,           Policy::MrsAcsiBestEnergy, Policy::SrsAcsiBestEnergy,
    Policy::SrsAcsiBestDecoding,
};

inline std::string_view policy_name(Policy p) {
    switch (p) {
    case Policy::SrsNcsi: return "srs-ncsi";
    case Policy::SrsNcsiBestEnergy: return "srs-ncsi-best-energy";
    case Policy::SrsNcsiBestDecoding: return "srs-ncsi-best-decoding";
    case Policy::MrsAcsi: return "mrs-acsi";
    case Policy::MrsAcsiBestEnergy: return "mrs-acsi-best-energy";
    case Policy::SrsAcsiBestEnergy: return "srs-acsi-best-energy";
    case Policy::SrsAcsiBestDecoding: return "srs-acsi-best-decoding";
    }
    return "unknown";
}

/// Accepts the dashed lower-case names as well as the upper snake-case spelling
/// (e.g. "MRS_ACSI").
inline std::optional<Policy> parse_policy(std::string_view text) {
    std::string norm(text);
    for (char& c : norm) {
        if (c == '_') c = '-';
        else if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
    }
    for (Policy p : kAllPolicies)
        if (policy_name(p) == norm) return p;
    return std::nullopt;
}

/// Schemes that know the relay-destination channel at forwarding time and
/// allocate the minimum power needed for the target rate.
inline bool policy_uses_csit(Policy p) {
    return p == Policy::MrsAcsi || p == Policy::MrsAcsiBestEnergy ||
           p == Policy::SrsAcsiBestEnergy || p == Policy::SrsAcsiBestDecoding;
}

/// Schemes that reserve a decode set of up to M relays.
inline bool policy_uses_decode_set(Policy p) {
    return p == Policy::MrsAcsi || p == Policy::MrsAcsiBestEnergy;
}

struct PathLoss {
    double d_si = 1.0;
    double d_id = 1.0;
    double alpha = 0.0;

    double sr_scale() const { return std::pow(d_si, -alpha); }
    double rd_scale() const { return std::pow(d_id, -alpha); }
    bool operator==(const PathLoss&) const = default;
};

struct SystemConfig {
    int n_relays = 10;
    double eta = 0.1;
    double p_source_dbw = 10.0;
    double p_relay_dbw = 10.0;
    double rate_target = 1.0;
    double noise_var = 1.0;
    double lambda_rate = 1.0;
    double slot_duration = 1.0;
    int m_decode = 3;
    std::int64_t horizon_slots = 1'000'000;
    std::int64_t warmup_slots = 0;
    std::uint64_t rng_seed = 1;
    Policy policy = Policy::SrsNcsi;
    std::optional<PathLoss> path_loss;

    // Linear-unit caches, filled by validate().
    double p_source_w = 10.0;
    double p_relay_w = 10.0;

    double snr_threshold() const { return wpcn::snr_threshold(rate_target); }

    /// Checks every invariant and populates the watt caches. Throws ValidationError.
    void validate() {
        auto fail = [](const std::string& what) { throw ValidationError(what); };
        if (n_relays < 1) fail("N must be at least 1");
        if (!(eta >= 0.0 && eta <= 1.0)) fail("eta out of [0,1]");
        if (!(rate_target >= 0.0)) fail("rate_target must be non-negative");
        if (!(noise_var > 0.0)) fail("noise_var must be positive");
        if (!(lambda_rate > 0.0)) fail("lambda_rate must be positive");
        if (!(slot_duration > 0.0)) fail("slot_duration must be positive");
        if (!std::isfinite(p_source_dbw) || !std::isfinite(p_relay_dbw)) fail("powers must be finite");
        if (m_decode < 1) fail("M must be at least 1");
        if (m_decode > n_relays) fail("M exceeds N");
        if (horizon_slots < 1) fail("horizon_slots must be at least 1");
        if (warmup_slots < 0) fail("warmup_slots must be non-negative");
        if (warmup_slots >= horizon_slots) fail("no measured slots: warmup_slots must be below horizon_slots");
        if (path_loss) {
            if (!(path_loss->d_si > 0.0 && path_loss->d_id > 0.0)) fail("path-loss distances must be positive");
            if (!(path_loss->alpha >= 0.0)) fail("path-loss exponent must be non-negative");
        }
        p_source_w = dbw_to_watt(p_source_dbw);
        p_relay_w = dbw_to_watt(p_relay_dbw);
    }

    bool operator==(const SystemConfig&) const = default;
};

/// Shortest decimal text that parses back to the same double.
inline std::string format_double(double x) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

/// Ordered key -> raw value map; the intermediate form between text and SystemConfig.
using ConfigDocument = std::map<std::string, std::string, std::less<>>;

inline const std::vector<std::string>& config_keys() {
    static const std::vector<std::string> keys = {
        "n_relays",      "eta",           "p_source_dbw", "p_relay_dbw",  "rate_target",
        "noise_var",     "lambda_rate",   "slot_duration", "m_decode",    "horizon_slots",
        "warmup_slots",  "rng_seed",      "policy",        "path_loss_d_si", "path_loss_d_id",
        "path_loss_alpha",
    };
    return keys;
}

inline bool is_config_key(std::string_view key) {
    for (const auto& k : config_keys())
        if (k == key) return true;
    return false;
}

namespace detail {

inline std::string_view trim(std::string_view s) {
    const auto* ws = " \t\r\n";
    auto b = s.find_first_not_of(ws);
    if (b == std::string_view::npos) return {};
    auto e = s.find_last_not_of(ws);
    return s.substr(b, e - b + 1);
}

template <typename T>
T parse_number(std::string_view key, std::string_view value) {
    T out{};
    const char* first = value.data();
    const char* last = value.data() + value.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    if (ec != std::errc{} || ptr != last)
        throw ConfigError("invalid value for '" + std::string(key) + "': '" + std::string(value) + "'");
    return out;
}

} // namespace detail

/// Parses `key = value` lines; '#' starts a comment. Unknown and duplicate keys are errors.
inline ConfigDocument parse_document(std::string_view text) {
    ConfigDocument doc;
    std::size_t line_no = 0;
    while (!text.empty()) {
        auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = detail::trim(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string_view::npos)
            throw ConfigError("line " + std::to_string(line_no) + ": expected 'key = value'");
        auto key = detail::trim(line.substr(0, eq));
        auto value = detail::trim(line.substr(eq + 1));
        if (key.empty() || value.empty())
            throw ConfigError("line " + std::to_string(line_no) + ": empty key or value");
        if (!is_config_key(key)) throw ConfigError("unknown key '" + std::string(key) + "'");
        if (!doc.emplace(std::string(key), std::string(value)).second)
            throw ConfigError("duplicate key '" + std::string(key) + "'");
    }
    return doc;
}

/// Builds and validates a config from a document; absent keys keep their defaults.
inline SystemConfig config_from_document(const ConfigDocument& doc) {
    using detail::parse_number;
    SystemConfig cfg;
    PathLoss pl;
    bool has_pl = false;
    for (const auto& [key, value] : doc) {
        if (key == "n_relays") cfg.n_relays = parse_number<int>(key, value);
        else if (key == "eta") cfg.eta = parse_number<double>(key, value);
        else if (key == "p_source_dbw") cfg.p_source_dbw = parse_number<double>(key, value);
        else if (key == "p_relay_dbw") cfg.p_relay_dbw = parse_number<double>(key, value);
        else if (key == "rate_target") cfg.rate_target = parse_number<double>(key, value);
        else if (key == "noise_var") cfg.noise_var = parse_number<double>(key, value);
        else if (key == "lambda_rate") cfg.lambda_rate = parse_number<double>(key, value);
        else if (key == "slot_duration") cfg.slot_duration = parse_number<double>(key, value);
        else if (key == "m_decode") cfg.m_decode = parse_number<int>(key, value);
        else if (key == "horizon_slots") cfg.horizon_slots = parse_number<std::int64_t>(key, value);
        else if (key == "warmup_slots") cfg.warmup_slots = parse_number<std::int64_t>(key, value);
        else if (key == "rng_seed") cfg.rng_seed = parse_number<std::uint64_t>(key, value);
        else if (key == "policy") {
            auto p = parse_policy(value);
            if (!p) throw ConfigError("unknown policy '" + value + "'");
            cfg.policy = *p;
        } else if (key == "path_loss_d_si") { pl.d_si = parse_number<double>(key, value); has_pl = true; }
        else if (key == "path_loss_d_id") { pl.d_id = parse_number<double>(key, value); has_pl = true; }
        else if (key == "path_loss_alpha") { pl.alpha = parse_number<double>(key, value); has_pl = true; }
        else throw ConfigError("unknown key '" + key + "'");
    }
    if (has_pl) cfg.path_loss = pl;
    cfg.validate();
    return cfg;
}

inline SystemConfig load_config(std::string_view text) { return config_from_document(parse_document(text)); }

inline std::string to_config_text(const SystemConfig& cfg) {
    std::string out;
    auto put = [&out](std::string_view k, const std::string& v) {
        out.append(k).append(" = ").append(v).push_back('\n');
    };
    put("n_relays", std::to_string(cfg.n_relays));
    put("eta", format_double(cfg.eta));
    put("p_source_dbw", format_double(cfg.p_source_dbw));
    put("p_relay_dbw", format_double(cfg.p_relay_dbw));
    put("rate_target", format_double(cfg.rate_target));
    put("noise_var", format_double(cfg.noise_var));
    put("lambda_rate", format_double(cfg.lambda_rate));
    put("slot_duration", format_double(cfg.slot_duration));
    put("m_decode", std::to_string(cfg.m_decode));
    put("horizon_slots", std::to_string(cfg.horizon_slots));
    put("warmup_slots", std::to_string(cfg.warmup_slots));
    put("rng_seed", std::to_string(cfg.rng_seed));
    put("policy", std::string(policy_name(cfg.policy)));
    if (cfg.path_loss) {
        put("path_loss_d_si", format_double(cfg.path_loss->d_si));
        put("path_loss_d_id", format_double(cfg.path_loss->d_id));
        put("path_loss_alpha", format_double(cfg.path_loss->alpha));
    }
    return out;
}

} // namespace wpcn

#endif
