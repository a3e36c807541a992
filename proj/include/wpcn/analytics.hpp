#ifndef WPCN_ANALYTICS_HPP
#define WPCN_ANALYTICS_HPP

/// \file analytics.hpp
/// Closed-form outage of a single tagged relay after k slots, n of which it
/// spent transmitting, with and without relay-destination CSIT.
///
/// Channel power gains are Exp(lambda) with lambda a rate (mean 1/lambda). The
/// harvest accumulated over l slots is driven by S_l, a sum of l such gains,
/// i.e. Erlang(l, lambda).

#include <cmath>
#include <limits>
#include <stdexcept>

#include "config.hpp"
#include "quadrature.hpp"
#include "special_functions.hpp"

namespace wpcn {

struct StaticScenario {
    int k = 2;                // elapsed slots, k >= 1
    int n = 0;                // earlier transmissions of the tagged relay, n <= floor(k/2)
    double lambda_rate = 1.0;
    double eta = 1.0;
    double p_source_w = 10.0;
    double p_relay_w = 10.0;  // fixed forward power; unused with CSIT
    double noise_var = 1.0;
    double rate_target = 1.0;

    void validate() const {
        if (k < 1) throw ValidationError("k must be at least 1");
        if (n < 0 || n > k / 2) throw ValidationError("n must lie in [0, floor(k/2)]");
        if (!(lambda_rate > 0.0)) throw ValidationError("lambda_rate must be positive");
        if (!(eta >= 0.0)) throw ValidationError("eta must be non-negative");
        if (!(p_source_w > 0.0) || !(p_relay_w > 0.0)) throw ValidationError("powers must be positive");
        if (!(noise_var > 0.0)) throw ValidationError("noise_var must be positive");
        if (!(rate_target >= 0.0)) throw ValidationError("rate_target must be non-negative");
    }

    double v() const { return snr_threshold(rate_target); }

    /// Normalized energy needed to afford P_r once more: (n+1) P_r / (eta P_s).
    double energy_threshold() const {
        return eta == 0.0 ? std::numeric_limits<double>::infinity() : (n + 1) * p_relay_w / (eta * p_source_w);
    }

    /// CSIT counterpart: (n+1) v sigma^2 / (eta P_s).
    double csit_threshold() const {
        const double num = (n + 1) * v() * noise_var;
        if (num == 0.0) return 0.0;
        return eta == 0.0 ? std::numeric_limits<double>::infinity() : num / (eta * p_source_w);
    }
};

/// CDF of Erlang(l, lambda) at u.
inline double erlang_cdf(int l, double lambda_rate, double u) {
    if (l < 1) throw std::domain_error("erlang_cdf: shape must be at least 1");
    if (u <= 0.0) return 0.0;
    return regularized_gamma_p(l, lambda_rate * u);
}

inline double erlang_survival(int l, double lambda_rate, double u) {
    if (l < 1) throw std::domain_error("erlang_survival: shape must be at least 1");
    if (u <= 0.0) return 1.0;
    return regularized_gamma_q(l, lambda_rate * u);
}

/// Probability that the source hop decodes: exp(-lambda v sigma^2 / P_s).
inline double source_hop_success(double lambda_rate, double v, double noise_var, double p_source_w) {
    return std::exp(-lambda_rate * v * noise_var / p_source_w);
}

/// Probability the tagged relay both decodes and holds enough energy for P_r.
inline double selection_probability(const StaticScenario& sc) {
    sc.validate();
    if (sc.k == 1) return 0.0;
    return source_hop_success(sc.lambda_rate, sc.v(), sc.noise_var, sc.p_source_w) *
           erlang_survival(sc.k - 1, sc.lambda_rate, sc.energy_threshold());
}

/// Outage without CSIT (fixed forward power P_r).
inline double outage_prop1(const StaticScenario& sc) {
    sc.validate();
    if (sc.k == 1) return 1.0;
    const double relay_hop = std::exp(-sc.lambda_rate * sc.v() * sc.noise_var / sc.p_relay_w);
    return 1.0 - relay_hop * selection_probability(sc);
}

/// B(k) = E[exp(-lambda Q / S_{k-1})] evaluated by adaptive quadrature of the
/// Erlang-weighted integrand. This is the reference evaluation for all lambda.
inline double b_factor(const StaticScenario& sc, const QuadratureOptions& opt = {}) {
    sc.validate();
    if (sc.k == 1) return 0.0;
    const double q = sc.csit_threshold();
    if (q == 0.0) return 1.0;
    if (std::isinf(q)) return 0.0;
    const int l = sc.k - 1;
    const double lam = sc.lambda_rate;
    const double log_norm = std::log(lam) - std::lgamma(l);
    auto integrand = [=](double z) {
        if (z <= 0.0) return 0.0;
        const double lz = lam * z;
        return std::exp(log_norm + (l - 1) * std::log(lz) - lz - lam * q / z);
    };
    return integrate_half_line(integrand, opt).value;
}

/// Closed form of B(k) through K_{k-1}:
///   B = 2/Gamma(l) (lambda^2 Q)^(l/2) K_l(2 sqrt(lambda^2 Q)),  l = k - 1.
/// Substituting w = lambda z in the Erlang integral gives this exactly; with
/// lambda = 1 the argument reduces to 2 sqrt(lambda Q).
inline double b_factor_bessel(const StaticScenario& sc) {
    sc.validate();
    if (sc.k == 1) return 0.0;
    const double q = sc.csit_threshold();
    if (q == 0.0) return 1.0;
    if (std::isinf(q)) return 0.0;
    const int l = sc.k - 1;
    const double a = sc.lambda_rate * sc.lambda_rate * q;
    const double x = 2.0 * std::sqrt(a);
    return 2.0 / std::tgamma(l) * std::pow(a, 0.5 * l) * bessel_k(l, x);
}

/// Outage with CSIT (the relay allocates exactly the power the rate needs).
inline double outage_prop2(const StaticScenario& sc, const QuadratureOptions& opt = {}) {
    sc.validate();
    if (sc.k == 1) return 1.0;
    return 1.0 - source_hop_success(sc.lambda_rate, sc.v(), sc.noise_var, sc.p_source_w) * b_factor(sc, opt);
}

/// Outage of one always-powered decode-and-forward relay.
inline double grid_outage(double p_source_w, double p_relay_w, double noise_var, double rate_target,
                          double lambda_rate) {
    const double v = snr_threshold(rate_target);
    return 1.0 - std::exp(-lambda_rate * v * noise_var / p_source_w - lambda_rate * v * noise_var / p_relay_w);
}

/// Energy-unconstrained limit of the minimum-rate scheme with N relays: outage
/// unless at least one relay decodes and the chosen one's forward hop succeeds.
inline double srs_grid_limit(int n_relays, double p_source_w, double p_relay_w, double noise_var,
                             double rate_target, double lambda_rate) {
    const double v = snr_threshold(rate_target);
    const double no_decode = 1.0 - std::exp(-lambda_rate * v * noise_var / p_source_w);
    const double relay_hop = std::exp(-lambda_rate * v * noise_var / p_relay_w);
    return 1.0 - (1.0 - std::pow(no_decode, n_relays)) * relay_hop;
}

} // namespace wpcn

#endif
