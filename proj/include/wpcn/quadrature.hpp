#ifndef WPCN_QUADRATURE_HPP
#define WPCN_QUADRATURE_HPP

/// \file quadrature.hpp
/// Globally adaptive Gauss-Kronrod (7/15) integration on finite intervals and
/// on [0, inf) through the map z = u / (1 - u).

#include <array>
#include <cmath>
#include <cstddef>
#include <queue>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace wpcn {

class QuadratureError : public std::runtime_error {
public:
    QuadratureError(const std::string& what, double achieved_error)
        : std::runtime_error(what), achieved_error_(achieved_error) {}
    double achieved_error() const { return achieved_error_; }

private:
    double achieved_error_;
};

struct QuadratureResult {
    double value = 0.0;
    double abs_error = 0.0;
    std::size_t evaluations = 0;
};

struct QuadratureOptions {
    double abs_tol = 1e-10;
    double rel_tol = 0.0;
    std::size_t max_evaluations = 1'000'000;
};

namespace detail {

// Kronrod abscissae on [0, 1]; odd indices are the embedded Gauss nodes.
inline constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
    double a, b, value, error;
    bool operator<(const Segment& o) const { return error < o.error; }
};

template <typename F>
Segment gauss_kronrod15(F& f, double a, double b) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double fc = f(center);
    double kronrod = fc * kWgk[7];
    double gauss = fc * kWg[3];
    for (int j = 0; j < 7; ++j) {
        const double dx = half * kXgk[j];
        const double sum = f(center - dx) + f(center + dx);
        kronrod += kWgk[j] * sum;
        if (j % 2 == 1) gauss += kWg[j / 2] * sum;
    }
    kronrod *= half;
    gauss *= half;
    return {a, b, kronrod, std::abs(kronrod - gauss)};
}

} // namespace detail

/// Integrates f over [a, b]; f is never evaluated at the endpoints.
template <typename F>
QuadratureResult integrate(F f, double a, double b, const QuadratureOptions& opt = {}) {
    std::priority_queue<detail::Segment> heap;
    std::size_t evals = 15;
    auto first = detail::gauss_kronrod15(f, a, b);
    double total = first.value, total_err = first.error;
    heap.push(first);
    while (total_err > std::max(opt.abs_tol, opt.rel_tol * std::abs(total))) {
        if (evals + 30 > opt.max_evaluations) {
            std::ostringstream os;
            os << "quadrature did not converge: achieved error " << total_err << " after " << evals
               << " evaluations";
            throw QuadratureError(os.str(), total_err);
        }
        auto worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        auto left = detail::gauss_kronrod15(f, worst.a, mid);
        auto right = detail::gauss_kronrod15(f, mid, worst.b);
        evals += 30;
        total += left.value + right.value - worst.value;
        total_err += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
    }
    // Re-sum to shed the drift of the running updates.
    total = 0.0;
    total_err = 0.0;
    while (!heap.empty()) {
        total += heap.top().value;
        total_err += heap.top().error;
        heap.pop();
    }
    return {total, total_err, evals};
}

/// Integrates f over [0, inf) via z = u/(1-u), dz = du/(1-u)^2. The integrand
/// must decay fast enough that f(z) z^2 -> 0 as z -> inf.
template <typename F>
QuadratureResult integrate_half_line(F f, const QuadratureOptions& opt = {}) {
    auto mapped = [&f](double u) {
        const double one_minus = 1.0 - u;
        const double z = u / one_minus;
        const double fz = f(z);
        return fz == 0.0 ? 0.0 : fz / (one_minus * one_minus);
    };
    return integrate(mapped, 0.0, 1.0, opt);
}

} // namespace wpcn

#endif
