#pragma once

// Synthetic market constructions shared by the unit tests and the acceptance
// suite. These model the two structural situations the toolkit is meant to
// resolve: a hub-dominated market seen from different base currencies, and a
// market with one node drifting away from the common factor.

#include <cmath>
#include <vector>

#include "fxnet/dates.hpp"
#include "fxnet/matrix.hpp"
#include "fxnet/panel.hpp"
#include "fxnet/synth.hpp"

namespace testsupport {

// One hub series (the common market factor), `satellites` series coupled to
// it at `beta` (pairwise beta^2), plus one independent series with `idio_vol`
// times the market volatility. Layout: [hub, satellites..., idio].
inline fxnet::RatePanel hub_market_panel(std::size_t satellites, int days,
                                         std::uint64_t seed, double beta = 0.8,
                                         double idio_vol = 5.0) {
    const std::size_t n = satellites + 2;
    fxnet::Matrix target(n, n, 0.0);
    for (std::size_t i = 0; i < n; ++i) target(i, i) = 1.0;
    for (std::size_t s = 1; s <= satellites; ++s) {
        target(0, s) = beta;
        target(s, 0) = beta;
        for (std::size_t u = s + 1; u <= satellites; ++u) {
            target(s, u) = beta * beta;
            target(u, s) = beta * beta;
        }
    }
    // last row/column (idio) stays at zero correlation
    std::vector<double> vols(n, 1.0);
    vols[n - 1] = idio_vol;
    return fxnet::generate_panel_from_target(target, vols, days, seed,
                                             fxnet::synthetic_codes(n));
}

// Market of n series sharing a factor at weight sqrt(rho), except node 0 whose
// factor weight declines linearly from w_start to w_end across the sample.
inline fxnet::RatePanel trend_panel(std::size_t n, int days, std::uint64_t seed, double rho,
                                    double w_start, double w_end, double daily_vol = 0.01) {
    fxnet::GaussianStream gauss(seed);
    const int steps = days - 1;
    const double load = std::sqrt(rho);
    fxnet::Matrix rates(n, static_cast<std::size_t>(days));
    std::vector<double> log_rate(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) rates(i, 0) = 1.0;

    for (int t = 0; t < steps; ++t) {
        double g = gauss.next();
        double frac = steps > 1 ? static_cast<double>(t) / static_cast<double>(steps - 1) : 0.0;
        double w = w_start + (w_end - w_start) * frac;
        for (std::size_t i = 0; i < n; ++i) {
            double weight = i == 0 ? w : load;
            double r = weight * g + std::sqrt(1.0 - weight * weight) * gauss.next();
            log_rate[i] += r * daily_vol;
            rates(i, static_cast<std::size_t>(t) + 1) = std::exp(log_rate[i]);
        }
    }
    fxnet::RatePanel panel{fxnet::CurrencyCode("UNT"),
                           fxnet::dates::weekday_sequence("2000-01-03", days),
                           fxnet::synthetic_codes(n), std::move(rates)};
    panel.validate();
    return panel;
}

// Ordinary least squares slope and its standard error for y over 0..n-1.
struct SlopeFit {
    double slope = 0.0;
    double stderr_ = 0.0;
    double t_stat() const { return stderr_ > 0.0 ? slope / stderr_ : 0.0; }
};

inline SlopeFit fit_slope(const std::vector<double>& y) {
    const std::size_t n = y.size();
    double x_mean = static_cast<double>(n - 1) / 2.0;
    double y_mean = 0.0;
    for (double v : y) y_mean += v;
    y_mean /= static_cast<double>(n);
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double dx = static_cast<double>(i) - x_mean;
        sxx += dx * dx;
        sxy += dx * (y[i] - y_mean);
    }
    SlopeFit fit;
    fit.slope = sxy / sxx;
    double ss_res = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double pred = y_mean + fit.slope * (static_cast<double>(i) - x_mean);
        double r = y[i] - pred;
        ss_res += r * r;
    }
    fit.stderr_ = std::sqrt(ss_res / static_cast<double>(n - 2) / sxx);
    return fit;
}

} // namespace testsupport
