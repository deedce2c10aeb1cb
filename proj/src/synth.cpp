#include "fxnet/synth.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "fxnet/correlation.hpp"
#include "fxnet/dates.hpp"
#include "fxnet/error.hpp"

namespace fxnet {

double GaussianStream::next() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    // Box-Muller on (0,1] uniforms; 53-bit mantissas from the top of mt19937_64
    double u1 = (static_cast<double>(engine_() >> 11) + 1.0) * 0x1.0p-53;
    double u2 = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    double radius = std::sqrt(-2.0 * std::log(u1));
    double angle = 2.0 * std::numbers::pi * u2;
    spare_ = radius * std::sin(angle);
    has_spare_ = true;
    return radius * std::cos(angle);
}

int BlockModelSpec::total_series() const {
    int n = 0;
    for (const auto& b : blocks) n += b.size;
    return n;
}

Matrix BlockModelSpec::target_correlation() const {
    const int n = total_series();
    if (n < 1) throw ValidationError("block model needs at least one series");
    if (std::abs(inter_correlation) > 1.0)
        throw ValidationError("inter-block correlation outside [-1, 1]");
    for (const auto& b : blocks) {
        if (b.size < 1) throw ValidationError("block size must be positive");
        if (std::abs(b.intra_correlation) > 1.0)
            throw ValidationError("intra-block correlation outside [-1, 1]");
    }

    Matrix c(static_cast<std::size_t>(n), static_cast<std::size_t>(n), inter_correlation);
    std::size_t offset = 0;
    for (const auto& b : blocks) {
        for (std::size_t i = 0; i < static_cast<std::size_t>(b.size); ++i)
            for (std::size_t j = 0; j < static_cast<std::size_t>(b.size); ++j)
                c(offset + i, offset + j) = i == j ? 1.0 : b.intra_correlation;
        offset += static_cast<std::size_t>(b.size);
    }
    return c;
}

std::vector<CurrencyCode> synthetic_codes(std::size_t n) {
    std::vector<CurrencyCode> codes;
    codes.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        char buf[4] = {static_cast<char>('A' + i / 676),
                       static_cast<char>('A' + (i / 26) % 26),
                       static_cast<char>('A' + i % 26), '\0'};
        codes.emplace_back(std::string_view(buf, 3));
    }
    return codes;
}

namespace {

// symmetric eigendecomposition (cyclic Jacobi), returning V and eigenvalues
void jacobi_vectors(Matrix a, Matrix& vectors, std::vector<double>& values) {
    const std::size_t n = a.rows();
    vectors = Matrix(n, n, 0.0);
    for (std::size_t i = 0; i < n; ++i) vectors(i, i) = 1.0;

    for (int sweep = 0; sweep < 64; ++sweep) {
        double off = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) off += a(i, j) * a(i, j);
        if (off < 1e-26) break;
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                double apq = a(p, q);
                if (apq == 0.0) continue;
                double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
                double sign = theta >= 0.0 ? 1.0 : -1.0;
                double tau = sign / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                double c = 1.0 / std::sqrt(tau * tau + 1.0);
                double s = tau * c;
                for (std::size_t k = 0; k < n; ++k) {
                    double akp = a(k, p), akq = a(k, q);
                    a(k, p) = c * akp - s * akq;
                    a(k, q) = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    double apk = a(p, k), aqk = a(q, k);
                    a(p, k) = c * apk - s * aqk;
                    a(q, k) = s * apk + c * aqk;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    double vkp = vectors(k, p), vkq = vectors(k, q);
                    vectors(k, p) = c * vkp - s * vkq;
                    vectors(k, q) = s * vkp + c * vkq;
                }
            }
        }
    }
    values.resize(n);
    for (std::size_t i = 0; i < n; ++i) values[i] = a(i, i);
}

} // namespace

RatePanel generate_panel_from_target(const Matrix& target, const std::vector<double>& vols,
                                     int days, std::uint64_t seed,
                                     const std::vector<CurrencyCode>& codes,
                                     double daily_vol, double initial_rate,
                                     const std::string& start_date) {
    if (days < 2) throw ValidationError("panel needs at least 2 days");
    return generate_panel_on_calendar(target, vols, dates::weekday_sequence(start_date, days),
                                      seed, codes, daily_vol, initial_rate);
}

RatePanel generate_panel_on_calendar(const Matrix& target, const std::vector<double>& vols,
                                     const std::vector<std::string>& calendar,
                                     std::uint64_t seed,
                                     const std::vector<CurrencyCode>& codes,
                                     double daily_vol, double initial_rate) {
    const std::size_t n = target.rows();
    const int days = static_cast<int>(calendar.size());
    if (n < 1 || target.cols() != n) throw ValidationError("correlation target must be square");
    if (codes.size() != n) throw ValidationError("code count must match target size");
    if (vols.size() != n) throw ValidationError("volatility count must match target size");
    if (days < 2) throw ValidationError("panel needs at least 2 days");
    if (!(daily_vol > 0.0) || !(initial_rate > 0.0))
        throw ValidationError("volatility and initial rate must be positive");
    for (std::size_t i = 0; i < n; ++i) {
        if (target(i, i) != 1.0) throw ValidationError("correlation target diagonal must be 1");
        for (std::size_t j = 0; j < n; ++j) {
            if (std::abs(target(i, j)) > 1.0)
                throw ValidationError("correlation target entry outside [-1, 1]");
            if (target(i, j) != target(j, i))
                throw ValidationError("correlation target must be symmetric");
        }
    }

    Matrix vectors;
    std::vector<double> values;
    jacobi_vectors(target, vectors, values);
    for (double v : values)
        if (v < -1e-10)
            throw ValidationError("correlation target is not positive semi-definite "
                                  "(eigenvalue " + std::to_string(v) + ")");

    // loading matrix L = V sqrt(max(lambda, 0)); returns = L z, z iid N(0,1)
    Matrix loading(n, n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k)
            loading(i, k) = vectors(i, k) * std::sqrt(std::max(values[k], 0.0));

    GaussianStream gauss(seed);
    const int steps = days - 1;
    Matrix returns(n, static_cast<std::size_t>(steps));
    std::vector<double> z(n);
    for (int t = 0; t < steps; ++t) {
        for (std::size_t k = 0; k < n; ++k) z[k] = gauss.next();
        for (std::size_t i = 0; i < n; ++i) {
            double acc = 0.0;
            for (std::size_t k = 0; k < n; ++k) acc += loading(i, k) * z[k];
            returns(i, static_cast<std::size_t>(t)) = acc * daily_vol * vols[i];
        }
    }

    RatePanel panel{CurrencyCode("UNT"), calendar, codes,
                    Matrix(n, static_cast<std::size_t>(days))};
    // canonical panels keep currencies sorted; synthetic codes already are
    for (std::size_t i = 1; i < codes.size(); ++i)
        if (!(codes[i - 1] < codes[i]))
            throw ValidationError("synthetic codes must be unique and sorted");

    for (std::size_t i = 0; i < n; ++i) {
        double log_rate = std::log(initial_rate);
        panel.rates(i, 0) = initial_rate;
        for (int t = 0; t < steps; ++t) {
            log_rate += returns(i, static_cast<std::size_t>(t));
            panel.rates(i, static_cast<std::size_t>(t) + 1) = std::exp(log_rate);
        }
    }
    panel.validate();
    return panel;
}

RatePanel generate_panel(const BlockModelSpec& spec) {
    Matrix target = spec.target_correlation();
    const auto n = static_cast<std::size_t>(spec.total_series());
    std::vector<double> vols(n, 1.0);
    return generate_panel_from_target(target, vols, spec.days, spec.seed, synthetic_codes(n),
                                      spec.daily_vol, spec.initial_rate, spec.start_date);
}

} // namespace fxnet
