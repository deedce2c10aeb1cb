#include "fxnet/returns.hpp"

#include <cmath>
#include <omp.h>

#include "fxnet/error.hpp"

namespace fxnet {

std::vector<double> log_returns(std::span<const double> values) {
    if (values.size() < 2) throw SizeError("log_returns needs at least 2 values");
    std::vector<double> out(values.size() - 1);
    for (std::size_t i = 0; i + 1 < values.size(); ++i) {
        if (!(values[i] > 0.0) || !(values[i + 1] > 0.0) || !std::isfinite(values[i]))
            throw DomainError("log_returns requires strictly positive values");
        out[i] = std::log(values[i + 1]) - std::log(values[i]);
    }
    return out;
}

std::vector<double> log_returns(const CrossRateSeries& series) {
    try {
        return log_returns(std::span<const double>(series.values));
    } catch (const Error& e) {
        throw DomainError(series.base.str() + "/" + series.price.str() + ": " + e.what());
    }
}

namespace {

// mean and population variance in one pass
void row_moments(const double* row, std::size_t t, double& mean, double& var) {
    double sum = 0.0;
    for (std::size_t i = 0; i < t; ++i) sum += row[i];
    mean = sum / static_cast<double>(t);
    double ss = 0.0;
    for (std::size_t i = 0; i < t; ++i) {
        double d = row[i] - mean;
        ss += d * d;
    }
    var = ss / static_cast<double>(t);
}

void normalize_row(double* row, std::size_t t) {
    double mean, var;
    row_moments(row, t, mean, var);
    if (!(var > 0.0)) throw DegenerateError("zero variance series");
    double inv_sigma = 1.0 / std::sqrt(var);
    for (std::size_t i = 0; i < t; ++i) row[i] = (row[i] - mean) * inv_sigma;
}

} // namespace

std::vector<double> normalize(std::span<const double> returns) {
    if (returns.size() < 2) throw SizeError("normalize needs at least 2 values");
    std::vector<double> out(returns.begin(), returns.end());
    normalize_row(out.data(), out.size());
    return out;
}

ClipResult clip_extremes(const ReturnMatrix& matrix, double threshold) {
    if (!(threshold > 0.0)) throw ValidationError("clip threshold must be positive");
    ClipResult result{matrix, 0};
    Matrix& v = result.matrix.values;
    for (std::size_t i = 0; i < v.rows(); ++i) {
        std::size_t clipped = 0;
        for (std::size_t j = 0; j < v.cols(); ++j) {
            double e = v(i, j);
            if (std::abs(e) > threshold) {
                v(i, j) = e > 0 ? threshold : -threshold;
                ++clipped;
            }
        }
        if (clipped > 0) {
            normalize_row(v.row(i), v.cols());  // single re-normalization pass
            result.clipped_entries += clipped;
        }
    }
    return result;
}

ReturnMatrix build_return_matrix(const RatePanel& panel, const CurrencyCode& base,
                                 double clip_threshold, std::size_t* clipped_entries) {
    auto series = cross_rates(panel, base);
    if (panel.date_count() < 2) throw SizeError("panel needs at least 2 dates for returns");

    ReturnMatrix m{base, {}, Matrix(series.size(), panel.date_count() - 1)};
    for (const auto& s : series) m.price_currencies.push_back(s.price);

    // rows are independent
    std::exception_ptr failure;
    #pragma omp parallel for schedule(static)
    for (long ii = 0; ii < static_cast<long>(series.size()); ++ii) {
        auto i = static_cast<std::size_t>(ii);
        try {
            auto r = log_returns(series[i]);
            normalize_row(r.data(), r.size());
            for (std::size_t j = 0; j < r.size(); ++j) m.values(i, j) = r[j];
        } catch (const DegenerateError&) {
            #pragma omp critical
            if (!failure)
                failure = std::make_exception_ptr(DegenerateError(
                    "degenerate (zero-variance) series " + base.str() + "/" +
                    series[i].price.str()));
        } catch (...) {
            #pragma omp critical
            if (!failure) failure = std::current_exception();
        }
    }
    if (failure) std::rethrow_exception(failure);

    auto clipped = clip_extremes(m, clip_threshold);
    if (clipped_entries) *clipped_entries = clipped.clipped_entries;
    return std::move(clipped.matrix);
}

} // namespace fxnet
