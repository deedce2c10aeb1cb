#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "fxnet/currency.hpp"
#include "fxnet/matrix.hpp"
#include "fxnet/panel.hpp"

namespace fxnet {

/// Deterministic portable N(0,1) stream: mt19937_64 uniforms through
/// Box-Muller. std::normal_distribution is implementation-defined; this one
/// reproduces bit-for-bit everywhere.
class GaussianStream {
public:
    explicit GaussianStream(std::uint64_t seed) : engine_(seed) {}
    double next();

private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

struct BlockSpec {
    int size = 1;
    double intra_correlation = 0.0;
};

/// Planted block-correlation market: every pair inside a block correlates at
/// the block's intra value, every cross-block pair at inter_correlation.
struct BlockModelSpec {
    std::vector<BlockSpec> blocks;
    double inter_correlation = 0.0;
    int days = 500;                    // number of trading dates (returns: days-1)
    std::uint64_t seed = 0;
    double daily_vol = 0.01;
    double initial_rate = 1.0;
    std::string start_date = "2000-01-03";

    int total_series() const;
    /// Implied N x N correlation target. Throws ValidationError out of [-1,1].
    Matrix target_correlation() const;
};

/// Sequential synthetic codes AAA, AAB, AAC, ...
std::vector<CurrencyCode> synthetic_codes(std::size_t n);

/// Generate a panel whose log returns follow a given correlation target with
/// per-series volatilities vol[i] * daily_vol. The target is validated PSD
/// (eigenvalues >= -1e-10) and factorized by eigendecomposition. Deterministic
/// per seed. Quote currency is the synthetic unit "UNT".
RatePanel generate_panel_from_target(const Matrix& target, const std::vector<double>& vols,
                                     int days, std::uint64_t seed,
                                     const std::vector<CurrencyCode>& codes,
                                     double daily_vol = 0.01, double initial_rate = 1.0,
                                     const std::string& start_date = "2000-01-03");

/// Same, on an explicit trading calendar instead of a generated weekday one.
RatePanel generate_panel_on_calendar(const Matrix& target, const std::vector<double>& vols,
                                     const std::vector<std::string>& calendar,
                                     std::uint64_t seed,
                                     const std::vector<CurrencyCode>& codes,
                                     double daily_vol = 0.01, double initial_rate = 1.0);

/// Block-model front end over generate_panel_from_target.
RatePanel generate_panel(const BlockModelSpec& spec);

} // namespace fxnet
