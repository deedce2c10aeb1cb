#include <doctest.h>

#include <cmath>
#include <random>

#include "fxnet/error.hpp"
#include "fxnet/returns.hpp"
#include "fxnet/synth.hpp"

using namespace fxnet;

TEST_CASE("log returns of an exponential ramp") {
    const double e = std::exp(1.0);
    std::vector<double> v{1.0, e, e * e};
    auto r = log_returns(std::span<const double>(v));
    REQUIRE(r.size() == 2);
    CHECK(r[0] == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(r[1] == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("constant series yields zero returns") {
    std::vector<double> v{5.0, 5.0, 5.0};
    auto r = log_returns(std::span<const double>(v));
    CHECK(r == std::vector<double>{0.0, 0.0});
}

TEST_CASE("halving gives ln(1/2)") {
    std::vector<double> v{2.0, 1.0};
    auto r = log_returns(std::span<const double>(v));
    REQUIRE(r.size() == 1);
    // frozen from arbitrary-precision ln(1/2)
    CHECK(r[0] == doctest::Approx(-0.6931471805599453).epsilon(1e-15));
}

TEST_CASE("log returns reject non-positive values and short series") {
    std::vector<double> bad{1.0, -2.0};
    CHECK_THROWS_AS(log_returns(std::span<const double>(bad)), DomainError);
    std::vector<double> zero{0.0, 1.0};
    CHECK_THROWS_AS(log_returns(std::span<const double>(zero)), DomainError);
    std::vector<double> one{1.0};
    CHECK_THROWS_AS(log_returns(std::span<const double>(one)), SizeError);
}

TEST_CASE("normalize hits zero mean and unit population variance") {
    std::vector<double> v{1.0, 2.0, 3.0};
    auto out = normalize(v);
    REQUIRE(out.size() == 3);
    // population sigma = sqrt(2/3); frozen from arbitrary-precision evaluation
    CHECK(out[0] == doctest::Approx(-1.224744871391589).epsilon(1e-14));
    CHECK(out[1] == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(out[2] == doctest::Approx(1.224744871391589).epsilon(1e-14));
}

TEST_CASE("normalize is idempotent within 1e-12") {
    std::mt19937_64 gen(31);
    std::vector<double> v(200);
    for (auto& x : v) x = static_cast<double>(gen() >> 11) * 0x1.0p-53 - 0.5;
    auto once = normalize(v);
    auto twice = normalize(once);
    for (std::size_t i = 0; i < once.size(); ++i)
        CHECK(std::abs(once[i] - twice[i]) <= 1e-12);
}

TEST_CASE("zero variance is a degenerate-series error") {
    std::vector<double> v{4.0, 4.0, 4.0};
    CHECK_THROWS_AS(normalize(v), DegenerateError);
}

namespace {

ReturnMatrix toy_matrix(std::vector<std::vector<double>> rows) {
    ReturnMatrix m{CurrencyCode("BBB"), {}, Matrix(rows.size(), rows[0].size())};
    auto codes = synthetic_codes(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        m.price_currencies.push_back(codes[i]);
        for (std::size_t j = 0; j < rows[i].size(); ++j) m.values(i, j) = rows[i][j];
    }
    return m;
}

} // namespace

TEST_CASE("clip replaces a 14.2 entry by the threshold before re-normalizing") {
    // 40 mild entries plus one outlier, roughly normalized
    std::vector<double> row(41, 0.0);
    std::mt19937_64 gen(3);
    for (auto& x : row) x = static_cast<double>(gen() >> 11) * 0x1.0p-52 - 1.0;
    row[40] = 14.2;
    auto normalized = normalize(row);
    // rescale so the outlier sits above the threshold again
    for (auto& x : normalized) x *= 14.2 / normalized[40];
    auto m = toy_matrix({normalized, normalize(std::vector<double>(normalized.rbegin(),
                                                                   normalized.rend()))});

    auto clipped = clip_extremes(m, 10.0);
    CHECK(clipped.clipped_entries >= 1);
    // the clipped row was re-normalized afterwards: unit variance again
    double mean = 0.0, var = 0.0;
    for (std::size_t j = 0; j < clipped.matrix.values.cols(); ++j)
        mean += clipped.matrix.values(0, j);
    mean /= static_cast<double>(clipped.matrix.values.cols());
    for (std::size_t j = 0; j < clipped.matrix.values.cols(); ++j) {
        double d = clipped.matrix.values(0, j) - mean;
        var += d * d;
    }
    var /= static_cast<double>(clipped.matrix.values.cols());
    CHECK(std::abs(mean) < 1e-10);
    CHECK(std::abs(var - 1.0) < 1e-8);
}

TEST_CASE("clip is a bitwise no-op when nothing exceeds the threshold") {
    std::mt19937_64 gen(17);
    std::vector<double> a(100), b(100);
    for (auto& x : a) x = static_cast<double>(gen() >> 11) * 0x1.0p-52 - 1.0;
    for (auto& x : b) x = static_cast<double>(gen() >> 11) * 0x1.0p-52 - 1.0;
    auto m = toy_matrix({normalize(a), normalize(b)});
    auto clipped = clip_extremes(m, 10.0);
    CHECK(clipped.clipped_entries == 0);
    CHECK(clipped.matrix.values == m.values);
}

TEST_CASE("symmetric outliers keep the clipped row at zero mean pre-renormalization") {
    // row with +12/-12: clipping both to +-10 preserves the zero mean, so the
    // re-normalization shift stays at zero and entries stay symmetric
    std::vector<double> row(42, 0.0);
    for (std::size_t i = 0; i < 40; ++i) row[i] = (i % 2 == 0) ? 0.5 : -0.5;
    row[40] = 12.0;
    row[41] = -12.0;
    double mean = 0.0;
    for (double x : row) mean += x;
    REQUIRE(mean == 0.0);

    auto m = toy_matrix({row, row});
    auto clipped = clip_extremes(m, 10.0);
    CHECK(clipped.clipped_entries == 4);
    CHECK(clipped.matrix.values(0, 40) == -clipped.matrix.values(0, 41));
    double sum = 0.0;
    for (std::size_t j = 0; j < clipped.matrix.values.cols(); ++j)
        sum += clipped.matrix.values(0, j);
    CHECK(std::abs(sum) < 1e-12);
}

TEST_CASE("clipping step never increases any entry magnitude") {
    std::mt19937_64 gen(23);
    for (int trial = 0; trial < 20; ++trial) {
        double e = static_cast<double>(gen() >> 11) * 0x1.0p-50 - 4.0;
        double thr = 0.5 + static_cast<double>(gen() >> 11) * 0x1.0p-51;
        double c = std::abs(e) > thr ? (e > 0 ? thr : -thr) : e;
        CHECK(std::abs(c) <= std::abs(e));
    }
}

TEST_CASE("pipeline rows satisfy the moment tolerances") {
    BlockModelSpec spec;
    spec.blocks = {{6, 0.5}};
    spec.days = 300;
    spec.seed = 77;
    RatePanel panel = generate_panel(spec);
    ReturnMatrix m = build_return_matrix(panel, panel.currencies[2]);
    CHECK(m.size() == 5);
    CHECK(m.days() == 299);
    for (std::size_t i = 0; i < m.size(); ++i) {
        double mean = 0.0, var = 0.0;
        for (std::size_t j = 0; j < m.days(); ++j) mean += m.values(i, j);
        mean /= static_cast<double>(m.days());
        for (std::size_t j = 0; j < m.days(); ++j) {
            double d = m.values(i, j) - mean;
            var += d * d;
        }
        var /= static_cast<double>(m.days());
        CHECK(std::abs(mean) < 1e-10);
        CHECK(std::abs(var - 1.0) < 1e-8);
    }
}

TEST_CASE("46-instrument panel: 45 rows per base, 2070 directed pairs total") {
    BlockModelSpec spec;
    spec.blocks = {{46, 0.2}};
    spec.days = 60;
    spec.seed = 5;
    RatePanel panel = generate_panel(spec);
    std::size_t pairs = 0;
    for (const auto& base : panel.currencies) {
        ReturnMatrix m = build_return_matrix(panel, base);
        CHECK(m.size() == 45);
        pairs += m.size();
    }
    CHECK(pairs == 2070);
}

TEST_CASE("pipeline is deterministic") {
    BlockModelSpec spec;
    spec.blocks = {{5, 0.4}};
    spec.days = 120;
    spec.seed = 99;
    RatePanel panel = generate_panel(spec);
    ReturnMatrix a = build_return_matrix(panel, panel.currencies[0]);
    ReturnMatrix b = build_return_matrix(panel, panel.currencies[0]);
    CHECK(a.values == b.values);
}

TEST_CASE("pegged series surface as degenerate errors naming the currency") {
    // two identical rows: the ratio series is constant
    RatePanel p = parse_panel(
        "date,AAA,BBB\n2020-01-02,2.0,4.0\n2020-01-03,3.0,6.0\n2020-01-06,5.0,10.0\n",
        CurrencyCode("QQQ"));
    CHECK_THROWS_WITH_AS(build_return_matrix(p, CurrencyCode("AAA")),
                         doctest::Contains("BBB"), DegenerateError);
}
