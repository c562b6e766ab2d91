#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <fstream>

#include "chartml/indicators.hpp"
#include "chartml/rng.hpp"
#include "oracles.hpp"

using namespace chartml;

namespace {

PriceSeries series_from_closes(const std::vector<double>& closes) {
    PriceSeries s;
    s.ticker = "TST";
    Date d{2015, 1, 5};
    for (double c : closes) {
        OhlcvBar bar;
        bar.date = d;
        bar.open = bar.high = bar.low = bar.close = bar.adj_close = c;
        bar.volume = 1000.0;
        s.bars.push_back(bar);
        d = next_weekday(d);
    }
    return s;
}

std::vector<double> iota_values(std::size_t n) {
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = static_cast<double>(i + 1);
    return v;
}

std::vector<double> random_walk(std::uint64_t seed, std::size_t n) {
    Rng rng(seed);
    std::vector<double> v(n);
    double x = 100.0;
    for (std::size_t i = 0; i < n; ++i) {
        x *= std::exp(0.02 * rng.normal());
        v[i] = x;
    }
    return v;
}

}  // namespace

TEST_CASE("sma basics") {
    const auto constant = sma(std::vector<double>(40, 3.25), 20);
    CHECK(constant.first_defined == 19);
    for (std::size_t t = 19; t < 40; ++t) CHECK(constant[t] == doctest::Approx(3.25));

    const auto ramp = sma(iota_values(20), 20);
    CHECK(ramp.defined(19));
    CHECK(ramp[19] == doctest::Approx(10.5));
    CHECK_FALSE(ramp.defined(18));

    const auto identity = sma(iota_values(7), 1);
    for (std::size_t t = 0; t < 7; ++t) CHECK(identity[t] == doctest::Approx(t + 1.0));

    CHECK(sma(iota_values(5), 9).first_defined == 5);  // longer than series: all undefined
}

TEST_CASE("rolling_std matches the two-pass oracle") {
    const auto constant = rolling_std(std::vector<double>(30, 7.0), 20);
    for (std::size_t t = 19; t < 30; ++t) CHECK(constant[t] == doctest::Approx(0.0));

    // brute-force sum of squared deviations over 1..20
    const auto values = iota_values(20);
    double mean = 0.0;
    for (double v : values) mean += v;
    mean /= 20.0;
    double ss = 0.0;
    for (double v : values) ss += (v - mean) * (v - mean);
    const double expected = std::sqrt(ss / 20.0);
    CHECK(expected == doctest::Approx(std::sqrt(33.25)));

    const auto s = rolling_std(values, 20);
    CHECK(s[19] == doctest::Approx(expected).epsilon(1e-12));

    // closed form for N=2: |a-b| / 2
    Rng rng(11);
    for (int i = 0; i < 50; ++i) {
        const double a = rng.uniform(-10.0, 10.0);
        const double b = rng.uniform(-10.0, 10.0);
        const auto two = rolling_std(std::vector<double>{a, b}, 2);
        CHECK(two[1] == doctest::Approx(std::abs(a - b) / 2.0).epsilon(1e-12));
    }
}

TEST_CASE("ema seed and recurrence") {
    const auto constant = ema(std::vector<double>(25, 4.5), 10);
    for (std::size_t t = 9; t < 25; ++t) CHECK(constant[t] == doctest::Approx(4.5));

    const auto small = ema(std::vector<double>{1.0, 2.0, 3.0}, 2);
    CHECK(small.first_defined == 1);
    CHECK(small[1] == doctest::Approx(1.5));
    CHECK(small[2] == doctest::Approx(2.5));

    // steady state on a ramp lags by m * (period - 1) / 2
    const double m = 0.7;
    std::vector<double> ramp(500);
    for (std::size_t t = 0; t < ramp.size(); ++t) ramp[t] = m * static_cast<double>(t);
    for (std::size_t period : {5UL, 12UL, 26UL}) {
        const auto e = ema(ramp, period);
        const double lag = m * static_cast<double>(period - 1) / 2.0;
        CHECK(e[499] == doctest::Approx(ramp[499] - lag).epsilon(1e-9));
    }
}

TEST_CASE("ema stays within the seen range") {
    Rng rng(5);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<double> v(60);
        for (auto& x : v) x = rng.uniform(-5.0, 5.0);
        const auto e = ema(v, 9);
        double lo = v[0], hi = v[0];
        for (std::size_t t = 0; t < v.size(); ++t) {
            lo = std::min(lo, v[t]);
            hi = std::max(hi, v[t]);
            if (e.defined(t)) {
                CHECK(e[t] >= lo - 1e-12);
                CHECK(e[t] <= hi + 1e-12);
            }
        }
    }
}

TEST_CASE("bollinger bands") {
    const auto flat = bollinger(series_from_closes(std::vector<double>(40, 9.0)));
    for (std::size_t t = 19; t < 40; ++t) {
        CHECK(flat.middle[t] == doctest::Approx(9.0));
        CHECK(flat.upper[t] == doctest::Approx(9.0));
        CHECK(flat.lower[t] == doctest::Approx(9.0));
    }

    const auto bands = bollinger(series_from_closes(iota_values(20)));
    CHECK(bands.middle.first_defined == 19);
    const double sigma = std::sqrt(33.25);
    CHECK(bands.lower[19] == doctest::Approx(10.5 - 2.0 * sigma).epsilon(1e-12));
    CHECK(bands.upper[19] == doctest::Approx(10.5 + 2.0 * sigma).epsilon(1e-12));

    // symmetry to 1e-12 and ordering, pointwise, on random walks
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const auto series = series_from_closes(random_walk(seed, 120));
        const auto b = bollinger(series);
        for (std::size_t t = b.middle.first_defined; t < series.size(); ++t) {
            CHECK(std::abs((b.upper[t] - b.middle[t]) - (b.middle[t] - b.lower[t])) <= 1e-12);
            CHECK(b.lower[t] <= b.middle[t]);
            CHECK(b.middle[t] <= b.upper[t]);
        }
    }
}

TEST_CASE("macd lines") {
    const auto flat = macd_lines(series_from_closes(std::vector<double>(60, 5.0)));
    CHECK(flat.macd.first_defined == 25);
    CHECK(flat.signal.first_defined == 33);
    for (std::size_t t = 33; t < 60; ++t) {
        CHECK(flat.macd[t] == doctest::Approx(0.0));
        CHECK(flat.signal[t] == doctest::Approx(0.0));
    }

    // ramp steady state: macd -> m * ((26-1) - (12-1)) / 2 = 7m, signal -> macd
    const double m = 0.3;
    std::vector<double> ramp(600);
    for (std::size_t t = 0; t < ramp.size(); ++t)
        ramp[t] = 100.0 + m * static_cast<double>(t);
    const auto lines = macd_lines(series_from_closes(ramp));
    CHECK(lines.macd[599] == doctest::Approx(7.0 * m).epsilon(1e-9));
    CHECK(lines.signal[599] == doctest::Approx(lines.macd[599]).epsilon(1e-9));

    // step up turns macd positive within a few bars (direct recurrence oracle)
    std::vector<double> step(80, 100.0);
    for (std::size_t t = 40; t < step.size(); ++t) step[t] = 110.0;
    const auto stepped = macd_lines(series_from_closes(step));
    CHECK(stepped.macd[39] == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(stepped.macd[43] > 0.0);
    const auto fast = oracle::recurrence_ema(step, 12);
    const auto slow = oracle::recurrence_ema(step, 26);
    for (std::size_t t = 25; t < step.size(); ++t)
        CHECK(stepped.macd[t] == doctest::Approx(fast[t] - slow[t]).epsilon(1e-12));
}

TEST_CASE("rsi extremes and equilibrium") {
    std::vector<double> up(40), down(40);
    for (std::size_t t = 0; t < 40; ++t) {
        up[t] = 10.0 + static_cast<double>(t);
        down[t] = 50.0 - static_cast<double>(t);
    }
    const auto up_rsi = rsi(series_from_closes(up));
    CHECK(up_rsi.rsi.first_defined == 14);
    for (std::size_t t = 14; t < 40; ++t) CHECK(up_rsi.rsi[t] == doctest::Approx(100.0));
    const auto down_rsi = rsi(series_from_closes(down));
    for (std::size_t t = 14; t < 40; ++t) CHECK(down_rsi.rsi[t] == doctest::Approx(0.0));

    // alternating +-1: the raw series oscillates symmetrically about 50, so
    // consecutive values average to 50 once the seed transient decays
    std::vector<double> zigzag(1002, 100.0);
    for (std::size_t t = 1; t < zigzag.size(); ++t)
        zigzag[t] = zigzag[t - 1] + (t % 2 == 1 ? 1.0 : -1.0);
    const auto zz = rsi(series_from_closes(zigzag));
    CHECK(std::abs(0.5 * (zz.rsi[1000] + zz.rsi[1001]) - 50.0) <= 1e-6);

    // flat stretch maps to 50 by convention
    const auto flat = rsi(series_from_closes(std::vector<double>(30, 8.0)));
    for (std::size_t t = 14; t < 30; ++t) CHECK(flat.rsi[t] == doctest::Approx(50.0));
}

TEST_CASE("rsi bounded in [0, 100] on random walks") {
    for (std::uint64_t seed = 10; seed < 30; ++seed) {
        const auto r = rsi(series_from_closes(random_walk(seed, 150)));
        for (std::size_t t = r.rsi.first_defined; t < r.rsi.size(); ++t) {
            CHECK(r.rsi[t] >= 0.0);
            CHECK(r.rsi[t] <= 100.0);
        }
    }
}

TEST_CASE("cross_above convention") {
    IndicatorSeries v;
    v.values = {1.0, 2.0};
    v.first_defined = 0;
    CHECK(cross_above(v, 1.5) == std::vector<std::size_t>{1});

    IndicatorSeries touch;
    touch.values = {1.5, 2.0};
    touch.first_defined = 0;
    CHECK(cross_above(touch, 1.5) == std::vector<std::size_t>{1});  // prior touch counts

    IndicatorSeries below;
    below.values = {1.0, 1.2, 1.4, 1.45};
    below.first_defined = 0;
    CHECK(cross_above(below, 1.5).empty());

    // warm-up exclusion: both t-1 and t must be defined
    IndicatorSeries warm;
    warm.values = {oracle::kUndef, 1.0, 2.0};
    warm.first_defined = 1;
    CHECK(cross_above(warm, 1.5) == std::vector<std::size_t>{2});
}

TEST_CASE("cross up and cross down are disjoint") {
    Rng rng(77);
    for (int trial = 0; trial < 10; ++trial) {
        IndicatorSeries v, th, neg_v, neg_th;
        for (int t = 0; t < 100; ++t) {
            const double a = rng.uniform(-1.0, 1.0);
            const double b = rng.uniform(-1.0, 1.0);
            v.values.push_back(a);
            th.values.push_back(b);
            neg_v.values.push_back(-a);
            neg_th.values.push_back(-b);
        }
        const auto ups = cross_above(v, th);
        const auto downs = cross_above(neg_v, neg_th);
        for (std::size_t t : ups)
            CHECK(std::find(downs.begin(), downs.end(), t) == downs.end());
    }
}

TEST_CASE("indicator csv dump") {
    const auto series = series_from_closes(random_walk(3, 60));
    const auto bands = bollinger(series);
    const auto path = std::filesystem::temp_directory_path() / "chartml_ind_dump.csv";
    dump_indicator_csv(bands.middle, series, path);
    std::ifstream in(path);
    std::string line;
    std::getline(in, line);
    CHECK(line == "date,value");
    std::size_t rows = 0;
    while (std::getline(in, line)) ++rows;
    CHECK(rows == 60 - 19);
    std::filesystem::remove(path);
}
