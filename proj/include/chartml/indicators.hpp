#pragma once

#include <cstddef>
#include <limits>
#include <span>
#include <vector>

#include "chartml/market_data.hpp"

namespace chartml {

// A value per source bar, undefined during the leading warm-up span.
// Undefined slots hold NaN; first_defined == values.size() when nothing is
// defined.
struct IndicatorSeries {
    std::vector<double> values;
    std::size_t first_defined = 0;

    std::size_t size() const { return values.size(); }
    bool defined(std::size_t i) const { return i >= first_defined && i < values.size(); }
    double operator[](std::size_t i) const { return values[i]; }

    static IndicatorSeries all_undefined(std::size_t n) {
        IndicatorSeries s;
        s.values.assign(n, std::numeric_limits<double>::quiet_NaN());
        s.first_defined = n;
        return s;
    }

    static IndicatorSeries constant(double value, std::size_t n) {
        IndicatorSeries s;
        s.values.assign(n, value);
        s.first_defined = 0;
        return s;
    }
};

// Simple moving average, inclusive of day t: defined iff t >= window - 1,
// value = mean(values[t-window+1 .. t]). window >= 1. A window longer than
// the series yields an all-undefined series.
IndicatorSeries sma(std::span<const double> values, std::size_t window);

// Population standard deviation (divide by N) over the same inclusive window
// as sma. window >= 2.
IndicatorSeries rolling_std(std::span<const double> values, std::size_t window);

// Exponential moving average with alpha = 2 / (period + 1), seeded at index
// period - 1 with the SMA of the first `period` values, then
// e[t] = alpha * x[t] + (1 - alpha) * e[t-1].
IndicatorSeries ema(std::span<const double> values, std::size_t period);

// 20-day SMA of adjusted close with symmetric bands at +-2 population sigma.
struct BollingerBands {
    IndicatorSeries middle;
    IndicatorSeries upper;
    IndicatorSeries lower;
    std::size_t window = 20;
    double k = 2.0;
};

BollingerBands bollinger(const PriceSeries& series);

// EMA(12) - EMA(26) of adjusted close, with a 9-period EMA of the MACD line
// as the signal. The signal is seeded over the MACD's defined region, so its
// first defined index is 25 + 8 = 33.
struct MacdLines {
    IndicatorSeries macd;
    IndicatorSeries signal;
    std::size_t fast_period = 12;
    std::size_t slow_period = 26;
    std::size_t signal_period = 9;
};

MacdLines macd_lines(const PriceSeries& series);

// Ratio of the 14-period EMAs of incremental gains and losses, scaled into
// [0, 100]. Zero-loss days with gains map to 100; flat stretches (both EMAs
// zero) map to 50.
struct RsiSeries {
    IndicatorSeries rsi;
    std::size_t period = 14;
};

RsiSeries rsi(const PriceSeries& series);

// Indices t where both series are defined at t-1 and t,
// value[t-1] <= threshold[t-1], and value[t] > threshold[t]. The prior day
// may touch the threshold; the event day must strictly exceed it.
std::vector<std::size_t> cross_above(const IndicatorSeries& value,
                                     const IndicatorSeries& threshold);
std::vector<std::size_t> cross_above(const IndicatorSeries& value, double threshold);

// Debug dump as "date,value" CSV rows (undefined indices skipped).
void dump_indicator_csv(const IndicatorSeries& series, const PriceSeries& source,
                        const std::filesystem::path& path);

}  // namespace chartml
