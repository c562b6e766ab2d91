#include "chartml/indicators.hpp"

#include <cmath>
#include <fstream>

#include "chartml/errors.hpp"

namespace chartml {

IndicatorSeries sma(std::span<const double> values, std::size_t window) {
    if (window < 1) throw UsageError("sma: window must be >= 1");
    const std::size_t n = values.size();
    auto out = IndicatorSeries::all_undefined(n);
    if (window > n) return out;
    for (std::size_t t = window - 1; t < n; ++t) {
        double sum = 0.0;
        for (std::size_t i = t + 1 - window; i <= t; ++i) sum += values[i];
        out.values[t] = sum / static_cast<double>(window);
    }
    out.first_defined = window - 1;
    return out;
}

IndicatorSeries rolling_std(std::span<const double> values, std::size_t window) {
    if (window < 2) throw UsageError("rolling_std: window must be >= 2");
    const std::size_t n = values.size();
    auto out = IndicatorSeries::all_undefined(n);
    if (window > n) return out;
    for (std::size_t t = window - 1; t < n; ++t) {
        double sum = 0.0;
        for (std::size_t i = t + 1 - window; i <= t; ++i) sum += values[i];
        const double mean = sum / static_cast<double>(window);
        double ss = 0.0;
        for (std::size_t i = t + 1 - window; i <= t; ++i) {
            const double d = values[i] - mean;
            ss += d * d;
        }
        out.values[t] = std::sqrt(ss / static_cast<double>(window));
    }
    out.first_defined = window - 1;
    return out;
}

IndicatorSeries ema(std::span<const double> values, std::size_t period) {
    if (period < 1) throw UsageError("ema: period must be >= 1");
    const std::size_t n = values.size();
    auto out = IndicatorSeries::all_undefined(n);
    if (period > n) return out;
    double seed = 0.0;
    for (std::size_t i = 0; i < period; ++i) seed += values[i];
    seed /= static_cast<double>(period);
    const double alpha = 2.0 / (static_cast<double>(period) + 1.0);
    out.values[period - 1] = seed;
    double e = seed;
    for (std::size_t t = period; t < n; ++t) {
        e = alpha * values[t] + (1.0 - alpha) * e;
        out.values[t] = e;
    }
    out.first_defined = period - 1;
    return out;
}

BollingerBands bollinger(const PriceSeries& series) {
    const auto closes = series.adj_closes();
    BollingerBands bands;
    bands.middle = sma(closes, bands.window);
    const auto sigma = rolling_std(closes, bands.window);
    bands.upper = bands.middle;
    bands.lower = bands.middle;
    for (std::size_t t = bands.middle.first_defined; t < closes.size(); ++t) {
        bands.upper.values[t] = bands.middle.values[t] + bands.k * sigma.values[t];
        bands.lower.values[t] = bands.middle.values[t] - bands.k * sigma.values[t];
    }
    return bands;
}

MacdLines macd_lines(const PriceSeries& series) {
    const auto closes = series.adj_closes();
    const std::size_t n = closes.size();
    MacdLines lines;
    const auto fast = ema(closes, lines.fast_period);
    const auto slow = ema(closes, lines.slow_period);

    lines.macd = IndicatorSeries::all_undefined(n);
    if (slow.first_defined < n) {
        for (std::size_t t = slow.first_defined; t < n; ++t)
            lines.macd.values[t] = fast.values[t] - slow.values[t];
        lines.macd.first_defined = slow.first_defined;
    }

    lines.signal = IndicatorSeries::all_undefined(n);
    if (lines.macd.first_defined < n) {
        const std::size_t offset = lines.macd.first_defined;
        std::span<const double> dense(lines.macd.values.data() + offset, n - offset);
        const auto sig = ema(dense, lines.signal_period);
        if (sig.first_defined < dense.size()) {
            for (std::size_t i = sig.first_defined; i < dense.size(); ++i)
                lines.signal.values[offset + i] = sig.values[i];
            lines.signal.first_defined = offset + sig.first_defined;
        }
    }
    return lines;
}

RsiSeries rsi(const PriceSeries& series) {
    const auto closes = series.adj_closes();
    const std::size_t n = closes.size();
    RsiSeries out;
    out.rsi = IndicatorSeries::all_undefined(n);
    if (n < 2) return out;

    std::vector<double> gains(n - 1), losses(n - 1);
    for (std::size_t t = 1; t < n; ++t) {
        const double d = closes[t] - closes[t - 1];
        gains[t - 1] = d > 0.0 ? d : 0.0;
        losses[t - 1] = d < 0.0 ? -d : 0.0;
    }
    const auto avg_gain = ema(gains, out.period);
    const auto avg_loss = ema(losses, out.period);
    if (avg_gain.first_defined >= gains.size()) return out;

    for (std::size_t i = avg_gain.first_defined; i < gains.size(); ++i) {
        const double g = avg_gain.values[i];
        const double l = avg_loss.values[i];
        double value;
        if (l == 0.0) {
            value = g == 0.0 ? 50.0 : 100.0;
        } else {
            const double rs = g / l;
            value = 100.0 - 100.0 / (1.0 + rs);
        }
        out.rsi.values[i + 1] = value;  // diffs are offset one bar from closes
    }
    out.rsi.first_defined = avg_gain.first_defined + 1;
    return out;
}

std::vector<std::size_t> cross_above(const IndicatorSeries& value,
                                     const IndicatorSeries& threshold) {
    std::vector<std::size_t> events;
    const std::size_t n = std::min(value.size(), threshold.size());
    for (std::size_t t = 1; t < n; ++t) {
        if (!value.defined(t - 1) || !value.defined(t)) continue;
        if (!threshold.defined(t - 1) || !threshold.defined(t)) continue;
        if (value[t - 1] <= threshold[t - 1] && value[t] > threshold[t])
            events.push_back(t);
    }
    return events;
}

std::vector<std::size_t> cross_above(const IndicatorSeries& value, double threshold) {
    return cross_above(value, IndicatorSeries::constant(threshold, value.size()));
}

void dump_indicator_csv(const IndicatorSeries& series, const PriceSeries& source,
                        const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write " + path.string());
    out << "date,value\n";
    char buf[32];
    for (std::size_t t = series.first_defined; t < series.size(); ++t) {
        std::snprintf(buf, sizeof(buf), "%.17g", series.values[t]);
        out << to_string(source.bars[t].date) << ',' << buf << '\n';
    }
}

}  // namespace chartml
