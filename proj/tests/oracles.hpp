#pragma once

// Independent brute-force re-implementations used as test oracles. These
// deliberately share no code with the library: two-pass windowed mean/sigma,
// direct EMA recurrences, and a plain crossing scan over raw bars.

#include <cmath>
#include <limits>
#include <vector>

#include "chartml/labeler.hpp"
#include "chartml/market_data.hpp"

namespace oracle {

inline constexpr double kUndef = std::numeric_limits<double>::quiet_NaN();

inline bool defined(double v) { return !std::isnan(v); }

inline std::vector<double> window_mean(const std::vector<double>& v, std::size_t w) {
    std::vector<double> out(v.size(), kUndef);
    for (std::size_t t = 0; t < v.size(); ++t) {
        if (t + 1 < w) continue;
        double s = 0.0;
        for (std::size_t i = t + 1 - w; i <= t; ++i) s += v[i];
        out[t] = s / static_cast<double>(w);
    }
    return out;
}

inline std::vector<double> window_sigma(const std::vector<double>& v, std::size_t w) {
    std::vector<double> out(v.size(), kUndef);
    for (std::size_t t = 0; t < v.size(); ++t) {
        if (t + 1 < w) continue;
        double s = 0.0;
        for (std::size_t i = t + 1 - w; i <= t; ++i) s += v[i];
        const double mean = s / static_cast<double>(w);
        double ss = 0.0;
        for (std::size_t i = t + 1 - w; i <= t; ++i) ss += (v[i] - mean) * (v[i] - mean);
        out[t] = std::sqrt(ss / static_cast<double>(w));
    }
    return out;
}

inline std::vector<double> recurrence_ema(const std::vector<double>& v, std::size_t period) {
    std::vector<double> out(v.size(), kUndef);
    if (v.size() < period) return out;
    double seed = 0.0;
    for (std::size_t i = 0; i < period; ++i) seed += v[i];
    seed /= static_cast<double>(period);
    out[period - 1] = seed;
    const double alpha = 2.0 / (static_cast<double>(period) + 1.0);
    for (std::size_t t = period; t < v.size(); ++t)
        out[t] = alpha * v[t] + (1.0 - alpha) * out[t - 1];
    return out;
}

inline std::vector<std::size_t> scan_cross_above(const std::vector<double>& value,
                                                 const std::vector<double>& threshold) {
    std::vector<std::size_t> events;
    for (std::size_t t = 1; t < value.size() && t < threshold.size(); ++t) {
        if (!defined(value[t - 1]) || !defined(value[t])) continue;
        if (!defined(threshold[t - 1]) || !defined(threshold[t])) continue;
        if (value[t - 1] <= threshold[t - 1] && value[t] > threshold[t]) events.push_back(t);
    }
    return events;
}

inline std::vector<std::size_t> bb_events(const chartml::PriceSeries& series) {
    std::vector<double> close;
    for (const auto& bar : series.bars) close.push_back(bar.adj_close);
    const auto mean = window_mean(close, 20);
    const auto sigma = window_sigma(close, 20);
    std::vector<double> lower(close.size(), kUndef);
    for (std::size_t t = 0; t < close.size(); ++t)
        if (defined(mean[t])) lower[t] = mean[t] - 2.0 * sigma[t];
    return scan_cross_above(close, lower);
}

inline std::vector<std::size_t> macd_events(const chartml::PriceSeries& series) {
    std::vector<double> close;
    for (const auto& bar : series.bars) close.push_back(bar.adj_close);
    const auto fast = recurrence_ema(close, 12);
    const auto slow = recurrence_ema(close, 26);
    std::vector<double> macd(close.size(), kUndef);
    std::vector<double> macd_dense;
    for (std::size_t t = 0; t < close.size(); ++t) {
        if (defined(fast[t]) && defined(slow[t])) {
            macd[t] = fast[t] - slow[t];
            macd_dense.push_back(macd[t]);
        }
    }
    const auto signal_dense = recurrence_ema(macd_dense, 9);
    std::vector<double> signal(close.size(), kUndef);
    std::size_t dense_index = 0;
    for (std::size_t t = 0; t < close.size(); ++t) {
        if (!defined(macd[t])) continue;
        signal[t] = signal_dense[dense_index];
        ++dense_index;
    }
    return scan_cross_above(macd, signal);
}

inline std::vector<std::size_t> rsi_events(const chartml::PriceSeries& series) {
    std::vector<double> close;
    for (const auto& bar : series.bars) close.push_back(bar.adj_close);
    if (close.size() < 2) return {};
    std::vector<double> gain, loss;
    for (std::size_t t = 1; t < close.size(); ++t) {
        const double d = close[t] - close[t - 1];
        gain.push_back(d > 0.0 ? d : 0.0);
        loss.push_back(d < 0.0 ? -d : 0.0);
    }
    const auto g = recurrence_ema(gain, 14);
    const auto l = recurrence_ema(loss, 14);
    std::vector<double> rsi(close.size(), kUndef);
    std::vector<double> threshold(close.size(), 30.0);
    for (std::size_t i = 0; i < gain.size(); ++i) {
        if (!defined(g[i])) continue;
        double value;
        if (l[i] == 0.0) {
            value = g[i] == 0.0 ? 50.0 : 100.0;
        } else {
            value = 100.0 - 100.0 / (1.0 + g[i] / l[i]);
        }
        rsi[i + 1] = value;
    }
    return scan_cross_above(rsi, threshold);
}

inline std::vector<std::size_t> events_for(const chartml::PriceSeries& series,
                                           chartml::RuleKind rule) {
    switch (rule) {
        case chartml::RuleKind::BB: return bb_events(series);
        case chartml::RuleKind::MACD: return macd_events(series);
        case chartml::RuleKind::RSI: return rsi_events(series);
    }
    return {};
}

}  // namespace oracle
