#include "chartml/labeler.hpp"

#include <algorithm>

#include "chartml/errors.hpp"
#include "chartml/rng.hpp"

namespace chartml {

std::string to_string(RuleKind rule) {
    switch (rule) {
        case RuleKind::BB: return "bb";
        case RuleKind::MACD: return "macd";
        case RuleKind::RSI: return "rsi";
    }
    return "?";
}

std::optional<RuleKind> parse_rule(std::string_view name) {
    if (name == "bb" || name == "BB") return RuleKind::BB;
    if (name == "macd" || name == "MACD") return RuleKind::MACD;
    if (name == "rsi" || name == "RSI") return RuleKind::RSI;
    return std::nullopt;
}

std::size_t rule_window_days(RuleKind rule, bool fixed_window_30) {
    if (fixed_window_30) return 30;
    switch (rule) {
        case RuleKind::BB: return 20;
        case RuleKind::MACD: return 26;
        case RuleKind::RSI: return 27;
    }
    return 0;
}

std::size_t rule_first_signal_index(RuleKind rule) {
    // One bar past the first defined index, since a crossing inspects t-1 and t.
    switch (rule) {
        case RuleKind::BB: return 20;    // bands defined from 19
        case RuleKind::RSI: return 15;   // rsi defined from 14
        case RuleKind::MACD: return 34;  // signal line defined from 33
    }
    return 0;
}

std::vector<std::size_t> detect_signals(const PriceSeries& series, RuleKind rule) {
    switch (rule) {
        case RuleKind::BB: {
            const auto bands = bollinger(series);
            IndicatorSeries price = IndicatorSeries::constant(0.0, series.size());
            price.values = series.adj_closes();
            return cross_above(price, bands.lower);
        }
        case RuleKind::RSI: {
            const auto r = rsi(series);
            return cross_above(r.rsi, 30.0);
        }
        case RuleKind::MACD: {
            const auto lines = macd_lines(series);
            return cross_above(lines.macd, lines.signal);
        }
    }
    return {};
}

std::vector<SignalEvent> detect_signal_events(const PriceSeries& series, RuleKind rule) {
    std::vector<SignalEvent> events;
    for (std::size_t t : detect_signals(series, rule)) {
        events.push_back({series.ticker, t, series.bars[t].date, rule, 1});
    }
    return events;
}

std::vector<std::size_t> admissible_indices(const PriceSeries& series, RuleKind rule,
                                            const LabelerConfig& config) {
    const std::size_t window = rule_window_days(rule, config.fixed_window_30);
    const std::size_t first =
        std::max(rule_first_signal_index(rule), window - 1);
    std::vector<std::size_t> out;
    for (std::size_t t = first; t < series.size(); ++t) {
        const Date& d = series.bars[t].date;
        if (config.range_start && d < *config.range_start) continue;
        if (config.range_end && *config.range_end < d) continue;
        out.push_back(t);
    }
    return out;
}

WindowSample extract_window(const PriceSeries& series, std::size_t end_index, RuleKind rule,
                            const LabelerConfig& config) {
    const std::size_t window = rule_window_days(rule, config.fixed_window_30);
    if (end_index >= series.size())
        throw DataError("window end index " + std::to_string(end_index) +
                        " out of range for " + series.ticker);
    if (end_index + 1 < window)
        throw DataError("insufficient history for window ending at index " +
                        std::to_string(end_index));
    if (end_index < rule_first_signal_index(rule))
        throw DataError("index " + std::to_string(end_index) + " is inside the " +
                        to_string(rule) + " warm-up");

    WindowSample sample;
    sample.ticker = series.ticker;
    sample.end_index = end_index;
    sample.end_date = series.bars[end_index].date;
    sample.rule = rule;
    sample.bars.assign(series.bars.begin() + static_cast<std::ptrdiff_t>(end_index + 1 - window),
                       series.bars.begin() + static_cast<std::ptrdiff_t>(end_index + 1));
    const auto events = detect_signals(series, rule);
    sample.label =
        std::binary_search(events.begin(), events.end(), end_index) ? 1 : 0;
    return sample;
}

std::size_t Dataset::positives() const {
    return static_cast<std::size_t>(
        std::count_if(samples.begin(), samples.end(),
                      [](const WindowSample& s) { return s.label == 1; }));
}

std::size_t Dataset::negatives() const { return samples.size() - positives(); }

Dataset sample_balanced_dataset(std::span<const PriceSeries> corpus, RuleKind rule,
                                const LabelerConfig& config, std::uint64_t seed) {
    if (corpus.empty()) throw UsageError("empty corpus");
    Dataset dataset;
    dataset.rule = rule;

    for (const PriceSeries& series : corpus) {
        const auto admissible = admissible_indices(series, rule, config);
        if (admissible.empty()) {
            dataset.warnings.push_back(series.ticker + ": no admissible windows, skipped");
            continue;
        }
        const auto events = detect_signals(series, rule);

        std::vector<std::size_t> positives;
        for (std::size_t t : admissible)
            if (std::binary_search(events.begin(), events.end(), t)) positives.push_back(t);

        std::vector<std::size_t> negatives;
        for (std::size_t t : admissible) {
            if (std::binary_search(events.begin(), events.end(), t)) continue;
            if (config.exclusion_radius > 0) {
                bool near_event = false;
                for (std::size_t e : events) {
                    const std::size_t lo = e > config.exclusion_radius
                                               ? e - config.exclusion_radius
                                               : 0;
                    if (t >= lo && t <= e + config.exclusion_radius) {
                        near_event = true;
                        break;
                    }
                }
                if (near_event) continue;
            }
            negatives.push_back(t);
        }

        const std::size_t take =
            std::min({config.per_ticker, positives.size(), negatives.size()});
        if (take == 0) {
            dataset.warnings.push_back(series.ticker + ": no " +
                                       (positives.empty() ? "buy" : "no-buy") +
                                       " windows available, skipped");
            continue;
        }

        Rng rng(mix_seed(seed, series.ticker));
        auto pick = [&](const std::vector<std::size_t>& pool) {
            auto chosen = rng.sample_without_replacement(pool.size(), take);
            std::vector<std::size_t> indices;
            indices.reserve(take);
            for (std::size_t j : chosen) indices.push_back(pool[j]);
            std::sort(indices.begin(), indices.end());
            return indices;
        };
        for (std::size_t t : pick(positives))
            dataset.samples.push_back(extract_window(series, t, rule, config));
        for (std::size_t t : pick(negatives))
            dataset.samples.push_back(extract_window(series, t, rule, config));
    }
    return dataset;
}

}  // namespace chartml
