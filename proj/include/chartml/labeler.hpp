#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "chartml/indicators.hpp"
#include "chartml/market_data.hpp"

namespace chartml {

// The three buy-trigger rules. Each rule pairs a crossing predicate with the
// number of trading days its window spans.
enum class RuleKind { BB, MACD, RSI };

constexpr std::array<RuleKind, 3> kAllRules = {RuleKind::BB, RuleKind::MACD, RuleKind::RSI};

std::string to_string(RuleKind rule);
std::optional<RuleKind> parse_rule(std::string_view name);

// 20 for BB, 26 for MACD, 27 for RSI; 30 for every rule when the fixed-window
// override is active.
std::size_t rule_window_days(RuleKind rule, bool fixed_window_30 = false);

// First index at which the rule's crossing predicate is evaluable (both the
// value and threshold defined at t-1 and t).
std::size_t rule_first_signal_index(RuleKind rule);

struct SignalEvent {
    std::string ticker;
    std::size_t index = 0;
    Date date;
    RuleKind rule = RuleKind::BB;
    int label = 1;  // 1 = buy, 0 = no-buy
};

// Positive (buy) event indices for the rule:
//   BB   -> adjusted close crosses above the lower band
//   RSI  -> RSI crosses above 30
//   MACD -> MACD line crosses above the signal line
// Indices with insufficient warm-up are excluded by construction.
std::vector<std::size_t> detect_signals(const PriceSeries& series, RuleKind rule);

// As above but with event metadata attached.
std::vector<SignalEvent> detect_signal_events(const PriceSeries& series, RuleKind rule);

struct LabelerConfig {
    bool fixed_window_30 = false;
    std::size_t per_ticker = 10;
    // Negatives are drawn no closer than this many bars to any positive.
    std::size_t exclusion_radius = 0;
    // Inclusive sampling date range (the training period); unset = whole series.
    std::optional<Date> range_start;
    std::optional<Date> range_end;
};

// The window_days-bar slice ending at (and including) end_index, with its
// label.
struct WindowSample {
    std::string ticker;
    std::size_t end_index = 0;
    Date end_date;
    RuleKind rule = RuleKind::BB;
    std::vector<OhlcvBar> bars;
    int label = 0;
};

// Indices eligible to become window endpoints: past the rule's warm-up, with
// a full window of history, and inside the configured date range.
std::vector<std::size_t> admissible_indices(const PriceSeries& series, RuleKind rule,
                                            const LabelerConfig& config = {});

// Extracts the trailing window ending at end_index; the label is assigned by
// membership in detect_signals. Throws DataError when end_index lacks history
// or warm-up.
WindowSample extract_window(const PriceSeries& series, std::size_t end_index, RuleKind rule,
                            const LabelerConfig& config = {});

struct Dataset {
    RuleKind rule = RuleKind::BB;
    std::vector<WindowSample> samples;
    std::vector<std::string> warnings;  // e.g. tickers skipped for lack of events

    std::size_t positives() const;
    std::size_t negatives() const;
};

// For each ticker draws min(per_ticker, available) positive end-indices
// uniformly without replacement, and the same count of negatives from the
// admissible non-event days. Exactly class-balanced per ticker and
// deterministic given the seed (per-ticker streams are derived from
// (seed, ticker), so corpus order does not matter).
Dataset sample_balanced_dataset(std::span<const PriceSeries> corpus, RuleKind rule,
                                const LabelerConfig& config, std::uint64_t seed);

}  // namespace chartml
