#pragma once

#include <optional>
#include <span>
#include <vector>

#include "chartml/classifiers.hpp"
#include "chartml/evaluate.hpp"
#include "chartml/labeler.hpp"

namespace chartml {

struct ForecastRecord {
    std::string ticker;
    std::size_t index = 0;
    Date date;
    double vote_fraction = 0.0;
    int predicted = 0;               // vote_fraction > threshold
    std::optional<int> truth;        // from the crossing oracle
};

struct ForecastResult {
    std::vector<ForecastRecord> records;  // ordered by date
    std::vector<std::string> warnings;    // skipped days at the range start
};

// For every trading day inside [start, end] with full history: extract the
// rule's trailing window, render, downscale, featurize, and vote. Uses only
// bars at or before the day being scored. The threshold applies strictly
// (predicted = fraction > threshold), so the default 0.5 matches hard
// majority voting.
ForecastResult rolling_predict(const PriceSeries& series, const VotingEnsemble& ensemble,
                               RuleKind rule, RenderStyle style, int resolution, Date start,
                               Date end, double threshold = 0.5,
                               bool fixed_window_30 = false);

// Close line, 20-day moving average, +-2 sigma bands, true signals (filled
// triangles) and predicted signals (open triangles) over the forecast span.
RasterImage emit_signal_chart(const PriceSeries& series,
                              std::span<const ForecastRecord> records, RuleKind rule);

}  // namespace chartml
