#include "chartml/forecast.hpp"

#include <algorithm>

#include "chartml/errors.hpp"
#include "chartml/plot.hpp"
#include "chartml/resample.hpp"

namespace chartml {

ForecastResult rolling_predict(const PriceSeries& series, const VotingEnsemble& ensemble,
                               RuleKind rule, RenderStyle style, int resolution, Date start,
                               Date end, double threshold, bool fixed_window_30) {
    if (end < start) throw UsageError("forecast range is empty");
    LabelerConfig config;
    config.fixed_window_30 = fixed_window_30;

    const std::size_t window = rule_window_days(rule, fixed_window_30);
    const std::size_t first =
        std::max(rule_first_signal_index(rule), window - 1);
    const auto events = detect_signals(series, rule);

    ForecastResult result;
    for (std::size_t t = 0; t < series.size(); ++t) {
        const Date& d = series.bars[t].date;
        if (d < start || end < d) continue;
        if (t < first) {
            result.warnings.push_back(series.ticker + " " + to_string(d) +
                                      ": insufficient history, skipped");
            continue;
        }
        // Score date t from its trailing window only; bars after t are never
        // touched.
        PriceSeries prefix;
        prefix.ticker = series.ticker;
        prefix.bars.assign(series.bars.begin(),
                           series.bars.begin() + static_cast<std::ptrdiff_t>(t + 1));
        const WindowSample sample = extract_window(prefix, t, rule, config);
        const RasterImage native =
            render(sample, style, kNativeCanvasSide, kNativeCanvasSide);
        const auto features = image_features(downscale(native, resolution));
        const VoteResult v = ensemble.vote(features);

        ForecastRecord record;
        record.ticker = series.ticker;
        record.index = t;
        record.date = d;
        record.vote_fraction = v.vote_fraction;
        record.predicted = v.vote_fraction > threshold ? 1 : 0;
        record.truth = std::binary_search(events.begin(), events.end(), t) ? 1 : 0;
        result.records.push_back(std::move(record));
    }
    return result;
}

RasterImage emit_signal_chart(const PriceSeries& series,
                              std::span<const ForecastRecord> records, RuleKind rule) {
    if (records.empty()) throw DataError("cannot chart an empty forecast");

    const std::size_t lo_record = records.front().index;
    const std::size_t hi = records.back().index;
    const std::size_t context = rule_window_days(rule);
    const std::size_t lo = lo_record > context ? lo_record - context : 0;

    const auto bands = bollinger(series);

    std::vector<double> xs, closes, mids, ups, downs;
    double price_lo = series.bars[lo].low, price_hi = series.bars[lo].high;
    for (std::size_t t = lo; t <= hi; ++t) {
        xs.push_back(static_cast<double>(t));
        const double c = series.bars[t].adj_close;
        closes.push_back(c);
        price_lo = std::min(price_lo, c);
        price_hi = std::max(price_hi, c);
        if (bands.middle.defined(t)) {
            price_lo = std::min(price_lo, bands.lower[t]);
            price_hi = std::max(price_hi, bands.upper[t]);
        }
    }
    const double pad = 0.08 * (price_hi - price_lo + 1e-9);

    Chart chart(960, 480, 40);
    chart.set_world(static_cast<double>(lo), static_cast<double>(hi), price_lo - pad,
                    price_hi + pad);
    chart.frame();

    chart.polyline(xs, closes, 1.0f, 2);
    std::vector<double> bx, bm, bu, bl;
    for (std::size_t t = std::max(lo, bands.middle.first_defined); t <= hi; ++t) {
        bx.push_back(static_cast<double>(t));
        bm.push_back(bands.middle[t]);
        bu.push_back(bands.upper[t]);
        bl.push_back(bands.lower[t]);
    }
    if (!bx.empty()) {
        chart.polyline(bx, bm, 0.55f);
        chart.polyline(bx, bu, 0.35f);
        chart.polyline(bx, bl, 0.35f);
    }

    for (const ForecastRecord& r : records) {
        const double x = static_cast<double>(r.index);
        const double y = series.bars[r.index].adj_close;
        if (r.truth && *r.truth == 1)
            chart.marker_triangle(x, y - 2.5 * pad / 4, 5, true, true, 1.0f);
        if (r.predicted == 1)
            chart.marker_triangle(x, y + 2.5 * pad / 4, 5, false, false, 1.0f);
    }

    // Date ticks roughly every quarter of the span, price ticks at the edges.
    const std::size_t span = hi - lo;
    for (int i = 0; i <= 3; ++i) {
        const std::size_t t = lo + span * static_cast<std::size_t>(i) / 3;
        chart.x_tick(static_cast<double>(t), to_string(series.bars[t].date));
    }
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.1f", price_lo);
    chart.y_tick(price_lo, buf);
    std::snprintf(buf, sizeof(buf), "%.1f", price_hi);
    chart.y_tick(price_hi, buf);

    RasterImage out = chart.image();
    out.meta = ImageMeta{RenderStyle::CloseLine, rule, series.ticker, records.back().date};
    return out;
}

}  // namespace chartml
