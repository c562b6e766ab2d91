#include <doctest.h>

#include <algorithm>
#include <map>

#include "chartml/errors.hpp"
#include "chartml/labeler.hpp"
#include "oracles.hpp"

using namespace chartml;

namespace {

PriceSeries series_from_closes(const std::vector<double>& closes, std::string ticker = "TST") {
    PriceSeries s;
    s.ticker = std::move(ticker);
    Date d{2014, 1, 6};
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

}  // namespace

TEST_CASE("rule windows and warm-ups") {
    CHECK(rule_window_days(RuleKind::BB) == 20);
    CHECK(rule_window_days(RuleKind::MACD) == 26);
    CHECK(rule_window_days(RuleKind::RSI) == 27);
    for (RuleKind rule : kAllRules) CHECK(rule_window_days(rule, true) == 30);
    CHECK(rule_first_signal_index(RuleKind::BB) == 20);
    CHECK(rule_first_signal_index(RuleKind::RSI) == 15);
    CHECK(rule_first_signal_index(RuleKind::MACD) == 34);
}

TEST_CASE("constant prices produce no signals under any rule") {
    const auto flat = series_from_closes(std::vector<double>(120, 50.0));
    for (RuleKind rule : kAllRules) CHECK(detect_signals(flat, rule).empty());
}

TEST_CASE("a deep dip and recovery triggers a band crossing") {
    // stable around 100, plunge, then recover
    std::vector<double> closes(60, 100.0);
    for (std::size_t t = 30; t < 36; ++t) closes[t] = 80.0;
    for (std::size_t t = 36; t < 60; ++t) closes[t] = 99.0;
    const auto series = series_from_closes(closes);
    const auto events = detect_signals(series, RuleKind::BB);
    CHECK_FALSE(events.empty());
    CHECK(events == oracle::bb_events(series));
}

TEST_CASE("event detection equals the brute-force oracle on synthetic years") {
    for (std::uint64_t seed = 100; seed < 110; ++seed) {
        const auto series = generate_synthetic_series(seed, 252, {});
        CHECK(detect_signals(series, RuleKind::BB) == oracle::bb_events(series));
        CHECK(detect_signals(series, RuleKind::MACD) == oracle::macd_events(series));
        CHECK(detect_signals(series, RuleKind::RSI) == oracle::rsi_events(series));
    }
}

TEST_CASE("extract_window boundaries") {
    const auto series = generate_synthetic_series(5, 120, {});

    const std::size_t first_ok = rule_first_signal_index(RuleKind::BB);
    const auto window = extract_window(series, first_ok, RuleKind::BB);
    CHECK(window.bars.size() == 20);
    CHECK(window.end_index == first_ok);
    CHECK(window.bars.back().date == series.bars[first_ok].date);

    CHECK_THROWS_AS(extract_window(series, 10, RuleKind::BB), DataError);     // inside warm-up
    CHECK_THROWS_AS(extract_window(series, 500, RuleKind::BB), DataError);    // out of range
    CHECK_THROWS_AS(extract_window(series, 30, RuleKind::MACD), DataError);   // macd warm-up

    const auto again = extract_window(series, first_ok, RuleKind::BB);
    CHECK(again.bars == window.bars);
    CHECK(again.label == window.label);

    LabelerConfig fixed;
    fixed.fixed_window_30 = true;
    CHECK(extract_window(series, 40, RuleKind::BB, fixed).bars.size() == 30);
}

TEST_CASE("window labels agree with the recomputed crossing predicate") {
    const auto corpus = generate_synthetic_corpus(77, 6, 400, {});
    for (RuleKind rule : kAllRules) {
        const auto dataset = sample_balanced_dataset(corpus, rule, {}, 9);
        REQUIRE_FALSE(dataset.samples.empty());
        for (const auto& sample : dataset.samples) {
            const auto* series = &corpus[0];
            for (const auto& s : corpus)
                if (s.ticker == sample.ticker) series = &s;
            const auto events = oracle::events_for(*series, rule);
            const bool is_event =
                std::binary_search(events.begin(), events.end(), sample.end_index);
            CHECK(is_event == (sample.label == 1));
            CHECK(sample.bars.size() == rule_window_days(rule));
            CHECK(sample.bars.back().date == sample.end_date);
        }
    }
}

TEST_CASE("balanced sampling balances classes per ticker") {
    const auto corpus = generate_synthetic_corpus(31, 8, 500, {});
    LabelerConfig config;
    config.per_ticker = 4;
    const auto dataset = sample_balanced_dataset(corpus, RuleKind::BB, config, 3);
    CHECK(dataset.positives() == dataset.negatives());

    std::map<std::string, std::pair<int, int>> per_ticker;
    for (const auto& s : dataset.samples) {
        auto& counts = per_ticker[s.ticker];
        (s.label == 1 ? counts.first : counts.second) += 1;
    }
    for (const auto& [ticker, counts] : per_ticker) {
        CHECK(counts.first == counts.second);
        CHECK(counts.first <= 4);
    }
}

TEST_CASE("scarce tickers contribute min(available, per_ticker) per class") {
    // engineered series with very few BB events
    std::vector<double> closes(120, 100.0);
    for (std::size_t t = 60; t < 66; ++t) closes[t] = 70.0;
    for (std::size_t t = 66; t < 120; ++t) closes[t] = 99.5;
    const auto series = series_from_closes(closes, "SCARCE");
    const auto events = detect_signals(series, RuleKind::BB);
    REQUIRE_FALSE(events.empty());
    REQUIRE(events.size() < 10);

    std::vector<PriceSeries> corpus{series};
    const auto dataset = sample_balanced_dataset(corpus, RuleKind::BB, {}, 5);
    CHECK(dataset.positives() == events.size());
    CHECK(dataset.negatives() == events.size());
}

TEST_CASE("sampling is deterministic and independent of corpus order") {
    auto corpus = generate_synthetic_corpus(55, 5, 300, {});
    const auto a = sample_balanced_dataset(corpus, RuleKind::RSI, {}, 21);
    const auto b = sample_balanced_dataset(corpus, RuleKind::RSI, {}, 21);
    REQUIRE(a.samples.size() == b.samples.size());
    for (std::size_t i = 0; i < a.samples.size(); ++i) {
        CHECK(a.samples[i].ticker == b.samples[i].ticker);
        CHECK(a.samples[i].end_index == b.samples[i].end_index);
    }

    std::reverse(corpus.begin(), corpus.end());
    const auto c = sample_balanced_dataset(corpus, RuleKind::RSI, {}, 21);
    auto key = [](const Dataset& d) {
        std::vector<std::pair<std::string, std::size_t>> k;
        for (const auto& s : d.samples) k.emplace_back(s.ticker, s.end_index);
        std::sort(k.begin(), k.end());
        return k;
    };
    CHECK(key(a) == key(c));  // per-ticker streams: order does not matter
}

TEST_CASE("tickers without events are skipped with a warning") {
    std::vector<PriceSeries> corpus{series_from_closes(std::vector<double>(200, 42.0), "FLAT")};
    const auto dataset = sample_balanced_dataset(corpus, RuleKind::BB, {}, 1);
    CHECK(dataset.samples.empty());
    REQUIRE_FALSE(dataset.warnings.empty());
    CHECK(dataset.warnings.front().find("FLAT") != std::string::npos);
}

TEST_CASE("date-range restriction bounds sampled end dates") {
    const auto corpus = generate_synthetic_corpus(13, 4, 600, {});
    LabelerConfig config;
    config.range_start = Date{2010, 6, 1};
    config.range_end = Date{2011, 6, 1};
    const auto dataset = sample_balanced_dataset(corpus, RuleKind::BB, config, 11);
    REQUIRE_FALSE(dataset.samples.empty());
    for (const auto& s : dataset.samples) {
        CHECK_FALSE(s.end_date < *config.range_start);
        CHECK_FALSE(*config.range_end < s.end_date);
    }
}

TEST_CASE("negative exclusion radius keeps negatives away from events") {
    const auto corpus = generate_synthetic_corpus(99, 3, 500, {});
    LabelerConfig config;
    config.exclusion_radius = 3;
    const auto dataset = sample_balanced_dataset(corpus, RuleKind::BB, config, 2);
    for (const auto& s : dataset.samples) {
        if (s.label == 1) continue;
        const auto* series = &corpus[0];
        for (const auto& c : corpus)
            if (c.ticker == s.ticker) series = &c;
        for (std::size_t e : detect_signals(*series, RuleKind::BB)) {
            const std::size_t gap = s.end_index > e ? s.end_index - e : e - s.end_index;
            CHECK(gap > 3);
        }
    }
}
