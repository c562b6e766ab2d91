#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "chartml/date.hpp"

namespace chartml {

// One trading day. Prices are in currency units, volume in shares.
struct OhlcvBar {
    Date date;
    double open = 0.0;
    double high = 0.0;
    double low = 0.0;
    double close = 0.0;
    double adj_close = 0.0;
    double volume = 0.0;
};

// Returns an error message if the bar violates its invariants
// (low <= min(open, close), high >= max(open, close), prices > 0, volume >= 0).
std::optional<std::string> validate_bar(const OhlcvBar& bar);

// Ordered per-ticker daily series. Dates strictly increasing, never empty.
struct PriceSeries {
    std::string ticker;
    std::vector<OhlcvBar> bars;

    std::size_t size() const { return bars.size(); }

    // Close values used for indicator math (adjusted close).
    std::vector<double> adj_closes() const;
};

bool operator==(const OhlcvBar& a, const OhlcvBar& b);
bool operator==(const PriceSeries& a, const PriceSeries& b);

// CSV schema (UTF-8, header required):
//   date,open,high,low,close,adj_close,volume
// with dates formatted YYYY-MM-DD, one file per ticker named <TICKER>.csv.
// Rows may appear in any order in the file; the returned series is sorted by
// date ascending. Throws DataError naming the line/date for malformed rows,
// invariant violations, and duplicate dates.
PriceSeries parse_csv_series(const std::filesystem::path& path);

// Inverse of parse_csv_series. Prices are written with enough digits that a
// parse round-trips to the identical series.
void write_csv_series(const PriceSeries& series, const std::filesystem::path& path);

// Geometric random walk for the synthetic corpus.
struct SyntheticModel {
    double drift = 5e-4;        // per-day log drift
    double volatility = 0.02;   // per-day log volatility
    double start_price = 100.0;
    double spread = 0.01;       // intraday wick extension scale (fraction of price)
    double volume_base = 1e6;   // median daily volume
    double volume_sigma = 0.5;  // lognormal sigma of daily volume
    Date start_date{2010, 1, 4};
};

// Deterministic given (seed, n_days, model). Bars satisfy the OhlcvBar
// invariants by construction; adj_close == close. Dates step over weekends.
// Throws UsageError for invalid parameters.
PriceSeries generate_synthetic_series(std::uint64_t seed, std::size_t n_days,
                                      const SyntheticModel& model,
                                      std::string ticker = "SYN");

// Convenience: n_tickers independent series named SYN000, SYN001, ... with
// per-ticker seeds derived from `seed`.
std::vector<PriceSeries> generate_synthetic_corpus(std::uint64_t seed, std::size_t n_tickers,
                                                   std::size_t n_days,
                                                   const SyntheticModel& model);

// Loads every <TICKER>.csv under `dir` (non-recursive), sorted by ticker.
std::vector<PriceSeries> load_corpus(const std::filesystem::path& dir);

}  // namespace chartml
