#include "chartml/market_data.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "chartml/errors.hpp"
#include "chartml/rng.hpp"

namespace chartml {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::stringstream ss(line);
    while (std::getline(ss, field, ',')) {
        // Trim surrounding whitespace and stray carriage returns.
        const auto a = field.find_first_not_of(" \t\r");
        const auto b = field.find_last_not_of(" \t\r");
        fields.push_back(a == std::string::npos ? std::string{}
                                                : field.substr(a, b - a + 1));
    }
    return fields;
}

double parse_number(const std::string& s, std::size_t line_no, const char* what) {
    try {
        std::size_t pos = 0;
        double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw DataError("line " + std::to_string(line_no) + ": malformed " + what + " '" + s +
                        "'");
    }
}

std::string format_price(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

std::optional<std::string> validate_bar(const OhlcvBar& bar) {
    if (!(bar.open > 0.0 && bar.high > 0.0 && bar.low > 0.0 && bar.close > 0.0 &&
          bar.adj_close > 0.0))
        return "non-positive price on " + to_string(bar.date);
    if (bar.volume < 0.0) return "negative volume on " + to_string(bar.date);
    if (bar.low > std::min(bar.open, bar.close))
        return "low above min(open, close) on " + to_string(bar.date);
    if (bar.high < std::max(bar.open, bar.close))
        return "high below max(open, close) on " + to_string(bar.date);
    return std::nullopt;
}

std::vector<double> PriceSeries::adj_closes() const {
    std::vector<double> v(bars.size());
    for (std::size_t i = 0; i < bars.size(); ++i) v[i] = bars[i].adj_close;
    return v;
}

bool operator==(const OhlcvBar& a, const OhlcvBar& b) {
    return a.date == b.date && a.open == b.open && a.high == b.high && a.low == b.low &&
           a.close == b.close && a.adj_close == b.adj_close && a.volume == b.volume;
}

bool operator==(const PriceSeries& a, const PriceSeries& b) {
    return a.ticker == b.ticker && a.bars == b.bars;
}

PriceSeries parse_csv_series(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open " + path.string());

    PriceSeries series;
    series.ticker = path.stem().string();

    std::string line;
    std::size_t line_no = 0;

    if (!std::getline(in, line)) throw DataError(path.string() + ": empty file");
    ++line_no;
    {
        auto header = split_csv_line(line);
        const std::vector<std::string> expected = {"date", "open",      "high",  "low",
                                                   "close", "adj_close", "volume"};
        if (header != expected)
            throw DataError(path.string() + ": header does not match '" +
                            "date,open,high,low,close,adj_close,volume'");
    }

    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line == "\r") continue;
        auto fields = split_csv_line(line);
        if (fields.size() != 7)
            throw DataError("line " + std::to_string(line_no) + ": expected 7 fields, got " +
                            std::to_string(fields.size()));
        OhlcvBar bar;
        auto date = parse_date(fields[0]);
        if (!date)
            throw DataError("line " + std::to_string(line_no) + ": malformed date '" +
                            fields[0] + "'");
        bar.date = *date;
        bar.open = parse_number(fields[1], line_no, "open");
        bar.high = parse_number(fields[2], line_no, "high");
        bar.low = parse_number(fields[3], line_no, "low");
        bar.close = parse_number(fields[4], line_no, "close");
        bar.adj_close = parse_number(fields[5], line_no, "adj_close");
        bar.volume = parse_number(fields[6], line_no, "volume");
        if (auto err = validate_bar(bar))
            throw DataError("line " + std::to_string(line_no) + ": " + *err);
        series.bars.push_back(bar);
    }

    if (series.bars.empty()) throw DataError(path.string() + ": no data rows");

    std::sort(series.bars.begin(), series.bars.end(),
              [](const OhlcvBar& a, const OhlcvBar& b) { return a.date < b.date; });
    for (std::size_t i = 1; i < series.bars.size(); ++i) {
        if (series.bars[i].date == series.bars[i - 1].date)
            throw DataError(path.string() + ": duplicate date " +
                            to_string(series.bars[i].date));
    }
    return series;
}

void write_csv_series(const PriceSeries& series, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write " + path.string());
    out << "date,open,high,low,close,adj_close,volume\n";
    for (const auto& bar : series.bars) {
        out << to_string(bar.date) << ',' << format_price(bar.open) << ','
            << format_price(bar.high) << ',' << format_price(bar.low) << ','
            << format_price(bar.close) << ',' << format_price(bar.adj_close) << ','
            << format_price(bar.volume) << '\n';
    }
}

PriceSeries generate_synthetic_series(std::uint64_t seed, std::size_t n_days,
                                      const SyntheticModel& model, std::string ticker) {
    if (n_days < 1) throw UsageError("n_days must be >= 1");
    if (model.start_price <= 0.0) throw UsageError("start price must be positive");
    if (model.volatility < 0.0) throw UsageError("volatility must be >= 0");
    if (model.spread < 0.0) throw UsageError("spread must be >= 0");

    Rng rng(seed);
    PriceSeries series;
    series.ticker = std::move(ticker);
    series.bars.reserve(n_days);

    Date date = model.start_date;
    if (weekday(date) > 4) date = next_weekday(date);
    double prev_close = model.start_price;

    for (std::size_t i = 0; i < n_days; ++i) {
        OhlcvBar bar;
        bar.date = date;
        // Open gaps a little off the previous close, then the close follows
        // the log walk from the open.
        const double gap = model.volatility * 0.25 * rng.normal();
        bar.open = prev_close * std::exp(gap);
        const double step = model.drift + model.volatility * rng.normal();
        bar.close = bar.open * std::exp(step);
        // Wicks extend beyond the body by non-negative fractions, which makes
        // the bar invariants hold by construction.
        const double u = model.spread * rng.uniform01();
        const double v = model.spread * rng.uniform01();
        bar.high = std::max(bar.open, bar.close) * (1.0 + u);
        bar.low = std::min(bar.open, bar.close) * (1.0 - v);
        bar.adj_close = bar.close;
        bar.volume = std::floor(model.volume_base *
                                std::exp(model.volume_sigma * rng.normal()));
        series.bars.push_back(bar);
        prev_close = bar.close;
        date = next_weekday(date);
    }
    return series;
}

std::vector<PriceSeries> generate_synthetic_corpus(std::uint64_t seed, std::size_t n_tickers,
                                                   std::size_t n_days,
                                                   const SyntheticModel& model) {
    std::vector<PriceSeries> corpus;
    corpus.reserve(n_tickers);
    for (std::size_t i = 0; i < n_tickers; ++i) {
        char name[24];
        std::snprintf(name, sizeof(name), "SYN%03zu", i);
        corpus.push_back(
            generate_synthetic_series(mix_seed(seed, name), n_days, model, name));
    }
    return corpus;
}

std::vector<PriceSeries> load_corpus(const std::filesystem::path& dir) {
    if (!std::filesystem::is_directory(dir))
        throw DataError(dir.string() + " is not a directory");
    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
        if (entry.is_regular_file() && entry.path().extension() == ".csv")
            files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
    if (files.empty()) throw DataError(dir.string() + ": no .csv files found");
    std::vector<PriceSeries> corpus;
    corpus.reserve(files.size());
    for (const auto& f : files) corpus.push_back(parse_csv_series(f));
    return corpus;
}

}  // namespace chartml
