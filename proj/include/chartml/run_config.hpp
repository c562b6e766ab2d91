#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "chartml/classifiers.hpp"
#include "chartml/labeler.hpp"
#include "chartml/market_data.hpp"
#include "chartml/raster.hpp"

namespace chartml {

// Everything a run needs, serialized into every artifact it produces.
// Defaults mirror the reference experiment: per-rule windows 20/26/27,
// 10 windows per class per ticker, 5 folds, 30x30 resolution.
struct RunConfig {
    std::string corpus_dir;
    std::string out_dir = "out";

    std::vector<RuleKind> rules = {RuleKind::BB, RuleKind::MACD, RuleKind::RSI};
    std::vector<RenderStyle> styles = {RenderStyle::CandleOhlc};
    std::vector<int> resolutions = {30};
    std::vector<ClassifierKind> classifiers{kRequiredClassifiers.begin(),
                                            kRequiredClassifiers.end()};

    std::uint64_t seed = 7;
    std::size_t per_ticker = 10;
    std::size_t folds = 5;
    bool fixed_window_30 = false;
    std::size_t exclusion_radius = 0;

    std::optional<Date> train_start;
    std::optional<Date> train_end;
    std::optional<Date> test_start;
    std::optional<Date> test_end;

    // `synth` subcommand
    std::size_t synth_tickers = 200;
    std::size_t synth_days = 2000;
    SyntheticModel synth;

    // forecast
    std::string forecast_ticker;  // empty = first ticker in the corpus
    double vote_threshold = 0.5;

    // execution details, excluded from the fingerprint
    bool write_png = false;
    std::size_t jobs = 1;

    LabelerConfig labeler_config() const;
};

nlohmann::json to_json(const RunConfig& config);
RunConfig config_from_json(const nlohmann::json& j);
RunConfig load_config_file(const std::filesystem::path& path);

// 16 hex digits over the canonical serialized experiment identity (output
// location and job count excluded, so re-runs land on the same fingerprint).
std::string config_fingerprint(const RunConfig& config);

}  // namespace chartml
