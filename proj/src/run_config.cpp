#include "chartml/run_config.hpp"

#include <fstream>

#include "chartml/errors.hpp"
#include "chartml/rng.hpp"

namespace chartml {

using nlohmann::json;

namespace {

json date_json(const std::optional<Date>& d) {
    return d ? json(to_string(*d)) : json(nullptr);
}

std::optional<Date> date_from_json(const json& j) {
    if (j.is_null()) return std::nullopt;
    auto d = parse_date(j.get<std::string>());
    if (!d) throw DataError("config: malformed date '" + j.get<std::string>() + "'");
    return d;
}

// The experiment identity; everything except output location and the worker
// count.
json identity_json(const RunConfig& c) {
    json j;
    j["corpus_dir"] = c.corpus_dir;
    json rules = json::array();
    for (RuleKind r : c.rules) rules.push_back(to_string(r));
    j["rules"] = std::move(rules);
    json styles = json::array();
    for (RenderStyle s : c.styles) styles.push_back(to_string(s));
    j["styles"] = std::move(styles);
    j["resolutions"] = c.resolutions;
    json kinds = json::array();
    for (ClassifierKind k : c.classifiers) kinds.push_back(to_string(k));
    j["classifiers"] = std::move(kinds);
    j["seed"] = c.seed;
    j["per_ticker"] = c.per_ticker;
    j["folds"] = c.folds;
    j["fixed_window_30"] = c.fixed_window_30;
    j["exclusion_radius"] = c.exclusion_radius;
    j["train_start"] = date_json(c.train_start);
    j["train_end"] = date_json(c.train_end);
    j["test_start"] = date_json(c.test_start);
    j["test_end"] = date_json(c.test_end);
    j["synth"] = {{"tickers", c.synth_tickers},
                  {"days", c.synth_days},
                  {"drift", c.synth.drift},
                  {"volatility", c.synth.volatility},
                  {"start_price", c.synth.start_price},
                  {"spread", c.synth.spread},
                  {"volume_base", c.synth.volume_base},
                  {"volume_sigma", c.synth.volume_sigma},
                  {"start_date", to_string(c.synth.start_date)}};
    j["forecast_ticker"] = c.forecast_ticker;
    j["vote_threshold"] = c.vote_threshold;
    return j;
}

}  // namespace

LabelerConfig RunConfig::labeler_config() const {
    LabelerConfig lc;
    lc.fixed_window_30 = fixed_window_30;
    lc.per_ticker = per_ticker;
    lc.exclusion_radius = exclusion_radius;
    lc.range_start = train_start;
    lc.range_end = train_end;
    return lc;
}

json to_json(const RunConfig& config) {
    json j = identity_json(config);
    j["out_dir"] = config.out_dir;
    j["write_png"] = config.write_png;
    j["jobs"] = config.jobs;
    j["fingerprint"] = config_fingerprint(config);
    return j;
}

RunConfig config_from_json(const json& j) {
    RunConfig c;
    if (j.contains("corpus_dir")) c.corpus_dir = j.at("corpus_dir").get<std::string>();
    if (j.contains("out_dir")) c.out_dir = j.at("out_dir").get<std::string>();
    if (j.contains("rules")) {
        c.rules.clear();
        for (const auto& name : j.at("rules")) {
            auto rule = parse_rule(name.get<std::string>());
            if (!rule) throw UsageError("config: unknown rule '" + name.get<std::string>() + "'");
            c.rules.push_back(*rule);
        }
    }
    if (j.contains("styles")) {
        c.styles.clear();
        for (const auto& name : j.at("styles")) {
            auto style = parse_style(name.get<std::string>());
            if (!style)
                throw UsageError("config: unknown style '" + name.get<std::string>() + "'");
            c.styles.push_back(*style);
        }
    }
    if (j.contains("resolutions")) c.resolutions = j.at("resolutions").get<std::vector<int>>();
    if (j.contains("classifiers")) {
        c.classifiers.clear();
        for (const auto& name : j.at("classifiers")) {
            const std::string s = name.get<std::string>();
            auto kind = parse_classifier(s);
            if (!kind) {
                if (is_known_optional_classifier(s))
                    throw UsageError("config: classifier '" + s +
                                     "' is in the optional registry and not built here");
                throw UsageError("config: unknown classifier '" + s + "'");
            }
            c.classifiers.push_back(*kind);
        }
    }
    if (j.contains("seed")) c.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("per_ticker")) c.per_ticker = j.at("per_ticker").get<std::size_t>();
    if (j.contains("folds")) c.folds = j.at("folds").get<std::size_t>();
    if (j.contains("fixed_window_30")) c.fixed_window_30 = j.at("fixed_window_30").get<bool>();
    if (j.contains("exclusion_radius"))
        c.exclusion_radius = j.at("exclusion_radius").get<std::size_t>();
    if (j.contains("train_start")) c.train_start = date_from_json(j.at("train_start"));
    if (j.contains("train_end")) c.train_end = date_from_json(j.at("train_end"));
    if (j.contains("test_start")) c.test_start = date_from_json(j.at("test_start"));
    if (j.contains("test_end")) c.test_end = date_from_json(j.at("test_end"));
    if (j.contains("synth")) {
        const auto& s = j.at("synth");
        if (s.contains("tickers")) c.synth_tickers = s.at("tickers").get<std::size_t>();
        if (s.contains("days")) c.synth_days = s.at("days").get<std::size_t>();
        if (s.contains("drift")) c.synth.drift = s.at("drift").get<double>();
        if (s.contains("volatility")) c.synth.volatility = s.at("volatility").get<double>();
        if (s.contains("start_price")) c.synth.start_price = s.at("start_price").get<double>();
        if (s.contains("spread")) c.synth.spread = s.at("spread").get<double>();
        if (s.contains("volume_base")) c.synth.volume_base = s.at("volume_base").get<double>();
        if (s.contains("volume_sigma"))
            c.synth.volume_sigma = s.at("volume_sigma").get<double>();
        if (s.contains("start_date")) {
            auto d = parse_date(s.at("start_date").get<std::string>());
            if (!d) throw DataError("config: malformed synth start_date");
            c.synth.start_date = *d;
        }
    }
    if (j.contains("forecast_ticker"))
        c.forecast_ticker = j.at("forecast_ticker").get<std::string>();
    if (j.contains("vote_threshold")) c.vote_threshold = j.at("vote_threshold").get<double>();
    if (j.contains("write_png")) c.write_png = j.at("write_png").get<bool>();
    if (j.contains("jobs")) c.jobs = j.at("jobs").get<std::size_t>();
    return c;
}

RunConfig load_config_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open config file " + path.string());
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw UsageError("config file " + path.string() + ": " + e.what());
    }
    return config_from_json(j);
}

std::string config_fingerprint(const RunConfig& config) {
    const std::string canonical = identity_json(config).dump();
    const std::uint64_t h = fnv1a64(canonical);
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

}  // namespace chartml
