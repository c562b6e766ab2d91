#include <doctest.h>

#include <fstream>

#include "chartml/errors.hpp"
#include "chartml/run_config.hpp"

using namespace chartml;

TEST_CASE("config round-trips through json") {
    RunConfig c;
    c.corpus_dir = "/tmp/corpus";
    c.rules = {RuleKind::RSI};
    c.styles = {RenderStyle::CloseLine, RenderStyle::CandleVolumeWidth};
    c.resolutions = {5, 30, 80};
    c.seed = 99;
    c.per_ticker = 4;
    c.folds = 3;
    c.fixed_window_30 = true;
    c.train_start = Date{2011, 2, 3};
    c.train_end = Date{2016, 12, 30};
    c.classifiers = {ClassifierKind::LogisticRegression, ClassifierKind::Mlp};
    c.vote_threshold = 0.7;

    const auto restored = config_from_json(to_json(c));
    CHECK(restored.corpus_dir == c.corpus_dir);
    CHECK(restored.rules == c.rules);
    CHECK(restored.styles == c.styles);
    CHECK(restored.resolutions == c.resolutions);
    CHECK(restored.seed == c.seed);
    CHECK(restored.per_ticker == c.per_ticker);
    CHECK(restored.folds == c.folds);
    CHECK(restored.fixed_window_30 == c.fixed_window_30);
    CHECK(restored.train_start == c.train_start);
    CHECK(restored.train_end == c.train_end);
    CHECK(restored.classifiers == c.classifiers);
    CHECK(restored.vote_threshold == c.vote_threshold);
    CHECK(config_fingerprint(restored) == config_fingerprint(c));
}

TEST_CASE("fingerprint tracks the experiment identity only") {
    RunConfig a;
    RunConfig b;
    CHECK(config_fingerprint(a) == config_fingerprint(b));

    b.seed = a.seed + 1;
    CHECK(config_fingerprint(a) != config_fingerprint(b));

    // output location and worker count do not change the experiment
    RunConfig c;
    c.out_dir = "elsewhere";
    c.jobs = 32;
    CHECK(config_fingerprint(a) == config_fingerprint(c));
}

TEST_CASE("optional classifiers are refused by name with a pointed message") {
    nlohmann::json j;
    j["classifiers"] = {"logreg", "cnn"};
    CHECK_THROWS_WITH_AS(config_from_json(j), doctest::Contains("optional"), UsageError);
}

TEST_CASE("config files load with overridable fields") {
    const auto path = std::filesystem::temp_directory_path() / "chartml_config.json";
    {
        std::ofstream out(path);
        out << R"({"seed": 17, "rules": ["bb"], "resolutions": [12], "per_ticker": 2})";
    }
    const auto c = load_config_file(path);
    CHECK(c.seed == 17);
    CHECK(c.rules == std::vector<RuleKind>{RuleKind::BB});
    CHECK(c.resolutions == std::vector<int>{12});
    CHECK(c.per_ticker == 2);
    CHECK(c.folds == 5);  // untouched default
    std::filesystem::remove(path);

    CHECK_THROWS_AS(load_config_file("/nonexistent/config.json"), UsageError);
}
