#include <CLI11.hpp>

#include <iostream>

#include "chartml/errors.hpp"
#include "chartml/parallel.hpp"
#include "chartml/pipeline.hpp"

namespace {

using chartml::RunConfig;

// Exit codes: 0 success, 1 usage error, 2 data error, 3 internal error.
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitInternal = 3;

// Flag values land here first; merge() layers them over the config file so
// that explicit flags always win.
struct CliState {
    RunConfig flags;
    std::string config_path;
    std::vector<std::string> rules, styles, classifiers;
    std::vector<int> resolutions;
    std::string train_start, train_end, test_start, test_end;
};

RunConfig merge(const CliState& state, const CLI::App& cmd) {
    RunConfig config;
    if (!state.config_path.empty()) config = chartml::load_config_file(state.config_path);

    auto set = [&](const char* flag, auto f) {
        const CLI::Option* opt = cmd.get_option_no_throw(flag);
        if (opt != nullptr && opt->count() > 0) f();
    };
    set("--corpus", [&] { config.corpus_dir = state.flags.corpus_dir; });
    set("--out", [&] { config.out_dir = state.flags.out_dir; });
    set("--seed", [&] { config.seed = state.flags.seed; });
    set("--per-ticker", [&] { config.per_ticker = state.flags.per_ticker; });
    set("--folds", [&] { config.folds = state.flags.folds; });
    set("--jobs", [&] { config.jobs = state.flags.jobs; });
    set("--fixed-30", [&] { config.fixed_window_30 = state.flags.fixed_window_30; });
    set("--png", [&] { config.write_png = state.flags.write_png; });
    set("--tickers", [&] { config.synth_tickers = state.flags.synth_tickers; });
    set("--days", [&] { config.synth_days = state.flags.synth_days; });
    set("--drift", [&] { config.synth.drift = state.flags.synth.drift; });
    set("--volatility", [&] { config.synth.volatility = state.flags.synth.volatility; });
    set("--start-price", [&] { config.synth.start_price = state.flags.synth.start_price; });
    set("--ticker", [&] { config.forecast_ticker = state.flags.forecast_ticker; });
    set("--threshold", [&] { config.vote_threshold = state.flags.vote_threshold; });

    if (!state.rules.empty()) {
        config.rules.clear();
        for (const auto& name : state.rules) {
            auto rule = chartml::parse_rule(name);
            if (!rule) throw chartml::UsageError("unknown rule '" + name + "'");
            config.rules.push_back(*rule);
        }
    }
    if (!state.styles.empty()) {
        config.styles.clear();
        for (const auto& name : state.styles) {
            auto style = chartml::parse_style(name);
            if (!style) throw chartml::UsageError("unknown style '" + name + "'");
            config.styles.push_back(*style);
        }
    }
    if (!state.classifiers.empty()) {
        config.classifiers.clear();
        for (const auto& name : state.classifiers) {
            auto kind = chartml::parse_classifier(name);
            if (!kind) {
                if (chartml::is_known_optional_classifier(name))
                    throw chartml::UsageError(
                        "classifier '" + name +
                        "' is in the optional registry and not built into this binary");
                throw chartml::UsageError("unknown classifier '" + name + "'");
            }
            config.classifiers.push_back(*kind);
        }
    }
    if (!state.resolutions.empty()) config.resolutions = state.resolutions;

    auto set_date = [](const std::string& text, std::optional<chartml::Date>& slot,
                       const char* what) {
        if (text.empty()) return;
        auto d = chartml::parse_date(text);
        if (!d) throw chartml::UsageError(std::string("malformed ") + what + " '" + text + "'");
        slot = d;
    };
    set_date(state.train_start, config.train_start, "--train-start");
    set_date(state.train_end, config.train_end, "--train-end");
    set_date(state.test_start, config.test_start, "--test-start");
    set_date(state.test_end, config.test_end, "--test-end");
    return config;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"candlestick-image trading-signal pipeline"};
    app.require_subcommand(1);

    CliState state;
    state.flags.jobs = chartml::default_jobs();

    app.add_option("--config", state.config_path, "JSON config file; flags override it");

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--corpus", state.flags.corpus_dir, "corpus directory of <TICKER>.csv");
        cmd->add_option("--out", state.flags.out_dir, "output directory");
        cmd->add_option("--seed", state.flags.seed, "global RNG seed");
        cmd->add_option("--rule", state.rules, "rules: bb macd rsi");
        cmd->add_option("--style", state.styles,
                        "styles: candle closeline timewidth prevclose volumewidth");
        cmd->add_option("--resolution", state.resolutions, "square target resolutions");
        cmd->add_option("--classifier", state.classifiers,
                        "members: logreg gnb knn dtree rforest mlp");
        cmd->add_option("--per-ticker", state.flags.per_ticker, "windows per class per ticker");
        cmd->add_option("--folds", state.flags.folds, "cross-validation folds");
        cmd->add_option("--jobs", state.flags.jobs, "worker threads");
        cmd->add_flag("--fixed-30", state.flags.fixed_window_30,
                      "force 30-day windows for every rule");
        cmd->add_flag("--png", state.flags.write_png, "also write PNG images");
        cmd->add_option("--train-start", state.train_start, "sampling range start YYYY-MM-DD");
        cmd->add_option("--train-end", state.train_end, "sampling range end YYYY-MM-DD");
        cmd->add_option("--test-start", state.test_start, "forecast range start YYYY-MM-DD");
        cmd->add_option("--test-end", state.test_end, "forecast range end YYYY-MM-DD");
        return cmd;
    };

    auto* synth = add_common(app.add_subcommand("synth", "generate a synthetic corpus"));
    synth->add_option("--tickers", state.flags.synth_tickers, "number of tickers");
    synth->add_option("--days", state.flags.synth_days, "trading days per ticker");
    synth->add_option("--drift", state.flags.synth.drift, "per-day log drift");
    synth->add_option("--volatility", state.flags.synth.volatility, "per-day log volatility");
    synth->add_option("--start-price", state.flags.synth.start_price, "initial price");

    add_common(app.add_subcommand("ingest", "validate a corpus directory"));
    add_common(app.add_subcommand("label", "emit per-rule signal event tables"));
    add_common(app.add_subcommand("build-dataset",
                                  "sample balanced windows, render and persist images"));
    add_common(app.add_subcommand("train", "train and save the classifier ensemble"));
    add_common(app.add_subcommand("evaluate", "cross-validated ensemble report"));
    add_common(app.add_subcommand("sweep", "accuracy versus image resolution"));
    add_common(app.add_subcommand("compare", "accuracy across visual representations"));
    auto* forecast =
        add_common(app.add_subcommand("forecast", "rolling out-of-sample prediction"));
    forecast->add_option("--ticker", state.flags.forecast_ticker, "ticker to forecast");
    forecast->add_option("--threshold", state.flags.vote_threshold,
                         "vote fraction required for a buy (strict)");

    try {
        app.parse(argc, argv);

        using Command = std::filesystem::path (*)(const RunConfig&);
        const std::pair<const char*, Command> commands[] = {
            {"synth", chartml::pipeline::cmd_synth},
            {"ingest", chartml::pipeline::cmd_ingest},
            {"label", chartml::pipeline::cmd_label},
            {"build-dataset", chartml::pipeline::cmd_build_dataset},
            {"train", chartml::pipeline::cmd_train},
            {"evaluate", chartml::pipeline::cmd_evaluate},
            {"sweep", chartml::pipeline::cmd_sweep},
            {"compare", chartml::pipeline::cmd_compare},
            {"forecast", chartml::pipeline::cmd_forecast},
        };
        for (const auto& [name, command] : commands) {
            if (app.got_subcommand(name)) {
                const RunConfig config = merge(state, *app.get_subcommand(name));
                const auto dir = command(config);
                std::cout << "artifacts: " << dir.string() << '\n';
                return 0;
            }
        }
        std::cerr << "error: no subcommand\n";
        return kExitUsage;
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    } catch (const chartml::UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const chartml::DataError& e) {
        std::cerr << "data error: " << e.what() << '\n';
        return kExitData;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return kExitInternal;
    }
}
