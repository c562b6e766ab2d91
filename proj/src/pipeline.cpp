#include "chartml/pipeline.hpp"

#include <cmath>
#include <fstream>
#include <iostream>

#include "chartml/errors.hpp"
#include "chartml/evaluate.hpp"
#include "chartml/forecast.hpp"
#include "chartml/image_io.hpp"
#include "chartml/parallel.hpp"
#include "chartml/plot.hpp"
#include "chartml/resample.hpp"
#include "chartml/rng.hpp"

namespace chartml::pipeline {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

fs::path make_run_dir(const RunConfig& config, const std::string& command) {
    const std::string fp = config_fingerprint(config);
    fs::path dir = fs::path(config.out_dir) / (command + "-" + fp.substr(0, 8));
    fs::create_directories(dir);
    std::ofstream out(dir / "config.json");
    out << to_json(config).dump(2) << '\n';
    return dir;
}

void write_json_artifact(const fs::path& path, json j, const RunConfig& config) {
    j["fingerprint"] = config_fingerprint(config);
    std::ofstream out(path);
    if (!out) throw DataError("cannot write " + path.string());
    out << j.dump(2) << '\n';
}

std::ofstream open_csv(const fs::path& path, const RunConfig& config,
                       const std::string& header) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write " + path.string());
    out << "# fingerprint=" << config_fingerprint(config) << '\n' << header << '\n';
    return out;
}

std::string format_metric(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6f", v);
    return buf;
}

std::string format_optional(const std::optional<double>& v) {
    return v ? format_metric(*v) : std::string{};
}

std::vector<PriceSeries> load_configured_corpus(const RunConfig& config) {
    if (config.corpus_dir.empty()) throw UsageError("corpus directory is not set");
    return load_corpus(config.corpus_dir);
}

json report_json(const EvalReport& report) {
    json folds = json::array();
    for (std::size_t f = 0; f < report.folds.size(); ++f) {
        const FoldOutcome& fold = report.folds[f];
        folds.push_back({{"fold", f},
                         {"accuracy", fold.score.accuracy},
                         {"precision", fold.score.precision ? json(*fold.score.precision)
                                                            : json(nullptr)},
                         {"test_indices", fold.test_indices},
                         {"predictions", fold.predictions},
                         {"vote_fractions", fold.vote_fractions}});
    }
    return {{"rule", report.rule},
            {"representation", report.representation},
            {"resolution", report.resolution},
            {"k", report.k},
            {"seed", report.seed},
            {"classifiers", report.classifier_names},
            {"accuracy_mean", report.accuracy_mean},
            {"accuracy_std", report.accuracy_std},
            {"precision_mean",
             report.precision_mean ? json(*report.precision_mean) : json(nullptr)},
            {"precision_std",
             report.precision_std ? json(*report.precision_std) : json(nullptr)},
            {"folds", std::move(folds)}};
}

void append_report_csv(std::ofstream& out, const EvalReport& report) {
    for (std::size_t f = 0; f < report.folds.size(); ++f) {
        out << report.rule << ',' << report.representation << ',' << report.resolution
            << ',' << "ensemble" << ',' << f << ','
            << format_metric(report.folds[f].score.accuracy) << ','
            << format_optional(report.folds[f].score.precision) << '\n';
    }
}

// Accuracy and precision versus resolution, one panel per metric.
RasterImage sweep_chart(const std::vector<EvalReport>& reports) {
    Chart chart(720, 420, 48);
    double xmax = 1.0;
    for (const auto& r : reports) xmax = std::max(xmax, static_cast<double>(r.resolution));
    chart.set_world(0.0, xmax * 1.05, 0.4, 1.0);
    chart.frame();
    for (double y = 0.5; y < 1.0 + 1e-9; y += 0.1) chart.y_tick(y, format_metric(y).substr(0, 4));

    std::vector<double> xs, ys;
    for (const auto& r : reports) {
        xs.push_back(static_cast<double>(r.resolution));
        ys.push_back(r.accuracy_mean);
        chart.x_tick(xs.back(), std::to_string(r.resolution));
    }
    chart.polyline(xs, ys, 1.0f, 2);
    for (const auto& r : reports)
        chart.error_bar(static_cast<double>(r.resolution), r.accuracy_mean, r.accuracy_std,
                        1.0f);
    if (!reports.empty())
        chart.text(52, 8, reports.front().rule + " ACCURACY VS RESOLUTION", 1.0f);
    return chart.image();
}

// Mean accuracy per representation as bars with error whiskers.
RasterImage compare_chart(const std::vector<EvalReport>& reports) {
    Chart chart(720, 420, 48);
    chart.set_world(-0.5, static_cast<double>(reports.size()) - 0.5, 0.4, 1.0);
    chart.frame();
    for (double y = 0.5; y < 1.0 + 1e-9; y += 0.1) chart.y_tick(y, format_metric(y).substr(0, 4));
    for (std::size_t i = 0; i < reports.size(); ++i) {
        const double x = static_cast<double>(i);
        chart.bar(x - 0.3, x + 0.3, reports[i].accuracy_mean, 0.45f);
        chart.error_bar(x, reports[i].accuracy_mean, reports[i].accuracy_std, 1.0f);
        chart.x_tick(x, reports[i].representation.substr(0, 6));
    }
    if (!reports.empty())
        chart.text(52, 8, reports.front().rule + " ACCURACY BY REPRESENTATION", 1.0f);
    return chart.image();
}

std::map<std::string, std::string> png_text(const RunConfig& config) {
    return {{"fingerprint", config_fingerprint(config)}};
}

}  // namespace

fs::path cmd_synth(const RunConfig& config) {
    if (config.corpus_dir.empty()) throw UsageError("corpus directory is not set");
    const fs::path dir = make_run_dir(config, "synth");
    fs::create_directories(config.corpus_dir);
    const auto corpus = generate_synthetic_corpus(config.seed, config.synth_tickers,
                                                  config.synth_days, config.synth);
    for (const auto& series : corpus)
        write_csv_series(series, fs::path(config.corpus_dir) / (series.ticker + ".csv"));
    write_json_artifact(dir / "corpus.json",
                        {{"tickers", config.synth_tickers}, {"days", config.synth_days}},
                        config);
    std::cout << "synth: wrote " << corpus.size() << " tickers to " << config.corpus_dir
              << '\n';
    return dir;
}

fs::path cmd_ingest(const RunConfig& config) {
    const fs::path dir = make_run_dir(config, "ingest");
    const auto corpus = load_configured_corpus(config);
    json summary = json::array();
    for (const auto& series : corpus) {
        summary.push_back({{"ticker", series.ticker},
                           {"bars", series.size()},
                           {"first", to_string(series.bars.front().date)},
                           {"last", to_string(series.bars.back().date)}});
    }
    write_json_artifact(dir / "corpus-summary.json", {{"tickers", std::move(summary)}},
                        config);
    std::cout << "ingest: validated " << corpus.size() << " tickers\n";
    return dir;
}

fs::path cmd_label(const RunConfig& config) {
    const fs::path dir = make_run_dir(config, "label");
    const auto corpus = load_configured_corpus(config);
    for (RuleKind rule : config.rules) {
        auto out = open_csv(dir / ("signals-" + to_string(rule) + ".csv"), config,
                            "ticker,date,rule,label");
        std::size_t count = 0;
        for (const auto& series : corpus) {
            for (const SignalEvent& e : detect_signal_events(series, rule)) {
                out << e.ticker << ',' << to_string(e.date) << ',' << to_string(e.rule)
                    << ",1\n";
                ++count;
            }
        }
        std::cout << "label: " << to_string(rule) << " -> " << count << " events\n";
    }
    return dir;
}

fs::path cmd_build_dataset(const RunConfig& config) {
    const fs::path dir = make_run_dir(config, "build-dataset");
    const auto corpus = load_configured_corpus(config);

    json entries = json::array();
    for (RuleKind rule : config.rules) {
        const Dataset dataset =
            sample_balanced_dataset(corpus, rule, config.labeler_config(), config.seed);
        for (const auto& warning : dataset.warnings)
            std::cerr << "warning: " << warning << '\n';

        for (RenderStyle style : config.styles) {
            for (int resolution : config.resolutions) {
                const fs::path image_dir =
                    dir / "images" / to_string(rule) / to_string(style) /
                    std::to_string(resolution);
                fs::create_directories(image_dir);

                std::vector<json> batch(dataset.samples.size());
                parallel_for(0, dataset.samples.size(), config.jobs, [&](std::size_t i) {
                    const WindowSample& sample = dataset.samples[i];
                    const std::string stem = sample.ticker + "-" + to_string(sample.end_date);
                    const fs::path rimg_path = image_dir / (stem + ".rimg");
                    // Resumable: skip files already rendered by a previous run.
                    if (!fs::exists(rimg_path)) {
                        const RasterImage native =
                            render(sample, style, kNativeCanvasSide, kNativeCanvasSide);
                        const RasterImage small = downscale(native, resolution);
                        write_rimg(small, rimg_path);
                        if (config.write_png)
                            write_png_gray8(small, image_dir / (stem + ".png"),
                                            png_text(config));
                    }
                    batch[i] = {{"ticker", sample.ticker},
                                {"end_date", to_string(sample.end_date)},
                                {"rule", to_string(rule)},
                                {"label", sample.label},
                                {"style", to_string(style)},
                                {"resolution", resolution},
                                {"image_path", fs::relative(rimg_path, dir).string()}};
                });
                for (auto& e : batch) entries.push_back(std::move(e));
            }
        }
        std::cout << "build-dataset: " << to_string(rule) << " -> "
                  << dataset.samples.size() << " samples (" << dataset.positives()
                  << " buy / " << dataset.negatives() << " no-buy)\n";
    }
    write_json_artifact(dir / "manifest.json",
                        {{"config", to_json(config)}, {"entries", std::move(entries)}},
                        config);
    return dir;
}

fs::path cmd_train(const RunConfig& config) {
    const fs::path dir = make_run_dir(config, "train");
    const auto corpus = load_configured_corpus(config);
    const RenderStyle style = config.styles.front();
    const int resolution = config.resolutions.front();

    fs::create_directories(dir / "models");
    json ensembles = json::array();
    for (RuleKind rule : config.rules) {
        const Dataset dataset =
            sample_balanced_dataset(corpus, rule, config.labeler_config(), config.seed);
        const FeaturizedDataset features =
            featurize_windows_as_images(dataset.samples, style, resolution);

        json members = json::array();
        for (ClassifierKind kind : config.classifiers) {
            const auto model = train_classifier(
                kind, features, mix_seed(config.seed, to_string(kind)));
            const std::string name = to_string(rule) + "-" + to_string(style) + "-" +
                                     std::to_string(resolution) + "-" + to_string(kind) +
                                     ".model.json";
            write_json_artifact(dir / "models" / name, model->to_json(), config);
            members.push_back(name);
        }
        ensembles.push_back({{"rule", to_string(rule)},
                             {"style", to_string(style)},
                             {"resolution", resolution},
                             {"members", std::move(members)}});
        std::cout << "train: " << to_string(rule) << " ensemble of "
                  << config.classifiers.size() << " members on " << dataset.samples.size()
                  << " samples\n";
    }
    write_json_artifact(dir / "ensemble.json", {{"ensembles", std::move(ensembles)}}, config);
    return dir;
}

fs::path cmd_evaluate(const RunConfig& config) {
    const fs::path dir = make_run_dir(config, "evaluate");
    const auto corpus = load_configured_corpus(config);

    auto csv = open_csv(dir / "report.csv", config,
                        "rule,style,resolution,classifier,fold,accuracy,precision");
    json aggregates = json::array();
    for (RuleKind rule : config.rules) {
        const Dataset dataset =
            sample_balanced_dataset(corpus, rule, config.labeler_config(), config.seed);
        for (RenderStyle style : config.styles) {
            for (int resolution : config.resolutions) {
                const FeaturizedDataset features =
                    featurize_windows_as_images(dataset.samples, style, resolution);
                EvalReport report =
                    run_cv(features, config.classifiers, config.folds, config.seed);
                report.rule = to_string(rule);
                report.representation = to_string(style);
                report.resolution = resolution;
                append_report_csv(csv, report);
                aggregates.push_back(report_json(report));
                std::cout << "evaluate: " << to_string(rule) << '/' << to_string(style)
                          << '/' << resolution << " accuracy " << format_metric(report.accuracy_mean)
                          << " +- " << format_metric(report.accuracy_std) << '\n';
            }
        }
    }
    write_json_artifact(dir / "report.json", {{"reports", std::move(aggregates)}}, config);
    return dir;
}

fs::path cmd_sweep(const RunConfig& config) {
    const fs::path dir = make_run_dir(config, "sweep");
    const auto corpus = load_configured_corpus(config);
    const RenderStyle style = config.styles.front();

    auto csv = open_csv(dir / "sweep.csv", config,
                        "rule,style,resolution,classifier,fold,accuracy,precision");
    json aggregates = json::array();
    for (RuleKind rule : config.rules) {
        const Dataset dataset =
            sample_balanced_dataset(corpus, rule, config.labeler_config(), config.seed);
        auto reports = resolution_sweep(dataset.samples, style, config.resolutions,
                                        config.classifiers, config.folds, config.seed);
        for (const auto& report : reports) {
            append_report_csv(csv, report);
            aggregates.push_back(report_json(report));
        }
        write_png_gray8(sweep_chart(reports), dir / ("sweep-" + to_string(rule) + ".png"),
                        png_text(config));
        std::cout << "sweep: " << to_string(rule) << " across " << reports.size()
                  << " resolutions\n";
    }
    write_json_artifact(dir / "sweep.json", {{"reports", std::move(aggregates)}}, config);
    return dir;
}

fs::path cmd_compare(const RunConfig& config) {
    const fs::path dir = make_run_dir(config, "compare");
    const auto corpus = load_configured_corpus(config);
    const int resolution = config.resolutions.front();

    auto csv = open_csv(dir / "compare.csv", config,
                        "rule,style,resolution,classifier,fold,accuracy,precision");
    json aggregates = json::array();
    for (RuleKind rule : config.rules) {
        const Dataset dataset =
            sample_balanced_dataset(corpus, rule, config.labeler_config(), config.seed);
        auto reports = representation_comparison(dataset.samples, resolution,
                                                 config.classifiers, config.folds,
                                                 config.seed);
        for (const auto& report : reports) {
            append_report_csv(csv, report);
            aggregates.push_back(report_json(report));
        }
        write_png_gray8(compare_chart(reports), dir / ("compare-" + to_string(rule) + ".png"),
                        png_text(config));
        std::cout << "compare: " << to_string(rule) << " across " << reports.size()
                  << " representations\n";
    }
    write_json_artifact(dir / "compare.json", {{"reports", std::move(aggregates)}}, config);
    return dir;
}

fs::path cmd_forecast(const RunConfig& config) {
    const fs::path dir = make_run_dir(config, "forecast");
    const auto corpus = load_configured_corpus(config);
    const RenderStyle style = config.styles.front();
    const int resolution = config.resolutions.front();

    Date test_start{};
    if (config.test_start) {
        test_start = *config.test_start;
    } else if (config.train_end) {
        test_start = next_day(*config.train_end);
    } else {
        throw UsageError("forecast needs test_start or train_end");
    }
    const Date test_end = config.test_end.value_or(Date{9999, 12, 31});

    const PriceSeries* target = nullptr;
    if (config.forecast_ticker.empty()) {
        target = &corpus.front();
    } else {
        for (const auto& series : corpus)
            if (series.ticker == config.forecast_ticker) target = &series;
        if (!target)
            throw UsageError("forecast ticker '" + config.forecast_ticker +
                             "' not in the corpus");
    }

    for (RuleKind rule : config.rules) {
        const Dataset dataset =
            sample_balanced_dataset(corpus, rule, config.labeler_config(), config.seed);
        const FeaturizedDataset features =
            featurize_windows_as_images(dataset.samples, style, resolution);
        const VotingEnsemble ensemble =
            train_ensemble(config.classifiers, features, config.seed);

        const ForecastResult result =
            rolling_predict(*target, ensemble, rule, style, resolution, test_start, test_end,
                            config.vote_threshold, config.fixed_window_30);
        for (const auto& warning : result.warnings) std::cerr << "warning: " << warning << '\n';

        auto csv = open_csv(dir / ("forecast-" + to_string(rule) + "-" + target->ticker + ".csv"),
                            config, "ticker,date,vote_fraction,predicted,true");
        std::size_t hits = 0, truths = 0;
        for (const auto& r : result.records) {
            csv << r.ticker << ',' << to_string(r.date) << ','
                << format_metric(r.vote_fraction) << ',' << r.predicted << ','
                << (r.truth ? std::to_string(*r.truth) : std::string{}) << '\n';
            if (r.truth && *r.truth == 1) {
                ++truths;
                if (r.predicted == 1) ++hits;
            }
        }
        if (!result.records.empty()) {
            write_png_gray8(emit_signal_chart(*target, result.records, rule),
                            dir / ("forecast-" + to_string(rule) + "-" + target->ticker + ".png"),
                            png_text(config));
        }
        std::cout << "forecast: " << to_string(rule) << " on " << target->ticker << ", "
                  << result.records.size() << " days, " << hits << '/' << truths
                  << " true signals predicted\n";
    }
    return dir;
}

}  // namespace chartml::pipeline
