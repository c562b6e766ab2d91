#include "chartml/evaluate.hpp"

#include <algorithm>
#include <cmath>

#include "chartml/errors.hpp"
#include "chartml/resample.hpp"
#include "chartml/rng.hpp"

namespace chartml {

namespace {

// Mean and population std over the folds where the value is present.
std::pair<std::optional<double>, std::optional<double>> aggregate(
    const std::vector<std::optional<double>>& values) {
    std::vector<double> present;
    for (const auto& v : values)
        if (v) present.push_back(*v);
    if (present.empty()) return {std::nullopt, std::nullopt};
    double mean = 0.0;
    for (double v : present) mean += v;
    mean /= static_cast<double>(present.size());
    double var = 0.0;
    for (double v : present) var += (v - mean) * (v - mean);
    var /= static_cast<double>(present.size());
    return {mean, std::sqrt(var)};
}

}  // namespace

Score compute_score(std::span<const int> predictions, std::span<const int> truths) {
    if (predictions.size() != truths.size())
        throw DataError("score: " + std::to_string(predictions.size()) +
                        " predictions vs " + std::to_string(truths.size()) + " truths");
    if (predictions.empty()) throw DataError("score: empty inputs");
    std::size_t correct = 0, tp = 0, fp = 0;
    for (std::size_t i = 0; i < predictions.size(); ++i) {
        if (predictions[i] == truths[i]) ++correct;
        if (predictions[i] == 1) (truths[i] == 1 ? tp : fp) += 1;
    }
    Score s;
    s.accuracy = static_cast<double>(correct) / static_cast<double>(predictions.size());
    if (tp + fp > 0) s.precision = static_cast<double>(tp) / static_cast<double>(tp + fp);
    return s;
}

std::vector<std::size_t> fold_assignment(std::span<const int> labels, std::size_t k,
                                         std::uint64_t seed) {
    if (k < 2) throw UsageError("k must be >= 2");
    std::array<std::vector<std::size_t>, 2> by_class;
    for (std::size_t i = 0; i < labels.size(); ++i)
        by_class[static_cast<std::size_t>(labels[i])].push_back(i);
    for (int c = 0; c < 2; ++c) {
        if (by_class[static_cast<std::size_t>(c)].size() < k)
            throw DataError("class " + std::to_string(c) + " has only " +
                            std::to_string(by_class[static_cast<std::size_t>(c)].size()) +
                            " samples, need at least k=" + std::to_string(k));
    }
    Rng rng(mix_seed(seed, "stratified-kfold"));
    std::vector<std::size_t> fold_of(labels.size());
    for (int c = 0; c < 2; ++c) {
        auto& members = by_class[static_cast<std::size_t>(c)];
        rng.shuffle(members);
        for (std::size_t i = 0; i < members.size(); ++i) fold_of[members[i]] = i % k;
    }
    return fold_of;
}

EvalReport run_cv(const FeaturizedDataset& data, std::span<const ClassifierKind> kinds,
                  std::span<const std::size_t> fold_of, std::uint64_t seed,
                  const TrainOptions& options) {
    if (fold_of.size() != data.size())
        throw DataError("fold assignment size does not match dataset");
    const std::size_t k = fold_of.empty() ? 0 : *std::max_element(fold_of.begin(),
                                                                  fold_of.end()) + 1;

    EvalReport report;
    report.k = k;
    report.seed = seed;
    for (ClassifierKind kind : kinds) report.classifier_names.push_back(to_string(kind));

    std::vector<std::optional<double>> accuracies, precisions;
    for (std::size_t fold = 0; fold < k; ++fold) {
        FeaturizedDataset train;
        FoldOutcome outcome;
        for (std::size_t i = 0; i < data.size(); ++i) {
            if (fold_of[i] == fold) {
                outcome.test_indices.push_back(i);
            } else {
                train.add(data.x[i], data.y[i]);
            }
        }
        const VotingEnsemble ensemble =
            train_ensemble(kinds, train, mix_seed(seed, fold), options);

        std::vector<int> truths;
        for (std::size_t i : outcome.test_indices) {
            const VoteResult v = ensemble.vote(data.x[i]);
            outcome.predictions.push_back(v.label);
            outcome.vote_fractions.push_back(v.vote_fraction);
            truths.push_back(data.y[i]);
        }
        outcome.score = compute_score(outcome.predictions, truths);
        accuracies.push_back(outcome.score.accuracy);
        precisions.push_back(outcome.score.precision);
        report.folds.push_back(std::move(outcome));
    }

    const auto [acc_mean, acc_std] = aggregate(accuracies);
    report.accuracy_mean = acc_mean.value_or(0.0);
    report.accuracy_std = acc_std.value_or(0.0);
    std::tie(report.precision_mean, report.precision_std) = aggregate(precisions);
    return report;
}

EvalReport run_cv(const FeaturizedDataset& data, std::span<const ClassifierKind> kinds,
                  std::size_t k, std::uint64_t seed, const TrainOptions& options) {
    const auto folds = fold_assignment(data.y, k, seed);
    return run_cv(data, kinds, folds, seed, options);
}

FeaturizedDataset featurize_windows_as_images(std::span<const WindowSample> windows,
                                              RenderStyle style, int resolution) {
    FeaturizedDataset data;
    for (const WindowSample& w : windows) {
        const RasterImage native = render(w, style, kNativeCanvasSide, kNativeCanvasSide);
        data.add(image_features(downscale(native, resolution)), w.label);
    }
    return data;
}

FeaturizedDataset featurize_windows_tabular(std::span<const WindowSample> windows) {
    FeaturizedDataset data;
    for (const WindowSample& w : windows) data.add(tabular_features(w), w.label);
    return data;
}

std::vector<EvalReport> resolution_sweep(std::span<const WindowSample> windows,
                                         RenderStyle style, std::span<const int> resolutions,
                                         std::span<const ClassifierKind> kinds, std::size_t k,
                                         std::uint64_t seed, const TrainOptions& options) {
    std::vector<int> labels;
    for (const WindowSample& w : windows) labels.push_back(w.label);
    const auto folds = fold_assignment(labels, k, seed);

    // Render once per window, then cut every resolution from the same native
    // image so the only varying factor is resolution.
    std::vector<FeaturizedDataset> datasets(resolutions.size());
    for (const WindowSample& w : windows) {
        const RasterImage native = render(w, style, kNativeCanvasSide, kNativeCanvasSide);
        for (std::size_t r = 0; r < resolutions.size(); ++r)
            datasets[r].add(image_features(downscale(native, resolutions[r])), w.label);
    }

    std::vector<EvalReport> reports;
    for (std::size_t r = 0; r < resolutions.size(); ++r) {
        EvalReport report = run_cv(datasets[r], kinds, folds, seed, options);
        report.representation = to_string(style);
        report.resolution = resolutions[r];
        if (!windows.empty()) report.rule = to_string(windows.front().rule);
        reports.push_back(std::move(report));
        datasets[r] = FeaturizedDataset{};  // release before the next cell
    }
    return reports;
}

std::vector<EvalReport> representation_comparison(std::span<const WindowSample> windows,
                                                  int resolution,
                                                  std::span<const ClassifierKind> kinds,
                                                  std::size_t k, std::uint64_t seed,
                                                  const TrainOptions& options) {
    std::vector<int> labels;
    for (const WindowSample& w : windows) labels.push_back(w.label);
    const auto folds = fold_assignment(labels, k, seed);

    std::vector<EvalReport> reports;
    for (RenderStyle style : kAllStyles) {
        const auto data = featurize_windows_as_images(windows, style, resolution);
        EvalReport report = run_cv(data, kinds, folds, seed, options);
        report.representation = to_string(style);
        report.resolution = resolution;
        if (!windows.empty()) report.rule = to_string(windows.front().rule);
        reports.push_back(std::move(report));
    }
    {
        const auto data = featurize_windows_tabular(windows);
        EvalReport report = run_cv(data, kinds, folds, seed, options);
        report.representation = "tabular";
        report.resolution = 0;
        if (!windows.empty()) report.rule = to_string(windows.front().rule);
        reports.push_back(std::move(report));
    }
    return reports;
}

}  // namespace chartml
