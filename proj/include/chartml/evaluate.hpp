#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "chartml/classifiers.hpp"
#include "chartml/features.hpp"
#include "chartml/raster.hpp"

namespace chartml {

struct Score {
    double accuracy = 0.0;
    // TP / (TP + FP); absent (not zero) when nothing was predicted positive.
    std::optional<double> precision;
};

// Throws DataError on length mismatch or empty input.
Score compute_score(std::span<const int> predictions, std::span<const int> truths);

// Stratified fold id per sample, deterministic given (labels, k, seed).
// Per-fold class counts differ by at most one sample from exact proportion.
// Requires each class to have at least k members.
std::vector<std::size_t> fold_assignment(std::span<const int> labels, std::size_t k,
                                         std::uint64_t seed);

struct FoldOutcome {
    Score score;
    std::vector<std::size_t> test_indices;
    std::vector<int> predictions;
    std::vector<double> vote_fractions;
};

// Per-fold and aggregate accuracy/precision for one voting-ensemble
// configuration. Standard deviations are population, across folds.
struct EvalReport {
    std::size_t k = 5;
    std::vector<FoldOutcome> folds;
    double accuracy_mean = 0.0;
    double accuracy_std = 0.0;
    std::optional<double> precision_mean;
    std::optional<double> precision_std;
    // Config fingerprint fields
    std::string rule;
    std::string representation;
    int resolution = 0;  // 0 = tabular input
    std::uint64_t seed = 0;
    std::vector<std::string> classifier_names;
};

// Trains the ensemble on each train split and votes on the held-out fold.
EvalReport run_cv(const FeaturizedDataset& data, std::span<const ClassifierKind> kinds,
                  std::span<const std::size_t> fold_of, std::uint64_t seed,
                  const TrainOptions& options = {});
EvalReport run_cv(const FeaturizedDataset& data, std::span<const ClassifierKind> kinds,
                  std::size_t k, std::uint64_t seed, const TrainOptions& options = {});

// Renders each window at the native canvas, downscales, and flattens.
FeaturizedDataset featurize_windows_as_images(std::span<const WindowSample> windows,
                                              RenderStyle style, int resolution);
FeaturizedDataset featurize_windows_tabular(std::span<const WindowSample> windows);

// One report per resolution over identical samples and identical fold
// memberships, so resolution is the only varying factor.
std::vector<EvalReport> resolution_sweep(std::span<const WindowSample> windows,
                                         RenderStyle style, std::span<const int> resolutions,
                                         std::span<const ClassifierKind> kinds, std::size_t k,
                                         std::uint64_t seed,
                                         const TrainOptions& options = {});

// One report per visual style plus the raw-tabular baseline, all on the same
// windows and fold memberships.
std::vector<EvalReport> representation_comparison(std::span<const WindowSample> windows,
                                                  int resolution,
                                                  std::span<const ClassifierKind> kinds,
                                                  std::size_t k, std::uint64_t seed,
                                                  const TrainOptions& options = {});

}  // namespace chartml
