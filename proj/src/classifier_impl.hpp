#pragma once

// Concrete classifier types shared between the per-family translation units
// and the registry/serialization code. Not part of the public interface.

#include <cstdint>

#include "chartml/classifiers.hpp"
#include "chartml/rng.hpp"

namespace chartml::detail {

using nlohmann::json;

void check_dim(std::size_t expected, std::size_t got);
json base_json(const Classifier& model, std::uint64_t seed, json hyper);

class LogisticRegressionModel final : public Classifier {
public:
    LogisticRegressionModel(const FeaturizedDataset& data, std::uint64_t seed,
                            const TrainOptions& options);
    explicit LogisticRegressionModel(const json& j);

    ClassifierKind kind() const override { return ClassifierKind::LogisticRegression; }
    std::size_t feature_dim() const override { return weights_.size(); }
    Prediction predict(std::span<const double> x) const override;
    json to_json() const override;

private:
    std::vector<double> weights_;
    double bias_ = 0.0;
    double l2_ = 1.0;
    std::size_t epochs_run_ = 0;
    std::uint64_t seed_ = 0;
};

class GaussianNaiveBayesModel final : public Classifier {
public:
    GaussianNaiveBayesModel(const FeaturizedDataset& data, std::uint64_t seed,
                            const TrainOptions& options);
    explicit GaussianNaiveBayesModel(const json& j);

    ClassifierKind kind() const override { return ClassifierKind::GaussianNaiveBayes; }
    std::size_t feature_dim() const override { return mean_[0].size(); }
    Prediction predict(std::span<const double> x) const override;
    json to_json() const override;

private:
    std::array<double, 2> log_prior_{};
    std::array<std::vector<double>, 2> mean_;
    std::array<std::vector<double>, 2> var_;
    double var_floor_ = 1e-9;
    std::uint64_t seed_ = 0;
};

class KNearestNeighborsModel final : public Classifier {
public:
    KNearestNeighborsModel(const FeaturizedDataset& data, std::uint64_t seed,
                           const TrainOptions& options);
    explicit KNearestNeighborsModel(const json& j);

    ClassifierKind kind() const override { return ClassifierKind::KNearestNeighbors; }
    std::size_t feature_dim() const override { return dim_; }
    Prediction predict(std::span<const double> x) const override;
    json to_json() const override;

private:
    std::size_t k_ = 5;
    std::size_t dim_ = 0;
    std::vector<std::vector<double>> train_x_;
    std::vector<int> train_y_;
    std::uint64_t seed_ = 0;
};

// Shared by the decision tree and the forest. Leaves have feature == -1 and
// carry the positive fraction; interior nodes send x[feature] <= threshold
// left.
struct TreeNode {
    int feature = -1;
    double threshold = 0.0;
    int left = -1;
    int right = -1;
    double prob = 0.0;
};

// features_per_split == 0 scans every feature in index order; otherwise a
// random subset of that size is drawn per node from `rng`.
std::vector<TreeNode> build_tree(const FeaturizedDataset& data,
                                 std::span<const std::size_t> samples,
                                 std::size_t features_per_split, Rng* rng);

double tree_predict(const std::vector<TreeNode>& nodes, std::span<const double> x);

json tree_to_json(const std::vector<TreeNode>& nodes);
std::vector<TreeNode> tree_from_json(const json& j);

class DecisionTreeModel final : public Classifier {
public:
    DecisionTreeModel(const FeaturizedDataset& data, std::uint64_t seed,
                      const TrainOptions& options);
    explicit DecisionTreeModel(const json& j);

    ClassifierKind kind() const override { return ClassifierKind::DecisionTree; }
    std::size_t feature_dim() const override { return dim_; }
    Prediction predict(std::span<const double> x) const override;
    json to_json() const override;

private:
    std::size_t dim_ = 0;
    std::vector<TreeNode> nodes_;
    std::uint64_t seed_ = 0;
};

class RandomForestModel final : public Classifier {
public:
    RandomForestModel(const FeaturizedDataset& data, std::uint64_t seed,
                      const TrainOptions& options);
    explicit RandomForestModel(const json& j);

    ClassifierKind kind() const override { return ClassifierKind::RandomForest; }
    std::size_t feature_dim() const override { return dim_; }
    Prediction predict(std::span<const double> x) const override;
    json to_json() const override;

private:
    std::size_t dim_ = 0;
    std::vector<std::vector<TreeNode>> trees_;
    std::uint64_t seed_ = 0;
};

class MlpModel final : public Classifier {
public:
    MlpModel(const FeaturizedDataset& data, std::uint64_t seed, const TrainOptions& options);
    explicit MlpModel(const json& j);

    ClassifierKind kind() const override { return ClassifierKind::Mlp; }
    std::size_t feature_dim() const override { return dim_; }
    Prediction predict(std::span<const double> x) const override;
    json to_json() const override;

private:
    struct Layer {
        std::size_t in = 0;
        std::size_t out = 0;
        std::vector<double> w;  // out x in, row-major
        std::vector<double> b;
    };

    double forward(std::span<const double> x, std::vector<std::vector<double>>* activations,
                   std::vector<std::vector<double>>* preact) const;

    std::size_t dim_ = 0;
    std::vector<Layer> layers_;  // hidden layers then the single-unit output
    std::uint64_t seed_ = 0;
    TrainOptions options_;
};

double sigmoid(double z);

}  // namespace chartml::detail
