#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "chartml/features.hpp"

namespace chartml {

// The required member set of the voting ensemble. The wider registry of
// optional kinds (SVMs, discriminant analyses, boosting variants, the
// convolutional net, ...) is recognized by name but not built here.
enum class ClassifierKind {
    LogisticRegression,
    GaussianNaiveBayes,
    KNearestNeighbors,
    DecisionTree,
    RandomForest,
    Mlp
};

constexpr std::array<ClassifierKind, 6> kRequiredClassifiers = {
    ClassifierKind::LogisticRegression, ClassifierKind::GaussianNaiveBayes,
    ClassifierKind::KNearestNeighbors,  ClassifierKind::DecisionTree,
    ClassifierKind::RandomForest,       ClassifierKind::Mlp};

std::string to_string(ClassifierKind kind);
std::optional<ClassifierKind> parse_classifier(std::string_view name);

// Names accepted by the registry but intentionally not implemented; parsing
// one produces a targeted error message.
bool is_known_optional_classifier(std::string_view name);

struct Prediction {
    int label = 0;      // 1 = buy, 0 = no-buy
    double score = 0.0; // in [0, 1]; label is score >= 0.5 for scoring models
};

struct TrainOptions {
    // Logistic regression
    double logreg_l2 = 1.0;
    std::size_t logreg_max_epochs = 1000;
    double logreg_grad_tol = 1e-6;
    // k-nearest neighbors
    std::size_t knn_k = 5;
    // Random forest
    std::size_t forest_trees = 100;
    // Gaussian naive Bayes
    double gnb_var_floor = 1e-9;
    // MLP: three hidden layers of 32 ReLU units, sigmoid output, binary
    // cross-entropy, Adam.
    std::vector<std::size_t> mlp_hidden = {32, 32, 32};
    double mlp_learning_rate = 1e-3;
    double mlp_beta1 = 0.9;
    double mlp_beta2 = 0.999;
    std::size_t mlp_batch_size = 16;
    std::size_t mlp_epochs = 50;
};

class Classifier {
public:
    virtual ~Classifier() = default;
    virtual ClassifierKind kind() const = 0;
    virtual std::size_t feature_dim() const = 0;
    // Throws DataError when x.size() != feature_dim().
    virtual Prediction predict(std::span<const double> x) const = 0;
    virtual nlohmann::json to_json() const = 0;
};

// Deterministic given (data, seed, options). Requires at least two samples of
// each class; single-class data is rejected with DataError.
std::unique_ptr<Classifier> train_classifier(ClassifierKind kind,
                                             const FeaturizedDataset& data,
                                             std::uint64_t seed,
                                             const TrainOptions& options = {});

// Inverse of Classifier::to_json. Rejects unknown kinds and format versions.
std::unique_ptr<Classifier> classifier_from_json(const nlohmann::json& j);

struct VoteResult {
    int label = 0;
    double vote_fraction = 0.0;  // positive members / members
};

// Hard voting: majority of member hard labels; an exact tie resolves to
// no-buy. Equivalent to vote_fraction > 0.5.
class VotingEnsemble {
public:
    explicit VotingEnsemble(std::vector<std::unique_ptr<Classifier>> members);

    VoteResult vote(std::span<const double> x) const;
    std::size_t size() const { return members_.size(); }
    const Classifier& member(std::size_t i) const { return *members_[i]; }

private:
    std::vector<std::unique_ptr<Classifier>> members_;
};

// Trains one member per kind; member RNG streams are derived from
// (seed, kind name) so the result is independent of training order.
VotingEnsemble train_ensemble(std::span<const ClassifierKind> kinds,
                              const FeaturizedDataset& data, std::uint64_t seed,
                              const TrainOptions& options = {});

// Serialization format version shared by all model files.
constexpr int kModelFormatVersion = 1;

}  // namespace chartml
