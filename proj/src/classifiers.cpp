#include "chartml/classifiers.hpp"

#include <algorithm>

#include "chartml/errors.hpp"
#include "chartml/rng.hpp"
#include "classifier_impl.hpp"

namespace chartml {

using detail::json;

std::string to_string(ClassifierKind kind) {
    switch (kind) {
        case ClassifierKind::LogisticRegression: return "logreg";
        case ClassifierKind::GaussianNaiveBayes: return "gnb";
        case ClassifierKind::KNearestNeighbors: return "knn";
        case ClassifierKind::DecisionTree: return "dtree";
        case ClassifierKind::RandomForest: return "rforest";
        case ClassifierKind::Mlp: return "mlp";
    }
    return "?";
}

std::optional<ClassifierKind> parse_classifier(std::string_view name) {
    for (ClassifierKind kind : kRequiredClassifiers)
        if (name == to_string(kind)) return kind;
    return std::nullopt;
}

bool is_known_optional_classifier(std::string_view name) {
    static constexpr std::array<std::string_view, 10> optional_names = {
        "extratrees", "adaboost", "bagging", "gradboost", "linsvm",
        "rbfsvm",     "lda",      "qda",     "gp",        "cnn"};
    return std::find(optional_names.begin(), optional_names.end(), name) !=
           optional_names.end();
}

namespace detail {

void check_dim(std::size_t expected, std::size_t got) {
    if (expected != got)
        throw DataError("feature length " + std::to_string(got) +
                        " does not match the trained dimension " + std::to_string(expected));
}

json base_json(const Classifier& model, std::uint64_t seed, json hyper) {
    return {{"format_version", kModelFormatVersion},
            {"kind", to_string(model.kind())},
            {"seed", seed},
            {"feature_dim", model.feature_dim()},
            {"hyperparameters", std::move(hyper)}};
}

}  // namespace detail

std::unique_ptr<Classifier> train_classifier(ClassifierKind kind,
                                             const FeaturizedDataset& data,
                                             std::uint64_t seed,
                                             const TrainOptions& options) {
    if (data.dim == 0 || data.size() == 0) throw DataError("empty training set");
    const std::size_t negatives = data.count(0);
    const std::size_t positives = data.count(1);
    if (negatives < 2 || positives < 2)
        throw DataError("training requires at least 2 samples of each class (got " +
                        std::to_string(negatives) + " negative, " +
                        std::to_string(positives) + " positive)");

    switch (kind) {
        case ClassifierKind::LogisticRegression:
            return std::make_unique<detail::LogisticRegressionModel>(data, seed, options);
        case ClassifierKind::GaussianNaiveBayes:
            return std::make_unique<detail::GaussianNaiveBayesModel>(data, seed, options);
        case ClassifierKind::KNearestNeighbors:
            return std::make_unique<detail::KNearestNeighborsModel>(data, seed, options);
        case ClassifierKind::DecisionTree:
            return std::make_unique<detail::DecisionTreeModel>(data, seed, options);
        case ClassifierKind::RandomForest:
            return std::make_unique<detail::RandomForestModel>(data, seed, options);
        case ClassifierKind::Mlp:
            return std::make_unique<detail::MlpModel>(data, seed, options);
    }
    throw UsageError("unknown classifier kind");
}

std::unique_ptr<Classifier> classifier_from_json(const json& j) {
    const int version = j.at("format_version").get<int>();
    if (version != kModelFormatVersion)
        throw DataError("unsupported model format version " + std::to_string(version));
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "logreg") return std::make_unique<detail::LogisticRegressionModel>(j);
    if (kind == "gnb") return std::make_unique<detail::GaussianNaiveBayesModel>(j);
    if (kind == "knn") return std::make_unique<detail::KNearestNeighborsModel>(j);
    if (kind == "dtree") return std::make_unique<detail::DecisionTreeModel>(j);
    if (kind == "rforest") return std::make_unique<detail::RandomForestModel>(j);
    if (kind == "mlp") return std::make_unique<detail::MlpModel>(j);
    throw DataError("unknown classifier kind '" + kind + "' in model file");
}

VotingEnsemble::VotingEnsemble(std::vector<std::unique_ptr<Classifier>> members)
    : members_(std::move(members)) {
    if (members_.empty()) throw UsageError("ensemble requires at least one member");
}

VoteResult VotingEnsemble::vote(std::span<const double> x) const {
    std::size_t positives = 0;
    for (const auto& member : members_)
        positives += static_cast<std::size_t>(member->predict(x).label);
    const double fraction =
        static_cast<double>(positives) / static_cast<double>(members_.size());
    return {2 * positives > members_.size() ? 1 : 0, fraction};
}

VotingEnsemble train_ensemble(std::span<const ClassifierKind> kinds,
                              const FeaturizedDataset& data, std::uint64_t seed,
                              const TrainOptions& options) {
    std::vector<std::unique_ptr<Classifier>> members;
    members.reserve(kinds.size());
    for (ClassifierKind kind : kinds)
        members.push_back(
            train_classifier(kind, data, mix_seed(seed, to_string(kind)), options));
    return VotingEnsemble(std::move(members));
}

}  // namespace chartml
