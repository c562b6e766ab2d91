#include <algorithm>
#include <cmath>

#include "chartml/errors.hpp"
#include "classifier_impl.hpp"

namespace chartml::detail {

double sigmoid(double z) {
    if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
    const double e = std::exp(z);
    return e / (1.0 + e);
}

// --- logistic regression ---

LogisticRegressionModel::LogisticRegressionModel(const FeaturizedDataset& data,
                                                 std::uint64_t seed,
                                                 const TrainOptions& options)
    : l2_(options.logreg_l2), seed_(seed) {
    const std::size_t n = data.size();
    const std::size_t d = data.dim;
    weights_.assign(d, 0.0);
    bias_ = 0.0;

    // Fixed step sized from a Lipschitz bound of the regularized mean loss,
    // so plain gradient descent cannot diverge regardless of feature scale.
    double max_row_sq = 0.0;
    for (const auto& row : data.x) {
        double s = 1.0;  // bias column
        for (double v : row) s += v * v;
        max_row_sq = std::max(max_row_sq, s);
    }
    const double lipschitz = 0.25 * max_row_sq + l2_ / static_cast<double>(n);
    const double lr = 1.0 / lipschitz;

    std::vector<double> grad(d);
    for (std::size_t epoch = 0; epoch < options.logreg_max_epochs; ++epoch) {
        std::fill(grad.begin(), grad.end(), 0.0);
        double grad_bias = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const auto& row = data.x[i];
            double z = bias_;
            for (std::size_t j = 0; j < d; ++j) z += weights_[j] * row[j];
            const double err = sigmoid(z) - static_cast<double>(data.y[i]);
            for (std::size_t j = 0; j < d; ++j) grad[j] += err * row[j];
            grad_bias += err;
        }
        double norm_sq = 0.0;
        for (std::size_t j = 0; j < d; ++j) {
            grad[j] = (grad[j] + l2_ * weights_[j]) / static_cast<double>(n);
            norm_sq += grad[j] * grad[j];
        }
        grad_bias /= static_cast<double>(n);
        norm_sq += grad_bias * grad_bias;

        epochs_run_ = epoch + 1;
        if (std::sqrt(norm_sq) <= options.logreg_grad_tol) break;
        for (std::size_t j = 0; j < d; ++j) weights_[j] -= lr * grad[j];
        bias_ -= lr * grad_bias;
    }
}

Prediction LogisticRegressionModel::predict(std::span<const double> x) const {
    check_dim(weights_.size(), x.size());
    double z = bias_;
    for (std::size_t j = 0; j < weights_.size(); ++j) z += weights_[j] * x[j];
    const double p = sigmoid(z);
    return {p >= 0.5 ? 1 : 0, p};
}

json LogisticRegressionModel::to_json() const {
    json j = base_json(*this, seed_, {{"l2", l2_}, {"epochs_run", epochs_run_}});
    j["parameters"] = {{"weights", weights_}, {"bias", bias_}};
    return j;
}

LogisticRegressionModel::LogisticRegressionModel(const json& j) {
    weights_ = j.at("parameters").at("weights").get<std::vector<double>>();
    bias_ = j.at("parameters").at("bias").get<double>();
    l2_ = j.at("hyperparameters").at("l2").get<double>();
    epochs_run_ = j.at("hyperparameters").at("epochs_run").get<std::size_t>();
    seed_ = j.at("seed").get<std::uint64_t>();
}

// --- Gaussian naive Bayes ---

GaussianNaiveBayesModel::GaussianNaiveBayesModel(const FeaturizedDataset& data,
                                                 std::uint64_t seed,
                                                 const TrainOptions& options)
    : var_floor_(options.gnb_var_floor), seed_(seed) {
    const std::size_t d = data.dim;
    std::array<std::size_t, 2> counts{};
    for (int c = 0; c < 2; ++c) {
        mean_[c].assign(d, 0.0);
        var_[c].assign(d, 0.0);
    }
    for (std::size_t i = 0; i < data.size(); ++i) {
        const int c = data.y[i];
        counts[static_cast<std::size_t>(c)] += 1;
        for (std::size_t j = 0; j < d; ++j) mean_[c][j] += data.x[i][j];
    }
    for (int c = 0; c < 2; ++c) {
        for (std::size_t j = 0; j < d; ++j)
            mean_[c][j] /= static_cast<double>(counts[static_cast<std::size_t>(c)]);
        log_prior_[static_cast<std::size_t>(c)] =
            std::log(static_cast<double>(counts[static_cast<std::size_t>(c)]) /
                     static_cast<double>(data.size()));
    }
    for (std::size_t i = 0; i < data.size(); ++i) {
        const int c = data.y[i];
        for (std::size_t j = 0; j < d; ++j) {
            const double dx = data.x[i][j] - mean_[c][j];
            var_[c][j] += dx * dx;
        }
    }
    for (int c = 0; c < 2; ++c)
        for (std::size_t j = 0; j < d; ++j)
            var_[c][j] = std::max(
                var_[c][j] / static_cast<double>(counts[static_cast<std::size_t>(c)]),
                var_floor_);
}

Prediction GaussianNaiveBayesModel::predict(std::span<const double> x) const {
    check_dim(mean_[0].size(), x.size());
    std::array<double, 2> log_like = log_prior_;
    for (int c = 0; c < 2; ++c) {
        for (std::size_t j = 0; j < x.size(); ++j) {
            const double dx = x[j] - mean_[c][j];
            log_like[static_cast<std::size_t>(c)] -=
                0.5 * (std::log(2.0 * M_PI * var_[c][j]) + dx * dx / var_[c][j]);
        }
    }
    const double m = std::max(log_like[0], log_like[1]);
    const double e0 = std::exp(log_like[0] - m);
    const double e1 = std::exp(log_like[1] - m);
    const double p = e1 / (e0 + e1);
    return {p >= 0.5 ? 1 : 0, p};
}

json GaussianNaiveBayesModel::to_json() const {
    json j = base_json(*this, seed_, {{"var_floor", var_floor_}});
    j["parameters"] = {{"log_prior", log_prior_},
                       {"mean0", mean_[0]},
                       {"mean1", mean_[1]},
                       {"var0", var_[0]},
                       {"var1", var_[1]}};
    return j;
}

GaussianNaiveBayesModel::GaussianNaiveBayesModel(const json& j) {
    const auto& p = j.at("parameters");
    log_prior_ = p.at("log_prior").get<std::array<double, 2>>();
    mean_[0] = p.at("mean0").get<std::vector<double>>();
    mean_[1] = p.at("mean1").get<std::vector<double>>();
    var_[0] = p.at("var0").get<std::vector<double>>();
    var_[1] = p.at("var1").get<std::vector<double>>();
    var_floor_ = j.at("hyperparameters").at("var_floor").get<double>();
    seed_ = j.at("seed").get<std::uint64_t>();
}

// --- k-nearest neighbors ---

KNearestNeighborsModel::KNearestNeighborsModel(const FeaturizedDataset& data,
                                               std::uint64_t seed,
                                               const TrainOptions& options)
    : k_(options.knn_k), dim_(data.dim), train_x_(data.x), train_y_(data.y), seed_(seed) {}

Prediction KNearestNeighborsModel::predict(std::span<const double> x) const {
    check_dim(dim_, x.size());
    const std::size_t k = std::min(k_, train_x_.size());
    // (distance^2, index); index breaks distance ties deterministically.
    std::vector<std::pair<double, std::size_t>> order(train_x_.size());
    for (std::size_t i = 0; i < train_x_.size(); ++i) {
        double d2 = 0.0;
        const auto& row = train_x_[i];
        for (std::size_t j = 0; j < dim_; ++j) {
            const double dx = row[j] - x[j];
            d2 += dx * dx;
        }
        order[i] = {d2, i};
    }
    std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k),
                      order.end());
    std::size_t positives = 0;
    for (std::size_t i = 0; i < k; ++i)
        positives += static_cast<std::size_t>(train_y_[order[i].second]);
    const double p = static_cast<double>(positives) / static_cast<double>(k);
    return {p >= 0.5 ? 1 : 0, p};
}

json KNearestNeighborsModel::to_json() const {
    json j = base_json(*this, seed_, {{"k", k_}});
    j["parameters"] = {{"dim", dim_}, {"x", train_x_}, {"y", train_y_}};
    return j;
}

KNearestNeighborsModel::KNearestNeighborsModel(const json& j) {
    const auto& p = j.at("parameters");
    dim_ = p.at("dim").get<std::size_t>();
    train_x_ = p.at("x").get<std::vector<std::vector<double>>>();
    train_y_ = p.at("y").get<std::vector<int>>();
    k_ = j.at("hyperparameters").at("k").get<std::size_t>();
    seed_ = j.at("seed").get<std::uint64_t>();
}

}  // namespace chartml::detail
