#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "chartml/classifiers.hpp"
#include "chartml/errors.hpp"
#include "chartml/evaluate.hpp"
#include "chartml/rng.hpp"

using namespace chartml;

namespace {

FeaturizedDataset gaussian_blobs(std::uint64_t seed, std::size_t per_class, double separation,
                                 std::size_t dim = 2) {
    Rng rng(seed);
    FeaturizedDataset data;
    for (std::size_t i = 0; i < per_class * 2; ++i) {
        const int label = i < per_class ? 0 : 1;
        std::vector<double> x(dim);
        for (std::size_t j = 0; j < dim; ++j)
            x[j] = rng.normal() + (label == 1 ? separation : 0.0);
        data.add(std::move(x), label);
    }
    return data;
}

double train_accuracy(const Classifier& model, const FeaturizedDataset& data) {
    std::size_t correct = 0;
    for (std::size_t i = 0; i < data.size(); ++i)
        if (model.predict(data.x[i]).label == data.y[i]) ++correct;
    return static_cast<double>(correct) / static_cast<double>(data.size());
}

// fixed-label stub for voting arithmetic
class FixedModel final : public Classifier {
public:
    explicit FixedModel(int label) : label_(label) {}
    ClassifierKind kind() const override { return ClassifierKind::GaussianNaiveBayes; }
    std::size_t feature_dim() const override { return 1; }
    Prediction predict(std::span<const double>) const override {
        return {label_, label_ == 1 ? 1.0 : 0.0};
    }
    nlohmann::json to_json() const override { return {}; }

private:
    int label_;
};

VotingEnsemble fixed_ensemble(const std::vector<int>& labels) {
    std::vector<std::unique_ptr<Classifier>> members;
    for (int label : labels) members.push_back(std::make_unique<FixedModel>(label));
    return VotingEnsemble(std::move(members));
}

}  // namespace

TEST_CASE("logistic regression separates distant blobs") {
    const auto data = gaussian_blobs(1, 100, 10.0);
    const auto model = train_classifier(ClassifierKind::LogisticRegression, data, 42);
    CHECK(train_accuracy(*model, data) >= 0.99);
}

TEST_CASE("knn is perfect on class-pure clusters") {
    // two tight clusters far apart: every 5-neighborhood is single-class
    Rng rng(2);
    FeaturizedDataset data;
    for (int i = 0; i < 40; ++i) {
        const int label = i % 2;
        data.add({label * 100.0 + rng.uniform01(), label * 100.0 + rng.uniform01()}, label);
    }
    const auto model = train_classifier(ClassifierKind::KNearestNeighbors, data, 7);
    CHECK(train_accuracy(*model, data) == 1.0);
}

TEST_CASE("decision tree nails a label-identical feature with one split") {
    Rng rng(3);
    FeaturizedDataset data;
    for (int i = 0; i < 60; ++i) {
        const int label = static_cast<int>(rng.uniform_below(2));
        // feature 2 equals the label; the rest are noise
        data.add({rng.uniform01(), rng.uniform01(), static_cast<double>(label),
                  rng.uniform01()},
                 label);
    }
    const auto model = train_classifier(ClassifierKind::DecisionTree, data, 1);
    CHECK(train_accuracy(*model, data) == 1.0);
    const auto j = model->to_json();
    CHECK(j.at("parameters").at("nodes").size() == 3);  // root plus two leaves
    CHECK(j.at("parameters").at("nodes").at(0).at(0).get<int>() == 2);
}

TEST_CASE("every required kind clears the single-pixel sanity floor") {
    // pixel-like data: mostly blank, one pixel carries the label, a couple of
    // faint noise pixels
    Rng rng(4);
    FeaturizedDataset data;
    for (int i = 0; i < 80; ++i) {
        std::vector<double> x(25, 0.0);
        const int label = static_cast<int>(rng.uniform_below(2));
        x[11] = label == 1 ? rng.uniform(0.55, 1.0) : rng.uniform(0.0, 0.45);
        x[3] = 0.05 * rng.uniform01();
        x[19] = 0.05 * rng.uniform01();
        data.add(std::move(x), label);
    }
    REQUIRE(data.count(0) >= 2);
    REQUIRE(data.count(1) >= 2);
    for (ClassifierKind kind : kRequiredClassifiers) {
        const auto model = train_classifier(kind, data, 99);
        CHECK_MESSAGE(train_accuracy(*model, data) >= 0.99, to_string(kind));
    }
}

TEST_CASE("scores live in [0,1] and agree with the hard label") {
    const auto data = gaussian_blobs(5, 40, 3.0, 4);
    Rng rng(6);
    for (ClassifierKind kind : kRequiredClassifiers) {
        const auto model = train_classifier(kind, data, 123);
        for (int trial = 0; trial < 30; ++trial) {
            std::vector<double> x(4);
            for (auto& v : x) v = rng.uniform(-2.0, 5.0);
            const Prediction p = model->predict(x);
            CHECK(p.score >= 0.0);
            CHECK(p.score <= 1.0);
            CHECK(p.label == (p.score >= 0.5 ? 1 : 0));
        }
    }
}

TEST_CASE("prediction is pure and validates dimensions") {
    const auto data = gaussian_blobs(7, 30, 5.0, 3);
    const auto model = train_classifier(ClassifierKind::Mlp, data, 11);
    const std::vector<double> x{0.3, -0.2, 4.9};
    const auto a = model->predict(x);
    const auto b = model->predict(x);
    CHECK(a.label == b.label);
    CHECK(a.score == b.score);
    CHECK_THROWS_AS(model->predict(std::vector<double>{1.0, 2.0}), DataError);
}

TEST_CASE("training rejects single-class and tiny-class data") {
    FeaturizedDataset data;
    for (int i = 0; i < 10; ++i) data.add({static_cast<double>(i)}, 1);
    CHECK_THROWS_AS(train_classifier(ClassifierKind::LogisticRegression, data, 1), DataError);
    data.add({99.0}, 0);  // one negative is still below the floor
    CHECK_THROWS_AS(train_classifier(ClassifierKind::LogisticRegression, data, 1), DataError);
}

TEST_CASE("training and serialization are reproducible") {
    const auto data = gaussian_blobs(8, 50, 4.0, 5);
    for (ClassifierKind kind : kRequiredClassifiers) {
        const auto a = train_classifier(kind, data, 77);
        const auto b = train_classifier(kind, data, 77);
        CHECK_MESSAGE(a->to_json().dump() == b->to_json().dump(), to_string(kind));

        const auto restored = classifier_from_json(a->to_json());
        CHECK(restored->kind() == kind);
        Rng rng(9);
        for (int trial = 0; trial < 20; ++trial) {
            std::vector<double> x(5);
            for (auto& v : x) v = rng.uniform(-3.0, 7.0);
            const auto pa = a->predict(x);
            const auto pr = restored->predict(x);
            CHECK(pa.label == pr.label);
            CHECK(pa.score == doctest::Approx(pr.score).epsilon(1e-12));
        }
    }
}

TEST_CASE("model json is self-describing") {
    const auto data = gaussian_blobs(10, 20, 6.0);
    const auto model = train_classifier(ClassifierKind::RandomForest, data, 3);
    const auto j = model->to_json();
    CHECK(j.at("format_version").get<int>() == kModelFormatVersion);
    CHECK(j.at("kind").get<std::string>() == "rforest");
    CHECK(j.at("seed").get<std::uint64_t>() == 3);
    CHECK(j.contains("hyperparameters"));
    CHECK(j.contains("parameters"));

    nlohmann::json bad = j;
    bad["format_version"] = 999;
    CHECK_THROWS_AS(classifier_from_json(bad), DataError);
    bad = j;
    bad["kind"] = "gp";
    CHECK_THROWS_AS(classifier_from_json(bad), DataError);
}

TEST_CASE("hard voting arithmetic") {
    const std::vector<double> x{0.0};

    const auto majority = fixed_ensemble({1, 1, 0}).vote(x);
    CHECK(majority.label == 1);
    CHECK(majority.vote_fraction == doctest::Approx(2.0 / 3.0));

    const auto tie = fixed_ensemble({1, 0}).vote(x);
    CHECK(tie.label == 0);  // ties resolve to no-buy
    CHECK(tie.vote_fraction == doctest::Approx(0.5));

    const auto unanimous = fixed_ensemble({0, 0, 0, 0}).vote(x);
    CHECK(unanimous.label == 0);
    CHECK(unanimous.vote_fraction == 0.0);

    CHECK_THROWS_AS(VotingEnsemble({}), UsageError);
}

TEST_CASE("vote label ignores member order") {
    const std::vector<double> x{0.0};
    std::vector<int> labels{1, 0, 1, 1, 0, 0, 1};
    std::sort(labels.begin(), labels.end());
    do {
        const auto v = fixed_ensemble(labels).vote(x);
        CHECK(v.label == 1);
        CHECK(v.vote_fraction == doctest::Approx(4.0 / 7.0));
    } while (std::next_permutation(labels.begin(), labels.end()));
}

TEST_CASE("registry names") {
    for (ClassifierKind kind : kRequiredClassifiers)
        CHECK(parse_classifier(to_string(kind)) == kind);
    CHECK_FALSE(parse_classifier("cnn").has_value());
    CHECK(is_known_optional_classifier("cnn"));
    CHECK(is_known_optional_classifier("rbfsvm"));
    CHECK_FALSE(is_known_optional_classifier("nonsense"));
}

TEST_CASE("feature helpers") {
    RasterImage img = RasterImage::blank(30, 30);
    CHECK(image_features(img).size() == 900);
    CHECK(std::all_of(image_features(img).begin(), image_features(img).end(),
                      [](double v) { return v == 0.0; }));

    WindowSample flat;
    flat.bars.assign(20, [] {
        OhlcvBar b;
        b.open = b.high = b.low = b.close = b.adj_close = 5.0;
        b.volume = 1.0;
        return b;
    }());
    const auto tab = tabular_features(flat);
    CHECK(tab.size() == 80);
    CHECK(std::all_of(tab.begin(), tab.end(), [](double v) { return v == 0.0; }));

    FeaturizedDataset data;
    data.add({1.0, 2.0}, 0);
    CHECK_THROWS_AS(data.add({1.0, 2.0, 3.0}, 1), DataError);
}

TEST_CASE("tabular features are z-normalized per window") {
    Rng rng(12);
    WindowSample w;
    Date d{2015, 1, 5};
    for (int i = 0; i < 26; ++i) {
        OhlcvBar b;
        b.date = d;
        b.open = rng.uniform(90.0, 110.0);
        b.close = rng.uniform(90.0, 110.0);
        b.high = std::max(b.open, b.close) + rng.uniform01();
        b.low = std::min(b.open, b.close) - rng.uniform01();
        b.adj_close = b.close;
        b.volume = 100.0;
        w.bars.push_back(b);
        d = next_weekday(d);
    }
    const auto f = tabular_features(w);
    REQUIRE(f.size() == 104);
    double mean = 0.0, var = 0.0;
    for (double v : f) mean += v;
    mean /= static_cast<double>(f.size());
    for (double v : f) var += (v - mean) * (v - mean);
    var /= static_cast<double>(f.size());
    CHECK(mean == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(var == doctest::Approx(1.0).epsilon(1e-9));
}
