#include <algorithm>
#include <cmath>

#include "chartml/errors.hpp"
#include "classifier_impl.hpp"

namespace chartml::detail {

namespace {

double gini_impurity(std::size_t positives, std::size_t total) {
    if (total == 0) return 0.0;
    const double p = static_cast<double>(positives) / static_cast<double>(total);
    return 1.0 - p * p - (1.0 - p) * (1.0 - p);
}

struct SplitChoice {
    int feature = -1;
    double threshold = 0.0;
    double impurity = 0.0;  // weighted child impurity
};

// Best Gini split over the candidate features, or none if every candidate is
// constant on this node.
std::optional<SplitChoice> find_split(const FeaturizedDataset& data,
                                      std::span<const std::size_t> samples,
                                      std::span<const std::size_t> features) {
    const std::size_t n = samples.size();
    std::optional<SplitChoice> best;
    std::vector<std::pair<double, int>> column(n);  // (value, label)

    for (std::size_t f : features) {
        for (std::size_t i = 0; i < n; ++i) {
            const std::size_t s = samples[i];
            column[i] = {data.x[s][f], data.y[s]};
        }
        std::sort(column.begin(), column.end());

        std::size_t total_pos = 0;
        for (const auto& [v, y] : column) total_pos += static_cast<std::size_t>(y);

        std::size_t left_pos = 0;
        for (std::size_t i = 0; i + 1 < n; ++i) {
            left_pos += static_cast<std::size_t>(column[i].second);
            if (column[i].first == column[i + 1].first) continue;
            const std::size_t nl = i + 1;
            const std::size_t nr = n - nl;
            const double impurity =
                (static_cast<double>(nl) * gini_impurity(left_pos, nl) +
                 static_cast<double>(nr) * gini_impurity(total_pos - left_pos, nr)) /
                static_cast<double>(n);
            if (!best || impurity < best->impurity - 1e-12) {
                best = SplitChoice{static_cast<int>(f),
                                   0.5 * (column[i].first + column[i + 1].first), impurity};
            }
        }
    }
    return best;
}

struct TreeBuilder {
    const FeaturizedDataset& data;
    std::size_t features_per_split;  // 0 = all
    Rng* rng;
    std::vector<TreeNode> nodes;

    int build(std::vector<std::size_t>& samples) {
        const std::size_t n = samples.size();
        std::size_t positives = 0;
        for (std::size_t s : samples) positives += static_cast<std::size_t>(data.y[s]);

        const int id = static_cast<int>(nodes.size());
        nodes.push_back({});
        nodes[static_cast<std::size_t>(id)].prob =
            static_cast<double>(positives) / static_cast<double>(n);

        if (positives == 0 || positives == n) return id;  // pure leaf

        std::vector<std::size_t> features;
        if (features_per_split == 0 || features_per_split >= data.dim) {
            features.resize(data.dim);
            for (std::size_t j = 0; j < data.dim; ++j) features[j] = j;
        } else {
            features = rng->sample_without_replacement(data.dim, features_per_split);
            std::sort(features.begin(), features.end());
        }

        const auto split = find_split(data, samples, features);
        if (!split) return id;  // candidates constant; majority leaf
        const double parent = gini_impurity(positives, n);
        if (parent - split->impurity <= 1e-12) return id;

        std::vector<std::size_t> left, right;
        left.reserve(n);
        right.reserve(n);
        for (std::size_t s : samples) {
            (data.x[s][static_cast<std::size_t>(split->feature)] <= split->threshold
                 ? left
                 : right)
                .push_back(s);
        }
        samples.clear();
        samples.shrink_to_fit();

        nodes[static_cast<std::size_t>(id)].feature = split->feature;
        nodes[static_cast<std::size_t>(id)].threshold = split->threshold;
        const int l = build(left);
        nodes[static_cast<std::size_t>(id)].left = l;
        const int r = build(right);
        nodes[static_cast<std::size_t>(id)].right = r;
        return id;
    }
};

}  // namespace

std::vector<TreeNode> build_tree(const FeaturizedDataset& data,
                                 std::span<const std::size_t> samples,
                                 std::size_t features_per_split, Rng* rng) {
    TreeBuilder builder{data, features_per_split, rng, {}};
    std::vector<std::size_t> root(samples.begin(), samples.end());
    builder.build(root);
    return std::move(builder.nodes);
}

double tree_predict(const std::vector<TreeNode>& nodes, std::span<const double> x) {
    int id = 0;
    while (nodes[static_cast<std::size_t>(id)].feature >= 0) {
        const TreeNode& node = nodes[static_cast<std::size_t>(id)];
        id = x[static_cast<std::size_t>(node.feature)] <= node.threshold ? node.left
                                                                         : node.right;
    }
    return nodes[static_cast<std::size_t>(id)].prob;
}

json tree_to_json(const std::vector<TreeNode>& nodes) {
    json j = json::array();
    for (const auto& node : nodes)
        j.push_back({node.feature, node.threshold, node.left, node.right, node.prob});
    return j;
}

std::vector<TreeNode> tree_from_json(const json& j) {
    std::vector<TreeNode> nodes;
    nodes.reserve(j.size());
    for (const auto& e : j) {
        nodes.push_back({e.at(0).get<int>(), e.at(1).get<double>(), e.at(2).get<int>(),
                         e.at(3).get<int>(), e.at(4).get<double>()});
    }
    return nodes;
}

// --- decision tree ---

DecisionTreeModel::DecisionTreeModel(const FeaturizedDataset& data, std::uint64_t seed,
                                     const TrainOptions&)
    : dim_(data.dim), seed_(seed) {
    std::vector<std::size_t> all(data.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    nodes_ = build_tree(data, all, 0, nullptr);
}

Prediction DecisionTreeModel::predict(std::span<const double> x) const {
    check_dim(dim_, x.size());
    const double p = tree_predict(nodes_, x);
    return {p >= 0.5 ? 1 : 0, p};
}

json DecisionTreeModel::to_json() const {
    json j = base_json(*this, seed_, json::object());
    j["parameters"] = {{"dim", dim_}, {"nodes", tree_to_json(nodes_)}};
    return j;
}

DecisionTreeModel::DecisionTreeModel(const json& j) {
    dim_ = j.at("parameters").at("dim").get<std::size_t>();
    nodes_ = tree_from_json(j.at("parameters").at("nodes"));
    seed_ = j.at("seed").get<std::uint64_t>();
}

// --- random forest ---

RandomForestModel::RandomForestModel(const FeaturizedDataset& data, std::uint64_t seed,
                                     const TrainOptions& options)
    : dim_(data.dim), seed_(seed) {
    const std::size_t n = data.size();
    const std::size_t subset = std::max<std::size_t>(
        1, static_cast<std::size_t>(std::floor(std::sqrt(static_cast<double>(data.dim)))));
    trees_.reserve(options.forest_trees);
    for (std::size_t t = 0; t < options.forest_trees; ++t) {
        // Per-tree stream, so the forest is reproducible tree by tree.
        Rng rng(mix_seed(seed, t));
        std::vector<std::size_t> bootstrap(n);
        for (std::size_t i = 0; i < n; ++i)
            bootstrap[i] = static_cast<std::size_t>(rng.uniform_below(n));
        trees_.push_back(build_tree(data, bootstrap, subset, &rng));
    }
}

Prediction RandomForestModel::predict(std::span<const double> x) const {
    check_dim(dim_, x.size());
    double sum = 0.0;
    for (const auto& tree : trees_) sum += tree_predict(tree, x);
    const double p = sum / static_cast<double>(trees_.size());
    return {p >= 0.5 ? 1 : 0, p};
}

json RandomForestModel::to_json() const {
    json j = base_json(*this, seed_, {{"trees", trees_.size()}});
    json forest = json::array();
    for (const auto& tree : trees_) forest.push_back(tree_to_json(tree));
    j["parameters"] = {{"dim", dim_}, {"forest", std::move(forest)}};
    return j;
}

RandomForestModel::RandomForestModel(const json& j) {
    dim_ = j.at("parameters").at("dim").get<std::size_t>();
    for (const auto& t : j.at("parameters").at("forest")) trees_.push_back(tree_from_json(t));
    seed_ = j.at("seed").get<std::uint64_t>();
}

}  // namespace chartml::detail
