#include <algorithm>
#include <cmath>

#include "chartml/errors.hpp"
#include "classifier_impl.hpp"

namespace chartml::detail {

namespace {

struct AdamState {
    std::vector<double> m, v;
    explicit AdamState(std::size_t n) : m(n, 0.0), v(n, 0.0) {}
};

void adam_step(std::vector<double>& param, std::span<const double> grad, AdamState& state,
               double lr, double beta1, double beta2, std::size_t t) {
    constexpr double eps = 1e-8;
    const double bc1 = 1.0 - std::pow(beta1, static_cast<double>(t));
    const double bc2 = 1.0 - std::pow(beta2, static_cast<double>(t));
    for (std::size_t i = 0; i < param.size(); ++i) {
        state.m[i] = beta1 * state.m[i] + (1.0 - beta1) * grad[i];
        state.v[i] = beta2 * state.v[i] + (1.0 - beta2) * grad[i] * grad[i];
        param[i] -= lr * (state.m[i] / bc1) / (std::sqrt(state.v[i] / bc2) + eps);
    }
}

}  // namespace

double MlpModel::forward(std::span<const double> x,
                         std::vector<std::vector<double>>* activations,
                         std::vector<std::vector<double>>* preact) const {
    std::vector<double> current(x.begin(), x.end());
    if (activations) activations->push_back(current);
    for (std::size_t li = 0; li < layers_.size(); ++li) {
        const Layer& layer = layers_[li];
        std::vector<double> z(layer.out);
        for (std::size_t o = 0; o < layer.out; ++o) {
            double acc = layer.b[o];
            const double* wrow = layer.w.data() + o * layer.in;
            for (std::size_t i = 0; i < layer.in; ++i) acc += wrow[i] * current[i];
            z[o] = acc;
        }
        if (preact) preact->push_back(z);
        const bool last = li + 1 == layers_.size();
        for (std::size_t o = 0; o < layer.out; ++o)
            z[o] = last ? sigmoid(z[o]) : std::max(0.0, z[o]);
        current = std::move(z);
        if (activations) activations->push_back(current);
    }
    return current[0];
}

MlpModel::MlpModel(const FeaturizedDataset& data, std::uint64_t seed,
                   const TrainOptions& options)
    : dim_(data.dim), seed_(seed), options_(options) {
    Rng rng(seed);

    std::vector<std::size_t> sizes;
    sizes.push_back(dim_);
    for (std::size_t h : options.mlp_hidden) sizes.push_back(h);
    sizes.push_back(1);
    for (std::size_t li = 0; li + 1 < sizes.size(); ++li) {
        Layer layer;
        layer.in = sizes[li];
        layer.out = sizes[li + 1];
        layer.w.resize(layer.in * layer.out);
        layer.b.assign(layer.out, 0.0);
        const double limit =
            std::sqrt(6.0 / static_cast<double>(layer.in + layer.out));
        for (double& w : layer.w) w = rng.uniform(-limit, limit);
        layers_.push_back(std::move(layer));
    }

    const std::size_t n = data.size();
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;

    std::vector<AdamState> wstates, bstates;
    for (const Layer& layer : layers_) {
        wstates.emplace_back(layer.w.size());
        bstates.emplace_back(layer.b.size());
    }

    std::vector<std::vector<double>> grad_w(layers_.size()), grad_b(layers_.size());
    std::size_t adam_t = 0;

    for (std::size_t epoch = 0; epoch < options.mlp_epochs; ++epoch) {
        rng.shuffle(order);
        for (std::size_t start = 0; start < n; start += options.mlp_batch_size) {
            const std::size_t end = std::min(n, start + options.mlp_batch_size);
            const double batch = static_cast<double>(end - start);

            for (std::size_t li = 0; li < layers_.size(); ++li) {
                grad_w[li].assign(layers_[li].w.size(), 0.0);
                grad_b[li].assign(layers_[li].b.size(), 0.0);
            }

            for (std::size_t bi = start; bi < end; ++bi) {
                const std::size_t s = order[bi];
                std::vector<std::vector<double>> acts, zs;
                const double p = forward(data.x[s], &acts, &zs);

                // delta at the sigmoid/BCE output is simply p - y
                std::vector<double> delta{p - static_cast<double>(data.y[s])};
                for (std::size_t lr = layers_.size(); lr-- > 0;) {
                    const Layer& layer = layers_[lr];
                    for (std::size_t o = 0; o < layer.out; ++o) {
                        grad_b[lr][o] += delta[o];
                        double* grow = grad_w[lr].data() + o * layer.in;
                        const double d = delta[o];
                        const auto& input = acts[lr];
                        for (std::size_t i = 0; i < layer.in; ++i) grow[i] += d * input[i];
                    }
                    if (lr == 0) break;
                    std::vector<double> prev(layer.in, 0.0);
                    for (std::size_t o = 0; o < layer.out; ++o) {
                        const double d = delta[o];
                        const double* wrow = layer.w.data() + o * layer.in;
                        for (std::size_t i = 0; i < layer.in; ++i) prev[i] += d * wrow[i];
                    }
                    const auto& z = zs[lr - 1];
                    for (std::size_t i = 0; i < layer.in; ++i)
                        if (z[i] <= 0.0) prev[i] = 0.0;  // ReLU gate
                    delta = std::move(prev);
                }
            }

            adam_t += 1;
            for (std::size_t li = 0; li < layers_.size(); ++li) {
                for (double& g : grad_w[li]) g /= batch;
                for (double& g : grad_b[li]) g /= batch;
                adam_step(layers_[li].w, grad_w[li], wstates[li], options.mlp_learning_rate,
                          options.mlp_beta1, options.mlp_beta2, adam_t);
                adam_step(layers_[li].b, grad_b[li], bstates[li], options.mlp_learning_rate,
                          options.mlp_beta1, options.mlp_beta2, adam_t);
            }
        }
    }
}

Prediction MlpModel::predict(std::span<const double> x) const {
    check_dim(dim_, x.size());
    const double p = forward(x, nullptr, nullptr);
    return {p >= 0.5 ? 1 : 0, p};
}

json MlpModel::to_json() const {
    json j = base_json(*this, seed_,
                       {{"hidden", options_.mlp_hidden},
                        {"learning_rate", options_.mlp_learning_rate},
                        {"beta1", options_.mlp_beta1},
                        {"beta2", options_.mlp_beta2},
                        {"batch_size", options_.mlp_batch_size},
                        {"epochs", options_.mlp_epochs}});
    json layers = json::array();
    for (const Layer& layer : layers_)
        layers.push_back({{"in", layer.in}, {"out", layer.out}, {"w", layer.w}, {"b", layer.b}});
    j["parameters"] = {{"dim", dim_}, {"layers", std::move(layers)}};
    return j;
}

MlpModel::MlpModel(const json& j) {
    dim_ = j.at("parameters").at("dim").get<std::size_t>();
    for (const auto& lj : j.at("parameters").at("layers")) {
        Layer layer;
        layer.in = lj.at("in").get<std::size_t>();
        layer.out = lj.at("out").get<std::size_t>();
        layer.w = lj.at("w").get<std::vector<double>>();
        layer.b = lj.at("b").get<std::vector<double>>();
        layers_.push_back(std::move(layer));
    }
    seed_ = j.at("seed").get<std::uint64_t>();
    const auto& h = j.at("hyperparameters");
    options_.mlp_hidden = h.at("hidden").get<std::vector<std::size_t>>();
    options_.mlp_learning_rate = h.at("learning_rate").get<double>();
    options_.mlp_beta1 = h.at("beta1").get<double>();
    options_.mlp_beta2 = h.at("beta2").get<double>();
    options_.mlp_batch_size = h.at("batch_size").get<std::size_t>();
    options_.mlp_epochs = h.at("epochs").get<std::size_t>();
}

}  // namespace chartml::detail
