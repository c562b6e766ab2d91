#include "chartml/features.hpp"

#include <algorithm>
#include <cmath>

#include "chartml/errors.hpp"

namespace chartml {

std::string to_string(FeatureMode mode) {
    return mode == FeatureMode::ImagePixels ? "image" : "tabular";
}

std::vector<double> image_features(const RasterImage& image) {
    std::vector<double> out(image.pixels.size());
    for (std::size_t i = 0; i < image.pixels.size(); ++i)
        out[i] = static_cast<double>(image.pixels[i]);
    return out;
}

std::vector<double> tabular_features(const WindowSample& window) {
    std::vector<double> out;
    out.reserve(window.bars.size() * 4);
    for (const auto& bar : window.bars) {
        out.push_back(bar.open);
        out.push_back(bar.high);
        out.push_back(bar.low);
        out.push_back(bar.close);
    }
    double mean = 0.0;
    for (double v : out) mean += v;
    mean /= static_cast<double>(out.size());
    double var = 0.0;
    for (double v : out) var += (v - mean) * (v - mean);
    var /= static_cast<double>(out.size());
    const double sd = std::sqrt(var);
    if (sd == 0.0) {
        std::fill(out.begin(), out.end(), 0.0);
    } else {
        for (double& v : out) v = (v - mean) / sd;
    }
    return out;
}

void FeaturizedDataset::add(std::vector<double> features, int label) {
    if (x.empty()) {
        dim = features.size();
    } else if (features.size() != dim) {
        throw DataError("feature dimension mismatch: expected " + std::to_string(dim) +
                        ", got " + std::to_string(features.size()));
    }
    x.push_back(std::move(features));
    y.push_back(label);
}

std::size_t FeaturizedDataset::count(int label) const {
    return static_cast<std::size_t>(std::count(y.begin(), y.end(), label));
}

}  // namespace chartml
