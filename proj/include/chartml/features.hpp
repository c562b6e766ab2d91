#pragma once

#include <span>
#include <vector>

#include "chartml/labeler.hpp"
#include "chartml/raster.hpp"

namespace chartml {

enum class FeatureMode { ImagePixels, RawTabular };

std::string to_string(FeatureMode mode);

// Row-major flattening of the pixel grid; length = width * height.
std::vector<double> image_features(const RasterImage& image);

// 4 values per day (open, high, low, close), z-normalized by the mean and
// population std of all 4*W values in the window. A zero std (constant
// window) yields all zeros.
std::vector<double> tabular_features(const WindowSample& window);

// Feature matrix with binary labels. All rows share one dimension; add()
// rejects mismatched rows.
struct FeaturizedDataset {
    std::size_t dim = 0;
    std::vector<std::vector<double>> x;
    std::vector<int> y;

    std::size_t size() const { return x.size(); }
    void add(std::vector<double> features, int label);
    std::size_t count(int label) const;
};

}  // namespace chartml
