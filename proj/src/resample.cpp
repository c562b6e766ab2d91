#include "chartml/resample.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "chartml/errors.hpp"

namespace chartml {

double lanczos_kernel(double x, int lobes) {
    if (lobes < 1) throw UsageError("lanczos: lobes must be >= 1");
    x = std::abs(x);
    if (x >= static_cast<double>(lobes)) return 0.0;
    if (x == 0.0) return 1.0;
    if (x == std::floor(x)) return 0.0;  // sinc zeros, kept exact
    const double px = std::numbers::pi * x;
    const double pxa = px / static_cast<double>(lobes);
    return (std::sin(px) / px) * (std::sin(pxa) / pxa);
}

namespace {

constexpr int kLobes = 3;

struct Tap {
    int index;      // clamped source index
    double weight;  // normalized
};

// One weight table per output coordinate; shared by every row (or column).
std::vector<std::vector<Tap>> build_taps(int src, int dst) {
    const double scale = static_cast<double>(src) / static_cast<double>(dst);
    const double support = scale * kLobes;
    std::vector<std::vector<Tap>> taps(static_cast<std::size_t>(dst));
    for (int i = 0; i < dst; ++i) {
        const double center = (i + 0.5) * scale;
        const int j0 = static_cast<int>(std::floor(center - support + 0.5));
        const int j1 = static_cast<int>(std::floor(center + support - 0.5));
        auto& row = taps[static_cast<std::size_t>(i)];
        double sum = 0.0;
        for (int j = j0; j <= j1; ++j) {
            const double w = lanczos_kernel((j + 0.5 - center) / scale, kLobes);
            if (w == 0.0) continue;
            row.push_back({std::clamp(j, 0, src - 1), w});
            sum += w;
        }
        if (row.empty()) {  // can only happen for pathological scales
            row.push_back({std::clamp(static_cast<int>(center), 0, src - 1), 1.0});
            sum = 1.0;
        }
        for (auto& tap : row) tap.weight /= sum;
    }
    return taps;
}

}  // namespace

RasterImage downscale(const RasterImage& image, int target_side) {
    if (target_side < 2) throw UsageError("downscale: target side must be >= 2");
    if (target_side > image.width || target_side > image.height)
        throw UsageError("downscale: upscaling is not supported");

    const auto htaps = build_taps(image.width, target_side);
    const auto vtaps = build_taps(image.height, target_side);

    // Horizontal pass: image.height rows by target_side columns, in double.
    std::vector<double> mid(static_cast<std::size_t>(image.height) *
                            static_cast<std::size_t>(target_side));
    for (int y = 0; y < image.height; ++y) {
        const float* src_row =
            image.pixels.data() + static_cast<std::size_t>(y) * image.width;
        double* dst_row = mid.data() + static_cast<std::size_t>(y) * target_side;
        for (int x = 0; x < target_side; ++x) {
            double acc = 0.0;
            for (const Tap& tap : htaps[static_cast<std::size_t>(x)])
                acc += tap.weight * static_cast<double>(src_row[tap.index]);
            dst_row[x] = acc;
        }
    }

    RasterImage out = RasterImage::blank(target_side, target_side);
    out.meta = image.meta;
    for (int y = 0; y < target_side; ++y) {
        for (int x = 0; x < target_side; ++x) {
            double acc = 0.0;
            for (const Tap& tap : vtaps[static_cast<std::size_t>(y)])
                acc += tap.weight * mid[static_cast<std::size_t>(tap.index) * target_side + x];
            out.pixels[static_cast<std::size_t>(y) * target_side + x] =
                static_cast<float>(std::clamp(acc, 0.0, 1.0));
        }
    }
    return out;
}

}  // namespace chartml
