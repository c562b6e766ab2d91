#include <doctest.h>

#include <cmath>
#include <numbers>

#include "chartml/errors.hpp"
#include "chartml/resample.hpp"
#include "chartml/rng.hpp"

using namespace chartml;

namespace {

RasterImage image_of(int side, float value) {
    RasterImage img = RasterImage::blank(side, side);
    std::fill(img.pixels.begin(), img.pixels.end(), value);
    return img;
}

RasterImage checkerboard(int side) {
    RasterImage img = RasterImage::blank(side, side);
    for (int y = 0; y < side; ++y)
        for (int x = 0; x < side; ++x) img.set(x, y, static_cast<float>((x + y) % 2));
    return img;
}

// Direct 2-D product-kernel evaluation; no separable passes.
double direct_lanczos_sample(const RasterImage& src, int dst, int ox, int oy) {
    const double scale = static_cast<double>(src.width) / dst;
    const double support = 3.0 * scale;
    const double cx = (ox + 0.5) * scale;
    const double cy = (oy + 0.5) * scale;
    double acc = 0.0, wsum = 0.0;
    for (int j = static_cast<int>(std::floor(cy - support)) - 1;
         j <= static_cast<int>(std::ceil(cy + support)); ++j) {
        const double wy = lanczos_kernel((j + 0.5 - cy) / scale, 3);
        if (wy == 0.0) continue;
        for (int i = static_cast<int>(std::floor(cx - support)) - 1;
             i <= static_cast<int>(std::ceil(cx + support)); ++i) {
            const double wx = lanczos_kernel((i + 0.5 - cx) / scale, 3);
            if (wx == 0.0) continue;
            const int si = std::clamp(i, 0, src.width - 1);
            const int sj = std::clamp(j, 0, src.height - 1);
            acc += wx * wy * static_cast<double>(src.at(si, sj));
            wsum += wx * wy;
        }
    }
    return acc / wsum;
}

}  // namespace

TEST_CASE("kernel values") {
    CHECK(lanczos_kernel(0.0) == 1.0);
    CHECK(lanczos_kernel(1.0) == 0.0);
    CHECK(lanczos_kernel(2.0) == 0.0);
    CHECK(lanczos_kernel(-1.0) == 0.0);
    CHECK(lanczos_kernel(3.0) == 0.0);
    CHECK(lanczos_kernel(17.5) == 0.0);

    // direct evaluation of sinc(x) * sinc(x/3) at x = 0.5
    const double px = std::numbers::pi * 0.5;
    const double expected = (std::sin(px) / px) * (std::sin(px / 3.0) / (px / 3.0));
    CHECK(lanczos_kernel(0.5) == doctest::Approx(expected).epsilon(1e-15));
    CHECK(lanczos_kernel(0.5) == doctest::Approx(0.6079).epsilon(1e-4));
    CHECK(lanczos_kernel(-0.5) == lanczos_kernel(0.5));  // even

    CHECK_THROWS_AS(lanczos_kernel(0.5, 0), UsageError);
}

TEST_CASE("constants survive downscaling exactly") {
    for (float c : {0.0f, 0.25f, 0.5f, 0.7031f, 1.0f}) {
        const auto src = image_of(240, c);
        for (int target : {5, 8, 13, 21, 30, 50, 80}) {
            const auto out = downscale(src, target);
            REQUIRE(out.width == target);
            for (float v : out.pixels)
                CHECK(std::abs(static_cast<double>(v) - static_cast<double>(c)) <= 1e-9);
        }
    }
}

TEST_CASE("equal-size downscale is the identity") {
    Rng rng(9);
    RasterImage src = RasterImage::blank(64, 64);
    for (auto& v : src.pixels) v = static_cast<float>(rng.uniform01());
    const auto out = downscale(src, 64);
    CHECK(out.pixels == src.pixels);
}

TEST_CASE("fine checkerboard averages to one half") {
    const auto out = downscale(checkerboard(240), 30);
    double mean = 0.0;
    for (float v : out.pixels) {
        CHECK(v >= 0.0f);
        CHECK(v <= 1.0f);
        mean += static_cast<double>(v);
    }
    mean /= static_cast<double>(out.pixels.size());
    CHECK(std::abs(mean - 0.5) <= 0.05);
}

TEST_CASE("separable result matches the direct 2-d kernel sum") {
    Rng rng(10);
    RasterImage src = RasterImage::blank(24, 24);
    // smooth low-frequency content, so no clamping is involved
    for (int y = 0; y < 24; ++y)
        for (int x = 0; x < 24; ++x)
            src.set(x, y,
                    static_cast<float>(0.5 + 0.3 * std::sin(0.3 * x) * std::cos(0.25 * y)));
    const auto out = downscale(src, 6);
    for (int y = 0; y < 6; ++y)
        for (int x = 0; x < 6; ++x)
            CHECK(static_cast<double>(out.at(x, y)) ==
                  doctest::Approx(direct_lanczos_sample(src, 6, x, y)).epsilon(1e-6));
}

TEST_CASE("downscale is linear before clamping") {
    RasterImage a = RasterImage::blank(48, 48), b = RasterImage::blank(48, 48);
    for (int y = 0; y < 48; ++y) {
        for (int x = 0; x < 48; ++x) {
            a.set(x, y, static_cast<float>(x) / 94.0f);
            b.set(x, y, static_cast<float>(y) / 94.0f);
        }
    }
    RasterImage mix = RasterImage::blank(48, 48);
    for (std::size_t i = 0; i < mix.pixels.size(); ++i)
        mix.pixels[i] = 0.4f * a.pixels[i] + 0.6f * b.pixels[i];

    const auto da = downscale(a, 12);
    const auto db = downscale(b, 12);
    const auto dmix = downscale(mix, 12);
    for (std::size_t i = 0; i < dmix.pixels.size(); ++i) {
        const double expected =
            0.4 * static_cast<double>(da.pixels[i]) + 0.6 * static_cast<double>(db.pixels[i]);
        CHECK(static_cast<double>(dmix.pixels[i]) == doctest::Approx(expected).epsilon(1e-6));
    }
}

TEST_CASE("upscaling is rejected, output is bit-stable") {
    const auto src = image_of(30, 0.5f);
    CHECK_THROWS_AS(downscale(src, 31), UsageError);
    CHECK_THROWS_AS(downscale(src, 1), UsageError);

    const auto board = checkerboard(120);
    const auto a = downscale(board, 17);
    const auto b = downscale(board, 17);
    CHECK(a.pixels == b.pixels);
}
