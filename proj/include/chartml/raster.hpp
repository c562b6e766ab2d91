#pragma once

#include <optional>
#include <string>
#include <vector>

#include "chartml/labeler.hpp"

namespace chartml {

// The five visual designs. All render the same window; they differ in how
// (or whether) candle bodies encode time and volume.
enum class RenderStyle {
    CandleOhlc,        // plain candlesticks
    CloseLine,         // close values as a 2-px polyline, no candles
    CandleTimeWidth,   // body width grows linearly toward the most recent day
    CandlePrevClose,   // candles plus the previous close as a slot-wide line
    CandleVolumeWidth  // body width min-max scaled by the day's volume
};

constexpr std::array<RenderStyle, 5> kAllStyles = {
    RenderStyle::CandleOhlc, RenderStyle::CloseLine, RenderStyle::CandleTimeWidth,
    RenderStyle::CandlePrevClose, RenderStyle::CandleVolumeWidth};

std::string to_string(RenderStyle style);
std::optional<RenderStyle> parse_style(std::string_view name);

struct ImageMeta {
    RenderStyle style = RenderStyle::CandleOhlc;
    RuleKind rule = RuleKind::BB;
    std::string ticker;
    Date end_date;
};

// Grayscale pixel grid; 0.0 = background (white), 1.0 = ink (black).
struct RasterImage {
    int width = 0;
    int height = 0;
    std::vector<float> pixels;  // row-major, size width * height
    std::optional<ImageMeta> meta;

    static RasterImage blank(int width, int height);

    float at(int x, int y) const {
        return pixels[static_cast<std::size_t>(y) * static_cast<std::size_t>(width) +
                      static_cast<std::size_t>(x)];
    }
    void set(int x, int y, float v) {
        if (x < 0 || y < 0 || x >= width || y >= height) return;
        pixels[static_cast<std::size_t>(y) * static_cast<std::size_t>(width) +
               static_cast<std::size_t>(x)] = v;
    }
};

// Per-day horizontal slot, columns [x0, x1).
struct SlotGeom {
    int x0 = 0;
    int x1 = 0;
    double center() const { return 0.5 * (x0 + x1); }
    int span() const { return x1 - x0; }
};

// Column layout plus the tight-crop price-to-row mapping: max(High) maps to
// row 0 and min(Low) to height-1. A degenerate range maps every price to the
// middle row.
struct Layout {
    int width = 0;
    int height = 0;
    double max_high = 0.0;
    double min_low = 0.0;
    std::vector<SlotGeom> slots;

    double row_of(double price) const;  // real-valued row coordinate
    int row_index(double price) const;  // rounded half away from zero, clamped
};

Layout make_layout(const WindowSample& window, int width, int height);

// Deterministic rasterization: a pixel is ink when its center lies inside the
// drawn shape. Canvas must be at least 8x8.
RasterImage render(const WindowSample& window, RenderStyle style, int width, int height);

// Native resolution used before Lanczos downscaling.
constexpr int kNativeCanvasSide = 240;

}  // namespace chartml
