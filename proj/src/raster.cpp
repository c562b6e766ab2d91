#include "chartml/raster.hpp"

#include <algorithm>
#include <cmath>

#include "chartml/errors.hpp"

namespace chartml {

namespace {

// Pixel-center rule: column c is inside [xa, xb) iff xa <= c + 0.5 < xb.
int first_col(double xa) { return static_cast<int>(std::ceil(xa - 0.5)); }
int end_col(double xb) { return static_cast<int>(std::ceil(xb - 0.5)); }

int wick_column(const SlotGeom& slot) {
    int c = static_cast<int>(std::floor(slot.center()));
    return std::clamp(c, slot.x0, slot.x1 - 1);
}

void fill_rows(RasterImage& img, int x, int y0, int y1, float v) {
    for (int y = y0; y <= y1; ++y) img.set(x, y, v);
}

void fill_rect(RasterImage& img, int x0, int x1_excl, int y0, int y1, float v) {
    for (int x = x0; x < x1_excl; ++x) fill_rows(img, x, y0, y1, v);
}

struct BodyGeom {
    int c0, c1;  // columns [c0, c1)
    int r0, r1;  // rows [r0, r1] inclusive, r0 <= r1
};

BodyGeom body_geometry(const Layout& layout, const SlotGeom& slot, double width_fraction,
                       const OhlcvBar& bar) {
    const double w = width_fraction * slot.span();
    const double xc = slot.center();
    int c0 = std::max(slot.x0, first_col(xc - 0.5 * w));
    int c1 = std::min(slot.x1, end_col(xc + 0.5 * w));
    if (c0 >= c1) {  // keep at least the wick column
        c0 = wick_column(slot);
        c1 = c0 + 1;
    }
    const int ro = layout.row_index(bar.open);
    const int rc = layout.row_index(bar.close);
    return {c0, c1, std::min(ro, rc), std::max(ro, rc)};
}

void draw_candle(RasterImage& img, const Layout& layout, const SlotGeom& slot,
                 double width_fraction, const OhlcvBar& bar) {
    // Wick first; the body occludes it.
    const int cw = wick_column(slot);
    fill_rows(img, cw, layout.row_index(bar.high), layout.row_index(bar.low), 1.0f);

    const BodyGeom b = body_geometry(layout, slot, width_fraction, bar);
    if (bar.open > bar.close) {
        fill_rect(img, b.c0, b.c1, b.r0, b.r1, 1.0f);
    } else if (bar.open < bar.close) {
        fill_rect(img, b.c0, b.c1, b.r0, b.r1, 0.0f);
        for (int x = b.c0; x < b.c1; ++x) {
            img.set(x, b.r0, 1.0f);
            img.set(x, b.r1, 1.0f);
        }
        fill_rows(img, b.c0, b.r0, b.r1, 1.0f);
        fill_rows(img, b.c1 - 1, b.r0, b.r1, 1.0f);
    } else {
        fill_rect(img, b.c0, b.c1, b.r0, b.r0, 1.0f);  // doji: one horizontal line
    }
}

void draw_close_polyline(RasterImage& img, const Layout& layout, const WindowSample& window) {
    const std::size_t n = window.bars.size();
    // Stroke is two rows tall: floor(y - 0.5) and the row below it.
    auto stroke_top = [](double y) { return static_cast<int>(std::floor(y - 0.5)); };

    if (n == 1) {
        const int x = wick_column(layout.slots[0]);
        const int r = stroke_top(layout.row_of(window.bars[0].close));
        img.set(x, r, 1.0f);
        img.set(x, r + 1, 1.0f);
        return;
    }

    for (std::size_t i = 0; i + 1 < n; ++i) {
        const double xa = layout.slots[i].center();
        const double xb = layout.slots[i + 1].center();
        const double ya = layout.row_of(window.bars[i].close);
        const double yb = layout.row_of(window.bars[i + 1].close);
        const int ca = static_cast<int>(std::floor(xa));
        const int cb = static_cast<int>(std::floor(xb));
        int prev_top = 0;
        for (int c = ca; c <= cb; ++c) {
            double t = (static_cast<double>(c) + 0.5 - xa) / (xb - xa);
            t = std::clamp(t, 0.0, 1.0);
            const int top = stroke_top(ya + t * (yb - ya));
            img.set(c, top, 1.0f);
            img.set(c, top + 1, 1.0f);
            if (c > ca && std::abs(top - prev_top) > 1) {
                const int lo = std::min(prev_top, top);
                const int hi = std::max(prev_top, top) + 1;
                fill_rows(img, c, lo, hi, 1.0f);
            }
            prev_top = top;
        }
    }
}

}  // namespace

std::string to_string(RenderStyle style) {
    switch (style) {
        case RenderStyle::CandleOhlc: return "candle";
        case RenderStyle::CloseLine: return "closeline";
        case RenderStyle::CandleTimeWidth: return "timewidth";
        case RenderStyle::CandlePrevClose: return "prevclose";
        case RenderStyle::CandleVolumeWidth: return "volumewidth";
    }
    return "?";
}

std::optional<RenderStyle> parse_style(std::string_view name) {
    for (RenderStyle s : kAllStyles)
        if (name == to_string(s)) return s;
    return std::nullopt;
}

RasterImage RasterImage::blank(int width, int height) {
    RasterImage img;
    img.width = width;
    img.height = height;
    img.pixels.assign(static_cast<std::size_t>(width) * static_cast<std::size_t>(height),
                      0.0f);
    return img;
}

double Layout::row_of(double price) const {
    if (max_high == min_low) return 0.5 * (height - 1);
    return (max_high - price) * (height - 1) / (max_high - min_low);
}

int Layout::row_index(double price) const {
    const long r = std::lround(row_of(price));
    return static_cast<int>(std::clamp(r, 0L, static_cast<long>(height - 1)));
}

Layout make_layout(const WindowSample& window, int width, int height) {
    if (width < 8 || height < 8) throw UsageError("canvas must be at least 8x8");
    if (window.bars.empty()) throw DataError("cannot lay out an empty window");

    Layout layout;
    layout.width = width;
    layout.height = height;
    layout.max_high = window.bars[0].high;
    layout.min_low = window.bars[0].low;
    for (const auto& bar : window.bars) {
        layout.max_high = std::max(layout.max_high, bar.high);
        layout.min_low = std::min(layout.min_low, bar.low);
    }
    const int n = static_cast<int>(window.bars.size());
    layout.slots.reserve(window.bars.size());
    for (int i = 0; i < n; ++i) {
        layout.slots.push_back({i * width / n, (i + 1) * width / n});
    }
    return layout;
}

RasterImage render(const WindowSample& window, RenderStyle style, int width, int height) {
    const Layout layout = make_layout(window, width, height);
    RasterImage img = RasterImage::blank(width, height);
    img.meta = ImageMeta{style, window.rule, window.ticker, window.end_date};

    const std::size_t n = window.bars.size();

    double vol_min = 0.0, vol_max = 0.0;
    if (style == RenderStyle::CandleVolumeWidth) {
        vol_min = vol_max = window.bars[0].volume;
        for (const auto& bar : window.bars) {
            vol_min = std::min(vol_min, bar.volume);
            vol_max = std::max(vol_max, bar.volume);
        }
    }

    auto width_fraction = [&](std::size_t i) {
        switch (style) {
            case RenderStyle::CandleTimeWidth:
                return n > 1 ? 0.2 + 0.8 * static_cast<double>(i) /
                                         static_cast<double>(n - 1)
                             : 1.0;
            case RenderStyle::CandleVolumeWidth:
                return vol_max > vol_min
                           ? 0.2 + 0.8 * (window.bars[i].volume - vol_min) /
                                       (vol_max - vol_min)
                           : 1.0;
            default:
                return 0.8;
        }
    };

    if (style == RenderStyle::CloseLine) {
        draw_close_polyline(img, layout, window);
        return img;
    }

    for (std::size_t i = 0; i < n; ++i) {
        draw_candle(img, layout, layout.slots[i], width_fraction(i), window.bars[i]);
    }

    if (style == RenderStyle::CandlePrevClose) {
        for (std::size_t i = 1; i < n; ++i) {
            const int r = layout.row_index(window.bars[i - 1].close);
            const SlotGeom& slot = layout.slots[i];
            fill_rect(img, slot.x0, slot.x1, r, r, 1.0f);
        }
    }
    return img;
}

}  // namespace chartml
