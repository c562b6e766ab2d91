#include "chartml/plot.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

namespace chartml {

namespace {

// 3x5 glyphs, one byte per row, low three bits used (bit 2 = left column).
struct Glyph {
    char c;
    unsigned char rows[5];
};

constexpr Glyph kGlyphs[] = {
    {'0', {0b111, 0b101, 0b101, 0b101, 0b111}}, {'1', {0b010, 0b110, 0b010, 0b010, 0b111}},
    {'2', {0b111, 0b001, 0b111, 0b100, 0b111}}, {'3', {0b111, 0b001, 0b111, 0b001, 0b111}},
    {'4', {0b101, 0b101, 0b111, 0b001, 0b001}}, {'5', {0b111, 0b100, 0b111, 0b001, 0b111}},
    {'6', {0b111, 0b100, 0b111, 0b101, 0b111}}, {'7', {0b111, 0b001, 0b001, 0b010, 0b010}},
    {'8', {0b111, 0b101, 0b111, 0b101, 0b111}}, {'9', {0b111, 0b101, 0b111, 0b001, 0b111}},
    {'.', {0b000, 0b000, 0b000, 0b000, 0b010}}, {'-', {0b000, 0b000, 0b111, 0b000, 0b000}},
    {'%', {0b101, 0b001, 0b010, 0b100, 0b101}}, {'=', {0b000, 0b111, 0b000, 0b111, 0b000}},
    {'A', {0b010, 0b101, 0b111, 0b101, 0b101}}, {'B', {0b110, 0b101, 0b110, 0b101, 0b110}},
    {'C', {0b011, 0b100, 0b100, 0b100, 0b011}}, {'D', {0b110, 0b101, 0b101, 0b101, 0b110}},
    {'E', {0b111, 0b100, 0b110, 0b100, 0b111}}, {'F', {0b111, 0b100, 0b110, 0b100, 0b100}},
    {'G', {0b011, 0b100, 0b101, 0b101, 0b011}}, {'H', {0b101, 0b101, 0b111, 0b101, 0b101}},
    {'I', {0b111, 0b010, 0b010, 0b010, 0b111}}, {'J', {0b001, 0b001, 0b001, 0b101, 0b010}},
    {'K', {0b101, 0b110, 0b100, 0b110, 0b101}}, {'L', {0b100, 0b100, 0b100, 0b100, 0b111}},
    {'M', {0b101, 0b111, 0b111, 0b101, 0b101}}, {'N', {0b101, 0b111, 0b111, 0b111, 0b101}},
    {'O', {0b010, 0b101, 0b101, 0b101, 0b010}}, {'P', {0b110, 0b101, 0b110, 0b100, 0b100}},
    {'Q', {0b010, 0b101, 0b101, 0b110, 0b011}}, {'R', {0b110, 0b101, 0b110, 0b110, 0b101}},
    {'S', {0b011, 0b100, 0b010, 0b001, 0b110}}, {'T', {0b111, 0b010, 0b010, 0b010, 0b010}},
    {'U', {0b101, 0b101, 0b101, 0b101, 0b111}}, {'V', {0b101, 0b101, 0b101, 0b101, 0b010}},
    {'W', {0b101, 0b101, 0b111, 0b111, 0b101}}, {'X', {0b101, 0b101, 0b010, 0b101, 0b101}},
    {'Y', {0b101, 0b101, 0b010, 0b010, 0b010}}, {'Z', {0b111, 0b001, 0b010, 0b100, 0b111}},
};

const Glyph* find_glyph(char c) {
    const char u = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    for (const Glyph& g : kGlyphs)
        if (g.c == u) return &g;
    return nullptr;
}

}  // namespace

Chart::Chart(int width, int height, int margin)
    : image_(RasterImage::blank(width, height)), margin_(margin) {}

void Chart::set_world(double x0, double x1, double y0, double y1) {
    x0_ = x0;
    x1_ = x1;
    y0_ = y0;
    y1_ = y1;
}

int Chart::px_of(double x) const {
    const double w = static_cast<double>(image_.width - 2 * margin_);
    return margin_ + static_cast<int>(std::lround((x - x0_) / (x1_ - x0_) * w));
}

int Chart::py_of(double y) const {
    const double h = static_cast<double>(image_.height - 2 * margin_);
    return margin_ + static_cast<int>(std::lround((y1_ - y) / (y1_ - y0_) * h));
}

void Chart::frame(float ink) {
    const int l = margin_, r = image_.width - margin_;
    const int t = margin_, b = image_.height - margin_;
    for (int x = l; x <= r; ++x) {
        image_.set(x, t, ink);
        image_.set(x, b, ink);
    }
    for (int y = t; y <= b; ++y) {
        image_.set(l, y, ink);
        image_.set(r, y, ink);
    }
}

void Chart::x_tick(double x, const std::string& label, float ink) {
    const int px = px_of(x);
    const int b = image_.height - margin_;
    for (int y = b; y <= b + 4; ++y) image_.set(px, y, ink);
    text(px - static_cast<int>(label.size()) * 2, b + 7, label, ink);
}

void Chart::y_tick(double y, const std::string& label, float ink) {
    const int py = py_of(y);
    const int l = margin_;
    for (int x = l - 4; x <= l; ++x) image_.set(x, py, ink);
    text(l - 6 - static_cast<int>(label.size()) * 4, py - 2, label, ink);
}

void Chart::polyline(std::span<const double> xs, std::span<const double> ys, float ink,
                     int stroke) {
    for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
        int ax = px_of(xs[i]), ay = py_of(ys[i]);
        int bx = px_of(xs[i + 1]), by = py_of(ys[i + 1]);
        const int steps = std::max({std::abs(bx - ax), std::abs(by - ay), 1});
        for (int s = 0; s <= steps; ++s) {
            const double t = static_cast<double>(s) / static_cast<double>(steps);
            const int x = ax + static_cast<int>(std::lround(t * (bx - ax)));
            const int y = ay + static_cast<int>(std::lround(t * (by - ay)));
            for (int d = 0; d < stroke; ++d) image_.set(x, y + d, ink);
        }
    }
}

void Chart::hline(double y, float ink) {
    const int py = py_of(y);
    for (int x = margin_; x <= image_.width - margin_; ++x) image_.set(x, py, ink);
}

void Chart::bar(double x0, double x1, double y, float ink) {
    const int a = px_of(x0), b = px_of(x1);
    const int top = py_of(y), bottom = py_of(y0_);
    for (int x = a; x <= b; ++x)
        for (int yy = top; yy <= bottom; ++yy) image_.set(x, yy, ink);
}

void Chart::error_bar(double x, double y, double half_span, float ink) {
    const int px = px_of(x);
    const int top = py_of(y + half_span), bottom = py_of(y - half_span);
    for (int yy = top; yy <= bottom; ++yy) image_.set(px, yy, ink);
    for (int dx = -3; dx <= 3; ++dx) {
        image_.set(px + dx, top, ink);
        image_.set(px + dx, bottom, ink);
    }
}

void Chart::marker_triangle(double x, double y, int half_px, bool up, bool filled, float ink) {
    const int cx = px_of(x), cy = py_of(y);
    for (int row = 0; row <= half_px * 2; ++row) {
        // width grows from the tip toward the base
        const int extent = row / 2;
        const int yy = up ? cy - half_px + row : cy + half_px - row;
        if (filled) {
            for (int dx = -extent; dx <= extent; ++dx) image_.set(cx + dx, yy, ink);
        } else {
            image_.set(cx - extent, yy, ink);
            image_.set(cx + extent, yy, ink);
            if (row == half_px * 2)
                for (int dx = -extent; dx <= extent; ++dx) image_.set(cx + dx, yy, ink);
        }
    }
}

void Chart::text(int px, int py, const std::string& s, float ink, int scale) {
    int cursor = px;
    for (char c : s) {
        if (const Glyph* g = find_glyph(c)) {
            for (int row = 0; row < 5; ++row) {
                for (int col = 0; col < 3; ++col) {
                    if (!(g->rows[row] & (0b100 >> col))) continue;
                    for (int sy = 0; sy < scale; ++sy)
                        for (int sx = 0; sx < scale; ++sx)
                            image_.set(cursor + col * scale + sx, py + row * scale + sy, ink);
                }
            }
        }
        cursor += 4 * scale;  // 3-px glyph + 1-px gap
    }
}

void Chart::text_at(double x, double y, const std::string& s, float ink, int scale) {
    text(px_of(x), py_of(y), s, ink, scale);
}

}  // namespace chartml
