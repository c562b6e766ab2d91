#pragma once

#include <span>
#include <string>

#include "chartml/raster.hpp"

namespace chartml {

// Minimal grayscale chart canvas for the report figures: world-coordinate
// polylines, bars, markers, error bars, and a tiny 3x5 glyph set for tick
// labels. Deterministic by construction.
class Chart {
public:
    Chart(int width, int height, int margin = 36);

    // World rectangle mapped into the canvas inside the margin. y0 is the
    // bottom edge, y1 the top.
    void set_world(double x0, double x1, double y0, double y1);

    void frame(float ink = 1.0f);
    void x_tick(double x, const std::string& label, float ink = 1.0f);
    void y_tick(double y, const std::string& label, float ink = 1.0f);

    void polyline(std::span<const double> xs, std::span<const double> ys, float ink,
                  int stroke = 1);
    void hline(double y, float ink);
    // Vertical bar from the bottom of the world rect up to y, columns [x0, x1].
    void bar(double x0, double x1, double y, float ink);
    void error_bar(double x, double y, double half_span, float ink);
    void marker_triangle(double x, double y, int half_px, bool up, bool filled, float ink);

    // Digits, '.', '-', '%', '=', and letters; anchored at top-left pixel.
    void text(int px, int py, const std::string& s, float ink, int scale = 1);
    void text_at(double x, double y, const std::string& s, float ink, int scale = 1);

    int px_of(double x) const;
    int py_of(double y) const;

    const RasterImage& image() const { return image_; }

private:
    RasterImage image_;
    int margin_;
    double x0_ = 0.0, x1_ = 1.0, y0_ = 0.0, y1_ = 1.0;
};

}  // namespace chartml
