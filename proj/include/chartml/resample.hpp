#pragma once

#include "chartml/raster.hpp"

namespace chartml {

// Windowed sinc: sinc(x) * sinc(x/a) for |x| < a, 1 at x = 0, 0 beyond the
// support and at the remaining integers (exact sinc zeros).
double lanczos_kernel(double x, int lobes = 3);

// Separable Lanczos-3 minification to a square target (horizontal pass then
// vertical). When shrinking, the kernel support is stretched by the scale
// factor; per-output-pixel weights are normalized to sum to 1; source
// coordinates are clamped at the edges. Output is clamped to [0, 1] once,
// after both passes. Requires target <= source on both axes (no upscaling);
// equal size is the identity.
RasterImage downscale(const RasterImage& image, int target_side);

}  // namespace chartml
