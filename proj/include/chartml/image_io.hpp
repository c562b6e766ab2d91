#pragma once

#include <filesystem>
#include <map>
#include <string>

#include "chartml/raster.hpp"

namespace chartml {

// 8-bit grayscale PNG. Ink (1.0) is written as luminance 0 and background
// (0.0) as 255. Optional tEXt chunks carry provenance metadata such as the
// config fingerprint.
void write_png_gray8(const RasterImage& image, const std::filesystem::path& path,
                     const std::map<std::string, std::string>& text = {});

// Raw float image, the lossless on-disk form referenced by dataset
// manifests. Layout (little-endian):
//   bytes 0..3   magic "RIMG"
//   bytes 4..7   uint32 version (1)
//   bytes 8..11  uint32 width
//   bytes 12..15 uint32 height
//   then width*height float32 intensities in [0,1], row-major.
void write_rimg(const RasterImage& image, const std::filesystem::path& path);
RasterImage read_rimg(const std::filesystem::path& path);

}  // namespace chartml
