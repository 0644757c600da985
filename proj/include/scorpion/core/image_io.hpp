#pragma once

#include <filesystem>
#include <utility>

#include "scorpion/core/image.hpp"

namespace scorpion {

/// Loads an 8-bit RGB image, PNG or binary PPM (P6), mapping bytes to [0,1]
/// by v/255. Distinct error kinds: NotFound (missing file),
/// UnsupportedFormat (not PNG/PPM or wrong depth/color type),
/// TruncatedPayload (header fine, pixel data short or corrupt).
RasterImage load_image(const std::filesystem::path& path);

/// Saves as 8-bit RGB, quantizing round-half-up: byte = floor(v*255 + 0.5).
/// Format picked by extension: .png -> PNG, .ppm -> PPM P6.
void save_image(const RasterImage& img, const std::filesystem::path& path);

/// Reads only the header and returns (width, height). Used for cheap
/// manifest validation without decoding pixels.
std::pair<int, int> read_image_size(const std::filesystem::path& path);

/// Label masks are stored as binary PGM (P5), one byte per pixel holding the
/// class index. num_classes is supplied by the caller and validated.
LabelMask load_mask(const std::filesystem::path& path, int num_classes);
void save_mask(const LabelMask& mask, const std::filesystem::path& path);

uint8_t quantize_channel(float v);

}  // namespace scorpion
