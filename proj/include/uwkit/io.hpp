#pragma once

#include <cstdint>
#include <filesystem>

#include "uwkit/image.hpp"

namespace uwkit {

/// Reads an 8-bit PNG or JPEG (format sniffed from the file signature).
/// Samples map to [0,1] by v/255; alpha is dropped, gray is expanded.
ImageRGB load_image(const std::filesystem::path& path);

/// Writes 8-bit RGB; JPEG when the extension is .jpg/.jpeg, PNG otherwise.
/// Samples are quantized as round(v*255) clamped to [0,255].
void save_image(const ImageRGB& img, const std::filesystem::path& path);

/// Writes an 8-bit grayscale PNG (values clamped to [0,1]).
void save_gray(const ImageGray& img, const std::filesystem::path& path);

/// Reads an 8-bit PNG/JPEG as gray (Rec.601 luma of RGB sources).
ImageGray load_gray(const std::filesystem::path& path);

std::uint8_t to_byte(double v);

bool is_image_file(const std::filesystem::path& path);

}  // namespace uwkit
