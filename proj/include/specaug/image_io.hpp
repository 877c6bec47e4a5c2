#pragma once

#include <filesystem>
#include <string>

#include "specaug/image.hpp"

namespace specaug {

enum class ImageFormat { kPgm16, kRawF64 };

ImageFormat image_format_from_string(const std::string& s);

/// Guess the format from the file extension (.pgm -> pgm16, else rawf64).
ImageFormat image_format_from_path(const std::filesystem::path& path);

/// Reads a file into an Image without rescaling pixel values.
///
/// pgm16:  binary PGM (P5), samples become doubles as stored.
/// rawf64: magic "SPA1", two uint32 little-endian dims (rows, cols), then
///         rows*cols little-endian float64 values. Lossless.
Image load_image(const std::filesystem::path& path, ImageFormat format);

/// Writes an Image. rawf64 round-trips bit-exactly; pgm16 rounds half-to-even
/// and clamps to [0, 65535] (no auto-windowing).
void save_image(const Image& img, const std::filesystem::path& path, ImageFormat format);

/// Label CSV with header `row,col,label`; label strings are
/// healthy|diseased|outside. Every lattice cell must be present.
LabelGrid load_label_grid(const std::filesystem::path& path, std::size_t patch_size);
void save_label_grid(const LabelGrid& grid, const std::filesystem::path& path);

/// Reads an image file as a binary mask: pixels > threshold map to 1.
PixelMask load_pixel_mask(const std::filesystem::path& path, ImageFormat format,
                          double threshold = 0.5);
void save_pixel_mask(const PixelMask& mask, const std::filesystem::path& path,
                     ImageFormat format);

}  // namespace specaug
