#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "specaug/errors.hpp"

namespace specaug {

/// A 2D grid of real-valued pixels, row-major, 64-bit precision.
/// Intensities are kept raw (e.g. Hounsfield units); nothing rescales
/// behind the caller's back.
class Image {
 public:
  Image() = default;

  Image(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {
    check_shape(rows, cols);
  }

  Image(std::size_t rows, std::size_t cols, std::vector<double> data)
      : rows_(rows), cols_(cols), data_(std::move(data)) {
    check_shape(rows, cols);
    if (data_.size() != rows_ * cols_) {
      throw ValidationError("Image: pixel count does not match rows*cols");
    }
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t size() const { return data_.size(); }
  bool empty() const { return data_.empty(); }

  double& at(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double at(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::vector<double>& data() { return data_; }
  const std::vector<double>& data() const { return data_; }

  bool same_shape(const Image& other) const {
    return rows_ == other.rows_ && cols_ == other.cols_;
  }

  /// Throws if any pixel is NaN or infinite.
  void require_finite(const std::string& context) const {
    for (double v : data_) {
      if (!std::isfinite(v)) {
        throw ValidationError(context + ": non-finite pixel value");
      }
    }
  }

  double min_value() const {
    double m = data_.empty() ? 0.0 : data_[0];
    for (double v : data_) m = std::min(m, v);
    return m;
  }

  double max_value() const {
    double m = data_.empty() ? 0.0 : data_[0];
    for (double v : data_) m = std::max(m, v);
    return m;
  }

  bool operator==(const Image& other) const = default;

 private:
  static void check_shape(std::size_t rows, std::size_t cols) {
    if (rows == 0 || cols == 0) {
      throw ValidationError("Image: dimensions must be at least 1x1");
    }
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

/// Binary per-pixel map paired with an Image (1 = diseased prediction/label).
class PixelMask {
 public:
  PixelMask() = default;

  PixelMask(std::size_t rows, std::size_t cols, std::uint8_t fill = 0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t size() const { return data_.size(); }

  std::uint8_t& at(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  std::uint8_t at(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::vector<std::uint8_t>& data() { return data_; }
  const std::vector<std::uint8_t>& data() const { return data_; }

  bool operator==(const PixelMask& other) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::uint8_t> data_;
};

enum class PatchLabel : std::uint8_t { kHealthy = 0, kDiseased = 1, kOutside = 2 };

std::string to_string(PatchLabel label);
PatchLabel patch_label_from_string(const std::string& s);

/// Per-patch class labels on a fixed lattice over an image. The lattice has
/// ceil(N/patch_size) x ceil(M/patch_size) cells; partial cells at the
/// bottom/right edges are legal.
class LabelGrid {
 public:
  LabelGrid() = default;

  LabelGrid(std::size_t grid_rows, std::size_t grid_cols, std::size_t patch_size,
            PatchLabel fill = PatchLabel::kHealthy)
      : grid_rows_(grid_rows),
        grid_cols_(grid_cols),
        patch_size_(patch_size),
        labels_(grid_rows * grid_cols, fill) {
    if (grid_rows == 0 || grid_cols == 0 || patch_size == 0) {
      throw ValidationError("LabelGrid: dimensions and patch size must be positive");
    }
  }

  std::size_t grid_rows() const { return grid_rows_; }
  std::size_t grid_cols() const { return grid_cols_; }
  std::size_t patch_size() const { return patch_size_; }
  std::size_t size() const { return labels_.size(); }

  /// Pixel offset of patch (0,0); always (0,0) in this artifact but kept
  /// explicit so patch<->pixel mapping has one source of truth.
  std::pair<std::size_t, std::size_t> origin() const { return {origin_row_, origin_col_}; }

  PatchLabel& at(std::size_t pr, std::size_t pc) { return labels_[pr * grid_cols_ + pc]; }
  PatchLabel at(std::size_t pr, std::size_t pc) const { return labels_[pr * grid_cols_ + pc]; }

  std::vector<PatchLabel>& labels() { return labels_; }
  const std::vector<PatchLabel>& labels() const { return labels_; }

  bool same_lattice(const LabelGrid& other) const {
    return grid_rows_ == other.grid_rows_ && grid_cols_ == other.grid_cols_ &&
           patch_size_ == other.patch_size_;
  }

  bool has_diseased() const {
    for (PatchLabel l : labels_) {
      if (l == PatchLabel::kDiseased) return true;
    }
    return false;
  }

  /// Lattice shape required to cover a rows x cols image.
  static std::pair<std::size_t, std::size_t> lattice_for(std::size_t rows, std::size_t cols,
                                                         std::size_t patch_size) {
    return {(rows + patch_size - 1) / patch_size, (cols + patch_size - 1) / patch_size};
  }

  bool operator==(const LabelGrid& other) const = default;

 private:
  std::size_t grid_rows_ = 0;
  std::size_t grid_cols_ = 0;
  std::size_t patch_size_ = 20;
  std::size_t origin_row_ = 0;
  std::size_t origin_col_ = 0;
  std::vector<PatchLabel> labels_;
};

/// Maps pixel p to clamp((p - lo)/(hi - lo), 0, 1). Throws if lo >= hi.
Image to_unit_range(const Image& img, double window_lo, double window_hi);

/// Peak signal-to-noise ratio in dB. Peak is the dynamic range of the
/// reference image (max - min); returns +inf for identical images.
double psnr(const Image& reference, const Image& test);

}  // namespace specaug
