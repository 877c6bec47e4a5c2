#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "specaug/image.hpp"

namespace specaug {

/// Orthonormal two-channel filter bank. For the bases shipped here the
/// synthesis filters equal the analysis filters (the transform is orthogonal
/// and synthesis is its adjoint); both sets are kept so the structure can
/// carry biorthogonal pairs if ever needed.
struct WaveletBasis {
  std::string name;
  std::vector<double> analysis_lowpass;
  std::vector<double> analysis_highpass;
  std::vector<double> synthesis_lowpass;
  std::vector<double> synthesis_highpass;

  static WaveletBasis haar();
  static WaveletBasis db4();
  static WaveletBasis from_name(const std::string& name);

  /// Checks the lowpass-sums-to-sqrt(2) invariant.
  void validate() const;
};

/// One coefficient band of a wavelet decomposition.
struct Band {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> values;

  Band() = default;
  Band(std::size_t r, std::size_t c) : rows(r), cols(c), values(r * c, 0.0) {}

  double& at(std::size_t i, std::size_t j) { return values[i * cols + j]; }
  double at(std::size_t i, std::size_t j) const { return values[i * cols + j]; }
  bool same_shape(const Band& o) const { return rows == o.rows && cols == o.cols; }
};

/// Detail bands of one decomposition level.
///
/// Orientation convention (fixed, test-anchored): h is lowpass along the row
/// index and highpass along the column index (it responds to variation across
/// a row, e.g. [[1,-1],[1,-1]] puts all energy in h); v is the transpose
/// arrangement; d is highpass along both axes.
struct DetailBands {
  Band h;
  Band v;
  Band d;
};

/// Multilevel 2D wavelet decomposition. details[0] is the coarsest level
/// (same scale as approx); details.back() is the finest.
struct WaveletPyramid {
  std::size_t levels = 0;
  std::size_t original_rows = 0;
  std::size_t original_cols = 0;
  Band approx;
  std::vector<DetailBands> details;

  std::size_t total_coefficients() const;
};

/// Multilevel separable DWT with periodic boundary extension. Odd-sized
/// bands are padded by repeating the last row/column before each analysis
/// level and cropped again on synthesis, so reconstruction stays exact.
/// Requires levels >= 1 and 2^levels <= min(rows, cols).
WaveletPyramid dwt2_forward(const Image& img, const WaveletBasis& basis, std::size_t levels);

/// Inverse of dwt2_forward. Throws on band shape inconsistencies.
Image dwt2_inverse(const WaveletPyramid& pyramid, const WaveletBasis& basis);

}  // namespace specaug
