#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "specaug/corruption.hpp"
#include "specaug/image.hpp"
#include "specaug/rng.hpp"

namespace specaug {

/// One sampled affine transform: optional flips, rotation about the image
/// center, isotropic scaling.
struct AffineParams {
  bool hflip = false;
  bool vflip = false;
  double rotation_deg = 0.0;
  double scale = 1.0;
};

/// Coarse grid of per-point displacement vectors (pixels). Row-major,
/// component order (dy, dx).
struct DisplacementGrid {
  std::size_t grid_rows = 0;
  std::size_t grid_cols = 0;
  std::vector<double> dy;
  std::vector<double> dx;

  DisplacementGrid() = default;
  DisplacementGrid(std::size_t r, std::size_t c)
      : grid_rows(r), grid_cols(c), dy(r * c, 0.0), dx(r * c, 0.0) {}
};

/// Dense per-pixel displacement field (backward mapping: the field says where
/// each output pixel reads from, relative to itself).
struct DenseField {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> dy;
  std::vector<double> dx;

  DenseField() = default;
  DenseField(std::size_t r, std::size_t c) : rows(r), cols(c), dy(r * c, 0.0), dx(r * c, 0.0) {}
};

/// R exact copies.
std::vector<Image> replicate_simple(const Image& img, int replications);

/// Gamma exponent for replication r (1-based) of R, spaced linearly across
/// [gamma_lo, gamma_hi] including both endpoints; R == 1 uses the midpoint.
double gamma_for_replication(int r, int replications, double gamma_lo, double gamma_hi);

/// Normalize into [0,1] via the window, raise to gamma, map back.
Image apply_gamma(const Image& img, double gamma, double window_lo, double window_hi);

std::vector<Image> gamma_augment(const Image& img, int replications, double gamma_lo,
                                 double gamma_hi, double window_lo, double window_hi);

/// Draw order: hflip, vflip, rotation, scale.
AffineParams sample_affine_params(NoiseStream& stream, const AugmentSpec& spec);

/// Applies the map (flips, then rotation, then scaling, all about the image
/// center) to the image by backward mapping with bilinear sampling;
/// out-of-support pixels take the image minimum. Labels follow the same map
/// by nearest neighbor on patch centers; patches whose center leaves the
/// support become outside.
std::pair<Image, LabelGrid> apply_affine(const Image& img, const LabelGrid& labels,
                                         const AffineParams& params);

std::vector<std::pair<Image, LabelGrid>> affine_augment(const Image& img,
                                                        const LabelGrid& labels,
                                                        const AugmentSpec& spec,
                                                        std::uint64_t image_index,
                                                        std::uint64_t stage = 0);

/// Displacement magnitude cap for replication r (1-based) of R, ramping
/// linearly from disp_min to disp_max inclusive; R == 1 uses disp_max.
double elastic_cap_for_replication(int r, int replications, double disp_min, double disp_max);

/// Per grid point: direction uniform in angle, magnitude uniform in [0, cap].
DisplacementGrid sample_displacement_grid(NoiseStream& stream, std::size_t grid_rows,
                                          std::size_t grid_cols, double cap);

/// Upsample the coarse grid (corners anchored to the image corners) to a
/// dense per-pixel field with natural cubic spline interpolation per axis.
/// Exact at the grid points.
DenseField densify_displacement(const DisplacementGrid& grid, std::size_t rows,
                                std::size_t cols);

/// Backward-warp by the dense field with bilinear sampling; sample
/// coordinates are clamped to the image rectangle (edge fill). Labels follow
/// the same field by nearest neighbor on patch centers.
std::pair<Image, LabelGrid> apply_displacement(const Image& img, const LabelGrid& labels,
                                               const DenseField& field);

/// Requires the grid spacing to exceed spec.disp_max.
std::vector<std::pair<Image, LabelGrid>> elastic_augment(const Image& img,
                                                         const LabelGrid& labels,
                                                         const AugmentSpec& spec,
                                                         std::uint64_t image_index,
                                                         std::uint64_t stage = 0);

}  // namespace specaug
