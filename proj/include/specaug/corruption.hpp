#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "specaug/dct.hpp"
#include "specaug/image.hpp"
#include "specaug/rng.hpp"
#include "specaug/wavelet.hpp"

namespace specaug {

enum class Method { kDct, kDwt, kSimple, kAffine, kIntensity, kElastic };

Method method_from_string(const std::string& s);
std::string to_string(Method m);

/// Full parameter bundle for one augmentation stage. Fields outside the
/// chosen method are ignored by that method.
struct AugmentSpec {
  Method method = Method::kDct;
  int replications = 5;      // R
  double eta = 0.0;          // max noise fraction, in [0, 1]
  std::uint64_t seed = 0;

  // dwt
  std::string wavelet = "haar";
  std::size_t levels = 2;
  bool dwt_details_only = false;

  // intensity
  double gamma_lo = 0.8;
  double gamma_hi = 1.2;
  double window_lo = 0.0;
  double window_hi = 1.0;

  // affine
  double rotation_max_deg = 10.0;
  double scale_lo = 0.95;
  double scale_hi = 1.05;

  // elastic
  std::size_t grid_rows = 4;
  std::size_t grid_cols = 4;
  double disp_min = 1.0;
  double disp_max = 20.0;

  void validate() const;
};

/// The noise fractions used for R replications at maximum fraction eta:
/// [eta*1/R, eta*2/R, ..., eta]. Never includes 0; the last element is
/// exactly eta.
std::vector<double> rho_schedule(int replications, double eta);

/// Adds zero-mean Gaussian noise with standard deviation rho*|coefficient|
/// to every component, one independent draw per component in row-major
/// order. Zero components and rho == 0 leave values untouched.
DctComponents corrupt_dct(const DctComponents& comps, double rho, const NoiseStream& noise);

/// Same contract for a wavelet pyramid. Draw order is fixed: approximation
/// band first, then details coarsest to finest, orientations h, v, d,
/// row-major within each band. With details_only the approximation band is
/// left untouched but keeps its slots in the draw order, so detail draws
/// match the full variant.
WaveletPyramid corrupt_dwt(const WaveletPyramid& pyr, double rho, const NoiseStream& noise,
                           bool details_only = false);

/// One replication of the spectral pipeline: decompose, corrupt at the given
/// rho, reconstruct. replication_index is 1-based and, with (spec.seed,
/// image_index, stage), fully determines the noise.
Image synthesize_one(const Image& img, const AugmentSpec& spec, std::uint64_t image_index,
                     std::uint64_t replication_index, double rho, std::uint64_t stage = 0);

/// The full schedule: R synthetic images, one per rho in
/// rho_schedule(spec.replications, spec.eta), in schedule order.
/// Only the dct and dwt methods are accepted.
std::vector<Image> synthesize(const Image& img, const AugmentSpec& spec,
                              std::uint64_t image_index, std::uint64_t stage = 0);

}  // namespace specaug
