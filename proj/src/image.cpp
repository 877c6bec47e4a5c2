#include "specaug/image.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace specaug {

std::string to_string(PatchLabel label) {
  switch (label) {
    case PatchLabel::kHealthy:
      return "healthy";
    case PatchLabel::kDiseased:
      return "diseased";
    case PatchLabel::kOutside:
      return "outside";
  }
  throw ValidationError("unknown patch label");
}

PatchLabel patch_label_from_string(const std::string& s) {
  if (s == "healthy") return PatchLabel::kHealthy;
  if (s == "diseased") return PatchLabel::kDiseased;
  if (s == "outside") return PatchLabel::kOutside;
  throw ValidationError("unknown patch label '" + s + "'");
}

Image to_unit_range(const Image& img, double window_lo, double window_hi) {
  if (!(window_lo < window_hi)) {
    throw ValidationError("to_unit_range: window_lo must be < window_hi");
  }
  Image out(img.rows(), img.cols());
  const double span = window_hi - window_lo;
  for (std::size_t k = 0; k < img.size(); ++k) {
    double u = (img.data()[k] - window_lo) / span;
    out.data()[k] = std::clamp(u, 0.0, 1.0);
  }
  return out;
}

double psnr(const Image& reference, const Image& test) {
  if (!reference.same_shape(test)) {
    throw ValidationError("psnr: shape mismatch");
  }
  double mse = 0.0;
  for (std::size_t k = 0; k < reference.size(); ++k) {
    const double d = reference.data()[k] - test.data()[k];
    mse += d * d;
  }
  mse /= static_cast<double>(reference.size());
  if (mse == 0.0) return std::numeric_limits<double>::infinity();
  const double peak = reference.max_value() - reference.min_value();
  return 10.0 * std::log10(peak * peak / mse);
}

}  // namespace specaug
