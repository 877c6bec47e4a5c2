#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "specaug/image.hpp"

namespace specaug {

/// Binary closing (dilation then erosion) with a 5x5 all-ones structuring
/// element, computed on the zero-extended plane so foreground is never lost
/// at the image border. Idempotent and extensive.
PixelMask hole_fill(const PixelMask& mask);

/// Alternative hole filling: background connected components (4-connectivity)
/// not reachable from the border become foreground.
PixelMask fill_holes_floodfill(const PixelMask& mask);

/// A patch is predicted diseased iff at least `threshold` of its in-image
/// pixels are set. Outside patches pass through from the reference grid.
LabelGrid pixels_to_patches(const PixelMask& mask, const LabelGrid& grid,
                            double threshold = 0.5);

/// Patch-level confusion counts for the diseased class; patches whose truth
/// label is outside are excluded entirely.
struct ConfusionCounts {
  std::uint64_t tp = 0;
  std::uint64_t fp = 0;
  std::uint64_t fn = 0;
  std::uint64_t tn = 0;
};

ConfusionCounts confusion_disease(const LabelGrid& pred, const LabelGrid& truth);

/// F1 = 2tp / (2tp + fp + fn); by convention 1.0 when tp = fp = fn = 0
/// (nothing to find, nothing claimed).
double f1_from_counts(const ConfusionCounts& counts);
double f1_disease(const LabelGrid& pred, const LabelGrid& truth);

struct ImageScore {
  std::string image_id;
  ConfusionCounts counts;
  double f1 = 0.0;
};

/// CSV rows `image_id,tp,fp,fn,tn,f1`, then an `aggregate` row carrying the
/// summed counts and the mean F1.
void write_scores_csv(const std::filesystem::path& path, const std::vector<ImageScore>& scores,
                      double aggregate_f1);

}  // namespace specaug
