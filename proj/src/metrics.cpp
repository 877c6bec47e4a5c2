#include "specaug/metrics.hpp"

#include <algorithm>
#include <fstream>
#include <vector>

namespace specaug {

namespace {

constexpr int kSeRadius = 2;  // 5x5 structuring element

// Separable Chebyshev-ball max filter; domain is the zero-extended plane
// restricted to the given output size, reading from `in` at an offset.
std::vector<std::uint8_t> dilate_window(const std::vector<std::uint8_t>& in, std::size_t in_rows,
                                        std::size_t in_cols, std::size_t out_rows,
                                        std::size_t out_cols, int offset) {
  auto get = [&](long i, long j) -> std::uint8_t {
    if (i < 0 || j < 0 || i >= static_cast<long>(in_rows) || j >= static_cast<long>(in_cols)) {
      return 0;
    }
    return in[static_cast<std::size_t>(i) * in_cols + static_cast<std::size_t>(j)];
  };
  // Horizontal pass, then vertical.
  std::vector<std::uint8_t> horiz(out_rows * in_cols, 0);
  for (std::size_t oi = 0; oi < out_rows; ++oi) {
    const long i = static_cast<long>(oi) + offset;
    for (std::size_t j = 0; j < in_cols; ++j) {
      std::uint8_t v = 0;
      for (int d = -kSeRadius; d <= kSeRadius && !v; ++d) v = get(i + d, static_cast<long>(j));
      horiz[oi * in_cols + j] = v;
    }
  }
  std::vector<std::uint8_t> out(out_rows * out_cols, 0);
  for (std::size_t oi = 0; oi < out_rows; ++oi) {
    for (std::size_t oj = 0; oj < out_cols; ++oj) {
      const long j = static_cast<long>(oj) + offset;
      std::uint8_t v = 0;
      for (int d = -kSeRadius; d <= kSeRadius && !v; ++d) {
        const long jj = j + d;
        if (jj >= 0 && jj < static_cast<long>(in_cols)) v = horiz[oi * in_cols + jj];
      }
      out[oi * out_cols + oj] = v;
    }
  }
  return out;
}

}  // namespace

PixelMask hole_fill(const PixelMask& mask) {
  const std::size_t rows = mask.rows(), cols = mask.cols();
  // Dilate onto a frame padded by the structuring-element radius; the
  // erosion below then sees the dilation values it would see on the
  // infinite zero-extended plane.
  const std::size_t pad_rows = rows + 2 * kSeRadius;
  const std::size_t pad_cols = cols + 2 * kSeRadius;
  const std::vector<std::uint8_t> dilated =
      dilate_window(mask.data(), rows, cols, pad_rows, pad_cols, -kSeRadius);

  // Erode back onto the original frame. Pixel (i,j) maps to (i+r, j+r) in the
  // padded dilation, so its full 5x5 window is always in range.
  PixelMask out(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      std::uint8_t v = 1;
      for (std::size_t di = 0; di <= 2 * kSeRadius && v; ++di) {
        for (std::size_t dj = 0; dj <= 2 * kSeRadius && v; ++dj) {
          v = dilated[(i + di) * pad_cols + (j + dj)];
        }
      }
      out.at(i, j) = v;
    }
  }
  return out;
}

PixelMask fill_holes_floodfill(const PixelMask& mask) {
  const std::size_t rows = mask.rows(), cols = mask.cols();
  std::vector<std::uint8_t> reached(rows * cols, 0);
  std::vector<std::pair<std::size_t, std::size_t>> stack;
  auto push = [&](std::size_t i, std::size_t j) {
    const std::size_t k = i * cols + j;
    if (!mask.data()[k] && !reached[k]) {
      reached[k] = 1;
      stack.emplace_back(i, j);
    }
  };
  for (std::size_t i = 0; i < rows; ++i) {
    push(i, 0);
    push(i, cols - 1);
  }
  for (std::size_t j = 0; j < cols; ++j) {
    push(0, j);
    push(rows - 1, j);
  }
  while (!stack.empty()) {
    const auto [i, j] = stack.back();
    stack.pop_back();
    if (i > 0) push(i - 1, j);
    if (i + 1 < rows) push(i + 1, j);
    if (j > 0) push(i, j - 1);
    if (j + 1 < cols) push(i, j + 1);
  }
  PixelMask out = mask;
  for (std::size_t k = 0; k < out.size(); ++k) {
    if (!out.data()[k] && !reached[k]) out.data()[k] = 1;
  }
  return out;
}

LabelGrid pixels_to_patches(const PixelMask& mask, const LabelGrid& grid, double threshold) {
  const auto [gr, gc] = LabelGrid::lattice_for(mask.rows(), mask.cols(), grid.patch_size());
  if (gr != grid.grid_rows() || gc != grid.grid_cols()) {
    throw ValidationError("pixels_to_patches: mask shape does not match the label lattice");
  }
  const std::size_t p = grid.patch_size();
  LabelGrid out = grid;
  for (std::size_t pr = 0; pr < gr; ++pr) {
    for (std::size_t pc = 0; pc < gc; ++pc) {
      if (grid.at(pr, pc) == PatchLabel::kOutside) continue;
      const std::size_t i_end = std::min(mask.rows(), (pr + 1) * p);
      const std::size_t j_end = std::min(mask.cols(), (pc + 1) * p);
      std::size_t total = 0, ones = 0;
      for (std::size_t i = pr * p; i < i_end; ++i) {
        for (std::size_t j = pc * p; j < j_end; ++j) {
          ++total;
          ones += mask.at(i, j);
        }
      }
      const bool diseased = static_cast<double>(ones) >= threshold * static_cast<double>(total);
      out.at(pr, pc) = diseased ? PatchLabel::kDiseased : PatchLabel::kHealthy;
    }
  }
  return out;
}

ConfusionCounts confusion_disease(const LabelGrid& pred, const LabelGrid& truth) {
  if (!pred.same_lattice(truth)) {
    throw ValidationError("confusion_disease: lattice mismatch");
  }
  ConfusionCounts counts;
  for (std::size_t k = 0; k < truth.size(); ++k) {
    const PatchLabel t = truth.labels()[k];
    if (t == PatchLabel::kOutside) continue;
    const bool pred_pos = pred.labels()[k] == PatchLabel::kDiseased;
    const bool true_pos = t == PatchLabel::kDiseased;
    if (pred_pos && true_pos) {
      ++counts.tp;
    } else if (pred_pos) {
      ++counts.fp;
    } else if (true_pos) {
      ++counts.fn;
    } else {
      ++counts.tn;
    }
  }
  return counts;
}

double f1_from_counts(const ConfusionCounts& counts) {
  const std::uint64_t denom = 2 * counts.tp + counts.fp + counts.fn;
  if (denom == 0) return 1.0;
  return 2.0 * static_cast<double>(counts.tp) / static_cast<double>(denom);
}

double f1_disease(const LabelGrid& pred, const LabelGrid& truth) {
  return f1_from_counts(confusion_disease(pred, truth));
}

void write_scores_csv(const std::filesystem::path& path, const std::vector<ImageScore>& scores,
                      double aggregate_f1) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  out << "image_id,tp,fp,fn,tn,f1\n";
  ConfusionCounts totals;
  out.precision(17);
  for (const ImageScore& s : scores) {
    out << s.image_id << "," << s.counts.tp << "," << s.counts.fp << "," << s.counts.fn << ","
        << s.counts.tn << "," << s.f1 << "\n";
    totals.tp += s.counts.tp;
    totals.fp += s.counts.fp;
    totals.fn += s.counts.fn;
    totals.tn += s.counts.tn;
  }
  out << "aggregate," << totals.tp << "," << totals.fp << "," << totals.fn << "," << totals.tn
      << "," << aggregate_f1 << "\n";
  if (!out) throw IoError("write failed for " + path.string());
}

}  // namespace specaug
