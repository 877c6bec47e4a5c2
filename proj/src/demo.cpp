#include "specaug/demo.hpp"

#include <cmath>
#include <numbers>

#include "specaug/image_io.hpp"
#include "specaug/manifest.hpp"
#include "specaug/rng.hpp"

namespace specaug {

namespace {

constexpr std::size_t kSize = 64;
constexpr std::size_t kPatch = 20;
constexpr std::uint64_t kDemoSeed = 0x64656d6fULL;  // "demo"

bool is_corner(std::size_t pr, std::size_t pc, std::size_t gr, std::size_t gc) {
  return (pr == 0 || pr == gr - 1) && (pc == 0 || pc == gc - 1);
}

Image make_texture(NoiseStream& stream, const std::vector<std::pair<std::size_t, std::size_t>>&
                                             lesion_patches) {
  const double phase1 = stream.next_uniform(0.0, 2.0 * std::numbers::pi);
  const double phase2 = stream.next_uniform(0.0, 2.0 * std::numbers::pi);
  const double phase3 = stream.next_uniform(0.0, 2.0 * std::numbers::pi);
  const double freq1 = stream.next_uniform(9.0, 14.0);
  const double freq2 = stream.next_uniform(6.5, 10.0);

  Image img(kSize, kSize);
  for (std::size_t i = 0; i < kSize; ++i) {
    for (std::size_t j = 0; j < kSize; ++j) {
      const double di = static_cast<double>(i) - 31.5;
      const double dj = static_cast<double>(j) - 31.5;
      double v = -200.0 + 700.0 * std::exp(-(di * di + dj * dj) / (2.0 * 18.0 * 18.0));
      v += 120.0 * std::sin(2.0 * std::numbers::pi * static_cast<double>(i) / freq1 + phase1) *
           std::cos(2.0 * std::numbers::pi * static_cast<double>(j) / freq2 + phase2);
      v += 80.0 * std::sin(2.0 * std::numbers::pi * static_cast<double>(i + j) / 19.1 + phase3);
      img.at(i, j) = v;
    }
  }
  for (const auto& [pr, pc] : lesion_patches) {
    const double ci = static_cast<double>(pr) * kPatch + (kPatch - 1.0) / 2.0;
    const double cj = static_cast<double>(pc) * kPatch + (kPatch - 1.0) / 2.0;
    for (std::size_t i = 0; i < kSize; ++i) {
      for (std::size_t j = 0; j < kSize; ++j) {
        const double di = static_cast<double>(i) - ci;
        const double dj = static_cast<double>(j) - cj;
        img.at(i, j) += 350.0 * std::exp(-(di * di + dj * dj) / (2.0 * 5.0 * 5.0));
      }
    }
  }
  return img;
}

PixelMask make_prediction(const LabelGrid& truth, NoiseStream& stream, bool add_false_patch) {
  PixelMask mask(kSize, kSize);
  for (std::size_t pr = 0; pr < truth.grid_rows(); ++pr) {
    for (std::size_t pc = 0; pc < truth.grid_cols(); ++pc) {
      if (truth.at(pr, pc) != PatchLabel::kDiseased) continue;
      const std::size_t i_end = std::min(kSize, (pr + 1) * kPatch);
      const std::size_t j_end = std::min(kSize, (pc + 1) * kPatch);
      for (std::size_t i = pr * kPatch; i < i_end; ++i) {
        for (std::size_t j = pc * kPatch; j < j_end; ++j) mask.at(i, j) = 1;
      }
      // A small interior hole for the hole-filling step to close.
      const std::size_t hi = pr * kPatch + kPatch / 2;
      const std::size_t hj = pc * kPatch + kPatch / 2;
      for (std::size_t i = hi; i < std::min(hi + 2, kSize); ++i) {
        for (std::size_t j = hj; j < std::min(hj + 2, kSize); ++j) mask.at(i, j) = 0;
      }
    }
  }
  // Sparse salt noise; far below the patch vote threshold.
  for (std::size_t k = 0; k < mask.size(); ++k) {
    if (stream.next_bernoulli(0.005)) mask.data()[k] = 1;
  }
  if (add_false_patch) {
    for (std::size_t i = kPatch; i < 2 * kPatch; ++i) {
      for (std::size_t j = 2 * kPatch; j < 3 * kPatch; ++j) mask.at(i, j) = 1;
    }
  }
  return mask;
}

}  // namespace

void make_demo_dataset(const std::filesystem::path& out_dir) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir / "images", ec);
  std::filesystem::create_directories(out_dir / "labels", ec);
  std::filesystem::create_directories(out_dir / "pred", ec);
  if (ec) throw IoError("cannot create demo directories under " + out_dir.string());

  const auto [gr, gc] = LabelGrid::lattice_for(kSize, kSize, kPatch);
  Manifest truth, pred;
  truth.patch_size = kPatch;
  truth.window_lo = -400.0;
  truth.window_hi = 1100.0;
  pred.patch_size = kPatch;
  pred.window_lo = 0.0;
  pred.window_hi = 1.0;

  for (std::size_t idx = 0; idx < 10; ++idx) {
    NoiseStream stream(kDemoSeed, idx, 0, 0);
    const bool diseased = idx % 5 != 1 && idx % 5 != 4;  // six of ten images

    std::vector<std::pair<std::size_t, std::size_t>> lesions;
    if (diseased) {
      const std::size_t count = 1 + stream.next_u64() % 2;
      for (std::size_t n = 0; n < count; ++n) {
        // Interior patches only, clear of the outside corners.
        lesions.emplace_back(1 + stream.next_u64() % (gr - 2), 1 + stream.next_u64() % (gc - 2));
      }
    }

    LabelGrid labels(gr, gc, kPatch);
    for (std::size_t pr = 0; pr < gr; ++pr) {
      for (std::size_t pc = 0; pc < gc; ++pc) {
        if (is_corner(pr, pc, gr, gc)) labels.at(pr, pc) = PatchLabel::kOutside;
      }
    }
    for (const auto& [pr, pc] : lesions) labels.at(pr, pc) = PatchLabel::kDiseased;

    const Image img = make_texture(stream, lesions);
    const PixelMask prediction = make_prediction(labels, stream, idx == 0);

    char id[8];
    std::snprintf(id, sizeof(id), "img%02zu", idx);
    const std::filesystem::path image_path = out_dir / "images" / (std::string(id) + ".spa");
    const std::filesystem::path label_path = out_dir / "labels" / (std::string(id) + ".csv");
    const std::filesystem::path pred_path = out_dir / "pred" / (std::string(id) + ".spa");
    save_image(img, image_path, ImageFormat::kRawF64);
    save_label_grid(labels, label_path);
    save_pixel_mask(prediction, pred_path, ImageFormat::kRawF64);

    truth.entries.push_back({id, image_path, label_path});
    pred.entries.push_back({id, pred_path, {}});
  }

  save_manifest(truth, out_dir / "manifest.json");
  save_manifest(pred, out_dir / "pred_manifest.json");
}

}  // namespace specaug
