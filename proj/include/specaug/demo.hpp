#pragma once

#include <filesystem>

namespace specaug {

/// Writes a small deterministic dataset for smoke tests and demos:
/// ten 64x64 rawf64 images with 20px patch labels (six images contain
/// diseased patches, lattice corners are marked outside), synthetic
/// prediction masks, plus manifest.json and pred_manifest.json.
void make_demo_dataset(const std::filesystem::path& out_dir);

}  // namespace specaug
