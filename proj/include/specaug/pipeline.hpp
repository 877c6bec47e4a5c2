#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "specaug/manifest.hpp"
#include "specaug/metrics.hpp"

namespace specaug {

struct AugmentSummary {
  std::size_t images_total = 0;
  std::size_t images_selected = 0;
  std::size_t outputs_written = 0;
  std::string policy_hash;
  std::filesystem::path audit_path;
};

/// Runs the policy over every eligible manifest entry and writes synthetic
/// images (rawf64, named `{image_id}__r{r}__{policy_hash}.spa`), label CSVs,
/// and an audit log (audit.json) into out_dir. Outputs are a pure function
/// of (manifest, policy); the worker count never changes a byte.
AugmentSummary run_augment(const Manifest& manifest, const PolicyConfig& policy,
                           const std::filesystem::path& out_dir, int workers = 1);

/// Rebuilds one output image from its audit record, without touching the
/// rest of the batch.
Image replay_output(const nlohmann::json& output_record, const Manifest& manifest);

struct EvalOptions {
  bool use_hole_fill = false;
  bool floodfill = false;  // flood-fill hole filling instead of closing
  double patch_threshold = 0.5;
};

struct EvalReport {
  std::vector<ImageScore> per_image;
  ConfusionCounts totals;
  double aggregate_f1 = 0.0;
};

/// Scores predicted pixel masks against patchwise truth labels. Per-image
/// pipeline: optional hole filling, pixel-to-patch vote, diseased-class F1;
/// the aggregate is the mean over images. Writes a CSV report when out_csv
/// is non-empty.
EvalReport run_eval(const Manifest& pred_manifest, const Manifest& truth_manifest,
                    const EvalOptions& options, const std::filesystem::path& out_csv = {});

}  // namespace specaug
