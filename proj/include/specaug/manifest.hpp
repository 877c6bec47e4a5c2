#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "specaug/corruption.hpp"

namespace specaug {

struct ManifestEntry {
  std::string image_id;
  std::filesystem::path image_path;
  std::filesystem::path label_path;  // empty when the entry has no labels

  bool has_labels() const { return !label_path.empty(); }
};

/// Dataset description: entries plus the dataset-level metadata every stage
/// shares. Paths inside the JSON file are relative to the file's directory.
struct Manifest {
  std::vector<ManifestEntry> entries;
  std::size_t patch_size = 20;
  double window_lo = 0.0;
  double window_hi = 1.0;
};

Manifest load_manifest(const std::filesystem::path& path);

/// Writes entries with paths relative to the manifest directory when they
/// are inside it.
void save_manifest(const Manifest& manifest, const std::filesystem::path& path);

enum class ReplicationFilter { kAll, kDiseasedOnly };

/// An ordered augmentation pipeline. Stage 0 defines the replication count;
/// every later stage transforms each intermediate image exactly once.
struct PolicyConfig {
  std::vector<AugmentSpec> stages;
  ReplicationFilter filter = ReplicationFilter::kAll;
  std::uint64_t master_seed = 0;

  void validate() const;
};

nlohmann::json to_json(const AugmentSpec& spec);
AugmentSpec augment_spec_from_json(const nlohmann::json& j);
nlohmann::json to_json(const PolicyConfig& policy);

/// FNV-1a over the canonical policy JSON; 16 hex digits. Stable across runs
/// and platforms, used to tag output filenames.
std::string policy_hash(const PolicyConfig& policy);

}  // namespace specaug
