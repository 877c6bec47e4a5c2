#include "specaug/manifest.hpp"

#include <fstream>
#include <set>

namespace specaug {

namespace {

using nlohmann::json;

json load_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw IoError("malformed JSON in " + path.string() + ": " + e.what());
  }
  return j;
}

}  // namespace

Manifest load_manifest(const std::filesystem::path& path) {
  const json j = load_json_file(path);
  const std::filesystem::path base = path.has_parent_path() ? path.parent_path() : ".";
  Manifest m;
  try {
    m.patch_size = j.value("patch_size", std::size_t{20});
    m.window_lo = j.value("window_lo", 0.0);
    m.window_hi = j.value("window_hi", 1.0);
    for (const json& e : j.at("entries")) {
      ManifestEntry entry;
      entry.image_id = e.at("image_id").get<std::string>();
      entry.image_path = base / e.at("image_path").get<std::string>();
      if (e.contains("label_path") && !e.at("label_path").is_null()) {
        entry.label_path = base / e.at("label_path").get<std::string>();
      }
      m.entries.push_back(std::move(entry));
    }
  } catch (const json::exception& e) {
    throw ValidationError("manifest " + path.string() + ": " + e.what());
  }
  if (m.patch_size == 0) throw ValidationError("manifest: patch_size must be positive");
  if (!(m.window_lo < m.window_hi)) {
    throw ValidationError("manifest: window_lo must be < window_hi");
  }
  std::set<std::string> ids;
  for (const ManifestEntry& e : m.entries) {
    if (!ids.insert(e.image_id).second) {
      throw ValidationError("manifest: duplicate image_id '" + e.image_id + "'");
    }
    if (!std::filesystem::exists(e.image_path)) {
      throw ValidationError("manifest: missing image file " + e.image_path.string());
    }
    if (e.has_labels() && !std::filesystem::exists(e.label_path)) {
      throw ValidationError("manifest: missing label file " + e.label_path.string());
    }
  }
  return m;
}

void save_manifest(const Manifest& manifest, const std::filesystem::path& path) {
  const std::filesystem::path base = path.has_parent_path() ? path.parent_path() : ".";
  json entries = json::array();
  auto relativize = [&](const std::filesystem::path& p) {
    const std::filesystem::path rel = p.lexically_relative(base);
    return (rel.empty() || rel.native().starts_with("..")) ? p.generic_string()
                                                           : rel.generic_string();
  };
  for (const ManifestEntry& e : manifest.entries) {
    json entry{{"image_id", e.image_id}, {"image_path", relativize(e.image_path)}};
    if (e.has_labels()) entry["label_path"] = relativize(e.label_path);
    entries.push_back(std::move(entry));
  }
  const json j{{"patch_size", manifest.patch_size},
               {"window_lo", manifest.window_lo},
               {"window_hi", manifest.window_hi},
               {"entries", entries}};
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  out << j.dump(2) << "\n";
  if (!out) throw IoError("write failed for " + path.string());
}

void PolicyConfig::validate() const {
  if (stages.empty()) throw ValidationError("policy: at least one stage is required");
  for (const AugmentSpec& spec : stages) spec.validate();
}

nlohmann::json to_json(const AugmentSpec& spec) {
  json j{{"method", to_string(spec.method)},
         {"replications", spec.replications},
         {"eta", spec.eta},
         {"seed", spec.seed}};
  switch (spec.method) {
    case Method::kDwt:
      j["wavelet"] = spec.wavelet;
      j["levels"] = spec.levels;
      j["details_only"] = spec.dwt_details_only;
      break;
    case Method::kIntensity:
      j["gamma_lo"] = spec.gamma_lo;
      j["gamma_hi"] = spec.gamma_hi;
      j["window_lo"] = spec.window_lo;
      j["window_hi"] = spec.window_hi;
      break;
    case Method::kAffine:
      j["rotation_max_deg"] = spec.rotation_max_deg;
      j["scale_lo"] = spec.scale_lo;
      j["scale_hi"] = spec.scale_hi;
      break;
    case Method::kElastic:
      j["grid_rows"] = spec.grid_rows;
      j["grid_cols"] = spec.grid_cols;
      j["disp_min"] = spec.disp_min;
      j["disp_max"] = spec.disp_max;
      break;
    default:
      break;
  }
  return j;
}

AugmentSpec augment_spec_from_json(const nlohmann::json& j) {
  AugmentSpec spec;
  try {
    spec.method = method_from_string(j.at("method").get<std::string>());
    spec.replications = j.value("replications", spec.replications);
    spec.eta = j.value("eta", spec.eta);
    spec.seed = j.value("seed", spec.seed);
    spec.wavelet = j.value("wavelet", spec.wavelet);
    spec.levels = j.value("levels", spec.levels);
    spec.dwt_details_only = j.value("details_only", spec.dwt_details_only);
    spec.gamma_lo = j.value("gamma_lo", spec.gamma_lo);
    spec.gamma_hi = j.value("gamma_hi", spec.gamma_hi);
    spec.window_lo = j.value("window_lo", spec.window_lo);
    spec.window_hi = j.value("window_hi", spec.window_hi);
    spec.rotation_max_deg = j.value("rotation_max_deg", spec.rotation_max_deg);
    spec.scale_lo = j.value("scale_lo", spec.scale_lo);
    spec.scale_hi = j.value("scale_hi", spec.scale_hi);
    spec.grid_rows = j.value("grid_rows", spec.grid_rows);
    spec.grid_cols = j.value("grid_cols", spec.grid_cols);
    spec.disp_min = j.value("disp_min", spec.disp_min);
    spec.disp_max = j.value("disp_max", spec.disp_max);
  } catch (const json::exception& e) {
    throw ValidationError(std::string("augment spec: ") + e.what());
  }
  return spec;
}

nlohmann::json to_json(const PolicyConfig& policy) {
  json stages = json::array();
  for (const AugmentSpec& s : policy.stages) stages.push_back(to_json(s));
  return json{{"stages", stages},
              {"filter", policy.filter == ReplicationFilter::kDiseasedOnly ? "diseased_only"
                                                                           : "all"},
              {"master_seed", policy.master_seed}};
}

std::string policy_hash(const PolicyConfig& policy) {
  const std::string canonical = to_json(policy).dump();
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : canonical) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return std::string(buf);
}

}  // namespace specaug
