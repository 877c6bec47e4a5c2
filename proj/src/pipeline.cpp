#include "specaug/pipeline.hpp"

#include <atomic>
#include <exception>
#include <fstream>
#include <map>
#include <mutex>
#include <thread>

#include "specaug/baseline.hpp"
#include "specaug/image_io.hpp"

namespace specaug {

namespace {

using nlohmann::json;

constexpr std::uint64_t kStageSeedDomain = 0x7374616765ULL;  // "stage"

std::uint64_t stage_seed(std::uint64_t master_seed, std::size_t stage_index) {
  return counter_hash(master_seed, kStageSeedDomain, stage_index, 0);
}

LabelGrid default_grid_for(const Image& img, std::size_t patch_size) {
  const auto [gr, gc] = LabelGrid::lattice_for(img.rows(), img.cols(), patch_size);
  return LabelGrid(gr, gc, patch_size);
}

struct StageResult {
  Image image;
  LabelGrid labels;
  json record;
};

// Applies stage `stage_index` to one intermediate. replication is 1-based;
// schedule_r is the replication count of stage 0, which indexes every
// stage's parameter ramp.
StageResult apply_stage(const Image& img, const LabelGrid& labels, const AugmentSpec& spec,
                        std::size_t stage_index, std::uint64_t image_index, int replication,
                        int schedule_r) {
  StageResult result;
  result.record["method"] = to_string(spec.method);
  switch (spec.method) {
    case Method::kDct:
    case Method::kDwt: {
      const double rho = rho_schedule(schedule_r, spec.eta)[static_cast<std::size_t>(replication - 1)];
      result.image = synthesize_one(img, spec, image_index,
                                    static_cast<std::uint64_t>(replication), rho, stage_index);
      result.labels = labels;
      result.record["rho"] = rho;
      result.record["seed"] = spec.seed;
      result.record["image_index"] = image_index;
      result.record["replication"] = replication;
      result.record["stage"] = stage_index;
      if (spec.method == Method::kDwt) {
        result.record["wavelet"] = spec.wavelet;
        result.record["levels"] = spec.levels;
        result.record["details_only"] = spec.dwt_details_only;
      }
      break;
    }
    case Method::kSimple:
      result.image = img;
      result.labels = labels;
      break;
    case Method::kIntensity: {
      const double gamma =
          gamma_for_replication(replication, schedule_r, spec.gamma_lo, spec.gamma_hi);
      result.image = apply_gamma(img, gamma, spec.window_lo, spec.window_hi);
      result.labels = labels;
      result.record["gamma"] = gamma;
      result.record["window_lo"] = spec.window_lo;
      result.record["window_hi"] = spec.window_hi;
      break;
    }
    case Method::kAffine: {
      NoiseStream stream(spec.seed, image_index, static_cast<std::uint64_t>(replication),
                         stage_index);
      const AffineParams params = sample_affine_params(stream, spec);
      auto [warped, warped_labels] = apply_affine(img, labels, params);
      result.image = std::move(warped);
      result.labels = std::move(warped_labels);
      result.record["hflip"] = params.hflip;
      result.record["vflip"] = params.vflip;
      result.record["rotation_deg"] = params.rotation_deg;
      result.record["scale"] = params.scale;
      break;
    }
    case Method::kElastic: {
      NoiseStream stream(spec.seed, image_index, static_cast<std::uint64_t>(replication),
                         stage_index);
      const double cap = elastic_cap_for_replication(replication, schedule_r, spec.disp_min,
                                                     spec.disp_max);
      const DisplacementGrid grid =
          sample_displacement_grid(stream, spec.grid_rows, spec.grid_cols, cap);
      auto [warped, warped_labels] =
          apply_displacement(img, labels, densify_displacement(grid, img.rows(), img.cols()));
      result.image = std::move(warped);
      result.labels = std::move(warped_labels);
      result.record["grid_rows"] = grid.grid_rows;
      result.record["grid_cols"] = grid.grid_cols;
      result.record["dy"] = grid.dy;
      result.record["dx"] = grid.dx;
      break;
    }
  }
  return result;
}

}  // namespace

AugmentSummary run_augment(const Manifest& manifest, const PolicyConfig& policy,
                           const std::filesystem::path& out_dir, int workers) {
  policy.validate();
  if (workers < 1) throw ValidationError("run_augment: workers must be >= 1");

  // Per-stage seeds derive from the master seed, so one seed pins the batch.
  std::vector<AugmentSpec> stages = policy.stages;
  for (std::size_t s = 0; s < stages.size(); ++s) {
    stages[s].seed = stage_seed(policy.master_seed, s);
  }
  const std::string hash = policy_hash(policy);

  // Elastic stages need grid spacing headroom; validate against every image
  // lazily (sizes may differ per entry), but fail fast on an empty manifest.
  if (manifest.entries.empty()) throw ValidationError("run_augment: empty manifest");

  // Select eligible entries by original manifest index; the RNG is keyed on
  // that index so filtering never reshuffles the noise.
  std::vector<std::size_t> eligible;
  for (std::size_t i = 0; i < manifest.entries.size(); ++i) {
    const ManifestEntry& entry = manifest.entries[i];
    if (policy.filter == ReplicationFilter::kDiseasedOnly) {
      if (!entry.has_labels()) continue;
      const LabelGrid grid = load_label_grid(entry.label_path, manifest.patch_size);
      if (!grid.has_diseased()) continue;
    }
    eligible.push_back(i);
  }

  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw IoError("cannot create output directory " + out_dir.string());

  const int replications = stages[0].replications;
  const std::size_t total_outputs = eligible.size() * static_cast<std::size_t>(replications);
  std::vector<json> records(total_outputs);

  std::atomic<std::size_t> next{0};
  std::mutex error_mutex;
  std::exception_ptr first_error;

  auto worker = [&]() {
    try {
      while (true) {
        const std::size_t e = next.fetch_add(1);
        if (e >= eligible.size()) break;
        const std::size_t image_index = eligible[e];
        const ManifestEntry& entry = manifest.entries[image_index];
        Image img = load_image(entry.image_path, image_format_from_path(entry.image_path));
        const bool has_labels = entry.has_labels();
        LabelGrid labels = has_labels ? load_label_grid(entry.label_path, manifest.patch_size)
                                      : default_grid_for(img, manifest.patch_size);
        const auto [gr, gc] =
            LabelGrid::lattice_for(img.rows(), img.cols(), manifest.patch_size);
        if (gr != labels.grid_rows() || gc != labels.grid_cols()) {
          throw ValidationError("labels for '" + entry.image_id +
                                "' do not cover the image lattice");
        }

        for (int r = 1; r <= replications; ++r) {
          json stage_records = json::array();
          StageResult current = apply_stage(img, labels, stages[0], 0, image_index, r,
                                            replications);
          stage_records.push_back(std::move(current.record));
          for (std::size_t s = 1; s < stages.size(); ++s) {
            StageResult nextResult = apply_stage(current.image, current.labels, stages[s], s,
                                                 image_index, r, replications);
            current.image = std::move(nextResult.image);
            current.labels = std::move(nextResult.labels);
            stage_records.push_back(std::move(nextResult.record));
          }

          const std::string base = entry.image_id + "__r" + std::to_string(r) + "__" + hash;
          const std::filesystem::path image_file = out_dir / (base + ".spa");
          save_image(current.image, image_file, ImageFormat::kRawF64);
          json record{{"image_id", entry.image_id},
                      {"image_index", image_index},
                      {"replication", r},
                      {"image_file", image_file.filename().generic_string()},
                      {"stages", std::move(stage_records)}};
          if (has_labels) {
            const std::filesystem::path label_file = out_dir / (base + ".labels.csv");
            save_label_grid(current.labels, label_file);
            record["label_file"] = label_file.filename().generic_string();
          }
          records[e * static_cast<std::size_t>(replications) +
                  static_cast<std::size_t>(r - 1)] = std::move(record);
        }
      }
    } catch (...) {
      std::lock_guard<std::mutex> lock(error_mutex);
      if (!first_error) first_error = std::current_exception();
    }
  };

  if (workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }
  if (first_error) std::rethrow_exception(first_error);

  AugmentSummary summary;
  summary.images_total = manifest.entries.size();
  summary.images_selected = eligible.size();
  summary.outputs_written = total_outputs;
  summary.policy_hash = hash;
  summary.audit_path = out_dir / "audit.json";

  json audit{{"policy", to_json(policy)},
             {"policy_hash", hash},
             {"counts",
              {{"images_total", summary.images_total},
               {"images_selected", summary.images_selected},
               {"outputs", summary.outputs_written}}},
             {"outputs", json(std::move(records))}};
  std::ofstream out(summary.audit_path);
  if (!out) throw IoError("cannot write " + summary.audit_path.string());
  out << audit.dump(2) << "\n";
  if (!out) throw IoError("write failed for " + summary.audit_path.string());
  return summary;
}

Image replay_output(const nlohmann::json& output_record, const Manifest& manifest) {
  const std::string image_id = output_record.at("image_id").get<std::string>();
  const ManifestEntry* entry = nullptr;
  for (const ManifestEntry& e : manifest.entries) {
    if (e.image_id == image_id) {
      entry = &e;
      break;
    }
  }
  if (entry == nullptr) {
    throw ValidationError("replay: image_id '" + image_id + "' not in manifest");
  }
  Image img = load_image(entry->image_path, image_format_from_path(entry->image_path));
  LabelGrid labels = entry->has_labels()
                         ? load_label_grid(entry->label_path, manifest.patch_size)
                         : default_grid_for(img, manifest.patch_size);

  for (const json& record : output_record.at("stages")) {
    const Method method = method_from_string(record.at("method").get<std::string>());
    switch (method) {
      case Method::kDct:
      case Method::kDwt: {
        AugmentSpec spec;
        spec.method = method;
        spec.seed = record.at("seed").get<std::uint64_t>();
        if (method == Method::kDwt) {
          spec.wavelet = record.at("wavelet").get<std::string>();
          spec.levels = record.at("levels").get<std::size_t>();
          spec.dwt_details_only = record.at("details_only").get<bool>();
        }
        img = synthesize_one(img, spec, record.at("image_index").get<std::uint64_t>(),
                             record.at("replication").get<std::uint64_t>(),
                             record.at("rho").get<double>(),
                             record.at("stage").get<std::uint64_t>());
        break;
      }
      case Method::kSimple:
        break;
      case Method::kIntensity:
        img = apply_gamma(img, record.at("gamma").get<double>(),
                          record.at("window_lo").get<double>(),
                          record.at("window_hi").get<double>());
        break;
      case Method::kAffine: {
        AffineParams params;
        params.hflip = record.at("hflip").get<bool>();
        params.vflip = record.at("vflip").get<bool>();
        params.rotation_deg = record.at("rotation_deg").get<double>();
        params.scale = record.at("scale").get<double>();
        auto [warped, warped_labels] = apply_affine(img, labels, params);
        img = std::move(warped);
        labels = std::move(warped_labels);
        break;
      }
      case Method::kElastic: {
        DisplacementGrid grid(record.at("grid_rows").get<std::size_t>(),
                              record.at("grid_cols").get<std::size_t>());
        grid.dy = record.at("dy").get<std::vector<double>>();
        grid.dx = record.at("dx").get<std::vector<double>>();
        auto [warped, warped_labels] =
            apply_displacement(img, labels, densify_displacement(grid, img.rows(), img.cols()));
        img = std::move(warped);
        labels = std::move(warped_labels);
        break;
      }
    }
  }
  return img;
}

EvalReport run_eval(const Manifest& pred_manifest, const Manifest& truth_manifest,
                    const EvalOptions& options, const std::filesystem::path& out_csv) {
  if (!(options.patch_threshold >= 0.0 && options.patch_threshold <= 1.0)) {
    throw ValidationError("run_eval: patch threshold must be in [0, 1]");
  }
  std::map<std::string, const ManifestEntry*> pred_by_id;
  for (const ManifestEntry& e : pred_manifest.entries) pred_by_id[e.image_id] = &e;

  EvalReport report;
  for (const ManifestEntry& truth_entry : truth_manifest.entries) {
    if (!truth_entry.has_labels()) {
      throw ValidationError("run_eval: truth entry '" + truth_entry.image_id +
                            "' has no labels");
    }
    const auto it = pred_by_id.find(truth_entry.image_id);
    if (it == pred_by_id.end()) {
      throw ValidationError("run_eval: no prediction for image_id '" + truth_entry.image_id +
                            "'");
    }
    PixelMask mask = load_pixel_mask(it->second->image_path,
                                     image_format_from_path(it->second->image_path));
    if (options.use_hole_fill) {
      mask = options.floodfill ? fill_holes_floodfill(mask) : hole_fill(mask);
    }
    const LabelGrid truth =
        load_label_grid(truth_entry.label_path, truth_manifest.patch_size);
    const LabelGrid pred = pixels_to_patches(mask, truth, options.patch_threshold);

    ImageScore score;
    score.image_id = truth_entry.image_id;
    score.counts = confusion_disease(pred, truth);
    score.f1 = f1_from_counts(score.counts);
    report.totals.tp += score.counts.tp;
    report.totals.fp += score.counts.fp;
    report.totals.fn += score.counts.fn;
    report.totals.tn += score.counts.tn;
    report.per_image.push_back(std::move(score));
  }
  if (report.per_image.empty()) throw ValidationError("run_eval: empty truth manifest");
  double sum = 0.0;
  for (const ImageScore& s : report.per_image) sum += s.f1;
  report.aggregate_f1 = sum / static_cast<double>(report.per_image.size());

  if (!out_csv.empty()) {
    write_scores_csv(out_csv, report.per_image, report.aggregate_f1);
  }
  return report;
}

}  // namespace specaug
