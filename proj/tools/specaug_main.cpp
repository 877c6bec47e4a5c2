#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "specaug/demo.hpp"
#include "specaug/image_io.hpp"
#include "specaug/pipeline.hpp"

using namespace specaug;

namespace {

std::pair<double, double> parse_range(const std::string& text, const std::string& flag) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) {
    throw ValidationError(flag + ": expected lo:hi, got '" + text + "'");
  }
  try {
    return {std::stod(text.substr(0, colon)), std::stod(text.substr(colon + 1))};
  } catch (const std::exception&) {
    throw ValidationError(flag + ": expected lo:hi, got '" + text + "'");
  }
}

std::pair<std::size_t, std::size_t> parse_grid(const std::string& text) {
  const auto x = text.find('x');
  if (x == std::string::npos) {
    throw ValidationError("--grid: expected RxC, got '" + text + "'");
  }
  try {
    return {std::stoul(text.substr(0, x)), std::stoul(text.substr(x + 1))};
  } catch (const std::exception&) {
    throw ValidationError("--grid: expected RxC, got '" + text + "'");
  }
}

std::vector<std::string> split_methods(const std::string& text) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto comma = text.find(',', start);
    if (comma == std::string::npos) {
      out.push_back(text.substr(start));
      break;
    }
    out.push_back(text.substr(start, comma - start));
    start = comma + 1;
  }
  return out;
}

struct AugmentArgs {
  std::string manifest_path;
  std::string out_dir;
  std::string methods = "dct";
  int replications = 5;
  double eta = 0.0;
  std::uint64_t seed = 0;
  bool diseased_only = false;
  std::string wavelet = "haar";
  std::size_t levels = 2;
  bool dwt_details_only = false;
  std::string gamma_range = "0.8:1.2";
  double rotation_max = 10.0;
  std::string scale_range = "0.95:1.05";
  std::string grid = "4x4";
  std::string disp_range = "1:20";
  std::string window;  // defaults to manifest metadata
  int workers = 1;
};

int run_augment_command(const AugmentArgs& args) {
  const Manifest manifest = load_manifest(args.manifest_path);
  const auto [gamma_lo, gamma_hi] = parse_range(args.gamma_range, "--gamma-range");
  const auto [scale_lo, scale_hi] = parse_range(args.scale_range, "--scale-range");
  const auto [grid_rows, grid_cols] = parse_grid(args.grid);
  const auto [disp_min, disp_max] = parse_range(args.disp_range, "--disp-range");
  double window_lo = manifest.window_lo, window_hi = manifest.window_hi;
  if (!args.window.empty()) {
    std::tie(window_lo, window_hi) = parse_range(args.window, "--window");
  }

  PolicyConfig policy;
  policy.master_seed = args.seed;
  policy.filter = args.diseased_only ? ReplicationFilter::kDiseasedOnly
                                     : ReplicationFilter::kAll;
  for (const std::string& name : split_methods(args.methods)) {
    AugmentSpec spec;
    spec.method = method_from_string(name);
    spec.replications = args.replications;
    spec.eta = args.eta;
    spec.wavelet = args.wavelet;
    spec.levels = args.levels;
    spec.dwt_details_only = args.dwt_details_only;
    spec.gamma_lo = gamma_lo;
    spec.gamma_hi = gamma_hi;
    spec.window_lo = window_lo;
    spec.window_hi = window_hi;
    spec.rotation_max_deg = args.rotation_max;
    spec.scale_lo = scale_lo;
    spec.scale_hi = scale_hi;
    spec.grid_rows = grid_rows;
    spec.grid_cols = grid_cols;
    spec.disp_min = disp_min;
    spec.disp_max = disp_max;
    policy.stages.push_back(spec);
  }

  const AugmentSummary summary =
      run_augment(manifest, policy, args.out_dir, args.workers);
  std::printf("augment: %zu/%zu images selected, %zu outputs written to %s\n",
              summary.images_selected, summary.images_total, summary.outputs_written,
              args.out_dir.c_str());
  std::printf("policy hash %s, audit log %s\n", summary.policy_hash.c_str(),
              summary.audit_path.string().c_str());
  return 0;
}

struct EvalArgs {
  std::string pred_path;
  std::string truth_path;
  bool hole_fill = false;
  std::string fill_method = "closing";
  double patch_threshold = 0.5;
  std::string out_csv;
};

int run_eval_command(const EvalArgs& args) {
  const Manifest pred = load_manifest(args.pred_path);
  const Manifest truth = load_manifest(args.truth_path);
  EvalOptions options;
  options.use_hole_fill = args.hole_fill;
  if (args.fill_method == "floodfill") {
    options.floodfill = true;
  } else if (args.fill_method != "closing") {
    throw ValidationError("--fill-method: expected closing or floodfill");
  }
  options.patch_threshold = args.patch_threshold;
  const EvalReport report =
      run_eval(pred, truth, options, args.out_csv.empty() ? std::filesystem::path{}
                                                          : std::filesystem::path(args.out_csv));
  for (const ImageScore& s : report.per_image) {
    std::printf("%-16s tp=%llu fp=%llu fn=%llu tn=%llu f1=%.5f\n", s.image_id.c_str(),
                static_cast<unsigned long long>(s.counts.tp),
                static_cast<unsigned long long>(s.counts.fp),
                static_cast<unsigned long long>(s.counts.fn),
                static_cast<unsigned long long>(s.counts.tn), s.f1);
  }
  std::printf("aggregate f1 over %zu images: %.5f\n", report.per_image.size(),
              report.aggregate_f1);
  if (!args.out_csv.empty()) std::printf("report written to %s\n", args.out_csv.c_str());
  return 0;
}

struct InspectArgs {
  std::string image_path;
  std::string format = "auto";
  std::string wavelet = "haar";
  std::size_t levels = 2;
};

double band_energy(const Band& band) {
  double e = 0.0;
  for (double v : band.values) e += v * v;
  return e;
}

int run_inspect_command(const InspectArgs& args) {
  const ImageFormat format = args.format == "auto"
                                 ? image_format_from_path(args.image_path)
                                 : image_format_from_string(args.format);
  const Image img = load_image(args.image_path, format);
  std::printf("image %s: %zux%zu, values [%.3f, %.3f]\n", args.image_path.c_str(), img.rows(),
              img.cols(), img.min_value(), img.max_value());

  double energy = 0.0;
  for (double v : img.data()) energy += v * v;

  const DctComponents comps = dct2_forward(img);
  const Image dct_back = dct2_inverse(comps);
  double dct_err = 0.0, dct_energy = 0.0;
  for (std::size_t k = 0; k < img.size(); ++k) {
    dct_err = std::max(dct_err, std::fabs(img.data()[k] - dct_back.data()[k]));
  }
  for (double v : comps.coeffs) dct_energy += v * v;
  std::printf("dct : round-trip max error %.3e, energy ratio %.12f, dc %.3f\n", dct_err,
              dct_energy / energy, comps.at(0, 0));

  const WaveletBasis basis = WaveletBasis::from_name(args.wavelet);
  const WaveletPyramid pyr = dwt2_forward(img, basis, args.levels);
  const Image dwt_back = dwt2_inverse(pyr, basis);
  double dwt_err = 0.0;
  for (std::size_t k = 0; k < img.size(); ++k) {
    dwt_err = std::max(dwt_err, std::fabs(img.data()[k] - dwt_back.data()[k]));
  }
  std::printf("dwt : basis %s, %zu levels, round-trip max error %.3e\n", args.wavelet.c_str(),
              args.levels, dwt_err);
  double pyr_energy = band_energy(pyr.approx);
  for (const DetailBands& det : pyr.details) {
    pyr_energy += band_energy(det.h) + band_energy(det.v) + band_energy(det.d);
  }
  std::printf("      approx %zux%zu, energy share %.4f\n", pyr.approx.rows, pyr.approx.cols,
              band_energy(pyr.approx) / pyr_energy);
  for (std::size_t l = 0; l < pyr.details.size(); ++l) {
    const DetailBands& det = pyr.details[l];
    std::printf("      level %zu (%zux%zu): h %.3e  v %.3e  d %.3e\n",
                pyr.details.size() - l, det.h.rows, det.h.cols,
                band_energy(det.h) / pyr_energy, band_energy(det.v) / pyr_energy,
                band_energy(det.d) / pyr_energy);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"spectral and spatial data augmentation for 2D images"};
  app.require_subcommand(1);

  AugmentArgs augment_args;
  CLI::App* augment = app.add_subcommand("augment", "synthesize augmented images");
  augment->add_option("--manifest", augment_args.manifest_path, "dataset manifest JSON")
      ->required();
  augment->add_option("--out", augment_args.out_dir, "output directory")->required();
  augment->add_option("--method", augment_args.methods,
                      "method or comma-separated pipeline: dct, dwt, simple, affine, "
                      "intensity, elastic");
  augment->add_option("--replications", augment_args.replications, "copies per image (R)");
  augment->add_option("--eta", augment_args.eta, "max spectral noise fraction");
  augment->add_option("--seed", augment_args.seed, "master seed");
  augment->add_flag("--diseased-only", augment_args.diseased_only,
                    "only replicate images containing diseased patches");
  augment->add_option("--wavelet", augment_args.wavelet, "haar or db4");
  augment->add_option("--levels", augment_args.levels, "wavelet decomposition levels");
  augment->add_flag("--dwt-details-only", augment_args.dwt_details_only,
                    "corrupt only detail coefficients");
  augment->add_option("--gamma-range", augment_args.gamma_range, "gamma lo:hi");
  augment->add_option("--rotation-max", augment_args.rotation_max, "max rotation (degrees)");
  augment->add_option("--scale-range", augment_args.scale_range, "affine scale lo:hi");
  augment->add_option("--grid", augment_args.grid, "elastic grid, e.g. 4x4");
  augment->add_option("--disp-range", augment_args.disp_range, "elastic displacement lo:hi px");
  augment->add_option("--window", augment_args.window,
                      "intensity window lo:hi (defaults to manifest metadata)");
  augment->add_option("--workers", augment_args.workers, "worker threads");

  EvalArgs eval_args;
  CLI::App* eval = app.add_subcommand("eval", "score predictions against truth labels");
  eval->add_option("--pred", eval_args.pred_path, "prediction manifest JSON")->required();
  eval->add_option("--truth", eval_args.truth_path, "truth manifest JSON")->required();
  eval->add_flag("--hole-fill", eval_args.hole_fill, "apply morphological hole filling");
  eval->add_option("--fill-method", eval_args.fill_method, "closing (default) or floodfill");
  eval->add_option("--patch-threshold", eval_args.patch_threshold,
                   "fraction of set pixels that marks a patch diseased");
  eval->add_option("--out", eval_args.out_csv, "CSV report path");

  InspectArgs inspect_args;
  CLI::App* inspect = app.add_subcommand("inspect", "transform statistics for one image");
  inspect->add_option("--image", inspect_args.image_path, "image file")->required();
  inspect->add_option("--format", inspect_args.format, "pgm16, rawf64 or auto");
  inspect->add_option("--wavelet", inspect_args.wavelet, "haar or db4");
  inspect->add_option("--levels", inspect_args.levels, "wavelet decomposition levels");

  std::string demo_dir;
  CLI::App* demo = app.add_subcommand("make-demo", "write the bundled demo dataset");
  demo->add_option("--out", demo_dir, "target directory")->required();

  try {
    app.parse(argc, argv);
    if (*augment) return run_augment_command(augment_args);
    if (*eval) return run_eval_command(eval_args);
    if (*inspect) return run_inspect_command(inspect_args);
    if (*demo) {
      make_demo_dataset(demo_dir);
      std::printf("demo dataset written to %s\n", demo_dir.c_str());
      return 0;
    }
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  } catch (const ValidationError& e) {
    std::fprintf(stderr, "validation error: %s\n", e.what());
    return 1;
  } catch (const IoError& e) {
    std::fprintf(stderr, "i/o error: %s\n", e.what());
    return 2;
  }
  return 0;
}
