// Acceptance suite: every check prints one PASS/FAIL line; the process exits
// nonzero if any check fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "specaug/baseline.hpp"
#include "specaug/corruption.hpp"
#include "specaug/dct.hpp"
#include "specaug/demo.hpp"
#include "specaug/image_io.hpp"
#include "specaug/metrics.hpp"
#include "specaug/pipeline.hpp"
#include "specaug/wavelet.hpp"

using namespace specaug;

namespace {

int g_failures = 0;

void report(int criterion, const std::string& name, bool ok, const std::string& detail = "") {
  std::printf("%s  %2d  %s%s%s\n", ok ? "PASS" : "FAIL", criterion, name.c_str(),
              detail.empty() ? "" : "  -- ", detail.c_str());
  if (!ok) ++g_failures;
}

double elapsed_seconds(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

Image random_ct_image(std::mt19937_64& rng, std::size_t rows, std::size_t cols) {
  std::uniform_real_distribution<double> dist(-1000.0, 3000.0);
  Image img(rows, cols);
  for (double& v : img.data()) v = dist(rng);
  return img;
}

double max_abs_diff(const Image& a, const Image& b) {
  double m = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    m = std::max(m, std::fabs(a.data()[k] - b.data()[k]));
  }
  return m;
}

double nu(std::size_t e) { return e == 0 ? 1.0 / std::numbers::sqrt2 : 1.0; }

DctComponents dct2_forward_ref(const Image& f) {
  const std::size_t n = f.rows(), m = f.cols();
  DctComponents out(n, m);
  const double pref = std::sqrt(2.0 / static_cast<double>(n)) *
                      std::sqrt(2.0 / static_cast<double>(m));
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = 0; v < m; ++v) {
      double acc = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
          acc += std::cos(std::numbers::pi * static_cast<double>(u) *
                          (2.0 * static_cast<double>(i) + 1.0) /
                          (2.0 * static_cast<double>(n))) *
                 std::cos(std::numbers::pi * static_cast<double>(v) *
                          (2.0 * static_cast<double>(j) + 1.0) /
                          (2.0 * static_cast<double>(m))) *
                 f.at(i, j);
        }
      }
      out.at(u, v) = pref * nu(u) * nu(v) * acc;
    }
  }
  return out;
}

Image procedural_texture_64() {
  Image img(64, 64);
  for (std::size_t i = 0; i < 64; ++i) {
    for (std::size_t j = 0; j < 64; ++j) {
      img.at(i, j) = 500.0 + 300.0 * std::sin(static_cast<double>(i) / 3.1) *
                                 std::cos(static_cast<double>(j) / 2.7) +
                     200.0 * std::sin(static_cast<double>(i + j) / 5.3) +
                     60.0 * std::cos(static_cast<double>(2 * i + j) / 1.9);
    }
  }
  return img;
}

std::string read_bytes(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::map<std::string, std::string> dir_bytes(const std::filesystem::path& dir) {
  std::map<std::string, std::string> out;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.is_regular_file()) out[entry.path().filename().string()] = read_bytes(entry.path());
  }
  return out;
}

struct ScratchDir {
  std::filesystem::path path;
  explicit ScratchDir(const char* tag) {
    path = std::filesystem::temp_directory_path() /
           (std::string("specaug_accept_") + tag + "_" + std::to_string(::getpid()));
    std::filesystem::remove_all(path);
    std::filesystem::create_directories(path);
  }
  ~ScratchDir() {
    std::error_code ec;
    std::filesystem::remove_all(path, ec);
  }
};

// ---- criteria -------------------------------------------------------------

void criterion_1_and_2() {
  const auto start = std::chrono::steady_clock::now();
  std::mt19937_64 rng(90210);
  std::uniform_int_distribution<std::size_t> size_dist(1, 64);
  bool recon_ok = true, parseval_ok = true;
  double worst_recon = 0.0, worst_parseval = 0.0;
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = size_dist(rng), m = size_dist(rng);
    const Image f = random_ct_image(rng, n, m);
    const DctComponents comps = dct2_forward(f);
    const Image back = dct2_inverse(comps);
    const double scale =
        std::max(1.0, std::max(std::fabs(f.max_value()), std::fabs(f.min_value())));
    const double err = max_abs_diff(f, back) / scale;
    worst_recon = std::max(worst_recon, err);
    if (err > 1e-9) recon_ok = false;

    double ef = 0.0, ec = 0.0;
    for (double v : f.data()) ef += v * v;
    for (double v : comps.coeffs) ec += v * v;
    const double rel = std::fabs(ef - ec) / ef;
    worst_parseval = std::max(worst_parseval, rel);
    if (rel > 1e-9) parseval_ok = false;
  }
  const double secs = elapsed_seconds(start);
  char detail[160];
  std::snprintf(detail, sizeof(detail), "worst relative error %.2e, %.2f s", worst_recon, secs);
  report(1, "dct perfect reconstruction over 200 random images", recon_ok && secs < 10.0,
         detail);
  std::snprintf(detail, sizeof(detail), "worst relative energy gap %.2e", worst_parseval);
  report(2, "dct energy preservation on the same corpus", parseval_ok, detail);
}

void criterion_3() {
  std::mt19937_64 rng(31337);
  std::uniform_real_distribution<double> dist(-10.0, 10.0);
  double worst = 0.0;
  for (std::size_t n = 1; n <= 16; ++n) {
    for (std::size_t m = 1; m <= 16; ++m) {
      Image f(n, m);
      for (double& v : f.data()) v = dist(rng);
      const DctComponents fast = dct2_forward(f);
      const DctComponents ref = dct2_forward_ref(f);
      for (std::size_t k = 0; k < fast.coeffs.size(); ++k) {
        worst = std::max(worst, std::fabs(fast.coeffs[k] - ref.coeffs[k]));
      }
    }
  }
  char detail[80];
  std::snprintf(detail, sizeof(detail), "max abs diff %.2e", worst);
  report(3, "separable dct equals the quadruple-loop oracle (all sizes <= 16)", worst <= 1e-12,
         detail);
}

void criterion_4() {
  std::mt19937_64 rng(404);
  std::uniform_real_distribution<double> dist(-10000.0, 10000.0);
  bool recon_ok = true;
  double worst = 0.0;
  for (const char* name : {"haar", "db4"}) {
    const WaveletBasis basis = WaveletBasis::from_name(name);
    for (std::size_t n = 2; n <= 64; ++n) {
      for (std::size_t levels = 1; levels <= 3; ++levels) {
        if ((std::size_t{1} << levels) > n) continue;
        Image f(n, n);
        for (double& v : f.data()) v = dist(rng);
        const Image back = dwt2_inverse(dwt2_forward(f, basis, levels), basis);
        const double err = max_abs_diff(f, back);
        worst = std::max(worst, err);
        if (err > 1e-8) recon_ok = false;
      }
    }
    // Non-square and odd mixes.
    for (const auto [n, m] : {std::pair<std::size_t, std::size_t>{2, 63},
                              {5, 64},
                              {17, 33},
                              {33, 2},
                              {64, 31}}) {
      for (std::size_t levels = 1; levels <= 3; ++levels) {
        if ((std::size_t{1} << levels) > std::min(n, m)) continue;
        Image f(n, m);
        for (double& v : f.data()) v = dist(rng);
        const Image back = dwt2_inverse(dwt2_forward(f, basis, levels), basis);
        const double err = max_abs_diff(f, back);
        worst = std::max(worst, err);
        if (err > 1e-8) recon_ok = false;
      }
    }
  }

  // Cascade: a 2-level transform equals two nested 1-level transforms.
  bool cascade_ok = true;
  for (const auto [n, m] :
       {std::pair<std::size_t, std::size_t>{8, 8}, {12, 6}, {33, 17}, {64, 64}}) {
    Image f(n, m);
    for (double& v : f.data()) v = dist(rng);
    for (const char* name : {"haar", "db4"}) {
      const WaveletBasis basis = WaveletBasis::from_name(name);
      const WaveletPyramid two = dwt2_forward(f, basis, 2);
      const WaveletPyramid one = dwt2_forward(f, basis, 1);
      Image approx(one.approx.rows, one.approx.cols);
      approx.data() = one.approx.values;
      const WaveletPyramid nested = dwt2_forward(approx, basis, 1);
      auto band_gap = [](const Band& a, const Band& b) {
        double g = 0.0;
        for (std::size_t k = 0; k < a.values.size(); ++k) {
          g = std::max(g, std::fabs(a.values[k] - b.values[k]));
        }
        return g;
      };
      if (band_gap(two.approx, nested.approx) > 1e-10 ||
          band_gap(two.details[0].h, nested.details[0].h) > 1e-10 ||
          band_gap(two.details[0].v, nested.details[0].v) > 1e-10 ||
          band_gap(two.details[0].d, nested.details[0].d) > 1e-10 ||
          band_gap(two.details[1].h, one.details[0].h) > 1e-10 ||
          band_gap(two.details[1].v, one.details[0].v) > 1e-10 ||
          band_gap(two.details[1].d, one.details[0].d) > 1e-10) {
        cascade_ok = false;
      }
    }
  }
  char detail[120];
  std::snprintf(detail, sizeof(detail), "worst round-trip error %.2e, cascade %s", worst,
                cascade_ok ? "exact" : "BROKEN");
  report(4, "dwt perfect reconstruction (haar+db4, levels 1-3, sizes 2-64) and cascade",
         recon_ok && cascade_ok, detail);
}

void criterion_5() {
  const std::vector<double> rhos = rho_schedule(3, 0.3);
  bool ok = rhos.size() == 3 && std::fabs(rhos[0] - 0.1) < 1e-15 &&
            std::fabs(rhos[1] - 0.2) < 1e-15 && std::fabs(rhos[2] - 0.3) < 1e-15 &&
            rhos[2] == 0.3;
  for (double eta : {0.005, 0.01, 0.05, 0.10}) {
    const std::vector<double> s = rho_schedule(5, eta);
    if (s.size() != 5 || s.back() != eta) ok = false;
  }
  report(5, "rho schedule worked example and exact eta endpoints", ok);
}

void criterion_6() {
  const auto start = std::chrono::steady_clock::now();
  DctComponents comps(1, 2);
  comps.at(0, 0) = 100.0;
  comps.at(0, 1) = 0.0;
  const std::size_t n = 100000;
  double sum = 0.0, sumsq = 0.0;
  bool zero_ok = true;
  for (std::size_t r = 0; r < n; ++r) {
    const DctComponents out = corrupt_dct(comps, 0.1, NoiseStream(2718, 0, r, 0));
    sum += out.at(0, 0);
    sumsq += out.at(0, 0) * out.at(0, 0);
    if (out.at(0, 1) != 0.0) zero_ok = false;
  }
  const double mean = sum / static_cast<double>(n);
  const double stddev = std::sqrt(sumsq / static_cast<double>(n) - mean * mean);
  const double secs = elapsed_seconds(start);
  char detail[120];
  std::snprintf(detail, sizeof(detail), "std %.4f (want 9.8..10.2), zeros %s, %.2f s", stddev,
                zero_ok ? "untouched" : "ALTERED", secs);
  report(6, "noise contract at rho 0.1 on magnitude 100",
         stddev >= 9.8 && stddev <= 10.2 && zero_ok && secs < 5.0, detail);
}

void criterion_7() {
  std::mt19937_64 rng(777);
  const Image f = random_ct_image(rng, 47, 33);
  bool ok = true;
  double worst = 0.0;
  for (Method method : {Method::kDct, Method::kDwt}) {
    AugmentSpec spec;
    spec.method = method;
    spec.replications = 5;
    spec.eta = 0.0;
    spec.seed = 555;
    const std::vector<Image> out = synthesize(f, spec, 0);
    if (out.size() != 5) ok = false;
    for (const Image& img : out) {
      const double err = max_abs_diff(f, img);
      worst = std::max(worst, err);
      if (err > 1e-9) ok = false;
    }
  }
  char detail[80];
  std::snprintf(detail, sizeof(detail), "worst deviation %.2e", worst);
  report(7, "eta 0 returns pure round trips for both methods", ok, detail);
}

void criterion_8() {
  const Image texture = procedural_texture_64();
  bool monotone_ok = true, floor_ok = true;
  double min_psnr_low_eta = 1e9;
  for (Method method : {Method::kDct, Method::kDwt}) {
    // eta = 0.10: mean PSNR over 20 seeds must be non-increasing in r.
    std::vector<double> mean_psnr(5, 0.0);
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      AugmentSpec spec;
      spec.method = method;
      spec.replications = 5;
      spec.eta = 0.10;
      spec.seed = seed;
      const std::vector<Image> out = synthesize(texture, spec, 0);
      for (std::size_t r = 0; r < 5; ++r) mean_psnr[r] += psnr(texture, out[r]);
    }
    for (std::size_t r = 0; r + 1 < 5; ++r) {
      if (mean_psnr[r + 1] > mean_psnr[r]) monotone_ok = false;
    }
    // eta = 0.005: every synthesized image keeps PSNR >= 25 dB.
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      AugmentSpec spec;
      spec.method = method;
      spec.replications = 5;
      spec.eta = 0.005;
      spec.seed = seed;
      for (const Image& img : synthesize(texture, spec, 0)) {
        min_psnr_low_eta = std::min(min_psnr_low_eta, psnr(texture, img));
      }
    }
  }
  if (min_psnr_low_eta < 25.0) floor_ok = false;
  char detail[120];
  std::snprintf(detail, sizeof(detail), "min PSNR at eta 0.005: %.1f dB", min_psnr_low_eta);
  report(8, "degradation is monotone in r and mild at eta 0.005", monotone_ok && floor_ok,
         detail);
}

void criterion_9() {
  ScratchDir scratch("det");
  make_demo_dataset(scratch.path / "data");
  const Manifest manifest = load_manifest(scratch.path / "data" / "manifest.json");
  PolicyConfig policy;
  AugmentSpec stage;
  stage.method = Method::kDwt;
  stage.replications = 3;
  stage.eta = 0.01;
  policy.stages = {stage};
  policy.filter = ReplicationFilter::kDiseasedOnly;
  policy.master_seed = 20240809;

  run_augment(manifest, policy, scratch.path / "run_a", 1);
  run_augment(manifest, policy, scratch.path / "run_b", 1);
  run_augment(manifest, policy, scratch.path / "run_c", 8);
  const auto a = dir_bytes(scratch.path / "run_a");
  const auto b = dir_bytes(scratch.path / "run_b");
  const auto c = dir_bytes(scratch.path / "run_c");
  const bool ok = !a.empty() && a == b && a == c;
  char detail[80];
  std::snprintf(detail, sizeof(detail), "%zu files compared", a.size());
  report(9, "augment runs are byte-identical across reruns and worker counts", ok, detail);
}

void criterion_10() {
  std::mt19937_64 rng(1010);
  // f1 vs brute force on 1000 random lattices.
  bool f1_ok = true;
  std::uniform_int_distribution<int> label_dist(0, 2);
  for (int t = 0; t < 1000; ++t) {
    const std::size_t gr = 1 + rng() % 7, gc = 1 + rng() % 7;
    LabelGrid truth(gr, gc, 20), pred(gr, gc, 20);
    for (auto& l : truth.labels()) l = static_cast<PatchLabel>(label_dist(rng));
    for (auto& l : pred.labels()) l = static_cast<PatchLabel>(label_dist(rng));
    std::uint64_t tp = 0, fp = 0, fn = 0;
    for (std::size_t k = 0; k < truth.size(); ++k) {
      if (truth.labels()[k] == PatchLabel::kOutside) continue;
      const bool p = pred.labels()[k] == PatchLabel::kDiseased;
      const bool q = truth.labels()[k] == PatchLabel::kDiseased;
      tp += p && q;
      fp += p && !q;
      fn += !p && q;
    }
    const double expect =
        (2 * tp + fp + fn) == 0
            ? 1.0
            : 2.0 * static_cast<double>(tp) / static_cast<double>(2 * tp + fp + fn);
    if (f1_disease(pred, truth) != expect) f1_ok = false;
  }

  // hole_fill idempotent + extensive on 1000 random masks.
  bool morph_ok = true;
  std::bernoulli_distribution bit(0.3);
  for (int t = 0; t < 1000; ++t) {
    const std::size_t rows = 3 + rng() % 12, cols = 3 + rng() % 12;
    PixelMask mask(rows, cols);
    for (auto& v : mask.data()) v = bit(rng) ? 1 : 0;
    const PixelMask once = hole_fill(mask);
    if (!(hole_fill(once) == once)) morph_ok = false;
    for (std::size_t k = 0; k < mask.size(); ++k) {
      if (mask.data()[k] && !once.data()[k]) morph_ok = false;
    }
  }

  // The constructed tp=3 fp=1 fn=2 case returns exactly 2/3.
  const ConfusionCounts counts{3, 1, 2, 0};
  const bool exact_ok = f1_from_counts(counts) == 2.0 / 3.0;

  report(10, "metrics oracle: brute-force f1, closing properties, exact 2/3",
         f1_ok && morph_ok && exact_ok);
}

void criterion_11() {
  std::mt19937_64 rng(1111);
  std::uniform_real_distribution<double> dist(-1000.0, 3000.0);
  Image img(64, 64);
  for (double& v : img.data()) v = dist(rng);
  const auto [gr, gc] = LabelGrid::lattice_for(64, 64, 16);
  const LabelGrid labels(gr, gc, 16);

  // gamma = 1 against the window round trip of the input.
  const double lo = -1000.0, hi = 3000.0;
  const Image gamma_out = apply_gamma(img, 1.0, lo, hi);
  Image window_rt(64, 64);
  for (std::size_t k = 0; k < img.size(); ++k) {
    const double u = std::clamp((img.data()[k] - lo) / (hi - lo), 0.0, 1.0);
    window_rt.data()[k] = lo + (hi - lo) * u;
  }
  const double gamma_err = max_abs_diff(gamma_out, window_rt);

  const DisplacementGrid zero_grid(4, 4);
  const auto [elastic_out, elastic_labels] =
      apply_displacement(img, labels, densify_displacement(zero_grid, 64, 64));
  const double elastic_err = max_abs_diff(elastic_out, img);

  const auto [affine_out, affine_labels] = apply_affine(img, labels, AffineParams{});
  const double affine_err = max_abs_diff(affine_out, img);

  char detail[120];
  std::snprintf(detail, sizeof(detail), "gamma %.2e, elastic %.2e, affine %.2e", gamma_err,
                elastic_err, affine_err);
  report(11, "baseline identity transforms reproduce the input",
         gamma_err <= 1e-12 * (hi - lo) && elastic_err <= 1e-12 && affine_err <= 1e-12, detail);
}

void criterion_12() {
  const auto start = std::chrono::steady_clock::now();
  ScratchDir scratch("smoke");
  make_demo_dataset(scratch.path / "data");
  const Manifest manifest = load_manifest(scratch.path / "data" / "manifest.json");

  PolicyConfig policy;
  AugmentSpec stage;
  stage.method = Method::kDwt;
  stage.replications = 5;
  stage.eta = 0.005;
  policy.stages = {stage};
  policy.filter = ReplicationFilter::kDiseasedOnly;
  policy.master_seed = 99;

  const AugmentSummary summary = run_augment(manifest, policy, scratch.path / "out", 4);
  const bool counts_ok = summary.images_selected == 6 && summary.outputs_written == 30;

  const Manifest pred = load_manifest(scratch.path / "data" / "pred_manifest.json");
  EvalOptions options;
  options.use_hole_fill = true;
  const EvalReport eval = run_eval(pred, manifest, options, scratch.path / "report.csv");
  const bool eval_ok = eval.per_image.size() == 10 && eval.aggregate_f1 > 0.0;

  // Replay a sample of audit records and compare bytes against the files.
  nlohmann::json audit;
  std::ifstream(summary.audit_path) >> audit;
  bool replay_ok = true;
  const auto& outputs = audit.at("outputs");
  for (std::size_t pick : {std::size_t{0}, outputs.size() / 2, outputs.size() - 1}) {
    const auto& record = outputs[pick];
    const Image replayed = replay_output(record, manifest);
    const auto replay_path = scratch.path / "replayed.spa";
    save_image(replayed, replay_path, ImageFormat::kRawF64);
    const auto original = scratch.path / "out" / record.at("image_file").get<std::string>();
    if (read_bytes(replay_path) != read_bytes(original)) replay_ok = false;
  }

  const double secs = elapsed_seconds(start);
  char detail[160];
  std::snprintf(detail, sizeof(detail),
                "%zu outputs, aggregate f1 %.3f, replay %s, %.1f s", summary.outputs_written,
                eval.aggregate_f1, replay_ok ? "byte-identical" : "DIVERGED", secs);
  report(12, "end-to-end smoke on the bundled demo dataset",
         counts_ok && eval_ok && replay_ok && secs < 60.0, detail);
}

}  // namespace

int main() {
  criterion_1_and_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  criterion_10();
  criterion_11();
  criterion_12();
  if (g_failures > 0) {
    std::printf("%d criterion check(s) FAILED\n", g_failures);
    return 1;
  }
  std::printf("all acceptance criteria passed\n");
  return 0;
}
