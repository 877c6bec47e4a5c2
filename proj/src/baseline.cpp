#include "specaug/baseline.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace specaug {

namespace {

constexpr double kDegToRad = std::numbers::pi / 180.0;

double bilinear_sample(const Image& img, double qi, double qj) {
  const std::size_t i0 = static_cast<std::size_t>(qi);
  const std::size_t j0 = static_cast<std::size_t>(qj);
  const std::size_t i1 = std::min(i0 + 1, img.rows() - 1);
  const std::size_t j1 = std::min(j0 + 1, img.cols() - 1);
  const double fi = qi - static_cast<double>(i0);
  const double fj = qj - static_cast<double>(j0);
  const double top = img.at(i0, j0) * (1.0 - fj) + img.at(i0, j1) * fj;
  const double bot = img.at(i1, j0) * (1.0 - fj) + img.at(i1, j1) * fj;
  return top * (1.0 - fi) + bot * fi;
}

void check_lattice(const Image& img, const LabelGrid& labels, const char* who) {
  const auto [gr, gc] = LabelGrid::lattice_for(img.rows(), img.cols(), labels.patch_size());
  if (gr != labels.grid_rows() || gc != labels.grid_cols()) {
    throw ValidationError(std::string(who) + ": label lattice does not cover the image");
  }
}

// Backward map of the affine transform: q = flip(c + R(-theta) (p - c) / s).
struct AffineBackward {
  double center_i, center_j;
  double cos_t, sin_t;
  double inv_scale;
  bool hflip, vflip;
  std::size_t rows, cols;

  AffineBackward(const AffineParams& p, std::size_t r, std::size_t c)
      : center_i((static_cast<double>(r) - 1.0) / 2.0),
        center_j((static_cast<double>(c) - 1.0) / 2.0),
        cos_t(std::cos(-p.rotation_deg * kDegToRad)),
        sin_t(std::sin(-p.rotation_deg * kDegToRad)),
        inv_scale(1.0 / p.scale),
        hflip(p.hflip),
        vflip(p.vflip),
        rows(r),
        cols(c) {}

  std::pair<double, double> operator()(double pi, double pj) const {
    const double di = (pi - center_i) * inv_scale;
    const double dj = (pj - center_j) * inv_scale;
    double qi = center_i + cos_t * di - sin_t * dj;
    double qj = center_j + sin_t * di + cos_t * dj;
    if (vflip) qi = static_cast<double>(rows) - 1.0 - qi;
    if (hflip) qj = static_cast<double>(cols) - 1.0 - qj;
    return {qi, qj};
  }

  bool in_support(double qi, double qj) const {
    return qi >= 0.0 && qi <= static_cast<double>(rows) - 1.0 && qj >= 0.0 &&
           qj <= static_cast<double>(cols) - 1.0;
  }
};

// Center pixel of a lattice cell, clamped into the image for partial
// edge patches.
std::pair<double, double> patch_center(const LabelGrid& grid, std::size_t pr, std::size_t pc,
                                       std::size_t rows, std::size_t cols) {
  const double p = static_cast<double>(grid.patch_size());
  double ci = static_cast<double>(pr) * p + (p - 1.0) / 2.0;
  double cj = static_cast<double>(pc) * p + (p - 1.0) / 2.0;
  ci = std::min(ci, static_cast<double>(rows) - 1.0);
  cj = std::min(cj, static_cast<double>(cols) - 1.0);
  return {ci, cj};
}

PatchLabel label_at_pixel(const LabelGrid& grid, double qi, double qj) {
  const auto p = static_cast<double>(grid.patch_size());
  auto pr = static_cast<std::size_t>(std::max(0.0, std::round(qi)) / p);
  auto pc = static_cast<std::size_t>(std::max(0.0, std::round(qj)) / p);
  pr = std::min(pr, grid.grid_rows() - 1);
  pc = std::min(pc, grid.grid_cols() - 1);
  return grid.at(pr, pc);
}

// Natural cubic spline through (xs, ys), evaluated at qs. xs must be strictly
// increasing. Two points degrade to linear interpolation.
std::vector<double> cubic_spline_eval(const std::vector<double>& xs,
                                      const std::vector<double>& ys,
                                      const std::vector<double>& qs) {
  const std::size_t n = xs.size();
  std::vector<double> second(n, 0.0);
  if (n > 2) {
    // Tridiagonal solve for the interior second derivatives; natural
    // boundary conditions pin the ends to zero.
    std::vector<double> u(n, 0.0);
    for (std::size_t i = 1; i + 1 < n; ++i) {
      const double sig = (xs[i] - xs[i - 1]) / (xs[i + 1] - xs[i - 1]);
      const double p = sig * second[i - 1] + 2.0;
      second[i] = (sig - 1.0) / p;
      u[i] = (ys[i + 1] - ys[i]) / (xs[i + 1] - xs[i]) -
             (ys[i] - ys[i - 1]) / (xs[i] - xs[i - 1]);
      u[i] = (6.0 * u[i] / (xs[i + 1] - xs[i - 1]) - sig * u[i - 1]) / p;
    }
    for (std::size_t i = n - 1; i-- > 1;) {
      second[i] = second[i] * second[i + 1] + u[i];
    }
    second[0] = second[n - 1] = 0.0;
  }

  std::vector<double> out(qs.size());
  std::size_t seg = 0;
  for (std::size_t k = 0; k < qs.size(); ++k) {
    const double x = qs[k];
    while (seg + 2 < n && xs[seg + 1] < x) ++seg;
    const double h = xs[seg + 1] - xs[seg];
    const double a = (xs[seg + 1] - x) / h;
    const double b = (x - xs[seg]) / h;
    out[k] = a * ys[seg] + b * ys[seg + 1] +
             ((a * a * a - a) * second[seg] + (b * b * b - b) * second[seg + 1]) * (h * h) / 6.0;
  }
  return out;
}

std::vector<double> grid_axis_positions(std::size_t grid_n, std::size_t pixels) {
  std::vector<double> xs(grid_n);
  for (std::size_t g = 0; g < grid_n; ++g) {
    xs[g] = static_cast<double>(g) * (static_cast<double>(pixels) - 1.0) /
            (static_cast<double>(grid_n) - 1.0);
  }
  return xs;
}

}  // namespace

std::vector<Image> replicate_simple(const Image& img, int replications) {
  if (replications < 1) throw ValidationError("replicate_simple: replications must be >= 1");
  return std::vector<Image>(static_cast<std::size_t>(replications), img);
}

double gamma_for_replication(int r, int replications, double gamma_lo, double gamma_hi) {
  if (replications == 1) return (gamma_lo + gamma_hi) / 2.0;
  return gamma_lo + (gamma_hi - gamma_lo) * (static_cast<double>(r) - 1.0) /
                        (static_cast<double>(replications) - 1.0);
}

Image apply_gamma(const Image& img, double gamma, double window_lo, double window_hi) {
  if (gamma <= 0.0) throw ValidationError("apply_gamma: gamma must be > 0");
  const Image unit = to_unit_range(img, window_lo, window_hi);
  Image out(img.rows(), img.cols());
  const double span = window_hi - window_lo;
  for (std::size_t k = 0; k < unit.size(); ++k) {
    out.data()[k] = window_lo + span * std::pow(unit.data()[k], gamma);
  }
  return out;
}

std::vector<Image> gamma_augment(const Image& img, int replications, double gamma_lo,
                                 double gamma_hi, double window_lo, double window_hi) {
  if (replications < 1) throw ValidationError("gamma_augment: replications must be >= 1");
  if (!(gamma_lo > 0.0 && gamma_lo <= gamma_hi)) {
    throw ValidationError("gamma_augment: need 0 < gamma_lo <= gamma_hi");
  }
  std::vector<Image> out;
  out.reserve(static_cast<std::size_t>(replications));
  for (int r = 1; r <= replications; ++r) {
    out.push_back(apply_gamma(img, gamma_for_replication(r, replications, gamma_lo, gamma_hi),
                              window_lo, window_hi));
  }
  return out;
}

AffineParams sample_affine_params(NoiseStream& stream, const AugmentSpec& spec) {
  AffineParams p;
  p.hflip = stream.next_bernoulli(0.5);
  p.vflip = stream.next_bernoulli(0.5);
  p.rotation_deg = stream.next_uniform(0.0, spec.rotation_max_deg);
  p.scale = stream.next_uniform(spec.scale_lo, spec.scale_hi);
  return p;
}

std::pair<Image, LabelGrid> apply_affine(const Image& img, const LabelGrid& labels,
                                         const AffineParams& params) {
  check_lattice(img, labels, "apply_affine");
  const AffineBackward backward(params, img.rows(), img.cols());
  const double fill = img.min_value();

  Image out(img.rows(), img.cols());
  for (std::size_t i = 0; i < img.rows(); ++i) {
    for (std::size_t j = 0; j < img.cols(); ++j) {
      const auto [qi, qj] = backward(static_cast<double>(i), static_cast<double>(j));
      out.at(i, j) = backward.in_support(qi, qj) ? bilinear_sample(img, qi, qj) : fill;
    }
  }

  LabelGrid out_labels = labels;
  for (std::size_t pr = 0; pr < labels.grid_rows(); ++pr) {
    for (std::size_t pc = 0; pc < labels.grid_cols(); ++pc) {
      const auto [ci, cj] = patch_center(labels, pr, pc, img.rows(), img.cols());
      const auto [qi, qj] = backward(ci, cj);
      out_labels.at(pr, pc) = backward.in_support(qi, qj) ? label_at_pixel(labels, qi, qj)
                                                          : PatchLabel::kOutside;
    }
  }
  return {std::move(out), std::move(out_labels)};
}

std::vector<std::pair<Image, LabelGrid>> affine_augment(const Image& img,
                                                        const LabelGrid& labels,
                                                        const AugmentSpec& spec,
                                                        std::uint64_t image_index,
                                                        std::uint64_t stage) {
  if (spec.replications < 1) throw ValidationError("affine_augment: replications must be >= 1");
  std::vector<std::pair<Image, LabelGrid>> out;
  out.reserve(static_cast<std::size_t>(spec.replications));
  for (int r = 1; r <= spec.replications; ++r) {
    NoiseStream stream(spec.seed, image_index, static_cast<std::uint64_t>(r), stage);
    out.push_back(apply_affine(img, labels, sample_affine_params(stream, spec)));
  }
  return out;
}

double elastic_cap_for_replication(int r, int replications, double disp_min, double disp_max) {
  if (replications == 1) return disp_max;
  return disp_min + (disp_max - disp_min) * (static_cast<double>(r) - 1.0) /
                        (static_cast<double>(replications) - 1.0);
}

DisplacementGrid sample_displacement_grid(NoiseStream& stream, std::size_t grid_rows,
                                          std::size_t grid_cols, double cap) {
  DisplacementGrid grid(grid_rows, grid_cols);
  for (std::size_t k = 0; k < grid_rows * grid_cols; ++k) {
    const double angle = stream.next_uniform(0.0, 2.0 * std::numbers::pi);
    const double mag = stream.next_uniform(0.0, cap);
    grid.dy[k] = mag * std::sin(angle);
    grid.dx[k] = mag * std::cos(angle);
  }
  return grid;
}

DenseField densify_displacement(const DisplacementGrid& grid, std::size_t rows,
                                std::size_t cols) {
  if (grid.grid_rows < 2 || grid.grid_cols < 2) {
    throw ValidationError("densify_displacement: grid must be at least 2x2");
  }
  const std::vector<double> row_pos = grid_axis_positions(grid.grid_rows, rows);
  const std::vector<double> col_pos = grid_axis_positions(grid.grid_cols, cols);
  std::vector<double> all_rows(rows), all_cols(cols);
  for (std::size_t i = 0; i < rows; ++i) all_rows[i] = static_cast<double>(i);
  for (std::size_t j = 0; j < cols; ++j) all_cols[j] = static_cast<double>(j);

  DenseField field(rows, cols);
  for (int comp = 0; comp < 2; ++comp) {
    const std::vector<double>& src = comp == 0 ? grid.dy : grid.dx;
    std::vector<double>& dst = comp == 0 ? field.dy : field.dx;
    // Along columns of the coarse grid first, then along rows per pixel column.
    std::vector<std::vector<double>> wide(grid.grid_rows);
    std::vector<double> gy(grid.grid_cols);
    for (std::size_t gr = 0; gr < grid.grid_rows; ++gr) {
      for (std::size_t gc = 0; gc < grid.grid_cols; ++gc) gy[gc] = src[gr * grid.grid_cols + gc];
      wide[gr] = cubic_spline_eval(col_pos, gy, all_cols);
    }
    std::vector<double> col_vals(grid.grid_rows);
    for (std::size_t j = 0; j < cols; ++j) {
      for (std::size_t gr = 0; gr < grid.grid_rows; ++gr) col_vals[gr] = wide[gr][j];
      const std::vector<double> dense_col = cubic_spline_eval(row_pos, col_vals, all_rows);
      for (std::size_t i = 0; i < rows; ++i) dst[i * cols + j] = dense_col[i];
    }
  }
  return field;
}

std::pair<Image, LabelGrid> apply_displacement(const Image& img, const LabelGrid& labels,
                                               const DenseField& field) {
  check_lattice(img, labels, "apply_displacement");
  if (field.rows != img.rows() || field.cols != img.cols()) {
    throw ValidationError("apply_displacement: field/image shape mismatch");
  }
  const double max_i = static_cast<double>(img.rows()) - 1.0;
  const double max_j = static_cast<double>(img.cols()) - 1.0;

  Image out(img.rows(), img.cols());
  for (std::size_t i = 0; i < img.rows(); ++i) {
    for (std::size_t j = 0; j < img.cols(); ++j) {
      const std::size_t k = i * img.cols() + j;
      const double qi = std::clamp(static_cast<double>(i) + field.dy[k], 0.0, max_i);
      const double qj = std::clamp(static_cast<double>(j) + field.dx[k], 0.0, max_j);
      out.at(i, j) = bilinear_sample(img, qi, qj);
    }
  }

  LabelGrid out_labels = labels;
  for (std::size_t pr = 0; pr < labels.grid_rows(); ++pr) {
    for (std::size_t pc = 0; pc < labels.grid_cols(); ++pc) {
      const auto [ci, cj] = patch_center(labels, pr, pc, img.rows(), img.cols());
      const std::size_t k = static_cast<std::size_t>(ci) * img.cols() + static_cast<std::size_t>(cj);
      const double qi = std::clamp(ci + field.dy[k], 0.0, max_i);
      const double qj = std::clamp(cj + field.dx[k], 0.0, max_j);
      out_labels.at(pr, pc) = label_at_pixel(labels, qi, qj);
    }
  }
  return {std::move(out), std::move(out_labels)};
}

std::vector<std::pair<Image, LabelGrid>> elastic_augment(const Image& img,
                                                         const LabelGrid& labels,
                                                         const AugmentSpec& spec,
                                                         std::uint64_t image_index,
                                                         std::uint64_t stage) {
  if (spec.replications < 1) throw ValidationError("elastic_augment: replications must be >= 1");
  if (spec.grid_rows < 2 || spec.grid_cols < 2) {
    throw ValidationError("elastic_augment: displacement grid must be at least 2x2");
  }
  const double spacing_r =
      (static_cast<double>(img.rows()) - 1.0) / (static_cast<double>(spec.grid_rows) - 1.0);
  const double spacing_c =
      (static_cast<double>(img.cols()) - 1.0) / (static_cast<double>(spec.grid_cols) - 1.0);
  if (std::min(spacing_r, spacing_c) <= spec.disp_max) {
    throw ValidationError("elastic_augment: image too small (grid spacing must exceed disp_max)");
  }
  std::vector<std::pair<Image, LabelGrid>> out;
  out.reserve(static_cast<std::size_t>(spec.replications));
  for (int r = 1; r <= spec.replications; ++r) {
    NoiseStream stream(spec.seed, image_index, static_cast<std::uint64_t>(r), stage);
    const double cap =
        elastic_cap_for_replication(r, spec.replications, spec.disp_min, spec.disp_max);
    const DisplacementGrid grid =
        sample_displacement_grid(stream, spec.grid_rows, spec.grid_cols, cap);
    out.push_back(apply_displacement(img, labels, densify_displacement(grid, img.rows(), img.cols())));
  }
  return out;
}

}  // namespace specaug
