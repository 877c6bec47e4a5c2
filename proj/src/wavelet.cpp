#include "specaug/wavelet.hpp"

#include <cmath>
#include <numbers>

namespace specaug {

namespace {

// Quadrature mirror highpass: g[m] = (-1)^m * lo[L-1-m].
std::vector<double> qmf_highpass(const std::vector<double>& lo) {
  const std::size_t L = lo.size();
  std::vector<double> hi(L);
  for (std::size_t m = 0; m < L; ++m) {
    const double v = lo[L - 1 - m];
    hi[m] = (m % 2 == 0) ? v : -v;
  }
  return hi;
}

WaveletBasis make_orthonormal(std::string name, std::vector<double> lo) {
  WaveletBasis b;
  b.name = std::move(name);
  b.analysis_highpass = qmf_highpass(lo);
  b.analysis_lowpass = std::move(lo);
  b.synthesis_lowpass = b.analysis_lowpass;
  b.synthesis_highpass = b.analysis_highpass;
  b.validate();
  return b;
}

// Periodized analysis step: a[k] = sum_m lo[m] x[(2k+m) mod n], likewise d
// with the highpass. n must be even.
void analyze_periodic(const double* x, std::size_t n, const std::vector<double>& lo,
                      const std::vector<double>& hi, double* a, double* d) {
  const std::size_t half = n / 2;
  const std::size_t L = lo.size();
  for (std::size_t k = 0; k < half; ++k) {
    double sa = 0.0, sd = 0.0;
    for (std::size_t m = 0; m < L; ++m) {
      const double v = x[(2 * k + m) % n];
      sa += lo[m] * v;
      sd += hi[m] * v;
    }
    a[k] = sa;
    d[k] = sd;
  }
}

// Adjoint of analyze_periodic; exact inverse for orthonormal filters.
void synthesize_periodic(const double* a, const double* d, std::size_t half,
                         const std::vector<double>& lo, const std::vector<double>& hi,
                         double* x) {
  const std::size_t n = 2 * half;
  const std::size_t L = lo.size();
  for (std::size_t i = 0; i < n; ++i) x[i] = 0.0;
  for (std::size_t k = 0; k < half; ++k) {
    for (std::size_t m = 0; m < L; ++m) {
      x[(2 * k + m) % n] += a[k] * lo[m] + d[k] * hi[m];
    }
  }
}

Band pad_to_even(const Band& in) {
  const std::size_t rows = in.rows + (in.rows % 2);
  const std::size_t cols = in.cols + (in.cols % 2);
  if (rows == in.rows && cols == in.cols) return in;
  Band out(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    const std::size_t si = std::min(i, in.rows - 1);
    for (std::size_t j = 0; j < cols; ++j) {
      out.at(i, j) = in.at(si, std::min(j, in.cols - 1));
    }
  }
  return out;
}

Band crop(const Band& in, std::size_t rows, std::size_t cols) {
  if (rows == in.rows && cols == in.cols) return in;
  Band out(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) out.at(i, j) = in.at(i, j);
  }
  return out;
}

// One separable analysis level on an even-sized band.
void analyze_level(const Band& in, const WaveletBasis& basis, Band& ll, DetailBands& det) {
  const std::size_t rows = in.rows, cols = in.cols;
  const std::size_t hr = rows / 2, hc = cols / 2;
  const auto& lo = basis.analysis_lowpass;
  const auto& hi = basis.analysis_highpass;

  // Pass 1: along each row (over the column index).
  Band lo1(rows, hc), hi1(rows, hc);
  for (std::size_t i = 0; i < rows; ++i) {
    analyze_periodic(&in.values[i * cols], cols, lo, hi, &lo1.values[i * hc],
                     &hi1.values[i * hc]);
  }

  // Pass 2: along each column (over the row index). Lowpass of the row-lowpass
  // half is the approximation; the highpass of it is the v band, per the
  // orientation convention in the header.
  ll = Band(hr, hc);
  det.h = Band(hr, hc);
  det.v = Band(hr, hc);
  det.d = Band(hr, hc);
  std::vector<double> col(rows), a(hr), d(hr);
  for (std::size_t j = 0; j < hc; ++j) {
    for (std::size_t i = 0; i < rows; ++i) col[i] = lo1.at(i, j);
    analyze_periodic(col.data(), rows, lo, hi, a.data(), d.data());
    for (std::size_t i = 0; i < hr; ++i) {
      ll.at(i, j) = a[i];
      det.v.at(i, j) = d[i];
    }
    for (std::size_t i = 0; i < rows; ++i) col[i] = hi1.at(i, j);
    analyze_periodic(col.data(), rows, lo, hi, a.data(), d.data());
    for (std::size_t i = 0; i < hr; ++i) {
      det.h.at(i, j) = a[i];
      det.d.at(i, j) = d[i];
    }
  }
}

Band synthesize_level(const Band& ll, const DetailBands& det, const WaveletBasis& basis) {
  if (!ll.same_shape(det.h) || !ll.same_shape(det.v) || !ll.same_shape(det.d)) {
    throw ValidationError("dwt2_inverse: band shape inconsistency");
  }
  const std::size_t hr = ll.rows, hc = ll.cols;
  const std::size_t rows = 2 * hr, cols = 2 * hc;
  const auto& lo = basis.synthesis_lowpass;
  const auto& hi = basis.synthesis_highpass;

  // Inverse of pass 2: rebuild the row-lowpass and row-highpass halves.
  Band lo1(rows, hc), hi1(rows, hc);
  std::vector<double> a(hr), d(hr), col(rows);
  for (std::size_t j = 0; j < hc; ++j) {
    for (std::size_t i = 0; i < hr; ++i) {
      a[i] = ll.at(i, j);
      d[i] = det.v.at(i, j);
    }
    synthesize_periodic(a.data(), d.data(), hr, lo, hi, col.data());
    for (std::size_t i = 0; i < rows; ++i) lo1.at(i, j) = col[i];
    for (std::size_t i = 0; i < hr; ++i) {
      a[i] = det.h.at(i, j);
      d[i] = det.d.at(i, j);
    }
    synthesize_periodic(a.data(), d.data(), hr, lo, hi, col.data());
    for (std::size_t i = 0; i < rows; ++i) hi1.at(i, j) = col[i];
  }

  // Inverse of pass 1: rebuild each row.
  Band out(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    synthesize_periodic(&lo1.values[i * hc], &hi1.values[i * hc], hc, lo, hi,
                        &out.values[i * cols]);
  }
  return out;
}

// Shape of the band entering analysis level l (0 = the original image).
std::pair<std::size_t, std::size_t> level_input_shape(std::size_t rows, std::size_t cols,
                                                      std::size_t level) {
  for (std::size_t l = 0; l < level; ++l) {
    rows = (rows + 1) / 2;
    cols = (cols + 1) / 2;
  }
  return {rows, cols};
}

}  // namespace

WaveletBasis WaveletBasis::haar() {
  const double s = 1.0 / std::numbers::sqrt2;
  return make_orthonormal("haar", {s, s});
}

WaveletBasis WaveletBasis::db4() {
  // Daubechies 8-tap filter (4 vanishing moments), computed by spectral
  // factorization and rounded to the nearest doubles; orthonormality holds
  // to ~1e-17 in this rounding.
  return make_orthonormal("db4", {0.2303778133088965, 0.7148465705529157,
                                  0.6308807679298589, -0.027983769416859854,
                                  -0.18703481171909309, 0.030841381835560764,
                                  0.0328830116668852, -0.010597401785069032});
}

WaveletBasis WaveletBasis::from_name(const std::string& name) {
  if (name == "haar") return haar();
  if (name == "db4") return db4();
  throw ValidationError("unknown wavelet basis '" + name + "' (expected haar or db4)");
}

void WaveletBasis::validate() const {
  double sum = 0.0;
  for (double v : analysis_lowpass) sum += v;
  if (std::fabs(sum - std::numbers::sqrt2) > 1e-12) {
    throw ValidationError("wavelet basis '" + name + "': lowpass does not sum to sqrt(2)");
  }
  if (analysis_lowpass.size() != analysis_highpass.size() ||
      synthesis_lowpass.size() != synthesis_highpass.size()) {
    throw ValidationError("wavelet basis '" + name + "': filter length mismatch");
  }
}

std::size_t WaveletPyramid::total_coefficients() const {
  std::size_t n = approx.values.size();
  for (const DetailBands& det : details) {
    n += det.h.values.size() + det.v.values.size() + det.d.values.size();
  }
  return n;
}

WaveletPyramid dwt2_forward(const Image& img, const WaveletBasis& basis, std::size_t levels) {
  basis.validate();
  if (levels < 1) throw ValidationError("dwt2_forward: levels must be >= 1");
  const std::size_t min_dim = std::min(img.rows(), img.cols());
  if (levels >= 64 || (std::size_t{1} << levels) > min_dim) {
    throw ValidationError("dwt2_forward: too many levels for image size");
  }
  img.require_finite("dwt2_forward");

  WaveletPyramid pyr;
  pyr.levels = levels;
  pyr.original_rows = img.rows();
  pyr.original_cols = img.cols();

  Band current(img.rows(), img.cols());
  current.values = img.data();

  std::vector<DetailBands> fine_to_coarse;
  fine_to_coarse.reserve(levels);
  for (std::size_t l = 0; l < levels; ++l) {
    const Band padded = pad_to_even(current);
    Band ll;
    DetailBands det;
    analyze_level(padded, basis, ll, det);
    fine_to_coarse.push_back(std::move(det));
    current = std::move(ll);
  }
  pyr.approx = std::move(current);
  pyr.details.assign(fine_to_coarse.rbegin(), fine_to_coarse.rend());
  return pyr;
}

Image dwt2_inverse(const WaveletPyramid& pyr, const WaveletBasis& basis) {
  basis.validate();
  if (pyr.levels == 0 || pyr.details.size() != pyr.levels) {
    throw ValidationError("dwt2_inverse: malformed pyramid");
  }
  Band current = pyr.approx;
  for (std::size_t k = 0; k < pyr.levels; ++k) {
    // details[0] is the coarsest: level index (levels-1-k) in analysis order.
    const std::size_t analysis_level = pyr.levels - 1 - k;
    const auto [target_rows, target_cols] =
        level_input_shape(pyr.original_rows, pyr.original_cols, analysis_level);
    Band up = synthesize_level(current, pyr.details[k], basis);
    // The synthesized band may exceed the target by at most the one-row/column
    // padding added during analysis.
    if (up.rows < target_rows || up.rows > target_rows + 1 || up.cols < target_cols ||
        up.cols > target_cols + 1) {
      throw ValidationError("dwt2_inverse: band shape inconsistency");
    }
    current = crop(up, target_rows, target_cols);
  }
  Image out(current.rows, current.cols);
  out.data() = std::move(current.values);
  return out;
}

}  // namespace specaug
