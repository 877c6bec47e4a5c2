#include "specaug/dct.hpp"

#include <cmath>
#include <numbers>

namespace specaug {

namespace {

// Orthonormal DCT-II basis matrix C[k][i] = s(k) * cos(pi*k*(2i+1)/(2n)),
// s(0) = sqrt(1/n), s(k>0) = sqrt(2/n). Rows are orthonormal, so the
// inverse transform is multiplication by the transpose.
std::vector<double> cosine_basis(std::size_t n) {
  std::vector<double> c(n * n);
  const double s0 = std::sqrt(1.0 / static_cast<double>(n));
  const double s = std::sqrt(2.0 / static_cast<double>(n));
  for (std::size_t k = 0; k < n; ++k) {
    const double scale = k == 0 ? s0 : s;
    for (std::size_t i = 0; i < n; ++i) {
      c[k * n + i] = scale * std::cos(std::numbers::pi * static_cast<double>(k) *
                                      (2.0 * static_cast<double>(i) + 1.0) /
                                      (2.0 * static_cast<double>(n)));
    }
  }
  return c;
}

// out = A * in, where A is n x n (basis or its transpose) and in is n x m.
// transpose_a selects A^T without materializing it.
void apply_basis(const std::vector<double>& basis, bool transpose_a, const double* in,
                 std::size_t n, std::size_t m, double* out) {
  for (std::size_t k = 0; k < n * m; ++k) out[k] = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      const double a = transpose_a ? basis[i * n + k] : basis[k * n + i];
      const double* src = in + i * m;
      double* dst = out + k * m;
      for (std::size_t j = 0; j < m; ++j) dst[j] += a * src[j];
    }
  }
}

// Separable 2D transform: rows first, then columns. The column pass works on
// the transposed layout to keep the inner loop contiguous.
std::vector<double> transform2d(const double* data, std::size_t rows, std::size_t cols,
                                bool inverse) {
  const std::vector<double> basis_rows = cosine_basis(cols);
  const std::vector<double> basis_cols = rows == cols ? basis_rows : cosine_basis(rows);

  // Pass 1 along each row: tmp = data * B_cols^T (forward) or * B_cols (inverse).
  // Implemented as tmp^T = B * data^T to reuse apply_basis; instead transpose
  // data once, multiply, transpose back at the end of pass 2.
  std::vector<double> t(rows * cols), tmp(rows * cols), out(rows * cols);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) t[j * rows + i] = data[i * cols + j];
  }
  // tmp (cols x rows) = B_row * t : transforms along the original row axis.
  apply_basis(basis_rows, inverse, t.data(), cols, rows, tmp.data());
  for (std::size_t j = 0; j < cols; ++j) {
    for (std::size_t i = 0; i < rows; ++i) t[i * cols + j] = tmp[j * rows + i];
  }
  // out (rows x cols) = B_col * t : transforms along the column axis.
  apply_basis(basis_cols, inverse, t.data(), rows, cols, out.data());
  return out;
}

}  // namespace

DctComponents dct2_forward(const Image& img) {
  img.require_finite("dct2_forward");
  DctComponents comps(img.rows(), img.cols());
  comps.coeffs = transform2d(img.data().data(), img.rows(), img.cols(), /*inverse=*/false);
  return comps;
}

Image dct2_inverse(const DctComponents& comps) {
  if (comps.rows == 0 || comps.cols == 0 || comps.coeffs.size() != comps.rows * comps.cols) {
    throw ValidationError("dct2_inverse: malformed components");
  }
  Image img(comps.rows, comps.cols);
  img.data() = transform2d(comps.coeffs.data(), comps.rows, comps.cols, /*inverse=*/true);
  return img;
}

}  // namespace specaug
