#pragma once

#include <cstddef>
#include <vector>

#include "specaug/image.hpp"

namespace specaug {

/// 2D DCT coefficient grid; entry (u,v) is the weight of the cosine basis
/// at vertical frequency u and horizontal frequency v. Same shape as the
/// source image.
struct DctComponents {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> coeffs;

  DctComponents() = default;
  DctComponents(std::size_t r, std::size_t c) : rows(r), cols(c), coeffs(r * c, 0.0) {}

  double& at(std::size_t u, std::size_t v) { return coeffs[u * cols + v]; }
  double at(std::size_t u, std::size_t v) const { return coeffs[u * cols + v]; }
};

/// Orthonormal type-II 2D DCT, applied separably. Energy-preserving:
/// sum(f^2) == sum(F^2) up to rounding.
DctComponents dct2_forward(const Image& img);

/// Orthonormal type-III 2D DCT (the inverse of dct2_forward).
Image dct2_inverse(const DctComponents& comps);

}  // namespace specaug
