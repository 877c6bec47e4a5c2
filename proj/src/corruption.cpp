#include "specaug/corruption.hpp"

#include <cmath>

namespace specaug {

Method method_from_string(const std::string& s) {
  if (s == "dct") return Method::kDct;
  if (s == "dwt") return Method::kDwt;
  if (s == "simple") return Method::kSimple;
  if (s == "affine") return Method::kAffine;
  if (s == "intensity") return Method::kIntensity;
  if (s == "elastic") return Method::kElastic;
  throw ValidationError("unknown method '" + s + "'");
}

std::string to_string(Method m) {
  switch (m) {
    case Method::kDct:
      return "dct";
    case Method::kDwt:
      return "dwt";
    case Method::kSimple:
      return "simple";
    case Method::kAffine:
      return "affine";
    case Method::kIntensity:
      return "intensity";
    case Method::kElastic:
      return "elastic";
  }
  throw ValidationError("unknown method");
}

void AugmentSpec::validate() const {
  if (replications < 1) throw ValidationError("spec: replications must be >= 1");
  if (!(eta >= 0.0 && eta <= 1.0)) throw ValidationError("spec: eta must be in [0, 1]");
  switch (method) {
    case Method::kDwt:
      WaveletBasis::from_name(wavelet);
      if (levels < 1) throw ValidationError("spec: levels must be >= 1");
      break;
    case Method::kIntensity:
      if (!(gamma_lo > 0.0 && gamma_lo <= gamma_hi)) {
        throw ValidationError("spec: need 0 < gamma_lo <= gamma_hi");
      }
      if (!(window_lo < window_hi)) throw ValidationError("spec: need window_lo < window_hi");
      break;
    case Method::kAffine:
      if (rotation_max_deg < 0.0) throw ValidationError("spec: rotation_max must be >= 0");
      if (!(scale_lo > 0.0 && scale_lo <= scale_hi)) {
        throw ValidationError("spec: need 0 < scale_lo <= scale_hi");
      }
      break;
    case Method::kElastic:
      if (grid_rows < 2 || grid_cols < 2) {
        throw ValidationError("spec: displacement grid must be at least 2x2");
      }
      if (!(disp_min >= 0.0 && disp_min <= disp_max)) {
        throw ValidationError("spec: need 0 <= disp_min <= disp_max");
      }
      break;
    default:
      break;
  }
}

std::vector<double> rho_schedule(int replications, double eta) {
  if (replications < 1) throw ValidationError("rho_schedule: replications must be >= 1");
  if (eta < 0.0) throw ValidationError("rho_schedule: eta must be >= 0");
  std::vector<double> rhos(static_cast<std::size_t>(replications));
  for (int r = 1; r <= replications; ++r) {
    // r == R gives eta * 1.0 == eta, bit-exact.
    rhos[static_cast<std::size_t>(r - 1)] =
        eta * (static_cast<double>(r) / static_cast<double>(replications));
  }
  return rhos;
}

namespace {

// sigma = rho * |value|, so zero components stay exactly zero.
void corrupt_values(std::vector<double>& values, double rho, const NoiseStream& noise,
                    std::uint64_t index_offset) {
  for (std::size_t k = 0; k < values.size(); ++k) {
    const double sigma = rho * std::fabs(values[k]);
    if (sigma == 0.0) continue;
    values[k] += sigma * noise.gaussian_at(index_offset + k);
  }
}

}  // namespace

DctComponents corrupt_dct(const DctComponents& comps, double rho, const NoiseStream& noise) {
  if (rho < 0.0) throw ValidationError("corrupt_dct: rho must be >= 0");
  DctComponents out = comps;
  if (rho == 0.0) return out;
  corrupt_values(out.coeffs, rho, noise, 0);
  return out;
}

WaveletPyramid corrupt_dwt(const WaveletPyramid& pyr, double rho, const NoiseStream& noise,
                           bool details_only) {
  if (rho < 0.0) throw ValidationError("corrupt_dwt: rho must be >= 0");
  WaveletPyramid out = pyr;
  if (rho == 0.0) return out;
  std::uint64_t offset = 0;
  if (!details_only) corrupt_values(out.approx.values, rho, noise, offset);
  offset += out.approx.values.size();
  for (DetailBands& det : out.details) {
    corrupt_values(det.h.values, rho, noise, offset);
    offset += det.h.values.size();
    corrupt_values(det.v.values, rho, noise, offset);
    offset += det.v.values.size();
    corrupt_values(det.d.values, rho, noise, offset);
    offset += det.d.values.size();
  }
  return out;
}

Image synthesize_one(const Image& img, const AugmentSpec& spec, std::uint64_t image_index,
                     std::uint64_t replication_index, double rho, std::uint64_t stage) {
  const NoiseStream noise(spec.seed, image_index, replication_index, stage);
  if (spec.method == Method::kDct) {
    return dct2_inverse(corrupt_dct(dct2_forward(img), rho, noise));
  }
  if (spec.method == Method::kDwt) {
    const WaveletBasis basis = WaveletBasis::from_name(spec.wavelet);
    const WaveletPyramid pyr = dwt2_forward(img, basis, spec.levels);
    return dwt2_inverse(corrupt_dwt(pyr, rho, noise, spec.dwt_details_only), basis);
  }
  throw ValidationError("synthesize: method must be dct or dwt");
}

std::vector<Image> synthesize(const Image& img, const AugmentSpec& spec,
                              std::uint64_t image_index, std::uint64_t stage) {
  spec.validate();
  if (spec.method != Method::kDct && spec.method != Method::kDwt) {
    throw ValidationError("synthesize: method must be dct or dwt");
  }
  const std::vector<double> rhos = rho_schedule(spec.replications, spec.eta);
  std::vector<Image> out;
  out.reserve(rhos.size());
  for (std::size_t r = 0; r < rhos.size(); ++r) {
    out.push_back(synthesize_one(img, spec, image_index, r + 1, rhos[r], stage));
  }
  return out;
}

}  // namespace specaug
