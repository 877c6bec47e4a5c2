#include "specaug/image_io.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <sstream>
#include <vector>

namespace specaug {

namespace {

constexpr char kRawMagic[4] = {'S', 'P', 'A', '1'};

void put_u32_le(std::ostream& out, std::uint32_t v) {
  unsigned char b[4] = {static_cast<unsigned char>(v & 0xff),
                        static_cast<unsigned char>((v >> 8) & 0xff),
                        static_cast<unsigned char>((v >> 16) & 0xff),
                        static_cast<unsigned char>((v >> 24) & 0xff)};
  out.write(reinterpret_cast<const char*>(b), 4);
}

bool get_u32_le(std::istream& in, std::uint32_t& v) {
  unsigned char b[4];
  if (!in.read(reinterpret_cast<char*>(b), 4)) return false;
  v = static_cast<std::uint32_t>(b[0]) | (static_cast<std::uint32_t>(b[1]) << 8) |
      (static_cast<std::uint32_t>(b[2]) << 16) | (static_cast<std::uint32_t>(b[3]) << 24);
  return true;
}

void put_f64_le(std::ostream& out, double x) {
  std::uint64_t bits = std::bit_cast<std::uint64_t>(x);
  unsigned char b[8];
  for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>((bits >> (8 * i)) & 0xff);
  out.write(reinterpret_cast<const char*>(b), 8);
}

bool get_f64_le(std::istream& in, double& x) {
  unsigned char b[8];
  if (!in.read(reinterpret_cast<char*>(b), 8)) return false;
  std::uint64_t bits = 0;
  for (int i = 0; i < 8; ++i) bits |= static_cast<std::uint64_t>(b[i]) << (8 * i);
  x = std::bit_cast<double>(bits);
  return true;
}

// PGM header tokens may be separated by whitespace and '#' comments.
int next_pnm_token(std::istream& in, const std::filesystem::path& path) {
  int c;
  while ((c = in.get()) != EOF) {
    if (c == '#') {
      while ((c = in.get()) != EOF && c != '\n') {
      }
    } else if (!std::isspace(c)) {
      break;
    }
  }
  if (c == EOF) throw IoError("pgm: truncated header in " + path.string());
  std::string tok;
  tok.push_back(static_cast<char>(c));
  while ((c = in.get()) != EOF && !std::isspace(c)) tok.push_back(static_cast<char>(c));
  try {
    return std::stoi(tok);
  } catch (const std::exception&) {
    throw IoError("pgm: malformed header token '" + tok + "' in " + path.string());
  }
}

Image load_pgm(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  char m0 = 0, m1 = 0;
  in.get(m0);
  in.get(m1);
  if (m0 != 'P' || m1 != '5') throw IoError("pgm: not a binary PGM (P5): " + path.string());
  const int cols = next_pnm_token(in, path);
  const int rows = next_pnm_token(in, path);
  const int maxval = next_pnm_token(in, path);
  if (cols < 1 || rows < 1 || maxval < 1 || maxval > 65535) {
    throw IoError("pgm: bad dimensions or maxval in " + path.string());
  }
  // The header terminator is a single whitespace byte, already consumed by
  // the token reader above.
  const std::size_t n = static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols);
  const bool two_bytes = maxval > 255;
  std::vector<unsigned char> raw(n * (two_bytes ? 2 : 1));
  in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
  if (static_cast<std::size_t>(in.gcount()) != raw.size()) {
    throw IoError("pgm: payload shorter than header promises in " + path.string());
  }
  Image img(static_cast<std::size_t>(rows), static_cast<std::size_t>(cols));
  if (two_bytes) {
    for (std::size_t k = 0; k < n; ++k) {
      img.data()[k] = static_cast<double>((raw[2 * k] << 8) | raw[2 * k + 1]);
    }
  } else {
    for (std::size_t k = 0; k < n; ++k) img.data()[k] = static_cast<double>(raw[k]);
  }
  return img;
}

void save_pgm(const Image& img, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out << "P5\n" << img.cols() << " " << img.rows() << "\n65535\n";
  for (double v : img.data()) {
    // Round half to even, then clamp to the 16-bit range.
    double r = std::nearbyint(v);
    r = std::clamp(r, 0.0, 65535.0);
    const auto q = static_cast<std::uint16_t>(r);
    const unsigned char b[2] = {static_cast<unsigned char>(q >> 8),
                                static_cast<unsigned char>(q & 0xff)};
    out.write(reinterpret_cast<const char*>(b), 2);
  }
  if (!out) throw IoError("write failed for " + path.string());
}

Image load_rawf64(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  char magic[4];
  if (!in.read(magic, 4) || std::memcmp(magic, kRawMagic, 4) != 0) {
    throw IoError("rawf64: bad magic in " + path.string());
  }
  std::uint32_t rows = 0, cols = 0;
  if (!get_u32_le(in, rows) || !get_u32_le(in, cols)) {
    throw IoError("rawf64: truncated header in " + path.string());
  }
  if (rows == 0 || cols == 0) throw IoError("rawf64: zero dimension in " + path.string());
  const std::size_t n = static_cast<std::size_t>(rows) * cols;
  Image img(rows, cols);
  for (std::size_t k = 0; k < n; ++k) {
    if (!get_f64_le(in, img.data()[k])) {
      throw IoError("rawf64: payload shorter than header promises in " + path.string());
    }
    if (!std::isfinite(img.data()[k])) {
      throw IoError("rawf64: non-finite value in " + path.string());
    }
  }
  char extra;
  if (in.read(&extra, 1)) {
    throw IoError("rawf64: trailing bytes after payload in " + path.string());
  }
  return img;
}

void save_rawf64(const Image& img, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out.write(kRawMagic, 4);
  put_u32_le(out, static_cast<std::uint32_t>(img.rows()));
  put_u32_le(out, static_cast<std::uint32_t>(img.cols()));
  for (double v : img.data()) put_f64_le(out, v);
  if (!out) throw IoError("write failed for " + path.string());
}

}  // namespace

ImageFormat image_format_from_string(const std::string& s) {
  if (s == "pgm16") return ImageFormat::kPgm16;
  if (s == "rawf64") return ImageFormat::kRawF64;
  throw ValidationError("unknown image format '" + s + "' (expected pgm16 or rawf64)");
}

ImageFormat image_format_from_path(const std::filesystem::path& path) {
  return path.extension() == ".pgm" ? ImageFormat::kPgm16 : ImageFormat::kRawF64;
}

Image load_image(const std::filesystem::path& path, ImageFormat format) {
  return format == ImageFormat::kPgm16 ? load_pgm(path) : load_rawf64(path);
}

void save_image(const Image& img, const std::filesystem::path& path, ImageFormat format) {
  if (format == ImageFormat::kPgm16) {
    save_pgm(img, path);
  } else {
    img.require_finite("save_image(rawf64)");
    save_rawf64(img, path);
  }
}

LabelGrid load_label_grid(const std::filesystem::path& path, std::size_t patch_size) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  std::string line;
  if (!std::getline(in, line)) throw IoError("label csv: empty file " + path.string());
  if (line.ends_with("\r")) line.pop_back();
  if (line != "row,col,label") {
    throw IoError("label csv: expected header 'row,col,label' in " + path.string());
  }
  struct Cell {
    std::size_t row, col;
    PatchLabel label;
  };
  std::vector<Cell> cells;
  std::size_t max_row = 0, max_col = 0;
  while (std::getline(in, line)) {
    if (line.ends_with("\r")) line.pop_back();
    if (line.empty()) continue;
    std::istringstream ss(line);
    std::string r, c, l;
    if (!std::getline(ss, r, ',') || !std::getline(ss, c, ',') || !std::getline(ss, l)) {
      throw IoError("label csv: malformed line '" + line + "' in " + path.string());
    }
    Cell cell{};
    try {
      cell.row = static_cast<std::size_t>(std::stoul(r));
      cell.col = static_cast<std::size_t>(std::stoul(c));
    } catch (const std::exception&) {
      throw IoError("label csv: bad indices in line '" + line + "'");
    }
    cell.label = patch_label_from_string(l);
    max_row = std::max(max_row, cell.row);
    max_col = std::max(max_col, cell.col);
    cells.push_back(cell);
  }
  if (cells.empty()) throw IoError("label csv: no cells in " + path.string());
  LabelGrid grid(max_row + 1, max_col + 1, patch_size);
  std::vector<bool> seen(grid.size(), false);
  for (const Cell& cell : cells) {
    const std::size_t idx = cell.row * grid.grid_cols() + cell.col;
    if (seen[idx]) {
      throw IoError("label csv: duplicate cell in " + path.string());
    }
    seen[idx] = true;
    grid.at(cell.row, cell.col) = cell.label;
  }
  if (std::find(seen.begin(), seen.end(), false) != seen.end()) {
    throw IoError("label csv: lattice has missing cells in " + path.string());
  }
  return grid;
}

void save_label_grid(const LabelGrid& grid, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  out << "row,col,label\n";
  for (std::size_t r = 0; r < grid.grid_rows(); ++r) {
    for (std::size_t c = 0; c < grid.grid_cols(); ++c) {
      out << r << "," << c << "," << to_string(grid.at(r, c)) << "\n";
    }
  }
  if (!out) throw IoError("write failed for " + path.string());
}

PixelMask load_pixel_mask(const std::filesystem::path& path, ImageFormat format,
                          double threshold) {
  const Image img = load_image(path, format);
  PixelMask mask(img.rows(), img.cols());
  for (std::size_t k = 0; k < img.size(); ++k) {
    mask.data()[k] = img.data()[k] > threshold ? 1 : 0;
  }
  return mask;
}

void save_pixel_mask(const PixelMask& mask, const std::filesystem::path& path,
                     ImageFormat format) {
  Image img(mask.rows(), mask.cols());
  for (std::size_t k = 0; k < mask.size(); ++k) {
    img.data()[k] = mask.data()[k] ? 1.0 : 0.0;
  }
  save_image(img, path, format);
}

}  // namespace specaug
