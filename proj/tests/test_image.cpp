#include <doctest.h>

#include <fstream>

#include "specaug/image.hpp"
#include "specaug/image_io.hpp"
#include "test_util.hpp"

using namespace specaug;
using testutil::TempDir;

TEST_CASE("image shape validation") {
  CHECK_THROWS_AS(Image(0, 3), ValidationError);
  CHECK_THROWS_AS(Image(2, 2, std::vector<double>{1.0, 2.0, 3.0}), ValidationError);
  const Image img(2, 3, 1.5);
  CHECK(img.rows() == 2);
  CHECK(img.cols() == 3);
  CHECK(img.at(1, 2) == 1.5);
}

TEST_CASE("to_unit_range maps window endpoints and midpoint") {
  Image img(1, 3);
  img.at(0, 0) = -100.0;
  img.at(0, 1) = 300.0;
  img.at(0, 2) = 100.0;
  const Image out = to_unit_range(img, -100.0, 300.0);
  CHECK(out.at(0, 0) == doctest::Approx(0.0));
  CHECK(out.at(0, 1) == doctest::Approx(1.0));
  CHECK(out.at(0, 2) == doctest::Approx(0.5));
  CHECK_THROWS_AS(to_unit_range(img, 1.0, 1.0), ValidationError);
}

TEST_CASE("to_unit_range is monotone and idempotent on [0,1]") {
  std::mt19937_64 rng(11);
  const Image img = testutil::random_image(rng, 9, 13);
  const Image unit = to_unit_range(img, -500.0, 2000.0);
  for (std::size_t k = 0; k + 1 < img.size(); ++k) {
    if (img.data()[k] <= img.data()[k + 1]) {
      CHECK(unit.data()[k] <= unit.data()[k + 1]);
    }
  }
  const Image twice = to_unit_range(unit, 0.0, 1.0);
  CHECK(testutil::max_abs_diff(unit, twice) == 0.0);
}

TEST_CASE("rawf64 save/load is the identity") {
  TempDir dir("rawf64");
  std::mt19937_64 rng(7);
  for (const auto [rows, cols] : {std::pair<std::size_t, std::size_t>{1, 1},
                                  {3, 5},
                                  {7, 2},
                                  {16, 16}}) {
    const Image img = testutil::random_image(rng, rows, cols);
    const auto path = dir.path() / "img.spa";
    save_image(img, path, ImageFormat::kRawF64);
    const Image back = load_image(path, ImageFormat::kRawF64);
    CHECK(back == img);
  }
}

TEST_CASE("rawf64 rejects truncated payload and bad magic") {
  TempDir dir("rawbad");
  const auto path = dir.path() / "bad.spa";
  {
    // Header says 2x3 but only 5 doubles follow.
    std::ofstream out(path, std::ios::binary);
    out.write("SPA1", 4);
    const unsigned char dims[8] = {2, 0, 0, 0, 3, 0, 0, 0};
    out.write(reinterpret_cast<const char*>(dims), 8);
    const double zeros[5] = {0, 0, 0, 0, 0};
    out.write(reinterpret_cast<const char*>(zeros), sizeof(zeros));
  }
  CHECK_THROWS_AS(load_image(path, ImageFormat::kRawF64), IoError);
  {
    std::ofstream out(path, std::ios::binary);
    out.write("XXXX", 4);
  }
  CHECK_THROWS_AS(load_image(path, ImageFormat::kRawF64), IoError);
}

TEST_CASE("pgm16 decodes stored samples without rescaling") {
  TempDir dir("pgm");
  const auto path = dir.path() / "img.pgm";
  {
    std::ofstream out(path, std::ios::binary);
    out << "P5\n# comment\n2 2\n65535\n";
    const unsigned char samples[8] = {0x00, 0x00, 0x80, 0x00, 0xff, 0xff, 0x00, 0x00};
    out.write(reinterpret_cast<const char*>(samples), 8);
  }
  const Image img = load_image(path, ImageFormat::kPgm16);
  CHECK(img.at(0, 0) == 0.0);
  CHECK(img.at(0, 1) == 32768.0);
  CHECK(img.at(1, 0) == 65535.0);
  CHECK(img.at(1, 1) == 0.0);
}

TEST_CASE("pgm16 write clamps and rounds half to even") {
  TempDir dir("pgmw");
  Image img(1, 4);
  img.at(0, 0) = 70000.0;
  img.at(0, 1) = -5.0;
  img.at(0, 2) = 2.5;
  img.at(0, 3) = 1.5;
  const auto path = dir.path() / "img.pgm";
  save_image(img, path, ImageFormat::kPgm16);
  const Image back = load_image(path, ImageFormat::kPgm16);
  CHECK(back.at(0, 0) == 65535.0);
  CHECK(back.at(0, 1) == 0.0);
  CHECK(back.at(0, 2) == 2.0);
  CHECK(back.at(0, 3) == 2.0);
}

TEST_CASE("pgm16 rejects short payload") {
  TempDir dir("pgmshort");
  const auto path = dir.path() / "short.pgm";
  {
    std::ofstream out(path, std::ios::binary);
    out << "P5\n2 2\n65535\n";
    const unsigned char samples[4] = {0, 1, 2, 3};
    out.write(reinterpret_cast<const char*>(samples), 4);
  }
  CHECK_THROWS_AS(load_image(path, ImageFormat::kPgm16), IoError);
}

TEST_CASE("label grid csv round trip") {
  TempDir dir("labels");
  LabelGrid grid(2, 3, 20);
  grid.at(0, 1) = PatchLabel::kDiseased;
  grid.at(1, 2) = PatchLabel::kOutside;
  const auto path = dir.path() / "labels.csv";
  save_label_grid(grid, path);
  const LabelGrid back = load_label_grid(path, 20);
  CHECK(back == grid);
  CHECK(back.has_diseased());
}

TEST_CASE("label grid csv rejects bad input") {
  TempDir dir("labelsbad");
  const auto path = dir.path() / "labels.csv";
  {
    std::ofstream out(path);
    out << "row,col,label\n0,0,healthy\n0,1,diseased\n1,1,healthy\n";  // (1,0) missing
  }
  CHECK_THROWS_AS(load_label_grid(path, 20), IoError);
  {
    std::ofstream out(path);
    out << "wrong,header\n";
  }
  CHECK_THROWS_AS(load_label_grid(path, 20), IoError);
}

TEST_CASE("psnr basics") {
  Image a(2, 2);
  a.at(0, 0) = 0.0;
  a.at(0, 1) = 100.0;
  a.at(1, 0) = 50.0;
  a.at(1, 1) = 25.0;
  CHECK(std::isinf(psnr(a, a)));
  Image b = a;
  b.at(0, 0) = 10.0;  // MSE = 25, peak = 100
  CHECK(psnr(a, b) == doctest::Approx(10.0 * std::log10(10000.0 / 25.0)));
}
