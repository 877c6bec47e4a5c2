#include <doctest.h>

#include <cmath>
#include <initializer_list>

#include "specaug/rng.hpp"

using namespace specaug;

TEST_CASE("inverse normal cdf matches reference values") {
  CHECK(inverse_normal_cdf(0.5) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(inverse_normal_cdf(0.9) == doctest::Approx(1.2815515655446004).epsilon(1e-9));
  CHECK(inverse_normal_cdf(0.975) == doctest::Approx(1.959963984540054).epsilon(1e-9));
  CHECK(inverse_normal_cdf(0.1) == doctest::Approx(-1.2815515655446004).epsilon(1e-9));
  CHECK(inverse_normal_cdf(1e-10) == doctest::Approx(-6.361340902404056).epsilon(1e-9));
  // Symmetry.
  for (double p : {0.01, 0.2, 0.37, 0.49}) {
    CHECK(inverse_normal_cdf(p) == doctest::Approx(-inverse_normal_cdf(1.0 - p)).epsilon(1e-12));
  }
  CHECK_THROWS(inverse_normal_cdf(0.0));
  CHECK_THROWS(inverse_normal_cdf(1.0));
}

TEST_CASE("streams are deterministic functions of their key") {
  const NoiseStream a(42, 3, 1, 0);
  const NoiseStream b(42, 3, 1, 0);
  const NoiseStream c(42, 3, 2, 0);
  for (std::uint64_t i = 0; i < 100; ++i) {
    CHECK(a.gaussian_at(i) == b.gaussian_at(i));
  }
  int diff = 0;
  for (std::uint64_t i = 0; i < 100; ++i) {
    if (a.gaussian_at(i) != c.gaussian_at(i)) ++diff;
  }
  CHECK(diff > 90);
}

TEST_CASE("uniform draws stay strictly inside (0,1)") {
  const NoiseStream s(7, 0, 0, 0);
  for (std::uint64_t i = 0; i < 10000; ++i) {
    const double u = s.uniform_at(i);
    CHECK(u > 0.0);
    CHECK(u < 1.0);
  }
}

TEST_CASE("indexed draws are independent of sequential draws") {
  NoiseStream a(9, 1, 2, 3);
  NoiseStream b(9, 1, 2, 3);
  (void)b.next_u64();
  (void)b.next_uniform01();
  CHECK(a.gaussian_at(5) == b.gaussian_at(5));
}

TEST_CASE("gaussian draws have standard moments") {
  const NoiseStream s(1234, 0, 0, 0);
  const std::size_t n = 100000;
  double sum = 0.0, sumsq = 0.0;
  for (std::uint64_t i = 0; i < n; ++i) {
    const double g = s.gaussian_at(i);
    sum += g;
    sumsq += g * g;
  }
  const double mean = sum / static_cast<double>(n);
  const double var = sumsq / static_cast<double>(n) - mean * mean;
  CHECK(std::fabs(mean) < 0.02);
  CHECK(std::sqrt(var) == doctest::Approx(1.0).epsilon(0.01));
}

TEST_CASE("sequential helpers cover their ranges") {
  NoiseStream s(77, 0, 0, 0);
  int heads = 0;
  for (int i = 0; i < 1000; ++i) heads += s.next_bernoulli(0.5) ? 1 : 0;
  CHECK(heads > 400);
  CHECK(heads < 600);
  for (int i = 0; i < 1000; ++i) {
    const double v = s.next_uniform(-2.5, 4.5);
    CHECK(v >= -2.5);
    CHECK(v <= 4.5);
  }
}
