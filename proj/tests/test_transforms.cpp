#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "specinv/error.hpp"
#include "specinv/fft.hpp"
#include "specinv/transforms.hpp"

using namespace specinv;
using Vec = std::vector<double>;

namespace {

void check_close(const Vec& got, const Vec& expected, double tol = 1e-12) {
  REQUIRE(got.size() == expected.size());
  for (std::size_t i = 0; i < got.size(); ++i) {
    CAPTURE(i);
    CHECK(std::abs(got[i] - expected[i]) <= tol);
  }
}

}  // namespace

TEST_CASE("dft_real_part examples") {
  check_close(dft_real_part(Vec{1, 0, 0, 0}), {1, 1, 1, 1});
  check_close(dft_real_part(Vec{1, 1, 1, 1}), {4, 0, 0, 0});
  check_close(dft_real_part(Vec{0, 1, 0, 0}), oracle::dft_real_part(Vec{0, 1, 0, 0}));
  check_close(dft_real_part(Vec{0, 1, 0, 0}), {1, 0, -1, 0});
}

TEST_CASE("idft_from_real examples") {
  check_close(idft_from_real(Vec{1, 1, 1, 1}), {1, 0, 0, 0});
  check_close(idft_from_real(dft_real_part(Vec{0, 1, 0, 0})), oracle::even_part(Vec{0, 1, 0, 0}));
  check_close(idft_from_real(dft_real_part(Vec{0, 1, 0, 0})), {0, 0.5, 0, 0.5});
  check_close(idft_from_real(Vec{4, 0, 0, 0}), {1, 1, 1, 1});
}

TEST_CASE("dct2/dct3 examples") {
  check_close(dct2(Vec{1, 1, 1, 1}), {2, 0, 0, 0});
  const double s = std::sqrt(0.5);
  const double pi = std::numbers::pi;
  check_close(dct2(Vec{1, 0, 0, 0}), {0.5, s * std::cos(pi / 8), s * std::cos(2 * pi / 8), s * std::cos(3 * pi / 8)});
  CHECK(dct2(Vec{1, 0, 0, 0})[1] == doctest::Approx(0.65328).epsilon(1e-5));
  CHECK(dct2(Vec{1, 0, 0, 0})[3] == doctest::Approx(0.27059).epsilon(1e-4));
  check_close(dct3(Vec{2, 0, 0, 0}), {1, 1, 1, 1});

  std::mt19937_64 rng(1);
  const auto x8 = oracle::random_vector(8, rng);
  check_close(dct2(x8), oracle::dct2(x8));
  const auto y8 = oracle::random_vector(8, rng);
  check_close(dct3(y8), oracle::dct3(y8));
  const auto x16 = oracle::random_vector(16, rng);
  check_close(dct3(dct2(x16)), x16);
}

TEST_CASE("rfft_packed examples") {
  check_close(rfft_packed(Vec{1, 1, 1, 1}), {4, 0, 0, 0});
  check_close(rfft_packed(Vec{1, 0, 0, 0}), {1, 1, 0, 1});
  check_close(rfft_packed(Vec{0, 1, 0, 0}), {1, 0, -1, -1});
  check_close(irfft_packed(Vec{4, 0, 0, 0}), {1, 1, 1, 1});
  check_close(irfft_packed(Vec{1, 0, -1, -1}), {0, 1, 0, 0});

  std::mt19937_64 rng(2);
  const auto x = oracle::random_vector(1024, rng);
  CHECK(oracle::rel_err(irfft_packed(rfft_packed(x)), x) <= 1e-12);
}

TEST_CASE("packed transforms reject odd lengths") {
  CHECK_THROWS_AS(rfft_packed(Vec{1, 2, 3}), Error);
  CHECK_THROWS_AS(irfft_packed(Vec{1, 2, 3}), Error);
  FrameTransformer t(5);
  Vec out(5);
  CHECK_THROWS_AS(t.rfft_packed(Vec{1, 2, 3, 4, 5}, out), Error);
  CHECK_THROWS_AS(FrameTransformer(1), Error);
}

TEST_CASE("all transforms match O(N^2) oracles, including odd and non-power-of-two N") {
  std::mt19937_64 rng(3);
  for (std::size_t n : {2u, 3u, 4u, 5u, 6u, 8u, 12u, 15u, 16u, 30u, 64u, 100u}) {
    CAPTURE(n);
    const auto x = oracle::random_vector(n, rng);
    CHECK(oracle::rel_err(dft_real_part(x), oracle::dft_real_part(x)) <= 1e-12);
    CHECK(oracle::rel_err(idft_from_real(x), oracle::idft_from_real(x)) <= 1e-12);
    CHECK(oracle::rel_err(dct2(x), oracle::dct2(x)) <= 1e-12);
    CHECK(oracle::rel_err(dct3(x), oracle::dct3(x)) <= 1e-12);
    if (n % 2 == 0) {
      CHECK(oracle::rel_err(rfft_packed(x), oracle::rfft_packed(x)) <= 1e-12);
      CHECK(oracle::rel_err(irfft_packed(x), oracle::irfft_packed(x)) <= 1e-12);
    }
  }
}

TEST_CASE("complex FFT matches direct DFT for radix-2 and Bluestein sizes") {
  std::mt19937_64 rng(4);
  for (std::size_t n : {1u, 2u, 7u, 16u, 17u, 96u, 128u}) {
    CAPTURE(n);
    const auto re = oracle::random_vector(n, rng);
    std::vector<cplx> data(n);
    for (std::size_t i = 0; i < n; ++i) data[i] = re[i];
    ComplexFft fft(n);
    fft.forward(data);
    const auto ref = oracle::dft(re);
    for (std::size_t k = 0; k < n; ++k) CHECK(std::abs(data[k] - ref[k]) <= 1e-12 * n);
    fft.inverse(data);
    for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(data[i] / double(n) - re[i]) <= 1e-13);
  }
}

TEST_CASE("invertibility over random frames") {
  std::mt19937_64 rng(5);
  for (std::size_t n : {4u, 16u, 64u, 1024u}) {
    FrameTransformer t(n);
    Vec a(n), b(n);
    for (int trial = 0; trial < 250; ++trial) {
      const auto x = oracle::random_vector(n, rng);
      t.dct2(x, a);
      t.dct3(a, b);
      CHECK(oracle::rel_err(b, x) <= 1e-12);
      t.rfft_packed(x, a);
      t.irfft_packed(a, b);
      CHECK(oracle::rel_err(b, x) <= 1e-12);
    }
  }
}

TEST_CASE("even-part identity explains real-part lossiness") {
  std::mt19937_64 rng(6);
  for (std::size_t n : {4u, 9u, 64u, 1024u}) {
    for (int trial = 0; trial < 20; ++trial) {
      const auto x = oracle::random_vector(n, rng);
      CHECK(oracle::max_abs_diff(idft_from_real(dft_real_part(x)), oracle::even_part(x)) <= 1e-12);
    }
  }
}

TEST_CASE("linearity and DCT Parseval") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> coef(-3.0, 3.0);
  using Fn = std::vector<double> (*)(std::span<const double>);
  const Fn fns[] = {dft_real_part, idft_from_real, dct2, dct3, rfft_packed, irfft_packed};
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = trial % 2 == 0 ? 64 : 16;
    const auto x = oracle::random_vector(n, rng);
    const auto y = oracle::random_vector(n, rng);
    const double a = coef(rng), b = coef(rng);
    Vec mix(n);
    for (std::size_t i = 0; i < n; ++i) mix[i] = a * x[i] + b * y[i];
    for (Fn fn : fns) {
      const auto tx = fn(x), ty = fn(y), tm = fn(mix);
      Vec expect(n);
      for (std::size_t i = 0; i < n; ++i) expect[i] = a * tx[i] + b * ty[i];
      CHECK(oracle::rel_err(tm, expect) <= 1e-12);
    }
    const auto d = dct2(x);
    double ex = 0.0, ed = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      ex += x[i] * x[i];
      ed += d[i] * d[i];
    }
    CHECK(std::abs(std::sqrt(ed) - std::sqrt(ex)) <= 1e-12 * std::sqrt(ex));
  }
}

TEST_CASE("magnitude equals |DFT| over one-sided bins") {
  std::mt19937_64 rng(8);
  for (std::size_t n : {8u, 9u, 64u}) {
    const auto x = oracle::random_vector(n, rng);
    FrameTransformer t(n);
    Vec mag(n / 2 + 1);
    t.magnitude(x, mag);
    const auto ref = oracle::dft(x);
    for (std::size_t k = 0; k <= n / 2; ++k) CHECK(mag[k] == doctest::Approx(std::abs(ref[k])).epsilon(1e-12));
  }
}
