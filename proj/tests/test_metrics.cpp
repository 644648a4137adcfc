#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "specinv/error.hpp"
#include "specinv/metrics.hpp"
#include "specinv/test_signals.hpp"

using namespace specinv;

namespace {

Waveform wave(std::vector<double> s, int rate = 22050) {
  Waveform w;
  w.samples = std::move(s);
  w.sample_rate = rate;
  return w;
}

Waveform scaled(const Waveform& x, double a) {
  Waveform y = x;
  for (auto& v : y.samples) v *= a;
  return y;
}

}  // namespace

TEST_CASE("snr_db examples") {
  const auto x = white_noise(100, 22050, 1);
  CHECK(snr_db(x, x) == kSnrExact);
  CHECK(std::isinf(snr_db(x, x)));
  CHECK(snr_db(wave({1, 0}), wave({0, 0})) == doctest::Approx(0.0));
  CHECK(snr_db(wave({2}), wave({1})) == doctest::Approx(10.0 * std::log10(4.0)).epsilon(1e-12));
  CHECK(snr_db(wave({2}), wave({1})) == doctest::Approx(6.0206).epsilon(1e-5));
}

TEST_CASE("snr_db errors") {
  CHECK_THROWS_AS(snr_db(wave({1, 2}), wave({1})), Error);
  CHECK_THROWS_AS(snr_db(wave({0, 0}), wave({1, 1})), Error);
  CHECK_THROWS_AS(snr_db(wave({1}, 16000), wave({1}, 22050)), Error);
}

TEST_CASE("mel scale") {
  CHECK(hz_to_mel(0.0) == 0.0);
  CHECK(hz_to_mel(1000.0) == doctest::Approx(15.0));
  CHECK(hz_to_mel(6400.0) == doctest::Approx(15.0 + 27.0));
  for (double hz : {10.0, 500.0, 999.0, 1000.0, 4000.0, 11025.0}) {
    CHECK(mel_to_hz(hz_to_mel(hz)) == doctest::Approx(hz).epsilon(1e-12));
  }
}

TEST_CASE("filterbank triangles have unit area") {
  McdConfig cfg;
  cfg.fft_win = 4096;
  const int rate = 22050;
  const auto fb = mel_filterbank(cfg, rate);
  const std::size_t bins = cfg.fft_win / 2 + 1;
  const double df = static_cast<double>(rate) / cfg.fft_win;
  for (std::size_t b = 0; b < cfg.n_mel_bands; ++b) {
    double area = 0.0;
    for (std::size_t k = 0; k < bins; ++k) {
      CHECK(fb[b * bins + k] >= 0.0);
      area += fb[b * bins + k] * df;
    }
    CHECK(area == doctest::Approx(1.0).epsilon(0.05));
  }
}

TEST_CASE("mcd identity, symmetry and gain invariance") {
  // Gain invariance needs every mel band above the log floor, so give the
  // clip a recording-like noise floor instead of digital silence.
  Waveform x = speech_like(1.0, 22050, 2).waveform;
  const auto bed = white_noise(x.size(), 22050, 9, 1e-3);
  for (std::size_t i = 0; i < x.size(); ++i) x.samples[i] += bed.samples[i];
  const auto other = white_noise(x.size(), 22050, 3, 0.05);
  Waveform y = x;
  for (std::size_t i = 0; i < y.size(); ++i) y.samples[i] += other.samples[i];

  CHECK(mcd(x, x) == 0.0);
  CHECK(mcd(x, scaled(x, 0.5)) <= 1e-9);
  for (double a : {0.1, 0.5, 2.0}) CHECK(std::abs(mcd(x, scaled(x, a))) <= 1e-9);
  CHECK(std::abs(mcd(x, y) - mcd(y, x)) <= 1e-9);
  CHECK(mcd(x, y) > 0.1);

  // Digital silence pins bands to the floor, where a gain change is visible.
  const auto silent_gaps = speech_like(1.0, 22050, 2).waveform;
  CHECK(mcd(silent_gaps, silent_gaps) == 0.0);
  CHECK(mcd(silent_gaps, scaled(silent_gaps, 0.1)) > 0.0);
}

TEST_CASE("mcd matches an independent brute-force pipeline") {
  // 0.5 s clip, small perturbation
  const auto clip = speech_like(0.5, 22050, 4);
  Waveform x = clip.waveform;
  const auto floor_noise = white_noise(x.size(), 22050, 5, 1e-3);
  for (std::size_t i = 0; i < x.size(); ++i) x.samples[i] += floor_noise.samples[i];
  Waveform y = x;
  const auto pert = white_noise(x.size(), 22050, 6, 0.01);
  for (std::size_t i = 0; i < y.size(); ++i) y.samples[i] += pert.samples[i];

  const double fast = mcd(x, y);
  const double brute = oracle::mcd(x.samples, y.samples, 22050);
  CHECK(fast > 0.0);
  CHECK(std::abs(fast - brute) <= 1e-9);

  McdConfig alt;
  alt.n_mel_bands = 30;
  alt.n_cepstra = 20;
  alt.fft_win = 512;
  alt.fft_hop = 160;
  oracle::McdParams p;
  p.bands = 30;
  p.ncep = 20;
  p.win = 512;
  p.hop = 160;
  CHECK(std::abs(mcd(x, y, alt) - oracle::mcd(x.samples, y.samples, 22050, p)) <= 1e-9);
}

TEST_CASE("mcd config and input validation") {
  const auto x = white_noise(4000, 22050, 7);
  McdConfig bad;
  bad.n_cepstra = 23;
  CHECK_THROWS_AS(mcd(x, x, bad), Error);
  bad = {};
  bad.fft_hop = 2048;
  CHECK_THROWS_AS(mcd(x, x, bad), Error);
  bad = {};
  bad.fmin = 20000.0;
  CHECK_THROWS_AS(mcd(x, x, bad), Error);
  CHECK_THROWS_AS(mcd(x, white_noise(10, 22050, 1)), Error);
  CHECK_THROWS_AS(mcd(Waveform{}, Waveform{}), Error);
}
