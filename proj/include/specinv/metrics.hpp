#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "specinv/signal.hpp"

namespace specinv {

/// Returned by snr_db() when the estimate matches the reference exactly.
inline constexpr double kSnrExact = std::numeric_limits<double>::infinity();

/// 10 log10(sum ref^2 / sum (ref - est)^2). Returns kSnrExact for zero error.
double snr_db(const Waveform& reference, const Waveform& estimate);
double snr_db(std::span<const double> reference, std::span<const double> estimate);

struct McdConfig {
  std::size_t n_mel_bands = 23;
  std::size_t n_cepstra = 13;  // c1..c13, c0 excluded
  std::size_t fft_win = 1024;
  std::size_t fft_hop = 256;
  double fmin = 0.0;
  std::optional<double> fmax;  // defaults to sample_rate / 2
  double log_floor = 1e-10;

  void validate(int sample_rate) const;
};

/// Slaney-style mel scale: linear below 1 kHz, logarithmic above.
double hz_to_mel(double hz);
double mel_to_hz(double mel);

/// n_mel_bands x (fft_win/2 + 1) row-major triangular filterbank with
/// unit-area (2 / bandwidth) normalization.
std::vector<double> mel_filterbank(const McdConfig& cfg, int sample_rate);

/// Per-frame cepstra c1..c_{n_cepstra}, row-major n_frames x n_cepstra.
std::vector<double> mel_cepstra(const Waveform& x, const McdConfig& cfg,
                                std::size_t* n_frames = nullptr);

/// Mean frame-wise mel-cepstral distance, frames aligned index by index.
/// Excluding c0 makes it gain-invariant as long as no mel band energy falls
/// below cfg.log_floor; digitally silent input breaks that.
double mcd(const Waveform& reference, const Waveform& estimate, const McdConfig& cfg = {});

}  // namespace specinv
