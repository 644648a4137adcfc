#pragma once

// Analysis to a kind-tagged spectrogram and phase-free synthesis back to a
// waveform. Kinds:
//   kRealFft     real part of the two-sided DFT (lossy, even part only)
//   kDct         orthonormal DCT-II, inverted by DCT-III
//   kPackedRfft  packed real FFT, inverted exactly
//   kMagnitude   one-sided |DFT|, analysis/export only

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "specinv/signal.hpp"

namespace specinv {

enum class SpectrogramKind { kRealFft = 0, kDct = 1, kPackedRfft = 2, kMagnitude = 3 };

std::string_view kind_name(SpectrogramKind kind);

struct ClipMode {
  enum class Type { kNone = 0, kZero = 1, kThreshold = 2 };

  Type type = Type::kNone;
  double tau = 0.0;  // threshold only, in raw coefficient units

  static ClipMode none() { return {Type::kNone, 0.0}; }
  static ClipMode zero() { return {Type::kZero, 0.0}; }
  static ClipMode threshold(double tau) { return {Type::kThreshold, tau}; }

  /// Throws kInvalidConfig unless a threshold tau lies in (0, 1).
  void validate() const;

  bool operator==(const ClipMode&) const = default;
};

std::string clip_name(const ClipMode& clip);

struct Spectrogram {
  SpectrogramKind kind = SpectrogramKind::kPackedRfft;
  std::vector<double> data;  // row-major n_frames x n_bins
  std::size_t n_frames = 0;
  std::size_t n_bins = 0;
  FrameConfig config;
  ClipMode clip;
  int sample_rate = 22050;
  std::size_t original_length = 0;

  std::span<const double> row(std::size_t f) const {
    return {data.data() + f * n_bins, n_bins};
  }
  std::span<double> row(std::size_t f) { return {data.data() + f * n_bins, n_bins}; }

  /// Checks bin count, payload size, finiteness and clip/magnitude sign rules.
  /// `f32_rounded` accepts entries equal to tau, which single-precision
  /// storage can produce from values just above it.
  void validate(bool f32_rounded = false) const;
};

/// Bins per frame for a kind: win for the invertible kinds, win/2+1 for magnitude.
std::size_t bins_for(SpectrogramKind kind, std::size_t win_length);

/// Internal parallelism for per-frame work. OLA is always sequential, so
/// results are bit-identical for every thread count.
struct ExecutionOptions {
  unsigned threads = 1;
};

void apply_clip(std::span<double> data, const ClipMode& mode);
std::vector<double> apply_clip(std::span<const double> data, const ClipMode& mode);

Spectrogram analyze(const Waveform& x, const FrameConfig& config, SpectrogramKind kind,
                    const ClipMode& clip, const ExecutionOptions& exec = {});

/// Per-frame inverse transforms, before overlap-add.
FrameMatrix inverse_frames(const Spectrogram& spec, const ExecutionOptions& exec = {});

/// Throws kUnsupportedKind for magnitude spectrograms.
Waveform synthesize(const Spectrogram& spec, const ExecutionOptions& exec = {});

}  // namespace specinv
