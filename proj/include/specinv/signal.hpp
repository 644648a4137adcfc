#pragma once

// Windowing, framing and overlap-add shared by every analysis/synthesis
// pipeline. Analysis applies the window once; synthesis divides the
// overlap-added frames by the window overlap sum, so any linear,
// invertible per-frame transform round-trips exactly.

#include <cstddef>
#include <span>
#include <vector>

namespace specinv {

/// Mono audio. Samples are nominally in [-1, 1] and must be finite.
struct Waveform {
  std::vector<double> samples;
  int sample_rate = 22050;

  std::size_t size() const noexcept { return samples.size(); }
  double duration_seconds() const noexcept {
    return static_cast<double>(samples.size()) / sample_rate;
  }

  /// Throws kInvalidInput on non-finite samples or a non-positive rate.
  void validate() const;
};

struct WindowKind {
  enum class Type { kHann, kKaiser, kBoxcar };

  Type type = Type::kHann;
  double beta = 0.0;  // kaiser only

  static WindowKind hann() { return {Type::kHann, 0.0}; }
  static WindowKind kaiser(double beta) { return {Type::kKaiser, beta}; }
  static WindowKind boxcar() { return {Type::kBoxcar, 0.0}; }

  bool operator==(const WindowKind&) const = default;
};

struct FrameConfig {
  std::size_t win_length = 1024;
  std::size_t hop_length = 256;
  WindowKind window = WindowKind::hann();
  bool centered = true;

  /// Throws kInvalidConfig unless 2 <= win, 1 <= hop <= win, kaiser beta >= 0.
  void validate() const;

  bool operator==(const FrameConfig&) const = default;
};

/// Row-major n_frames x win_length matrix of windowed frames.
struct FrameMatrix {
  std::vector<double> data;
  std::size_t n_frames = 0;
  FrameConfig config;
  std::size_t original_length = 0;  // pre-padding sample count
  int sample_rate = 22050;

  std::span<double> row(std::size_t f) {
    return {data.data() + f * config.win_length, config.win_length};
  }
  std::span<const double> row(std::size_t f) const {
    return {data.data() + f * config.win_length, config.win_length};
  }
};

/// Window sum floor used by overlap_add.
inline constexpr double kOlaEpsilon = 1e-8;

/// Hann is the periodic form, kaiser the symmetric form, boxcar all ones.
std::vector<double> make_window(const WindowKind& kind, std::size_t length);

/// Number of frames frame_signal() produces for a signal of `length` samples.
std::size_t frame_count(std::size_t length, const FrameConfig& config);

/// Splits x into windowed frames. Centered framing pads win/2 zeros on both
/// sides and zero-fills a final partial frame so every sample is covered;
/// uncentered framing drops trailing samples that do not fill a frame.
FrameMatrix frame_signal(std::span<const double> x, int sample_rate,
                         const FrameConfig& config);
FrameMatrix frame_signal(const Waveform& x, const FrameConfig& config);

/// Sums frames at their hop offsets and divides by max(sum of windows, eps).
/// Accumulation order over frames is ascending, so output is bit-reproducible.
Waveform overlap_add(const FrameMatrix& frames);

}  // namespace specinv
