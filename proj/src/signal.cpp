#include "specinv/signal.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "specinv/error.hpp"

namespace specinv {

void Waveform::validate() const {
  if (sample_rate <= 0) {
    throw Error(ErrorCode::kInvalidInput,
                "sample rate must be positive, got " + std::to_string(sample_rate));
  }
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (!std::isfinite(samples[i])) {
      throw Error(ErrorCode::kInvalidInput,
                  "non-finite sample at index " + std::to_string(i));
    }
  }
}

void FrameConfig::validate() const {
  if (win_length < 2) {
    throw Error(ErrorCode::kInvalidConfig,
                "win_length must be >= 2, got " + std::to_string(win_length));
  }
  if (hop_length < 1 || hop_length > win_length) {
    throw Error(ErrorCode::kInvalidConfig,
                "hop_length must be in [1, win_length], got " +
                    std::to_string(hop_length));
  }
  if (window.type == WindowKind::Type::kKaiser &&
      !(window.beta >= 0.0 && std::isfinite(window.beta))) {
    throw Error(ErrorCode::kInvalidConfig, "kaiser beta must be >= 0");
  }
}

std::vector<double> make_window(const WindowKind& kind, std::size_t length) {
  if (length < 2) {
    throw Error(ErrorCode::kInvalidConfig,
                "window length must be >= 2, got " + std::to_string(length));
  }
  std::vector<double> w(length);
  const double n_total = static_cast<double>(length);
  switch (kind.type) {
    case WindowKind::Type::kHann:
      for (std::size_t n = 0; n < length; ++n) {
        w[n] = 0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * n / n_total);
      }
      break;
    case WindowKind::Type::kKaiser: {
      if (!(kind.beta >= 0.0)) {
        throw Error(ErrorCode::kInvalidConfig, "kaiser beta must be >= 0");
      }
      const double denom = std::cyl_bessel_i(0.0, kind.beta);
      const double span = n_total - 1.0;
      for (std::size_t n = 0; n < length; ++n) {
        const double r = 2.0 * n / span - 1.0;
        const double arg = kind.beta * std::sqrt(std::max(0.0, 1.0 - r * r));
        w[n] = std::cyl_bessel_i(0.0, arg) / denom;
      }
      break;
    }
    case WindowKind::Type::kBoxcar:
      std::fill(w.begin(), w.end(), 1.0);
      break;
  }
  return w;
}

namespace {

std::size_t center_pad(const FrameConfig& config) {
  return config.centered ? config.win_length / 2 : 0;
}

}  // namespace

std::size_t frame_count(std::size_t length, const FrameConfig& config) {
  config.validate();
  const std::size_t win = config.win_length;
  const std::size_t hop = config.hop_length;
  const std::size_t padded = length + 2 * center_pad(config);
  if (padded < win) {
    throw Error(ErrorCode::kInvalidInput,
                "signal of " + std::to_string(length) +
                    " samples is shorter than one frame of " +
                    std::to_string(win));
  }
  const std::size_t extra = padded - win;
  if (config.centered) return 1 + (extra + hop - 1) / hop;
  return 1 + extra / hop;
}

FrameMatrix frame_signal(std::span<const double> x, int sample_rate,
                         const FrameConfig& config) {
  const std::size_t n_frames = frame_count(x.size(), config);
  const std::size_t win = config.win_length;
  const std::size_t hop = config.hop_length;
  const std::size_t pad = center_pad(config);
  const std::vector<double> window = make_window(config.window, win);

  FrameMatrix out;
  out.config = config;
  out.n_frames = n_frames;
  out.original_length = x.size();
  out.sample_rate = sample_rate;
  out.data.assign(n_frames * win, 0.0);

  for (std::size_t f = 0; f < n_frames; ++f) {
    auto row = out.row(f);
    const std::size_t start = f * hop;  // in padded coordinates
    for (std::size_t n = 0; n < win; ++n) {
      const std::size_t p = start + n;
      if (p < pad || p - pad >= x.size()) continue;
      row[n] = x[p - pad] * window[n];
    }
  }
  return out;
}

FrameMatrix frame_signal(const Waveform& x, const FrameConfig& config) {
  return frame_signal(x.samples, x.sample_rate, config);
}

Waveform overlap_add(const FrameMatrix& frames) {
  const FrameConfig& config = frames.config;
  config.validate();
  const std::size_t win = config.win_length;
  const std::size_t hop = config.hop_length;
  if (frames.data.size() != frames.n_frames * win) {
    throw Error(ErrorCode::kInvalidInput, "frame matrix size does not match n_frames x win_length");
  }
  const std::vector<double> window = make_window(config.window, win);

  const std::size_t total =
      frames.n_frames == 0 ? 0 : (frames.n_frames - 1) * hop + win;
  std::vector<double> acc(total, 0.0);
  std::vector<double> norm(total, 0.0);
  for (std::size_t f = 0; f < frames.n_frames; ++f) {
    const auto row = frames.row(f);
    double* a = acc.data() + f * hop;
    double* w = norm.data() + f * hop;
    for (std::size_t n = 0; n < win; ++n) {
      a[n] += row[n];
      w[n] += window[n];
    }
  }

  Waveform out;
  out.sample_rate = frames.sample_rate;
  out.samples.assign(frames.original_length, 0.0);
  const std::size_t pad = config.centered ? win / 2 : 0;
  for (std::size_t i = 0; i < frames.original_length; ++i) {
    const std::size_t p = pad + i;
    if (p >= total) break;
    out.samples[i] = acc[p] / std::max(norm[p], kOlaEpsilon);
  }
  return out;
}

}  // namespace specinv
