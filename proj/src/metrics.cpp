#include "specinv/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "specinv/error.hpp"
#include "specinv/transforms.hpp"
#include "specinv/vocoder.hpp"

namespace specinv {

double snr_db(std::span<const double> reference, std::span<const double> estimate) {
  if (reference.size() != estimate.size()) {
    throw Error(ErrorCode::kInvalidInput,
                "length mismatch: reference " + std::to_string(reference.size()) +
                    " vs estimate " + std::to_string(estimate.size()));
  }
  double signal = 0.0;
  double noise = 0.0;
  for (std::size_t i = 0; i < reference.size(); ++i) {
    const double e = reference[i] - estimate[i];
    signal += reference[i] * reference[i];
    noise += e * e;
  }
  if (signal == 0.0) throw Error(ErrorCode::kInvalidInput, "reference signal is all zeros");
  if (noise == 0.0) return kSnrExact;
  return 10.0 * std::log10(signal / noise);
}

double snr_db(const Waveform& reference, const Waveform& estimate) {
  if (reference.sample_rate != estimate.sample_rate) {
    throw Error(ErrorCode::kInvalidInput, "sample rate mismatch");
  }
  return snr_db(reference.samples, estimate.samples);
}

void McdConfig::validate(int sample_rate) const {
  const double top = fmax.value_or(sample_rate / 2.0);
  if (n_mel_bands == 0 || n_cepstra == 0 || n_cepstra >= n_mel_bands) {
    throw Error(ErrorCode::kInvalidConfig, "MCD needs 0 < n_cepstra < n_mel_bands");
  }
  if (fft_win < 2 || fft_hop == 0 || fft_hop > fft_win) {
    throw Error(ErrorCode::kInvalidConfig, "MCD needs fft_win >= 2 and 1 <= fft_hop <= fft_win");
  }
  if (!(fmin >= 0.0 && fmin < top)) {
    throw Error(ErrorCode::kInvalidConfig, "MCD needs 0 <= fmin < fmax");
  }
  if (!(log_floor > 0.0)) throw Error(ErrorCode::kInvalidConfig, "MCD log floor must be positive");
}

namespace {

constexpr double kLinearStep = 200.0 / 3.0;  // Hz per mel below the break
constexpr double kBreakHz = 1000.0;
constexpr double kBreakMel = kBreakHz / kLinearStep;
const double kLogStep = std::log(6.4) / 27.0;

}  // namespace

double hz_to_mel(double hz) {
  if (hz < kBreakHz) return hz / kLinearStep;
  return kBreakMel + std::log(hz / kBreakHz) / kLogStep;
}

double mel_to_hz(double mel) {
  if (mel < kBreakMel) return mel * kLinearStep;
  return kBreakHz * std::exp(kLogStep * (mel - kBreakMel));
}

std::vector<double> mel_filterbank(const McdConfig& cfg, int sample_rate) {
  cfg.validate(sample_rate);
  const std::size_t n_bins = cfg.fft_win / 2 + 1;
  const std::size_t bands = cfg.n_mel_bands;
  const double top = cfg.fmax.value_or(sample_rate / 2.0);

  const double mel_lo = hz_to_mel(cfg.fmin);
  const double mel_hi = hz_to_mel(top);
  std::vector<double> edges(bands + 2);
  for (std::size_t i = 0; i < edges.size(); ++i) {
    edges[i] = mel_to_hz(mel_lo + (mel_hi - mel_lo) * i / static_cast<double>(bands + 1));
  }

  std::vector<double> weights(bands * n_bins, 0.0);
  for (std::size_t b = 0; b < bands; ++b) {
    const double lo = edges[b], mid = edges[b + 1], hi = edges[b + 2];
    const double norm = 2.0 / (hi - lo);
    for (std::size_t k = 0; k < n_bins; ++k) {
      const double f = static_cast<double>(k) * sample_rate / static_cast<double>(cfg.fft_win);
      const double rise = (f - lo) / (mid - lo);
      const double fall = (hi - f) / (hi - mid);
      weights[b * n_bins + k] = std::max(0.0, std::min(rise, fall)) * norm;
    }
  }
  return weights;
}

std::vector<double> mel_cepstra(const Waveform& x, const McdConfig& cfg, std::size_t* n_frames) {
  cfg.validate(x.sample_rate);
  if (x.samples.empty()) throw Error(ErrorCode::kInvalidInput, "signal too short for MCD");

  FrameConfig frame_cfg;
  frame_cfg.win_length = cfg.fft_win;
  frame_cfg.hop_length = cfg.fft_hop;
  frame_cfg.window = WindowKind::hann();
  frame_cfg.centered = true;
  const Spectrogram mag = analyze(x, frame_cfg, SpectrogramKind::kMagnitude, ClipMode::none());
  const std::vector<double> fbank = mel_filterbank(cfg, x.sample_rate);

  const std::size_t bands = cfg.n_mel_bands;
  std::vector<double> out(mag.n_frames * cfg.n_cepstra);
  std::vector<double> log_mel(bands);
  std::vector<double> cep(bands);
  FrameTransformer dct(bands);
  for (std::size_t f = 0; f < mag.n_frames; ++f) {
    const auto row = mag.row(f);
    for (std::size_t b = 0; b < bands; ++b) {
      double e = 0.0;
      const double* w = fbank.data() + b * mag.n_bins;
      for (std::size_t k = 0; k < mag.n_bins; ++k) e += w[k] * row[k];
      log_mel[b] = std::log(std::max(e, cfg.log_floor));
    }
    dct.dct2(log_mel, cep);
    std::copy_n(cep.begin() + 1, cfg.n_cepstra, out.begin() + f * cfg.n_cepstra);
  }
  if (n_frames != nullptr) *n_frames = mag.n_frames;
  return out;
}

double mcd(const Waveform& reference, const Waveform& estimate, const McdConfig& cfg) {
  if (reference.size() != estimate.size()) {
    throw Error(ErrorCode::kInvalidInput,
                "length mismatch: reference " + std::to_string(reference.size()) +
                    " vs estimate " + std::to_string(estimate.size()));
  }
  if (reference.sample_rate != estimate.sample_rate) {
    throw Error(ErrorCode::kInvalidInput, "sample rate mismatch");
  }
  std::size_t frames = 0;
  const auto a = mel_cepstra(reference, cfg, &frames);
  const auto b = mel_cepstra(estimate, cfg);

  const double scale = 10.0 / std::numbers::ln10;
  double total = 0.0;
  for (std::size_t f = 0; f < frames; ++f) {
    double sq = 0.0;
    for (std::size_t i = 0; i < cfg.n_cepstra; ++i) {
      const double d = a[f * cfg.n_cepstra + i] - b[f * cfg.n_cepstra + i];
      sq += d * d;
    }
    total += scale * std::sqrt(2.0 * sq);
  }
  return total / static_cast<double>(frames);
}

}  // namespace specinv
