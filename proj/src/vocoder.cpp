#include "specinv/vocoder.hpp"

#include <cmath>
#include <sstream>

#include "parallel.hpp"
#include "specinv/error.hpp"
#include "specinv/transforms.hpp"

namespace specinv {

std::string_view kind_name(SpectrogramKind kind) {
  switch (kind) {
    case SpectrogramKind::kRealFft: return "real_fft";
    case SpectrogramKind::kDct: return "dct";
    case SpectrogramKind::kPackedRfft: return "packed_rfft";
    case SpectrogramKind::kMagnitude: return "magnitude";
  }
  return "unknown";
}

void ClipMode::validate() const {
  if (type == Type::kThreshold && !(tau > 0.0 && tau < 1.0)) {
    std::ostringstream msg;
    msg << "threshold clip tau must lie in (0, 1), got " << tau;
    throw Error(ErrorCode::kInvalidConfig, msg.str());
  }
}

std::string clip_name(const ClipMode& clip) {
  switch (clip.type) {
    case ClipMode::Type::kNone: return "none";
    case ClipMode::Type::kZero: return "zero";
    case ClipMode::Type::kThreshold: {
      std::ostringstream s;
      s << "threshold:" << clip.tau;
      return s.str();
    }
  }
  return "unknown";
}

std::size_t bins_for(SpectrogramKind kind, std::size_t win_length) {
  return kind == SpectrogramKind::kMagnitude ? win_length / 2 + 1 : win_length;
}

void Spectrogram::validate(bool f32_rounded) const {
  config.validate();
  clip.validate();
  if (sample_rate <= 0) throw Error(ErrorCode::kInvalidInput, "sample rate must be positive");
  if (n_bins != bins_for(kind, config.win_length)) {
    throw Error(ErrorCode::kInvalidInput,
                "spectrogram of kind " + std::string(kind_name(kind)) + " with win " +
                    std::to_string(config.win_length) + " must have " +
                    std::to_string(bins_for(kind, config.win_length)) + " bins, has " +
                    std::to_string(n_bins));
  }
  if (kind == SpectrogramKind::kPackedRfft && config.win_length % 2 != 0) {
    throw Error(ErrorCode::kInvalidConfig, "packed_rfft requires an even win_length");
  }
  if (kind == SpectrogramKind::kMagnitude && clip.type != ClipMode::Type::kNone) {
    throw Error(ErrorCode::kInvalidConfig, "magnitude spectrograms cannot be clipped");
  }
  if (data.size() != n_frames * n_bins) {
    throw Error(ErrorCode::kInvalidInput, "spectrogram payload size does not match n_frames x n_bins");
  }
  for (const double v : data) {
    if (!std::isfinite(v)) throw Error(ErrorCode::kInvalidInput, "non-finite spectrogram value");
    const bool negative_forbidden =
        kind == SpectrogramKind::kMagnitude || clip.type != ClipMode::Type::kNone;
    if (negative_forbidden && v < 0.0) {
      throw Error(ErrorCode::kInvalidInput, "negative value in a nonnegative spectrogram");
    }
    if (clip.type == ClipMode::Type::kThreshold && v != 0.0) {
      const bool ok = f32_rounded ? v >= static_cast<double>(static_cast<float>(clip.tau))
                                  : v > clip.tau;
      if (!ok) throw Error(ErrorCode::kInvalidInput, "value at or below the clip threshold survived");
    }
  }
}

void apply_clip(std::span<double> data, const ClipMode& mode) {
  mode.validate();
  switch (mode.type) {
    case ClipMode::Type::kNone:
      return;
    case ClipMode::Type::kZero:
      for (auto& v : data) v = v > 0.0 ? v : 0.0;
      return;
    case ClipMode::Type::kThreshold:
      for (auto& v : data) v = v > mode.tau ? v : 0.0;
      return;
  }
}

std::vector<double> apply_clip(std::span<const double> data, const ClipMode& mode) {
  std::vector<double> out(data.begin(), data.end());
  apply_clip(std::span<double>(out), mode);
  return out;
}

Spectrogram analyze(const Waveform& x, const FrameConfig& config, SpectrogramKind kind,
                    const ClipMode& clip, const ExecutionOptions& exec) {
  config.validate();
  clip.validate();
  x.validate();
  if (x.samples.empty()) throw Error(ErrorCode::kInvalidInput, "cannot analyze an empty waveform");
  if (kind == SpectrogramKind::kMagnitude && clip.type != ClipMode::Type::kNone) {
    throw Error(ErrorCode::kInvalidConfig,
                "clip must be none for magnitude spectrograms (already nonnegative)");
  }
  if (kind == SpectrogramKind::kPackedRfft && config.win_length % 2 != 0) {
    throw Error(ErrorCode::kInvalidConfig,
                "packed_rfft requires an even win_length, got " + std::to_string(config.win_length));
  }

  const FrameMatrix frames = frame_signal(x, config);

  Spectrogram spec;
  spec.kind = kind;
  spec.config = config;
  spec.clip = clip;
  spec.sample_rate = x.sample_rate;
  spec.original_length = x.samples.size();
  spec.n_frames = frames.n_frames;
  spec.n_bins = bins_for(kind, config.win_length);
  spec.data.assign(spec.n_frames * spec.n_bins, 0.0);

  detail::parallel_chunks(frames.n_frames, exec.threads, [&](std::size_t begin, std::size_t end) {
    FrameTransformer t(config.win_length);
    for (std::size_t f = begin; f < end; ++f) {
      const auto in = frames.row(f);
      auto out = spec.row(f);
      switch (kind) {
        case SpectrogramKind::kRealFft: t.dft_real_part(in, out); break;
        case SpectrogramKind::kDct: t.dct2(in, out); break;
        case SpectrogramKind::kPackedRfft: t.rfft_packed(in, out); break;
        case SpectrogramKind::kMagnitude: t.magnitude(in, out); break;
      }
      apply_clip(out, clip);
    }
  });
  return spec;
}

FrameMatrix inverse_frames(const Spectrogram& spec, const ExecutionOptions& exec) {
  if (spec.kind == SpectrogramKind::kMagnitude) {
    throw Error(ErrorCode::kUnsupportedKind,
                "magnitude spectrograms carry no phase and cannot be synthesized");
  }
  spec.validate(/*f32_rounded=*/true);

  FrameMatrix frames;
  frames.config = spec.config;
  frames.n_frames = spec.n_frames;
  frames.original_length = spec.original_length;
  frames.sample_rate = spec.sample_rate;
  frames.data.assign(spec.n_frames * spec.config.win_length, 0.0);

  detail::parallel_chunks(spec.n_frames, exec.threads, [&](std::size_t begin, std::size_t end) {
    FrameTransformer t(spec.config.win_length);
    for (std::size_t f = begin; f < end; ++f) {
      const auto in = spec.row(f);
      auto out = frames.row(f);
      switch (spec.kind) {
        case SpectrogramKind::kRealFft: t.idft_from_real(in, out); break;
        case SpectrogramKind::kDct: t.dct3(in, out); break;
        case SpectrogramKind::kPackedRfft: t.irfft_packed(in, out); break;
        case SpectrogramKind::kMagnitude: break;
      }
    }
  });
  return frames;
}

Waveform synthesize(const Spectrogram& spec, const ExecutionOptions& exec) {
  return overlap_add(inverse_frames(spec, exec));
}

}  // namespace specinv
