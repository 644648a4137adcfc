#pragma once

// Deterministic synthetic audio for benchmarks and quality checks.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "specinv/signal.hpp"

namespace specinv {

struct SpeechLikeClip {
  Waveform waveform;
  std::vector<std::uint8_t> voiced;  // 1 inside a syllable, 0 in the gaps
};

/// Syllable-like bursts of a glottal pulse train through three formant
/// resonators, separated by silent gaps. Peak amplitude 0.5.
SpeechLikeClip speech_like(double seconds, int sample_rate, std::uint64_t seed);

/// Uniform white noise in [-amplitude, amplitude].
Waveform white_noise(std::size_t length, int sample_rate, std::uint64_t seed,
                     double amplitude = 0.5);

}  // namespace specinv
