#pragma once

// WAV input/output and the MVS1 spectrogram container.
//
// MVS1 layout, all integers little-endian, no padding (46-byte header):
//   magic "MVS1" | u16 version=1 | u8 kind | u8 window | u8 clip |
//   f32 clip_tau | f32 kaiser_beta | u32 win_length | u32 hop_length |
//   u8 centered | u32 sample_rate | u64 original_length | u32 n_frames |
//   u32 n_bins
// followed by n_frames * n_bins f32 values, frame-major.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "specinv/signal.hpp"
#include "specinv/vocoder.hpp"

namespace specinv {

enum class WavEncoding { kPcm16, kPcm24, kPcm32, kFloat32 };

std::string_view encoding_name(WavEncoding encoding);

struct WavInfo {
  WavEncoding encoding = WavEncoding::kPcm16;
  int channels = 1;
  int sample_rate = 0;
  std::size_t frames = 0;
  std::string warning;  // non-empty when channels beyond the first were dropped
};

/// Decodes PCM16/24/32 or float32 RIFF/WAVE. Integer PCM is divided by its
/// full scale (2^(bits-1)); only channel 0 of multi-channel input is kept.
Waveform decode_wav(std::span<const std::uint8_t> bytes, WavInfo* info = nullptr);
Waveform read_wav(const std::filesystem::path& path, WavInfo* info = nullptr);

/// pcm16 clamps to [-1, 1] and scales by 32767 rounding half away from zero;
/// float32 stores samples verbatim. Only pcm16 and float32 are writable.
std::vector<std::uint8_t> encode_wav(const Waveform& x, WavEncoding encoding);
void write_wav(const std::filesystem::path& path, const Waveform& x,
               WavEncoding encoding = WavEncoding::kFloat32);

inline constexpr std::size_t kSpecHeaderBytes = 46;
inline constexpr std::uint16_t kSpecVersion = 1;

std::vector<std::uint8_t> encode_spec(const Spectrogram& spec);
Spectrogram decode_spec(std::span<const std::uint8_t> bytes);
void write_spec(const std::filesystem::path& path, const Spectrogram& spec);
Spectrogram read_spec(const std::filesystem::path& path);

std::vector<std::uint8_t> read_file(const std::filesystem::path& path);
/// Writes to a sibling temporary file and renames it into place, so a failed
/// write never leaves a partial file at `path`.
void write_file_atomic(const std::filesystem::path& path, std::span<const std::uint8_t> bytes);

}  // namespace specinv
