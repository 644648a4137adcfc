#pragma once

// Real-time-factor benchmark harness: untimed warm-up runs followed by
// timed runs of one pipeline stage, reported as kHz throughput and RTF.

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "specinv/signal.hpp"
#include "specinv/vocoder.hpp"

namespace specinv {

enum class BenchStage { kSynthesizeOnly, kAnalyzeOnly, kRoundtrip };

std::string_view stage_name(BenchStage stage);

struct BenchSpec {
  SpectrogramKind kind = SpectrogramKind::kPackedRfft;
  FrameConfig config;
  ClipMode clip;
  double clip_duration = 10.0;  // seconds
  int sample_rate = 22050;
  std::size_t runs = 100;
  std::size_t warmup_runs = 10;
  BenchStage stage = BenchStage::kSynthesizeOnly;
  unsigned threads = 1;

  void validate() const;
  /// Short label such as "packed_rfft(1024/1022)".
  std::string pipeline_label() const;
};

struct BenchReport {
  double mean_seconds = 0.0;
  double stddev_seconds = 0.0;  // population stddev over timed runs
  std::size_t samples_generated = 0;
  double khz = 0.0;
  double rtf = 0.0;
  BenchSpec spec;
};

/// Monotonic time in seconds. Injectable so tests can script elapsed times.
using BenchClock = std::function<double()>;

BenchClock steady_clock_seconds();

/// Derives khz = samples / mean / 1000 and rtf = khz * 1000 / rate.
/// Throws kMeasurement when mean_seconds is not positive.
BenchReport make_report(const BenchSpec& spec, std::span<const double> run_seconds,
                        std::size_t samples_generated);

/// Uses `input` when given, otherwise a generated speech-like clip of
/// spec.clip_duration seconds. The clock is read exactly twice per timed run
/// and never during warm-up.
BenchReport run_bench(const BenchSpec& spec, const std::optional<Waveform>& input = std::nullopt,
                      const BenchClock& clock = steady_clock_seconds());

/// Column order: pipeline, win, hop, clip, khz, rtf, mean_s, std_s.
std::string report_tsv_header();
std::string report_tsv_row(const BenchReport& report);
/// Space-aligned table with a header row.
std::string report_table(const std::vector<BenchReport>& reports);
/// One JSON object per line.
std::string report_jsonl(const BenchReport& report);

}  // namespace specinv
