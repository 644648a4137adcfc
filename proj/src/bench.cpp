#include "specinv/bench.hpp"

#include <chrono>
#include <cmath>
#include <iomanip>
#include <numeric>
#include <sstream>

#include <json.hpp>

#include "specinv/error.hpp"
#include "specinv/test_signals.hpp"

namespace specinv {

std::string_view stage_name(BenchStage stage) {
  switch (stage) {
    case BenchStage::kSynthesizeOnly: return "synth";
    case BenchStage::kAnalyzeOnly: return "analyze";
    case BenchStage::kRoundtrip: return "roundtrip";
  }
  return "unknown";
}

void BenchSpec::validate() const {
  config.validate();
  clip.validate();
  if (runs < 1) throw Error(ErrorCode::kInvalidConfig, "bench runs must be >= 1");
  if (!(clip_duration > 0.0)) throw Error(ErrorCode::kInvalidConfig, "clip duration must be positive");
  if (sample_rate <= 0) throw Error(ErrorCode::kInvalidConfig, "sample rate must be positive");
  if (threads < 1) throw Error(ErrorCode::kInvalidConfig, "threads must be >= 1");
  if (stage != BenchStage::kAnalyzeOnly && kind == SpectrogramKind::kMagnitude) {
    throw Error(ErrorCode::kUnsupportedKind, "magnitude spectrograms cannot be synthesized");
  }
}

std::string BenchSpec::pipeline_label() const {
  std::ostringstream s;
  s << kind_name(kind) << '(' << config.win_length << '/' << config.hop_length << ')';
  return s.str();
}

BenchClock steady_clock_seconds() {
  return [] {
    using namespace std::chrono;
    return duration<double>(steady_clock::now().time_since_epoch()).count();
  };
}

BenchReport make_report(const BenchSpec& spec, std::span<const double> run_seconds,
                        std::size_t samples_generated) {
  if (run_seconds.empty()) throw Error(ErrorCode::kMeasurement, "no timed runs recorded");
  const double n = static_cast<double>(run_seconds.size());
  const double mean = std::accumulate(run_seconds.begin(), run_seconds.end(), 0.0) / n;
  if (!(mean > 0.0)) {
    throw Error(ErrorCode::kMeasurement, "mean elapsed time is zero; clock resolution too coarse");
  }
  double var = 0.0;
  for (double t : run_seconds) var += (t - mean) * (t - mean);

  BenchReport r;
  r.spec = spec;
  r.mean_seconds = mean;
  r.stddev_seconds = std::sqrt(var / n);
  r.samples_generated = samples_generated;
  r.khz = static_cast<double>(samples_generated) / mean / 1000.0;
  r.rtf = r.khz * 1000.0 / static_cast<double>(spec.sample_rate);
  return r;
}

BenchReport run_bench(const BenchSpec& spec_in, const std::optional<Waveform>& input,
                      const BenchClock& clock) {
  BenchSpec spec = spec_in;
  spec.validate();
  const Waveform x = input ? *input : speech_like(spec.clip_duration, spec.sample_rate, 1).waveform;
  x.validate();
  spec.sample_rate = x.sample_rate;
  spec.clip_duration = x.duration_seconds();

  const ExecutionOptions exec{spec.threads};
  std::optional<Spectrogram> precomputed;
  if (spec.stage == BenchStage::kSynthesizeOnly) {
    precomputed = analyze(x, spec.config, spec.kind, spec.clip, exec);
  }

  volatile double sink = 0.0;
  std::size_t produced = 0;
  auto run_once = [&] {
    switch (spec.stage) {
      case BenchStage::kSynthesizeOnly: {
        const Waveform y = synthesize(*precomputed, exec);
        produced = y.size();
        if (!y.samples.empty()) sink = sink + y.samples.front();
        break;
      }
      case BenchStage::kAnalyzeOnly: {
        const Spectrogram s = analyze(x, spec.config, spec.kind, spec.clip, exec);
        produced = x.size();
        if (!s.data.empty()) sink = sink + s.data.front();
        break;
      }
      case BenchStage::kRoundtrip: {
        const Waveform y = synthesize(analyze(x, spec.config, spec.kind, spec.clip, exec), exec);
        produced = y.size();
        if (!y.samples.empty()) sink = sink + y.samples.front();
        break;
      }
    }
  };

  for (std::size_t i = 0; i < spec.warmup_runs; ++i) run_once();

  std::vector<double> elapsed;
  elapsed.reserve(spec.runs);
  for (std::size_t i = 0; i < spec.runs; ++i) {
    const double start = clock();
    run_once();
    const double stop = clock();
    elapsed.push_back(stop - start);
  }
  return make_report(spec, elapsed, produced);
}

std::string report_tsv_header() { return "pipeline\twin\thop\tclip\tkhz\trtf\tmean_s\tstd_s"; }

std::string report_tsv_row(const BenchReport& r) {
  std::ostringstream s;
  s << r.spec.pipeline_label() << '\t' << r.spec.config.win_length << '\t'
    << r.spec.config.hop_length << '\t' << clip_name(r.spec.clip) << '\t' << std::fixed
    << std::setprecision(1) << r.khz << '\t' << r.rtf << '\t' << std::setprecision(6)
    << r.mean_seconds << '\t' << r.stddev_seconds;
  return s.str();
}

std::string report_table(const std::vector<BenchReport>& reports) {
  std::ostringstream s;
  s << std::left << std::setw(24) << "pipeline" << std::right << std::setw(6) << "win"
    << std::setw(6) << "hop" << std::setw(16) << "clip" << std::setw(14) << "kHz"
    << std::setw(10) << "RTF(X)" << std::setw(12) << "mean_s" << std::setw(12) << "std_s"
    << '\n';
  for (const auto& r : reports) {
    s << std::left << std::setw(24) << r.spec.pipeline_label() << std::right << std::setw(6)
      << r.spec.config.win_length << std::setw(6) << r.spec.config.hop_length << std::setw(16)
      << clip_name(r.spec.clip) << std::fixed << std::setprecision(1) << std::setw(14) << r.khz
      << std::setw(10) << r.rtf << std::setprecision(6) << std::setw(12) << r.mean_seconds
      << std::setw(12) << r.stddev_seconds << '\n';
    s.unsetf(std::ios::floatfield);
  }
  return s.str();
}

std::string report_jsonl(const BenchReport& r) {
  const BenchSpec& spec = r.spec;
  std::string window = "hann";
  if (spec.config.window.type == WindowKind::Type::kBoxcar) window = "boxcar";
  if (spec.config.window.type == WindowKind::Type::kKaiser) window = "kaiser";
  nlohmann::ordered_json j;
  j["mean_seconds"] = r.mean_seconds;
  j["stddev_seconds"] = r.stddev_seconds;
  j["samples_generated"] = r.samples_generated;
  j["khz"] = r.khz;
  j["rtf"] = r.rtf;
  j["spec"] = {
      {"pipeline", kind_name(spec.kind)},
      {"win_length", spec.config.win_length},
      {"hop_length", spec.config.hop_length},
      {"window", window},
      {"kaiser_beta", spec.config.window.beta},
      {"centered", spec.config.centered},
      {"clip", clip_name(spec.clip)},
      {"clip_duration", spec.clip_duration},
      {"sample_rate", spec.sample_rate},
      {"runs", spec.runs},
      {"warmup_runs", spec.warmup_runs},
      {"stage", stage_name(spec.stage)},
      {"threads", spec.threads},
  };
  return j.dump();
}

}  // namespace specinv
