#include "cli.hpp"

#include <algorithm>
#include <cstdint>
#include <iomanip>
#include <limits>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "specinv/bench.hpp"
#include "specinv/error.hpp"
#include "specinv/io.hpp"
#include "specinv/metrics.hpp"
#include "specinv/vocoder.hpp"

namespace specinv::cli {

namespace {

struct PipelineArgs {
  std::string algo;
  std::size_t win = 1024;
  std::size_t hop = 256;
  std::string window = "hann";
  std::string clip = "none";
  bool no_center = false;
};

struct Pipeline {
  SpectrogramKind kind;
  FrameConfig config;
  ClipMode clip;
};

const std::map<std::string, SpectrogramKind> kAlgos = {
    {"fft-real", SpectrogramKind::kRealFft},
    {"dct", SpectrogramKind::kDct},
    {"prft", SpectrogramKind::kPackedRfft},
    {"magnitude", SpectrogramKind::kMagnitude},
};

double parse_number(const std::string& text, const std::string& what) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size()) {
    throw Error(ErrorCode::kInvalidConfig, "cannot parse " + what + " from '" + text + "'");
  }
  return v;
}

WindowKind parse_window(const std::string& text) {
  if (text == "hann") return WindowKind::hann();
  if (text == "boxcar") return WindowKind::boxcar();
  if (text.rfind("kaiser:", 0) == 0) {
    return WindowKind::kaiser(parse_number(text.substr(7), "kaiser beta"));
  }
  throw Error(ErrorCode::kInvalidConfig,
              "unknown window '" + text + "' (expected hann, kaiser:B or boxcar)");
}

ClipMode parse_clip(const std::string& text) {
  if (text == "none") return ClipMode::none();
  if (text == "zero") return ClipMode::zero();
  if (text.rfind("threshold:", 0) == 0) {
    return ClipMode::threshold(parse_number(text.substr(10), "clip threshold"));
  }
  throw Error(ErrorCode::kInvalidConfig,
              "unknown clip '" + text + "' (expected none, zero or threshold:T)");
}

WavEncoding parse_encoding(const std::string& text) {
  if (text == "pcm16") return WavEncoding::kPcm16;
  if (text == "float32") return WavEncoding::kFloat32;
  throw Error(ErrorCode::kInvalidConfig, "unknown encoding '" + text + "'");
}

Pipeline to_pipeline(const PipelineArgs& a) {
  Pipeline p;
  p.kind = kAlgos.at(a.algo);
  p.config.win_length = a.win;
  p.config.hop_length = a.hop;
  p.config.window = parse_window(a.window);
  p.config.centered = !a.no_center;
  p.clip = parse_clip(a.clip);
  p.config.validate();
  p.clip.validate();
  if (p.kind == SpectrogramKind::kMagnitude && p.clip.type != ClipMode::Type::kNone) {
    throw Error(ErrorCode::kInvalidConfig, "--clip must be none with --algo magnitude");
  }
  if (p.kind == SpectrogramKind::kPackedRfft && a.win % 2 != 0) {
    throw Error(ErrorCode::kInvalidConfig, "--algo prft requires an even --win");
  }
  return p;
}

void add_pipeline_options(CLI::App* sub, PipelineArgs& a, bool with_magnitude) {
  std::vector<std::string> names = {"fft-real", "dct", "prft"};
  if (with_magnitude) names.emplace_back("magnitude");
  sub->add_option("--algo", a.algo, "Spectrogram kind")
      ->required()
      ->check(CLI::IsMember(names));
  sub->add_option("--win", a.win, "Window length in samples")->capture_default_str();
  sub->add_option("--hop", a.hop, "Hop length in samples")->capture_default_str();
  sub->add_option("--window", a.window, "Window: hann | kaiser:BETA | boxcar")
      ->capture_default_str();
  sub->add_option("--clip", a.clip, "Clipping: none | zero | threshold:TAU")
      ->capture_default_str();
  sub->add_flag("--no-center", a.no_center, "Disable win/2 zero padding at both ends");
}

std::string full(double v) {
  std::ostringstream s;
  s << std::setprecision(17) << v;
  return s.str();
}

void warn_if_needed(const WavInfo& info, std::ostream& err) {
  if (!info.warning.empty()) err << "warning: " << info.warning << '\n';
}

std::string window_label(const WindowKind& w) {
  switch (w.type) {
    case WindowKind::Type::kHann: return "hann";
    case WindowKind::Type::kBoxcar: return "boxcar";
    case WindowKind::Type::kKaiser: return "kaiser:" + full(w.beta);
  }
  return "unknown";
}

int exit_code(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidConfig: return 3;
    case ErrorCode::kInvalidInput: return 4;
    case ErrorCode::kUnsupportedKind: return 5;
    case ErrorCode::kFileNotFound:
    case ErrorCode::kFileWrite: return 6;
    case ErrorCode::kMalformedRiff:
    case ErrorCode::kUnsupportedCodec:
    case ErrorCode::kBadMagic:
    case ErrorCode::kVersionMismatch:
    case ErrorCode::kTruncated: return 7;
    case ErrorCode::kMeasurement: return 8;
  }
  return 1;
}

std::string one_line(std::string text) {
  std::replace(text.begin(), text.end(), '\n', ' ');
  while (!text.empty() && text.back() == ' ') text.pop_back();
  return text;
}

void print_info(const std::string& path, std::ostream& out, std::ostream& err) {
  const auto bytes = read_file(path);
  if (bytes.size() >= 4 && std::equal(bytes.begin(), bytes.begin() + 4, "MVS1")) {
    const Spectrogram s = decode_spec(bytes);
    out << "format\tMVS1\n"
        << "version\t" << kSpecVersion << '\n'
        << "kind\t" << kind_name(s.kind) << '\n'
        << "window\t" << window_label(s.config.window) << '\n'
        << "clip\t" << clip_name(s.clip) << '\n'
        << "win_length\t" << s.config.win_length << '\n'
        << "hop_length\t" << s.config.hop_length << '\n'
        << "centered\t" << (s.config.centered ? 1 : 0) << '\n'
        << "sample_rate\t" << s.sample_rate << '\n'
        << "original_length\t" << s.original_length << '\n'
        << "n_frames\t" << s.n_frames << '\n'
        << "n_bins\t" << s.n_bins << '\n';
    return;
  }
  if (bytes.size() >= 4 && std::equal(bytes.begin(), bytes.begin() + 4, "RIFF")) {
    WavInfo info;
    const Waveform w = decode_wav(bytes, &info);
    warn_if_needed(info, err);
    out << "format\tWAV\n"
        << "encoding\t" << encoding_name(info.encoding) << '\n'
        << "channels\t" << info.channels << '\n'
        << "sample_rate\t" << info.sample_rate << '\n'
        << "frames\t" << info.frames << '\n'
        << "duration_s\t" << full(w.duration_seconds()) << '\n';
    return;
  }
  throw Error(ErrorCode::kBadMagic, "unrecognized file type (expected MVS1 or RIFF/WAVE): " + path);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Phase-free spectral inversion vocoder: analysis, synthesis, metrics, benchmarks",
               "specinv"};
  app.fallthrough();
  app.require_subcommand(1);
  unsigned threads = 1;
  app.add_option("--threads", threads, "Worker threads for per-frame transforms")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);

  PipelineArgs analyze_args;
  std::string analyze_in, analyze_out;
  auto* analyze_cmd = app.add_subcommand("analyze", "WAV -> MVS1 spectrogram");
  analyze_cmd->add_option("input", analyze_in, "Input WAV file")->required();
  analyze_cmd->add_option("output", analyze_out, "Output MVS1 file")->required();
  add_pipeline_options(analyze_cmd, analyze_args, true);

  std::string synth_in, synth_out, synth_encoding = "float32";
  auto* synth_cmd = app.add_subcommand("synthesize", "MVS1 spectrogram -> WAV");
  synth_cmd->add_option("input", synth_in, "Input MVS1 file")->required();
  synth_cmd->add_option("output", synth_out, "Output WAV file")->required();
  synth_cmd->add_option("--encoding", synth_encoding, "Output sample encoding")
      ->capture_default_str()
      ->check(CLI::IsMember({"pcm16", "float32"}));

  PipelineArgs rt_args;
  std::string rt_in, rt_out, rt_encoding = "float32";
  bool rt_report = false;
  auto* rt_cmd = app.add_subcommand("roundtrip", "WAV -> spectrogram -> WAV in memory");
  rt_cmd->add_option("input", rt_in, "Input WAV file")->required();
  rt_cmd->add_option("output", rt_out, "Output WAV file")->required();
  add_pipeline_options(rt_cmd, rt_args, false);
  rt_cmd->add_option("--encoding", rt_encoding, "Output sample encoding")
      ->capture_default_str()
      ->check(CLI::IsMember({"pcm16", "float32"}));
  rt_cmd->add_flag("--report", rt_report, "Print SNR (dB) and MCD of the reconstruction");

  std::string m_ref, m_est;
  McdConfig mcd_cfg;
  auto* metrics_cmd = app.add_subcommand("metrics", "SNR and mel-cepstral distance of two WAVs");
  metrics_cmd->add_option("reference", m_ref, "Reference WAV file")->required();
  metrics_cmd->add_option("estimate", m_est, "Estimate WAV file")->required();
  metrics_cmd->add_option("--mcd-bands", mcd_cfg.n_mel_bands, "Mel bands")->capture_default_str();
  metrics_cmd->add_option("--mcd-cepstra", mcd_cfg.n_cepstra, "Cepstra kept (c0 excluded)")
      ->capture_default_str();
  metrics_cmd->add_option("--mcd-win", mcd_cfg.fft_win, "MCD analysis window")->capture_default_str();
  metrics_cmd->add_option("--mcd-hop", mcd_cfg.fft_hop, "MCD analysis hop")->capture_default_str();

  PipelineArgs bench_args;
  BenchSpec bench_spec;
  std::string bench_stage = "synth", bench_format = "tsv", bench_input;
  auto* bench_cmd = app.add_subcommand("bench", "Time one pipeline stage, report kHz and RTF");
  add_pipeline_options(bench_cmd, bench_args, true);
  bench_cmd->add_option("--duration", bench_spec.clip_duration, "Generated clip length (s)")
      ->capture_default_str();
  bench_cmd->add_option("--rate", bench_spec.sample_rate, "Generated clip sample rate (Hz)")
      ->capture_default_str();
  bench_cmd->add_option("--runs", bench_spec.runs, "Timed runs")->capture_default_str();
  bench_cmd->add_option("--warmup", bench_spec.warmup_runs, "Untimed warm-up runs")
      ->capture_default_str();
  bench_cmd->add_option("--stage", bench_stage, "Timed stage")
      ->capture_default_str()
      ->check(CLI::IsMember({"synth", "analyze", "roundtrip"}));
  bench_cmd->add_option("--format", bench_format, "Report format")
      ->capture_default_str()
      ->check(CLI::IsMember({"tsv", "table", "jsonl"}));
  bench_cmd->add_option("--input", bench_input, "Benchmark this WAV instead of a generated clip");

  std::string info_path;
  auto* info_cmd = app.add_subcommand("info", "Print MVS1 header or WAV metadata");
  info_cmd->add_option("file", info_path, "MVS1 or WAV file")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error[usage]: " << one_line(e.what()) << '\n';
    return 2;
  }

  const ExecutionOptions exec{threads};
  try {
    if (*analyze_cmd) {
      const Pipeline p = to_pipeline(analyze_args);
      WavInfo info;
      const Waveform x = read_wav(analyze_in, &info);
      warn_if_needed(info, err);
      const Spectrogram s = analyze(x, p.config, p.kind, p.clip, exec);
      write_spec(analyze_out, s);
      out << "wrote\t" << analyze_out << '\t' << kind_name(s.kind) << '\t' << s.n_frames << 'x'
          << s.n_bins << '\n';
    } else if (*synth_cmd) {
      const WavEncoding enc = parse_encoding(synth_encoding);
      const Spectrogram s = read_spec(synth_in);
      const Waveform y = synthesize(s, exec);
      write_wav(synth_out, y, enc);
      out << "wrote\t" << synth_out << '\t' << y.size() << " samples\n";
    } else if (*rt_cmd) {
      const Pipeline p = to_pipeline(rt_args);
      const WavEncoding enc = parse_encoding(rt_encoding);
      WavInfo info;
      const Waveform x = read_wav(rt_in, &info);
      warn_if_needed(info, err);
      const Waveform y = synthesize(analyze(x, p.config, p.kind, p.clip, exec), exec);
      std::optional<double> snr, distance;
      if (rt_report) {
        snr = snr_db(x, y);
        distance = mcd(x, y);
      }
      write_wav(rt_out, y, enc);
      if (rt_report) {
        out << "snr_db\t" << full(*snr) << '\n' << "mcd\t" << full(*distance) << '\n';
      }
    } else if (*metrics_cmd) {
      WavInfo ref_info, est_info;
      const Waveform ref = read_wav(m_ref, &ref_info);
      const Waveform est = read_wav(m_est, &est_info);
      warn_if_needed(ref_info, err);
      warn_if_needed(est_info, err);
      const double snr = snr_db(ref, est);
      const double distance = mcd(ref, est, mcd_cfg);
      out << "snr_db\t" << full(snr) << '\n' << "mcd\t" << full(distance) << '\n';
    } else if (*bench_cmd) {
      const Pipeline p = to_pipeline(bench_args);
      bench_spec.kind = p.kind;
      bench_spec.config = p.config;
      bench_spec.clip = p.clip;
      bench_spec.threads = threads;
      bench_spec.stage = bench_stage == "analyze"     ? BenchStage::kAnalyzeOnly
                         : bench_stage == "roundtrip" ? BenchStage::kRoundtrip
                                                      : BenchStage::kSynthesizeOnly;
      bench_spec.validate();
      std::optional<Waveform> input;
      if (!bench_input.empty()) {
        WavInfo info;
        input = read_wav(bench_input, &info);
        warn_if_needed(info, err);
      }
      const BenchReport r = run_bench(bench_spec, input);
      if (bench_format == "jsonl") {
        out << report_jsonl(r) << '\n';
      } else if (bench_format == "table") {
        out << report_table({r});
      } else {
        out << report_tsv_header() << '\n' << report_tsv_row(r) << '\n';
      }
    } else if (*info_cmd) {
      print_info(info_path, out, err);
    }
  } catch (const Error& e) {
    err << "error[" << error_tag(e.code()) << "]: " << one_line(e.what()) << '\n';
    return exit_code(e.code());
  } catch (const std::exception& e) {
    err << "error[internal]: " << one_line(e.what()) << '\n';
    return 1;
  }
  return 0;
}

}  // namespace specinv::cli
