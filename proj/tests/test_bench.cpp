#include <doctest.h>

#include <json.hpp>
#include <sstream>

#include "specinv/bench.hpp"
#include "specinv/error.hpp"
#include "specinv/test_signals.hpp"

using namespace specinv;

namespace {

// Returns scripted timestamps and counts reads.
struct ScriptedClock {
  std::vector<double> times;
  std::size_t reads = 0;

  BenchClock fn() {
    return [this] { return times.at(reads++); };
  }
};

BenchSpec small_spec() {
  BenchSpec s;
  s.kind = SpectrogramKind::kPackedRfft;
  s.config.win_length = 256;
  s.config.hop_length = 128;
  s.clip_duration = 0.25;
  s.runs = 4;
  s.warmup_runs = 3;
  return s;
}

std::vector<std::string> split_tabs(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, '\t')) out.push_back(field);
  return out;
}

}  // namespace

TEST_CASE("report arithmetic against hand computation") {
  BenchSpec spec;
  const std::size_t samples = 10 * 22050;

  const double fast[] = {0.011};
  const auto r = make_report(spec, fast, samples);
  CHECK(std::abs(r.khz - 220500.0 / 0.011 / 1000.0) <= 1e-9);
  CHECK(r.khz == doctest::Approx(20045.5).epsilon(1e-5));
  CHECK(r.rtf == doctest::Approx(909.1).epsilon(1e-4));
  CHECK(std::abs(r.rtf - r.khz * 1000.0 / 22050.0) <= 1e-9);

  const double realtime[] = {10.0};
  CHECK(std::abs(make_report(spec, realtime, samples).rtf - 1.0) <= 1e-12);

  const double algo1[] = {0.049};
  const auto r1 = make_report(spec, algo1, samples);
  CHECK(r1.khz == doctest::Approx(4500.0).epsilon(1e-9));
  CHECK(r1.rtf == doctest::Approx(204.0816).epsilon(1e-6));

  const double spread[] = {1.0, 2.0, 3.0, 4.0};
  const auto rs = make_report(spec, spread, 1000);
  CHECK(rs.mean_seconds == doctest::Approx(2.5));
  CHECK(rs.stddev_seconds == doctest::Approx(std::sqrt(1.25)));
}

TEST_CASE("zero elapsed time is a measurement error") {
  const double zero[] = {0.0, 0.0};
  try {
    make_report(BenchSpec{}, zero, 100);
    FAIL("expected measurement error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kMeasurement);
  }
}

TEST_CASE("warm-up runs never touch the clock") {
  ScriptedClock clock;
  // four timed runs lasting 0.1, 0.2, 0.3, 0.4 s
  clock.times = {0.0, 0.1, 1.0, 1.2, 2.0, 2.3, 3.0, 3.4};
  const BenchSpec spec = small_spec();
  const auto report = run_bench(spec, std::nullopt, clock.fn());
  CHECK(clock.reads == 2 * spec.runs);
  CHECK(report.mean_seconds == doctest::Approx(0.25));
  CHECK(report.stddev_seconds == doctest::Approx(std::sqrt(0.0125)));
  const auto n = static_cast<std::size_t>(std::llround(0.25 * 22050));
  CHECK(report.samples_generated == n);
  CHECK(std::abs(report.khz - n / 0.25 / 1000.0) <= 1e-9);
  CHECK(std::abs(report.rtf - report.khz * 1000.0 / 22050.0) <= 1e-9);
}

TEST_CASE("every stage runs with a real clock") {
  for (auto stage : {BenchStage::kSynthesizeOnly, BenchStage::kAnalyzeOnly, BenchStage::kRoundtrip}) {
    BenchSpec spec = small_spec();
    spec.stage = stage;
    const auto r = run_bench(spec);
    CHECK(r.khz > 0.0);
    CHECK(r.rtf > 0.0);
    CHECK(r.samples_generated == static_cast<std::size_t>(std::llround(0.25 * 22050)));
  }
  BenchSpec mag = small_spec();
  mag.kind = SpectrogramKind::kMagnitude;
  mag.stage = BenchStage::kAnalyzeOnly;
  CHECK_NOTHROW(run_bench(mag));
}

TEST_CASE("supplied input overrides the generated clip") {
  BenchSpec spec = small_spec();
  const Waveform x = white_noise(8000, 16000, 1);
  const auto r = run_bench(spec, x);
  CHECK(r.samples_generated == 8000);
  CHECK(r.spec.sample_rate == 16000);
  CHECK(r.spec.clip_duration == doctest::Approx(0.5));
}

TEST_CASE("bench spec validation") {
  BenchSpec spec = small_spec();
  spec.runs = 0;
  CHECK_THROWS_AS(run_bench(spec), Error);
  spec = small_spec();
  spec.clip_duration = 0.0;
  CHECK_THROWS_AS(run_bench(spec), Error);
  spec = small_spec();
  spec.kind = SpectrogramKind::kMagnitude;
  CHECK_THROWS_AS(run_bench(spec), Error);
}

TEST_CASE("report renderings") {
  BenchSpec spec;
  spec.config.win_length = 1024;
  spec.config.hop_length = 1022;
  const double t[] = {0.011};
  const auto r = make_report(spec, t, 220500);

  CHECK(report_tsv_header() == "pipeline\twin\thop\tclip\tkhz\trtf\tmean_s\tstd_s");
  const auto fields = split_tabs(report_tsv_row(r));
  REQUIRE(fields.size() == 8);
  CHECK(fields[0] == "packed_rfft(1024/1022)");
  CHECK(fields[1] == "1024");
  CHECK(fields[2] == "1022");
  CHECK(fields[3] == "none");
  CHECK(fields[4] == "20045.5");
  CHECK(fields[5] == "909.1");

  const auto j = nlohmann::json::parse(report_jsonl(r));
  for (const char* key : {"mean_seconds", "stddev_seconds", "samples_generated", "khz", "rtf", "spec"}) {
    CHECK(j.contains(key));
  }
  CHECK(j["spec"]["runs"] == 100);
  CHECK(j["spec"]["warmup_runs"] == 10);
  CHECK(j["spec"]["stage"] == "synth");
  CHECK(j["spec"]["threads"] == 1);
  CHECK(j["khz"].get<double>() == r.khz);

  const auto table = report_table({r, r});
  CHECK(table.find("RTF(X)") != std::string::npos);
  CHECK(std::count(table.begin(), table.end(), '\n') == 3);
}
