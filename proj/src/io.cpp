#include "specinv/io.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <limits>
#include <system_error>

#include "specinv/error.hpp"

namespace specinv {

static_assert(std::endian::native == std::endian::little,
              "byte codecs assume a little-endian host");

std::string_view encoding_name(WavEncoding encoding) {
  switch (encoding) {
    case WavEncoding::kPcm16: return "pcm16";
    case WavEncoding::kPcm24: return "pcm24";
    case WavEncoding::kPcm32: return "pcm32";
    case WavEncoding::kFloat32: return "float32";
  }
  return "unknown";
}

namespace {

class ByteWriter {
 public:
  template <typename T>
  void put(T value) {
    const auto* p = reinterpret_cast<const std::uint8_t*>(&value);
    bytes_.insert(bytes_.end(), p, p + sizeof(T));
  }
  void put_tag(const char (&tag)[5]) { bytes_.insert(bytes_.end(), tag, tag + 4); }
  std::vector<std::uint8_t>& bytes() { return bytes_; }

 private:
  std::vector<std::uint8_t> bytes_;
};

template <typename T>
T load(const std::uint8_t* p) {
  T v;
  std::memcpy(&v, p, sizeof(T));
  return v;
}

bool tag_is(const std::uint8_t* p, const char* tag) { return std::memcmp(p, tag, 4) == 0; }

[[noreturn]] void malformed(const std::string& what) {
  throw Error(ErrorCode::kMalformedRiff, "malformed RIFF/WAVE: " + what);
}

}  // namespace

std::vector<std::uint8_t> read_file(const std::filesystem::path& path) {
  std::error_code ec;
  if (!std::filesystem::is_regular_file(path, ec)) {
    throw Error(ErrorCode::kFileNotFound, "no such file: " + path.string());
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kFileNotFound, "cannot open file: " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_file_atomic(const std::filesystem::path& path, std::span<const std::uint8_t> bytes) {
  std::filesystem::path tmp = path;
  tmp += ".partial";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::kFileWrite, "cannot write file: " + path.string());
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
    out.flush();
    if (!out) {
      out.close();
      std::error_code ignored;
      std::filesystem::remove(tmp, ignored);
      throw Error(ErrorCode::kFileWrite, "short write to " + path.string());
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::error_code ignored;
    std::filesystem::remove(tmp, ignored);
    throw Error(ErrorCode::kFileWrite, "cannot write file: " + path.string() + ": " + ec.message());
  }
}

// ---------------------------------------------------------------------------
// WAV

Waveform decode_wav(std::span<const std::uint8_t> bytes, WavInfo* info) {
  if (bytes.size() < 12) malformed("file shorter than the RIFF header");
  if (!tag_is(bytes.data(), "RIFF") || !tag_is(bytes.data() + 8, "WAVE")) {
    malformed("missing RIFF/WAVE signature");
  }

  const std::uint8_t* fmt = nullptr;
  std::size_t fmt_size = 0;
  const std::uint8_t* data = nullptr;
  std::size_t data_size = 0;
  std::size_t pos = 12;
  while (pos + 8 <= bytes.size()) {
    const std::uint8_t* chunk = bytes.data() + pos;
    const std::size_t size = load<std::uint32_t>(chunk + 4);
    const std::size_t body = pos + 8;
    if (size > bytes.size() - body) malformed("chunk extends past end of file");
    if (tag_is(chunk, "fmt ")) {
      fmt = chunk + 8;
      fmt_size = size;
    } else if (tag_is(chunk, "data")) {
      data = chunk + 8;
      data_size = size;
    }
    pos = body + size + (size & 1u);
  }
  if (fmt == nullptr) malformed("no fmt chunk");
  if (data == nullptr) malformed("no data chunk");
  if (fmt_size < 16) malformed("fmt chunk too small");

  std::uint16_t format = load<std::uint16_t>(fmt);
  const std::uint16_t channels = load<std::uint16_t>(fmt + 2);
  const std::uint32_t rate = load<std::uint32_t>(fmt + 4);
  const std::uint16_t block_align = load<std::uint16_t>(fmt + 12);
  const std::uint16_t bits = load<std::uint16_t>(fmt + 14);
  if (format == 0xFFFE) {
    if (fmt_size < 40) malformed("extensible fmt chunk too small");
    format = load<std::uint16_t>(fmt + 24);  // first two bytes of the subformat GUID
  }
  if (channels == 0) malformed("zero channels");
  if (rate == 0 || rate > static_cast<std::uint32_t>(std::numeric_limits<int>::max())) {
    malformed("invalid sample rate");
  }

  WavEncoding encoding;
  if (format == 1 && bits == 16) {
    encoding = WavEncoding::kPcm16;
  } else if (format == 1 && bits == 24) {
    encoding = WavEncoding::kPcm24;
  } else if (format == 1 && bits == 32) {
    encoding = WavEncoding::kPcm32;
  } else if (format == 3 && bits == 32) {
    encoding = WavEncoding::kFloat32;
  } else {
    throw Error(ErrorCode::kUnsupportedCodec,
                "unsupported WAV codec: format tag " + std::to_string(format) + ", " +
                    std::to_string(bits) + " bits");
  }
  const std::size_t sample_bytes = bits / 8;
  if (block_align != channels * sample_bytes) malformed("block align does not match channels x sample size");

  const std::size_t frames = data_size / block_align;
  Waveform out;
  out.sample_rate = static_cast<int>(rate);
  out.samples.resize(frames);
  for (std::size_t i = 0; i < frames; ++i) {
    const std::uint8_t* p = data + i * block_align;
    double v = 0.0;
    switch (encoding) {
      case WavEncoding::kPcm16:
        v = load<std::int16_t>(p) / 32768.0;
        break;
      case WavEncoding::kPcm24: {
        std::int32_t s = p[0] | (p[1] << 8) | (p[2] << 16);
        if (s & 0x800000) s -= 0x1000000;
        v = s / 8388608.0;
        break;
      }
      case WavEncoding::kPcm32:
        v = load<std::int32_t>(p) / 2147483648.0;
        break;
      case WavEncoding::kFloat32:
        v = load<float>(p);
        if (!std::isfinite(v)) {
          throw Error(ErrorCode::kInvalidInput, "non-finite float sample at frame " + std::to_string(i));
        }
        break;
    }
    out.samples[i] = v;
  }

  if (info != nullptr) {
    info->encoding = encoding;
    info->channels = channels;
    info->sample_rate = out.sample_rate;
    info->frames = frames;
    info->warning.clear();
    if (channels > 1) {
      info->warning = std::to_string(channels) + "-channel input reduced to channel 0";
    }
  }
  return out;
}

Waveform read_wav(const std::filesystem::path& path, WavInfo* info) {
  return decode_wav(read_file(path), info);
}

std::vector<std::uint8_t> encode_wav(const Waveform& x, WavEncoding encoding) {
  x.validate();
  if (encoding != WavEncoding::kPcm16 && encoding != WavEncoding::kFloat32) {
    throw Error(ErrorCode::kInvalidConfig,
                "WAV writing supports pcm16 and float32, not " + std::string(encoding_name(encoding)));
  }
  const bool pcm = encoding == WavEncoding::kPcm16;
  const std::uint16_t bits = pcm ? 16 : 32;
  if (x.size() > (std::numeric_limits<std::uint32_t>::max() - 44) / (bits / 8)) {
    throw Error(ErrorCode::kInvalidInput, "waveform too long for a RIFF/WAVE file");
  }
  const std::uint32_t data_bytes = static_cast<std::uint32_t>(x.size() * (bits / 8));

  ByteWriter w;
  w.put_tag("RIFF");
  w.put<std::uint32_t>(4 + (8 + 16) + (8 + data_bytes));
  w.put_tag("WAVE");
  w.put_tag("fmt ");
  w.put<std::uint32_t>(16);
  w.put<std::uint16_t>(pcm ? 1 : 3);
  w.put<std::uint16_t>(1);
  w.put<std::uint32_t>(static_cast<std::uint32_t>(x.sample_rate));
  w.put<std::uint32_t>(static_cast<std::uint32_t>(x.sample_rate) * (bits / 8));
  w.put<std::uint16_t>(bits / 8);
  w.put<std::uint16_t>(bits);
  w.put_tag("data");
  w.put<std::uint32_t>(data_bytes);
  for (const double v : x.samples) {
    if (pcm) {
      const double clamped = std::clamp(v, -1.0, 1.0);
      w.put<std::int16_t>(static_cast<std::int16_t>(std::round(clamped * 32767.0)));
    } else {
      w.put<float>(static_cast<float>(v));
    }
  }
  return std::move(w.bytes());
}

void write_wav(const std::filesystem::path& path, const Waveform& x, WavEncoding encoding) {
  write_file_atomic(path, encode_wav(x, encoding));
}

// ---------------------------------------------------------------------------
// MVS1

std::vector<std::uint8_t> encode_spec(const Spectrogram& spec) {
  spec.validate(/*f32_rounded=*/true);
  if (spec.config.win_length > std::numeric_limits<std::uint32_t>::max() ||
      spec.n_frames > std::numeric_limits<std::uint32_t>::max()) {
    throw Error(ErrorCode::kInvalidInput, "spectrogram too large for the MVS1 format");
  }
  ByteWriter w;
  w.put_tag("MVS1");
  w.put<std::uint16_t>(kSpecVersion);
  w.put<std::uint8_t>(static_cast<std::uint8_t>(spec.kind));
  w.put<std::uint8_t>(static_cast<std::uint8_t>(spec.config.window.type));
  w.put<std::uint8_t>(static_cast<std::uint8_t>(spec.clip.type));
  w.put<float>(spec.clip.type == ClipMode::Type::kThreshold ? static_cast<float>(spec.clip.tau) : 0.0f);
  w.put<float>(spec.config.window.type == WindowKind::Type::kKaiser
                   ? static_cast<float>(spec.config.window.beta)
                   : 0.0f);
  w.put<std::uint32_t>(static_cast<std::uint32_t>(spec.config.win_length));
  w.put<std::uint32_t>(static_cast<std::uint32_t>(spec.config.hop_length));
  w.put<std::uint8_t>(spec.config.centered ? 1 : 0);
  w.put<std::uint32_t>(static_cast<std::uint32_t>(spec.sample_rate));
  w.put<std::uint64_t>(spec.original_length);
  w.put<std::uint32_t>(static_cast<std::uint32_t>(spec.n_frames));
  w.put<std::uint32_t>(static_cast<std::uint32_t>(spec.n_bins));
  auto& bytes = w.bytes();
  bytes.reserve(bytes.size() + spec.data.size() * 4);
  for (const double v : spec.data) {
    const auto f = static_cast<float>(v);
    if (!std::isfinite(f)) throw Error(ErrorCode::kInvalidInput, "spectrogram value overflows f32");
    w.put<float>(f);
  }
  return std::move(bytes);
}

Spectrogram decode_spec(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 4 || !tag_is(bytes.data(), "MVS1")) {
    throw Error(ErrorCode::kBadMagic, "bad magic: not an MVS1 spectrogram file");
  }
  if (bytes.size() < kSpecHeaderBytes) {
    throw Error(ErrorCode::kTruncated,
                "truncated header: expected " + std::to_string(kSpecHeaderBytes) + " bytes, got " +
                    std::to_string(bytes.size()));
  }
  const std::uint8_t* p = bytes.data();
  const auto version = load<std::uint16_t>(p + 4);
  if (version != kSpecVersion) {
    throw Error(ErrorCode::kVersionMismatch,
                "unsupported MVS1 version " + std::to_string(version) + " (expected " +
                    std::to_string(kSpecVersion) + ")");
  }
  const std::uint8_t kind = p[6], window = p[7], clip = p[8];
  const float tau = load<float>(p + 9);
  const float beta = load<float>(p + 13);
  const auto win = load<std::uint32_t>(p + 17);
  const auto hop = load<std::uint32_t>(p + 21);
  const std::uint8_t centered = p[25];
  const auto rate = load<std::uint32_t>(p + 26);
  const auto original_length = load<std::uint64_t>(p + 30);
  const auto n_frames = load<std::uint32_t>(p + 38);
  const auto n_bins = load<std::uint32_t>(p + 42);

  if (kind > 3) throw Error(ErrorCode::kInvalidInput, "unknown spectrogram kind " + std::to_string(kind));
  if (window > 2) throw Error(ErrorCode::kInvalidInput, "unknown window " + std::to_string(window));
  if (clip > 2) throw Error(ErrorCode::kInvalidInput, "unknown clip mode " + std::to_string(clip));
  if (centered > 1) throw Error(ErrorCode::kInvalidInput, "centered flag must be 0 or 1");
  if (rate == 0 || rate > static_cast<std::uint32_t>(std::numeric_limits<int>::max())) {
    throw Error(ErrorCode::kInvalidInput, "invalid sample rate");
  }

  Spectrogram spec;
  spec.kind = static_cast<SpectrogramKind>(kind);
  spec.config.win_length = win;
  spec.config.hop_length = hop;
  spec.config.window = {static_cast<WindowKind::Type>(window),
                        window == 1 ? static_cast<double>(beta) : 0.0};
  spec.config.centered = centered == 1;
  spec.clip = {static_cast<ClipMode::Type>(clip), clip == 2 ? static_cast<double>(tau) : 0.0};
  spec.sample_rate = static_cast<int>(rate);
  spec.original_length = original_length;
  spec.n_frames = n_frames;
  spec.n_bins = n_bins;
  spec.config.validate();
  spec.clip.validate();
  if (n_bins != bins_for(spec.kind, win)) {
    throw Error(ErrorCode::kInvalidInput,
                "n_bins " + std::to_string(n_bins) + " inconsistent with kind " +
                    std::string(kind_name(spec.kind)) + " and win_length " + std::to_string(win));
  }
  if (original_length > std::numeric_limits<std::uint32_t>::max() * std::uint64_t{hop} ||
      frame_count(original_length, spec.config) != n_frames) {
    throw Error(ErrorCode::kInvalidInput, "n_frames inconsistent with original_length and framing");
  }

  const std::uint64_t expected = std::uint64_t{n_frames} * n_bins * 4;
  const std::uint64_t actual = bytes.size() - kSpecHeaderBytes;
  if (actual < expected) {
    throw Error(ErrorCode::kTruncated,
                "truncated payload: expected " + std::to_string(expected) + " bytes, got " +
                    std::to_string(actual));
  }
  if (actual > expected) {
    throw Error(ErrorCode::kInvalidInput,
                "trailing data: expected " + std::to_string(expected) + " payload bytes, got " +
                    std::to_string(actual));
  }
  spec.data.resize(static_cast<std::size_t>(n_frames) * n_bins);
  const std::uint8_t* payload = p + kSpecHeaderBytes;
  for (std::size_t i = 0; i < spec.data.size(); ++i) spec.data[i] = load<float>(payload + 4 * i);
  spec.validate(/*f32_rounded=*/true);
  return spec;
}

void write_spec(const std::filesystem::path& path, const Spectrogram& spec) {
  write_file_atomic(path, encode_spec(spec));
}

Spectrogram read_spec(const std::filesystem::path& path) { return decode_spec(read_file(path)); }

}  // namespace specinv
