#include "specinv/transforms.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "specinv/error.hpp"

namespace specinv {

namespace {

cplx polar_angle(double angle) { return {std::cos(angle), std::sin(angle)}; }

}  // namespace

FrameTransformer::FrameTransformer(std::size_t n) : n_(n), full_(n < 2 ? 1 : n) {
  if (n < 2) {
    throw Error(ErrorCode::kInvalidConfig,
                "frame length must be >= 2, got " + std::to_string(n));
  }
  if (n % 2 == 0) {
    half_.emplace_back(n / 2);
    half_twiddle_.resize(n / 2 + 1);
    for (std::size_t k = 0; k <= n / 2; ++k) {
      half_twiddle_[k] = polar_angle(-2.0 * std::numbers::pi * k / static_cast<double>(n));
    }
  }
  dct_twiddle_.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    dct_twiddle_[k] = polar_angle(-std::numbers::pi * k / (2.0 * n));
  }
  cbuf_.resize(n);
  spectrum_.resize(n / 2 + 1);
  rbuf_.resize(n);
}

void FrameTransformer::check(std::span<const double> in, std::size_t out_size,
                             std::size_t expected_out) const {
  if (in.size() != n_ || out_size != expected_out) {
    throw Error(ErrorCode::kInvalidInput,
                "frame length mismatch: transformer is " + std::to_string(n_) +
                    ", got input " + std::to_string(in.size()) + " and output " +
                    std::to_string(out_size));
  }
}

void FrameTransformer::require_even() const {
  if (n_ % 2 != 0) {
    throw Error(ErrorCode::kInvalidConfig,
                "packed real FFT requires an even frame length, got " + std::to_string(n_));
  }
}

void FrameTransformer::real_spectrum(std::span<const double> frame, std::span<cplx> out) {
  const std::size_t n = n_;
  if (n % 2 != 0) {
    for (std::size_t i = 0; i < n; ++i) cbuf_[i] = frame[i];
    full_.forward(cbuf_);
    for (std::size_t k = 0; k <= n / 2; ++k) out[k] = cbuf_[k];
    return;
  }
  // Pack even/odd samples into one half-length complex FFT, then split.
  const std::size_t m = n / 2;
  std::span<cplx> z(cbuf_.data(), m);
  for (std::size_t i = 0; i < m; ++i) z[i] = {frame[2 * i], frame[2 * i + 1]};
  half_[0].forward(z);
  const cplx z0 = z[0];
  out[0] = {z0.real() + z0.imag(), 0.0};
  out[m] = {z0.real() - z0.imag(), 0.0};
  for (std::size_t k = 1; k < m; ++k) {
    const cplx a = z[k];
    const cplx b = std::conj(z[m - k]);
    const cplx even = 0.5 * (a + b);
    const cplx odd = cplx{0.0, -0.5} * (a - b);
    out[k] = even + half_twiddle_[k] * odd;
  }
}

void FrameTransformer::inverse_real_spectrum(std::span<const cplx> spectrum,
                                             std::span<double> out) {
  const std::size_t n = n_;
  if (n % 2 != 0) {
    cbuf_[0] = spectrum[0];
    for (std::size_t k = 1; k <= n / 2; ++k) {
      cbuf_[k] = spectrum[k];
      cbuf_[n - k] = std::conj(spectrum[k]);
    }
    full_.inverse(cbuf_);
    const double scale = 1.0 / static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = cbuf_[i].real() * scale;
    return;
  }
  const std::size_t m = n / 2;
  std::span<cplx> z(cbuf_.data(), m);
  for (std::size_t k = 0; k < m; ++k) {
    const cplx a = spectrum[k];
    const cplx b = std::conj(spectrum[m - k]);
    const cplx even = 0.5 * (a + b);
    const cplx odd = 0.5 * (a - b) * std::conj(half_twiddle_[k]);
    z[k] = even + cplx{0.0, 1.0} * odd;
  }
  half_[0].inverse(z);
  const double scale = 1.0 / static_cast<double>(m);
  for (std::size_t i = 0; i < m; ++i) {
    out[2 * i] = z[i].real() * scale;
    out[2 * i + 1] = z[i].imag() * scale;
  }
}

void FrameTransformer::dft_real_part(std::span<const double> frame, std::span<double> out) {
  check(frame, out.size(), n_);
  real_spectrum(frame, spectrum_);
  const std::size_t n = n_;
  for (std::size_t k = 0; k <= n / 2; ++k) {
    out[k] = spectrum_[k].real();
    if (k != 0) out[n - k] = spectrum_[k].real();
  }
}

void FrameTransformer::idft_from_real(std::span<const double> coeffs, std::span<double> out) {
  // Re of (1/N) sum_k c_k e^{+2 pi i k n / N} equals (1/N) Re DFT(c)[n].
  dft_real_part(coeffs, out);
  const double scale = 1.0 / static_cast<double>(n_);
  for (auto& v : out) v *= scale;
}

void FrameTransformer::dct2(std::span<const double> frame, std::span<double> out) {
  check(frame, out.size(), n_);
  // Makhoul reordering: v = [x0, x2, x4, ..., x5, x3, x1].
  const std::size_t n = n_;
  for (std::size_t i = 0; 2 * i < n; ++i) rbuf_[i] = frame[2 * i];
  for (std::size_t i = 0; 2 * i + 1 < n; ++i) rbuf_[n - 1 - i] = frame[2 * i + 1];
  real_spectrum(rbuf_, spectrum_);
  const double s0 = std::sqrt(1.0 / static_cast<double>(n));
  const double s1 = std::sqrt(2.0 / static_cast<double>(n));
  for (std::size_t k = 0; k < n; ++k) {
    const cplx v = k <= n / 2 ? spectrum_[k] : std::conj(spectrum_[n - k]);
    out[k] = (dct_twiddle_[k] * v).real() * (k == 0 ? s0 : s1);
  }
}

void FrameTransformer::dct3(std::span<const double> coeffs, std::span<double> out) {
  check(coeffs, out.size(), n_);
  const std::size_t n = n_;
  const double inv_s0 = std::sqrt(static_cast<double>(n));
  const double inv_s1 = std::sqrt(static_cast<double>(n) / 2.0);
  auto unscaled = [&](std::size_t k) {
    if (k >= n) return 0.0;
    return coeffs[k] * (k == 0 ? inv_s0 : inv_s1);
  };
  // V_k = e^{+i pi k / 2N} (X_k - i X_{N-k}), with X_N = 0.
  for (std::size_t k = 0; k <= n / 2; ++k) {
    const cplx w{unscaled(k), -unscaled(k == 0 ? n : n - k)};
    spectrum_[k] = std::conj(dct_twiddle_[k]) * w;
  }
  inverse_real_spectrum(spectrum_, rbuf_);
  for (std::size_t i = 0; 2 * i < n; ++i) out[2 * i] = rbuf_[i];
  for (std::size_t i = 0; 2 * i + 1 < n; ++i) out[2 * i + 1] = rbuf_[n - 1 - i];
}

void FrameTransformer::rfft_packed(std::span<const double> frame, std::span<double> out) {
  require_even();
  check(frame, out.size(), n_);
  real_spectrum(frame, spectrum_);
  const std::size_t m = n_ / 2;
  out[0] = spectrum_[0].real();
  for (std::size_t k = 1; k < m; ++k) {
    out[2 * k - 1] = spectrum_[k].real();
    out[2 * k] = spectrum_[k].imag();
  }
  out[n_ - 1] = spectrum_[m].real();
}

void FrameTransformer::irfft_packed(std::span<const double> packed, std::span<double> out) {
  require_even();
  check(packed, out.size(), n_);
  const std::size_t m = n_ / 2;
  spectrum_[0] = {packed[0], 0.0};
  for (std::size_t k = 1; k < m; ++k) spectrum_[k] = {packed[2 * k - 1], packed[2 * k]};
  spectrum_[m] = {packed[n_ - 1], 0.0};
  inverse_real_spectrum(spectrum_, out);
}

void FrameTransformer::magnitude(std::span<const double> frame, std::span<double> out) {
  check(frame, out.size(), n_ / 2 + 1);
  real_spectrum(frame, spectrum_);
  for (std::size_t k = 0; k <= n_ / 2; ++k) out[k] = std::abs(spectrum_[k]);
}

namespace {

template <typename Method>
std::vector<double> apply_once(std::span<const double> in, Method method) {
  FrameTransformer t(in.size());
  std::vector<double> out(in.size());
  (t.*method)(in, out);
  return out;
}

}  // namespace

std::vector<double> dft_real_part(std::span<const double> frame) {
  return apply_once(frame, &FrameTransformer::dft_real_part);
}
std::vector<double> idft_from_real(std::span<const double> coeffs) {
  return apply_once(coeffs, &FrameTransformer::idft_from_real);
}
std::vector<double> dct2(std::span<const double> frame) {
  return apply_once(frame, &FrameTransformer::dct2);
}
std::vector<double> dct3(std::span<const double> coeffs) {
  return apply_once(coeffs, &FrameTransformer::dct3);
}
std::vector<double> rfft_packed(std::span<const double> frame) {
  if (frame.size() % 2 != 0) {
    throw Error(ErrorCode::kInvalidConfig,
                "packed real FFT requires an even frame length, got " +
                    std::to_string(frame.size()));
  }
  return apply_once(frame, &FrameTransformer::rfft_packed);
}
std::vector<double> irfft_packed(std::span<const double> packed) {
  if (packed.size() % 2 != 0) {
    throw Error(ErrorCode::kInvalidConfig,
                "packed real FFT requires an even frame length, got " +
                    std::to_string(packed.size()));
  }
  return apply_once(packed, &FrameTransformer::irfft_packed);
}

}  // namespace specinv
