#include "specinv/fft.hpp"

#include <cmath>
#include <numbers>
#include <utility>

#include "specinv/error.hpp"

namespace specinv {

bool is_power_of_two(std::size_t n) noexcept { return n != 0 && (n & (n - 1)) == 0; }

namespace {

// e^{-2 pi i num / den}, with the angle reduced exactly in integers first.
cplx unit_root(std::size_t num, std::size_t den) {
  const double angle = -2.0 * std::numbers::pi *
                       static_cast<double>(num % den) / static_cast<double>(den);
  return {std::cos(angle), std::sin(angle)};
}

}  // namespace

ComplexFft::ComplexFft(std::size_t n) : n_(n), pow2_(is_power_of_two(n)) {
  if (n == 0) throw Error(ErrorCode::kInvalidConfig, "FFT length must be positive");
  if (pow2_) {
    std::size_t bits = 0;
    while ((std::size_t{1} << bits) < n) ++bits;
    bitrev_.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      std::size_t r = 0;
      for (std::size_t b = 0; b < bits; ++b) r |= ((i >> b) & 1u) << (bits - 1 - b);
      bitrev_[i] = r;
    }
    twiddle_.resize(n / 2);
    for (std::size_t k = 0; k < n / 2; ++k) twiddle_[k] = unit_root(k, n);
    return;
  }

  // Bluestein: X_k = c_k * sum_n (x_n c_n) conj(c_{k-n}), c_k = e^{-i pi k^2/N}.
  std::size_t m = 1;
  while (m < 2 * n - 1) m <<= 1;
  chirp_.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    // k^2 mod 2N keeps the angle argument small and exact.
    const std::size_t k2 = (k * k) % (2 * n);
    chirp_[k] = unit_root(k2, 2 * n);
  }
  sub_.emplace_back(m);
  chirp_fft_.assign(m, cplx{});
  chirp_fft_[0] = std::conj(chirp_[0]);
  for (std::size_t k = 1; k < n; ++k) {
    chirp_fft_[k] = std::conj(chirp_[k]);
    chirp_fft_[m - k] = std::conj(chirp_[k]);
  }
  sub_[0].forward(chirp_fft_);
  work_.resize(m);
}

void ComplexFft::forward(std::span<cplx> data) {
  if (data.size() != n_) {
    throw Error(ErrorCode::kInvalidInput, "FFT input length mismatch");
  }
  if (pow2_) {
    radix2(data);
  } else {
    bluestein(data);
  }
}

void ComplexFft::inverse(std::span<cplx> data) {
  for (auto& v : data) v = std::conj(v);
  forward(data);
  for (auto& v : data) v = std::conj(v);
}

void ComplexFft::radix2(std::span<cplx> data) const {
  const std::size_t n = n_;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = bitrev_[i];
    if (i < j) std::swap(data[i], data[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const std::size_t half = len / 2;
    const std::size_t stride = n / len;
    for (std::size_t start = 0; start < n; start += len) {
      cplx* a = data.data() + start;
      cplx* b = a + half;
      for (std::size_t k = 0; k < half; ++k) {
        const cplx t = twiddle_[k * stride] * b[k];
        b[k] = a[k] - t;
        a[k] += t;
      }
    }
  }
}

void ComplexFft::bluestein(std::span<cplx> data) {
  const std::size_t m = work_.size();
  std::fill(work_.begin(), work_.end(), cplx{});
  for (std::size_t k = 0; k < n_; ++k) work_[k] = data[k] * chirp_[k];
  sub_[0].forward(work_);
  for (std::size_t k = 0; k < m; ++k) work_[k] *= chirp_fft_[k];
  sub_[0].inverse(work_);
  const double scale = 1.0 / static_cast<double>(m);
  for (std::size_t k = 0; k < n_; ++k) data[k] = work_[k] * chirp_[k] * scale;
}

}  // namespace specinv
