#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace specinv {

using cplx = std::complex<double>;

/// In-place complex DFT of a fixed length. Powers of two use an iterative
/// radix-2 kernel; other lengths go through Bluestein's chirp-z convolution.
/// Holds scratch buffers, so use one instance per thread.
class ComplexFft {
 public:
  explicit ComplexFft(std::size_t n);

  std::size_t size() const noexcept { return n_; }

  /// X_k = sum_n x_n e^{-2 pi i k n / N}
  void forward(std::span<cplx> data);
  /// Unnormalized: x_n = sum_k X_k e^{+2 pi i k n / N}
  void inverse(std::span<cplx> data);

 private:
  void radix2(std::span<cplx> data) const;
  void bluestein(std::span<cplx> data);

  std::size_t n_;
  bool pow2_;
  std::vector<std::size_t> bitrev_;
  std::vector<cplx> twiddle_;  // e^{-2 pi i k / N}, k < N/2

  // Bluestein state
  std::vector<cplx> chirp_;       // e^{-i pi k^2 / N}
  std::vector<cplx> chirp_fft_;   // FFT of the conjugate chirp kernel
  std::vector<cplx> work_;
  std::vector<ComplexFft> sub_;   // power-of-two convolution length
};

bool is_power_of_two(std::size_t n) noexcept;

}  // namespace specinv
