#pragma once

// Per-frame transforms for the three inversion pipelines.
//
//   dft_real_part / idft_from_real   real part of the two-sided DFT (lossy)
//   dct2 / dct3                      orthonormal DCT-II and its inverse
//   rfft_packed / irfft_packed       real FFT packed into N reals:
//                                    [Y0, ReY1, ImY1, ..., ReY(N/2)]
//
// Only dct2/dct3 and rfft_packed/irfft_packed are exact inverse pairs.
// idft_from_real(dft_real_part(x)) recovers the circular even part
// (x[n] + x[-n mod N]) / 2.

#include <cstddef>
#include <span>
#include <vector>

#include "specinv/fft.hpp"

namespace specinv {

/// Plans and scratch for one frame length. Not thread-safe; give each
/// worker thread its own instance. Output spans may not alias inputs.
class FrameTransformer {
 public:
  explicit FrameTransformer(std::size_t n);

  std::size_t size() const noexcept { return n_; }

  void dft_real_part(std::span<const double> frame, std::span<double> out);
  void idft_from_real(std::span<const double> coeffs, std::span<double> out);
  void dct2(std::span<const double> frame, std::span<double> out);
  void dct3(std::span<const double> coeffs, std::span<double> out);
  void rfft_packed(std::span<const double> frame, std::span<double> out);
  void irfft_packed(std::span<const double> packed, std::span<double> out);
  /// |Y_k| for k = 0..N/2; `out` holds N/2 + 1 values.
  void magnitude(std::span<const double> frame, std::span<double> out);

  /// One-sided spectrum Y_0..Y_{N/2} of a real frame.
  void real_spectrum(std::span<const double> frame, std::span<cplx> out);

 private:
  void inverse_real_spectrum(std::span<const cplx> spectrum, std::span<double> out);
  void check(std::span<const double> in, std::size_t out_size, std::size_t expected_out) const;
  void require_even() const;

  std::size_t n_;
  ComplexFft full_;               // length N, odd-N paths and fallbacks
  std::vector<ComplexFft> half_;  // length N/2 when N is even
  std::vector<cplx> half_twiddle_;  // e^{-2 pi i k / N}, k <= N/2
  std::vector<cplx> dct_twiddle_;   // e^{-i pi k / (2N)}, k < N
  std::vector<cplx> cbuf_;
  std::vector<cplx> spectrum_;
  std::vector<double> rbuf_;
};

std::vector<double> dft_real_part(std::span<const double> frame);
std::vector<double> idft_from_real(std::span<const double> coeffs);
std::vector<double> dct2(std::span<const double> frame);
std::vector<double> dct3(std::span<const double> coeffs);
std::vector<double> rfft_packed(std::span<const double> frame);
std::vector<double> irfft_packed(std::span<const double> packed);

}  // namespace specinv
