// include/tandem/fft.hpp

// Copyright 2026  Tandem Toolkit Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#ifndef TANDEM_FFT_HPP_
#define TANDEM_FFT_HPP_

#include <complex>
#include <vector>

#include "tandem/common.hpp"

namespace tandem {

inline size_t NextPow2(size_t n) {
  size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

/// In-place iterative radix-2 FFT.  Size must be a power of two.
/// The inverse includes the 1/N scale.
inline void Fft(std::vector<std::complex<double>> *data, bool inverse = false) {
  const size_t n = data->size();
  Require(n > 0 && (n & (n - 1)) == 0, "fft: size ", n, " is not a power of 2");
  auto &x = *data;

  for (size_t i = 1, j = 0; i < n; i++) {
    size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(x[i], x[j]);
  }

  for (size_t len = 2; len <= n; len <<= 1) {
    double ang = 2.0 * M_PI / static_cast<double>(len) * (inverse ? 1.0 : -1.0);
    std::complex<double> wlen(std::cos(ang), std::sin(ang));
    for (size_t i = 0; i < n; i += len) {
      std::complex<double> w(1.0, 0.0);
      for (size_t j = 0; j < len / 2; j++) {
        std::complex<double> u = x[i + j];
        std::complex<double> v = x[i + j + len / 2] * w;
        x[i + j] = u + v;
        x[i + j + len / 2] = u - v;
        w *= wlen;
      }
    }
  }

  if (inverse) {
    double s = 1.0 / static_cast<double>(n);
    for (auto &v : x) v *= s;
  }
}

/// Full linear convolution of two real signals, length a+b-1,
/// via zero-padded FFT.
inline std::vector<double> FftConvolve(const std::vector<double> &a,
                                       const std::vector<double> &b) {
  Require(!a.empty() && !b.empty(), "convolve: empty input");
  const size_t out_len = a.size() + b.size() - 1;
  const size_t n = NextPow2(out_len);
  std::vector<std::complex<double>> fa(n), fb(n);
  for (size_t i = 0; i < a.size(); i++) fa[i] = a[i];
  for (size_t i = 0; i < b.size(); i++) fb[i] = b[i];
  Fft(&fa);
  Fft(&fb);
  for (size_t i = 0; i < n; i++) fa[i] *= fb[i];
  Fft(&fa, true);
  std::vector<double> out(out_len);
  for (size_t i = 0; i < out_len; i++) out[i] = fa[i].real();
  return out;
}

}  // namespace tandem

#endif  // TANDEM_FFT_HPP_
