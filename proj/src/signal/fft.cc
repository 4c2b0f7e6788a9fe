// src/signal/fft.cc

// Copyright 2026  The Dysaug Authors

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

#include "dysaug/signal/fft.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

namespace dysaug {
namespace signal {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

bool IsPowerOfTwo(size_t n) { return n != 0 && (n & (n - 1)) == 0; }

void Fft(std::vector<std::complex<double>> *x, bool inverse) {
  const size_t n = x->size();
  if (!IsPowerOfTwo(n))
    throw std::invalid_argument("Fft: length must be a power of two");
  auto &a = *x;

  // Bit-reversal permutation.
  for (size_t i = 1, j = 0; i < n; ++i) {
    size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }

  for (size_t len = 2; len <= n; len <<= 1) {
    const double angle = (inverse ? 2.0 : -2.0) * kPi / static_cast<double>(len);
    const std::complex<double> wlen(std::cos(angle), std::sin(angle));
    for (size_t i = 0; i < n; i += len) {
      std::complex<double> w(1.0, 0.0);
      for (size_t k = 0; k < len / 2; ++k) {
        std::complex<double> u = a[i + k];
        std::complex<double> v = a[i + k + len / 2] * w;
        a[i + k] = u + v;
        a[i + k + len / 2] = u - v;
        w *= wlen;
      }
    }
  }

  if (inverse) {
    for (auto &v : a) v /= static_cast<double>(n);
  }
}

std::vector<double> MagnitudeSpectrum(const std::vector<float> &x,
                                      size_t fft_len) {
  std::vector<std::complex<double>> buf(fft_len, {0.0, 0.0});
  const size_t copy = std::min(x.size(), fft_len);
  for (size_t i = 0; i < copy; ++i) buf[i] = {static_cast<double>(x[i]), 0.0};
  Fft(&buf);
  std::vector<double> mag(fft_len / 2 + 1);
  for (size_t i = 0; i < mag.size(); ++i) mag[i] = std::abs(buf[i]);
  return mag;
}

}  // namespace signal
}  // namespace dysaug
