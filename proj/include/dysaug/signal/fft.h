// include/dysaug/signal/fft.h

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

#ifndef DYSAUG_SIGNAL_FFT_H_
#define DYSAUG_SIGNAL_FFT_H_

#include <complex>
#include <vector>

namespace dysaug {
namespace signal {

bool IsPowerOfTwo(size_t n);

// In-place iterative radix-2 FFT; x->size() must be a power of two.
void Fft(std::vector<std::complex<double>> *x, bool inverse = false);

// Magnitude spectrum of a real signal zero-padded to fft_len (power of two).
// Returns fft_len/2 + 1 bins.
std::vector<double> MagnitudeSpectrum(const std::vector<float> &x,
                                      size_t fft_len);

}  // namespace signal
}  // namespace dysaug

#endif  // DYSAUG_SIGNAL_FFT_H_
