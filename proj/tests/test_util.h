// tests/test_util.h

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

#ifndef DYSAUG_TESTS_TEST_UTIL_H_
#define DYSAUG_TESTS_TEST_UTIL_H_

#include <cmath>
#include <cstdlib>
#include <string>
#include <vector>

#include "dysaug/signal/fft.h"
#include "dysaug/signal/mel.h"
#include "dysaug/signal/waveform.h"
#include "dysaug/util/matrix.h"
#include "dysaug/util/rng.h"

namespace dysaug {
namespace testing {

inline signal::Waveform Sine(double freq_hz, double seconds, int sample_rate,
                             double amplitude = 0.5) {
  signal::Waveform w;
  w.sample_rate = sample_rate;
  const long n = std::lround(seconds * sample_rate);
  w.samples.resize(static_cast<size_t>(n));
  for (long i = 0; i < n; ++i)
    w.samples[static_cast<size_t>(i)] = static_cast<float>(
        amplitude * std::sin(2.0 * 3.14159265358979323846 * freq_hz * i /
                             sample_rate));
  return w;
}

inline signal::Waveform RandomWave(util::Rng *rng, double seconds,
                                   int sample_rate, double amplitude = 0.3) {
  signal::Waveform w;
  w.sample_rate = sample_rate;
  const long n = std::lround(seconds * sample_rate);
  w.samples.resize(static_cast<size_t>(n));
  // Sum of a few random sinusoids: smooth enough to behave under
  // overlap-add yet aperiodic across trials.
  const int parts = 4;
  std::vector<double> freqs(parts), phases(parts);
  for (int p = 0; p < parts; ++p) {
    freqs[p] = 80.0 + rng->Uniform() * 3000.0;
    phases[p] = rng->Uniform() * 6.28318530717958647692;
  }
  for (long i = 0; i < n; ++i) {
    double v = 0.0;
    for (int p = 0; p < parts; ++p)
      v += std::sin(2.0 * 3.14159265358979323846 * freqs[p] * i / sample_rate +
                    phases[p]);
    w.samples[static_cast<size_t>(i)] =
        static_cast<float>(amplitude * v / parts);
  }
  return w;
}

// Dominant frequency via FFT peak over the magnitude spectrum.
inline double DominantFrequencyHz(const signal::Waveform &w, size_t fft_len) {
  auto mag = signal::MagnitudeSpectrum(w.samples, fft_len);
  size_t best = 1;  // skip DC
  for (size_t i = 1; i < mag.size(); ++i)
    if (mag[i] > mag[best]) best = i;
  return static_cast<double>(best) * w.sample_rate /
         static_cast<double>(fft_len);
}

inline double FftBinHz(int sample_rate, size_t fft_len) {
  return static_cast<double>(sample_rate) / static_cast<double>(fft_len);
}

inline util::Matrix RandomMatrix(util::Rng *rng, int rows, int cols,
                                 double scale = 1.0) {
  util::Matrix m(rows, cols);
  for (double &v : m.Data()) v = scale * (rng->Uniform() * 2.0 - 1.0);
  return m;
}

inline signal::Spectrogram RandomSpectrogram(util::Rng *rng, int c, int t) {
  signal::Spectrogram s;
  s.n_mels = c;
  s.n_frames = t;
  s.values.resize(static_cast<size_t>(c) * t);
  for (double &v : s.values) v = rng->Uniform() * 8.0 - 4.0;
  return s;
}

// Unique-ish scratch path under the build tree.
inline std::string TempPath(const std::string &stem) {
  static int counter = 0;
  return stem + "." + std::to_string(++counter) + ".tmp";
}

}  // namespace testing
}  // namespace dysaug

#endif  // DYSAUG_TESTS_TEST_UTIL_H_
