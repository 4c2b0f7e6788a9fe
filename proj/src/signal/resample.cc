// src/signal/resample.cc

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

#include "dysaug/signal/resample.h"

#include <cmath>

namespace dysaug {
namespace signal {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Modified Bessel function of the first kind, order zero (power series).
double BesselI0(double x) {
  double sum = 1.0, term = 1.0;
  const double half_x = x / 2.0;
  for (int k = 1; k < 64; ++k) {
    term *= (half_x / k) * (half_x / k);
    sum += term;
    if (term < 1e-16 * sum) break;
  }
  return sum;
}

double Sinc(double x) {
  if (std::fabs(x) < 1e-12) return 1.0;
  return std::sin(kPi * x) / (kPi * x);
}

}  // namespace

Waveform SpeedPerturb(const Waveform &wave, double alpha,
                      const ResampleConfig &cfg) {
  CheckPerturbFactor(alpha);
  if (wave.samples.empty())
    throw WaveTooShort("SpeedPerturb: empty wave");
  if (alpha == 1.0) return wave;  // exact identity

  const long in_len = static_cast<long>(wave.samples.size());
  const long out_len = std::lround(static_cast<double>(in_len) / alpha);
  const int half = cfg.num_taps / 2;

  // Anti-aliasing cutoff: when alpha > 1 frequencies scale up, so the
  // pre-image band must be limited to Nyquist / alpha.
  const double cutoff = alpha > 1.0 ? 1.0 / alpha : 1.0;  // x Nyquist
  const double i0_beta = BesselI0(cfg.kaiser_beta);

  Waveform out;
  out.sample_rate = wave.sample_rate;
  out.samples.resize(static_cast<size_t>(out_len));

  for (long n = 0; n < out_len; ++n) {
    const double t = static_cast<double>(n) * alpha;  // input-sample position
    const long k0 = static_cast<long>(std::floor(t)) - half + 1;
    double acc = 0.0;
    for (long k = k0; k < k0 + cfg.num_taps; ++k) {
      if (k < 0 || k >= in_len) continue;
      const double u = t - static_cast<double>(k);
      const double frac = u / half;  // in (-1, 1] over the kernel support
      if (frac <= -1.0 || frac >= 1.0) continue;
      const double kaiser =
          BesselI0(cfg.kaiser_beta * std::sqrt(1.0 - frac * frac)) / i0_beta;
      acc += static_cast<double>(wave.samples[static_cast<size_t>(k)]) *
             cutoff * Sinc(cutoff * u) * kaiser;
    }
    out.samples[static_cast<size_t>(n)] = static_cast<float>(acc);
  }
  return out;
}

Waveform SpeedPerturb(const Waveform &wave, double alpha) {
  return SpeedPerturb(wave, alpha, ResampleConfig{});
}

}  // namespace signal
}  // namespace dysaug
