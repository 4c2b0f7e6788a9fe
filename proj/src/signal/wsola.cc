// src/signal/wsola.cc

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

#include "dysaug/signal/wsola.h"

#include <cmath>
#include <vector>

namespace dysaug {
namespace signal {

namespace {

constexpr double kPi = 3.14159265358979323846;

std::vector<double> MakeWindow(WindowKind kind, int len) {
  std::vector<double> w(len);
  switch (kind) {
    case WindowKind::kHann:
      for (int i = 0; i < len; ++i)
        w[i] = 0.5 - 0.5 * std::cos(2.0 * kPi * i / len);
      break;
  }
  return w;
}

// Reads the padded input: zero outside [0, n).
inline double SampleAt(const std::vector<float> &x, long idx) {
  if (idx < 0 || idx >= static_cast<long>(x.size())) return 0.0;
  return static_cast<double>(x[static_cast<size_t>(idx)]);
}

// Normalized cross-correlation between x[a .. a+len) and x[b .. b+len).
double Correlation(const std::vector<float> &x, long a, long b, int len) {
  double dot = 0.0, ea = 0.0, eb = 0.0;
  for (int i = 0; i < len; ++i) {
    double va = SampleAt(x, a + i);
    double vb = SampleAt(x, b + i);
    dot += va * vb;
    ea += va * va;
    eb += vb * vb;
  }
  double denom = std::sqrt(ea * eb);
  if (denom <= 1e-20) return 0.0;
  return dot / denom;
}

}  // namespace

void CheckPerturbFactor(double alpha) {
  if (!(alpha >= kMinPerturbFactor && alpha <= kMaxPerturbFactor))
    throw AlphaOutOfRange("perturbation factor " + std::to_string(alpha) +
                          " outside [0.25, 4.0]");
}

WsolaConfig WsolaConfig::ForSampleRate(int sample_rate) {
  WsolaConfig cfg;
  cfg.frame_len = static_cast<int>(0.032 * sample_rate);
  cfg.analysis_hop = static_cast<int>(0.008 * sample_rate);
  cfg.delta_max = static_cast<int>(0.0079 * sample_rate);
  return cfg;
}

void WsolaConfig::Validate() const {
  if (analysis_hop <= 0 || analysis_hop > frame_len)
    throw Error("WsolaConfig: require 0 < analysis_hop <= frame_len");
  if (delta_max < 0 || delta_max >= analysis_hop)
    throw Error("WsolaConfig: require 0 <= delta_max < analysis_hop");
}

Waveform TempoPerturb(const Waveform &wave, double alpha,
                      const WsolaConfig &cfg) {
  CheckPerturbFactor(alpha);
  cfg.Validate();
  if (static_cast<long>(wave.NumSamples()) <= cfg.frame_len)
    throw WaveTooShort("TempoPerturb: wave shorter than one frame");

  const std::vector<float> &x = wave.samples;
  const int frame = cfg.frame_len;
  const int hop_a = cfg.analysis_hop;
  const double hop_s = alpha * hop_a;  // synthesis hopsize
  const std::vector<double> win = MakeWindow(cfg.window, frame);

  const long in_len = static_cast<long>(x.size());
  const long out_len = std::lround(alpha * static_cast<double>(in_len));

  // Enough frames to cover the output, plus one frame of zero-padded slack
  // at the tail.
  const long num_frames =
      (in_len + frame) / hop_a + 2;

  std::vector<double> acc(static_cast<size_t>(out_len) + 2 * frame, 0.0);
  std::vector<double> wsum(acc.size(), 0.0);

  long prev_start = 0;  // adjusted start of the previous analysis block
  for (long m = 0; m < num_frames; ++m) {
    const long nominal = m * hop_a;
    long start;
    if (m == 0) {
      start = 0;
    } else {
      // The natural continuation of block m-1 under the synthesis hop.
      const long target = prev_start + std::lround(hop_s);
      long best_delta = 0;
      double best_corr = Correlation(x, nominal, target, frame);
      for (int mag = 1; mag <= cfg.delta_max; ++mag) {
        for (int sign = -1; sign <= 1; sign += 2) {
          const int delta = sign * mag;
          double c = Correlation(x, nominal + delta, target, frame);
          if (c > best_corr) {
            best_corr = c;
            best_delta = delta;
          }
        }
      }
      start = nominal + best_delta;
    }
    prev_start = start;

    const long out_pos = std::lround(static_cast<double>(m) * hop_s);
    if (out_pos >= static_cast<long>(acc.size())) break;
    for (int i = 0; i < frame; ++i) {
      const long o = out_pos + i;
      if (o >= static_cast<long>(acc.size())) break;
      acc[static_cast<size_t>(o)] += win[i] * SampleAt(x, start + i);
      wsum[static_cast<size_t>(o)] += win[i];
    }
  }

  Waveform out;
  out.sample_rate = wave.sample_rate;
  out.samples.resize(static_cast<size_t>(out_len));
  for (long i = 0; i < out_len; ++i) {
    double w = wsum[static_cast<size_t>(i)];
    out.samples[static_cast<size_t>(i)] =
        w > 1e-8 ? static_cast<float>(acc[static_cast<size_t>(i)] / w) : 0.0f;
  }
  return out;
}

Waveform TempoPerturb(const Waveform &wave, double alpha) {
  return TempoPerturb(wave, alpha, WsolaConfig::ForSampleRate(wave.sample_rate));
}

}  // namespace signal
}  // namespace dysaug
