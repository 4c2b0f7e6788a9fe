// src/signal/mel.cc

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

#include "dysaug/signal/mel.h"

#include <algorithm>
#include <cmath>
#include <complex>

#include "dysaug/signal/fft.h"

namespace dysaug {
namespace signal {

namespace {

constexpr double kPi = 3.14159265358979323846;

double HzToMel(double hz) { return 2595.0 * std::log10(1.0 + hz / 700.0); }
double MelToHz(double mel) {
  return 700.0 * (std::pow(10.0, mel / 2595.0) - 1.0);
}

}  // namespace

void MelConfig::Validate(int sample_rate) const {
  if (sample_rate <= 0) throw InvalidMelConfig("sample rate must be positive");
  if (n_mels < 1) throw InvalidMelConfig("n_mels must be >= 1");
  if (!(fmin < fmax && fmax <= sample_rate / 2.0))
    throw InvalidMelConfig("require fmin < fmax <= sample_rate/2");
  if (fmin < 0.0) throw InvalidMelConfig("fmin must be nonnegative");
  if (!(frame_hop >= 1 && frame_hop <= frame_len && frame_len <= fft_len))
    throw InvalidMelConfig("require 1 <= frame_hop <= frame_len <= fft_len");
  if (!IsPowerOfTwo(static_cast<size_t>(fft_len)))
    throw InvalidMelConfig("fft_len must be a power of two");
  if (!(log_floor > 0.0)) throw InvalidMelConfig("log_floor must be positive");
}

util::Matrix Spectrogram::ToMatrix() const {
  util::Matrix m(n_mels, n_frames);
  m.Data() = values;
  return m;
}

Spectrogram Spectrogram::FromMatrix(const util::Matrix &m, int frame_hop,
                                    int sample_rate) {
  Spectrogram s;
  s.n_mels = m.Rows();
  s.n_frames = m.Cols();
  s.values = m.Data();
  s.frame_hop = frame_hop;
  s.sample_rate = sample_rate;
  return s;
}

std::vector<double> MelFilterCenters(const MelConfig &cfg) {
  const double mel_lo = HzToMel(cfg.fmin);
  const double mel_hi = HzToMel(cfg.fmax);
  std::vector<double> centers(cfg.n_mels);
  // n_mels triangles need n_mels + 2 breakpoints between fmin and fmax.
  for (int i = 0; i < cfg.n_mels; ++i) {
    double mel = mel_lo + (mel_hi - mel_lo) * (i + 1) / (cfg.n_mels + 1);
    centers[i] = MelToHz(mel);
  }
  return centers;
}

util::Matrix MelFilterWeights(const MelConfig &cfg, int sample_rate) {
  cfg.Validate(sample_rate);
  const int n_bins = cfg.fft_len / 2 + 1;
  const double mel_lo = HzToMel(cfg.fmin);
  const double mel_hi = HzToMel(cfg.fmax);
  std::vector<double> edges(cfg.n_mels + 2);
  for (int i = 0; i < cfg.n_mels + 2; ++i)
    edges[i] = MelToHz(mel_lo + (mel_hi - mel_lo) * i / (cfg.n_mels + 1));

  util::Matrix weights(cfg.n_mels, n_bins);
  for (int m = 0; m < cfg.n_mels; ++m) {
    const double left = edges[m], center = edges[m + 1], right = edges[m + 2];
    for (int b = 0; b < n_bins; ++b) {
      const double hz = static_cast<double>(b) * sample_rate / cfg.fft_len;
      double w = 0.0;
      if (hz > left && hz < center)
        w = (hz - left) / (center - left);
      else if (hz == center)
        w = 1.0;
      else if (hz > center && hz < right)
        w = (right - hz) / (right - center);
      weights(m, b) = w;
    }
  }
  return weights;
}

Spectrogram MelFbank(const Waveform &wave, const MelConfig &cfg) {
  cfg.Validate(wave.sample_rate);
  const long len = static_cast<long>(wave.NumSamples());
  if (len < cfg.frame_len)
    throw WaveTooShort("MelFbank: wave shorter than one frame");

  const int n_frames = 1 + static_cast<int>((len - cfg.frame_len) / cfg.frame_hop);
  const util::Matrix weights = MelFilterWeights(cfg, wave.sample_rate);
  const int n_bins = cfg.fft_len / 2 + 1;

  std::vector<double> window(cfg.frame_len);
  for (int i = 0; i < cfg.frame_len; ++i)
    window[i] = 0.5 - 0.5 * std::cos(2.0 * kPi * i / cfg.frame_len);

  Spectrogram out;
  out.n_mels = cfg.n_mels;
  out.n_frames = n_frames;
  out.frame_hop = cfg.frame_hop;
  out.sample_rate = wave.sample_rate;
  out.values.assign(static_cast<size_t>(cfg.n_mels) * n_frames, 0.0);

  std::vector<std::complex<double>> buf;
  std::vector<double> power(n_bins);
  for (int t = 0; t < n_frames; ++t) {
    const long start = static_cast<long>(t) * cfg.frame_hop;
    buf.assign(static_cast<size_t>(cfg.fft_len), {0.0, 0.0});
    for (int i = 0; i < cfg.frame_len; ++i)
      buf[i] = {window[i] * static_cast<double>(wave.samples[start + i]), 0.0};
    Fft(&buf);
    for (int b = 0; b < n_bins; ++b) power[b] = std::norm(buf[b]);

    for (int m = 0; m < cfg.n_mels; ++m) {
      double energy = 0.0;
      for (int b = 0; b < n_bins; ++b) energy += weights(m, b) * power[b];
      out.At(m, t) = std::log(std::max(energy, cfg.log_floor));
    }
  }
  return out;
}

}  // namespace signal
}  // namespace dysaug
