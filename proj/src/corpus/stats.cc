// src/corpus/stats.cc

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

#include "dysaug/corpus/stats.h"

#include <algorithm>
#include <cmath>

namespace dysaug {
namespace corpus {

namespace {
constexpr double kStdFloor = 1e-8;
}

SpeakerStats ComputeSpeakerStats(
    const std::vector<const signal::Spectrogram *> &specs) {
  if (specs.empty()) throw EmptyInput("ComputeSpeakerStats: no spectrograms");
  const int c = specs[0]->n_mels;
  std::vector<double> sum(c, 0.0), sumsq(c, 0.0);
  long frames = 0;
  for (const signal::Spectrogram *s : specs) {
    if (s->n_mels != c)
      throw ChannelMismatch("ComputeSpeakerStats: channel counts differ");
    for (int ch = 0; ch < c; ++ch)
      for (int t = 0; t < s->n_frames; ++t) {
        const double v = s->At(ch, t);
        sum[ch] += v;
        sumsq[ch] += v * v;
      }
    frames += s->n_frames;
  }
  if (frames == 0) throw EmptyInput("ComputeSpeakerStats: no frames");

  SpeakerStats stats;
  stats.mean.resize(c);
  stats.std.resize(c);
  for (int ch = 0; ch < c; ++ch) {
    const double mean = sum[ch] / static_cast<double>(frames);
    const double var =
        std::max(0.0, sumsq[ch] / static_cast<double>(frames) - mean * mean);
    stats.mean[ch] = mean;
    stats.std[ch] = std::max(std::sqrt(var), kStdFloor);
  }
  return stats;
}

SpeakerStats ComputeSpeakerStats(
    const std::vector<signal::Spectrogram> &specs) {
  std::vector<const signal::Spectrogram *> ptrs;
  ptrs.reserve(specs.size());
  for (const auto &s : specs) ptrs.push_back(&s);
  return ComputeSpeakerStats(ptrs);
}

signal::Spectrogram Normalize(const signal::Spectrogram &spec,
                              const SpeakerStats &stats) {
  if (static_cast<size_t>(spec.n_mels) != stats.mean.size())
    throw ChannelMismatch("Normalize: stats channel count differs");
  signal::Spectrogram out = spec;
  for (int c = 0; c < spec.n_mels; ++c)
    for (int t = 0; t < spec.n_frames; ++t)
      out.At(c, t) = (spec.At(c, t) - stats.mean[c]) / stats.std[c];
  return out;
}

signal::Spectrogram Denormalize(const signal::Spectrogram &spec,
                                const SpeakerStats &stats) {
  if (static_cast<size_t>(spec.n_mels) != stats.mean.size())
    throw ChannelMismatch("Denormalize: stats channel count differs");
  signal::Spectrogram out = spec;
  for (int c = 0; c < spec.n_mels; ++c)
    for (int t = 0; t < spec.n_frames; ++t)
      out.At(c, t) = spec.At(c, t) * stats.std[c] + stats.mean[c];
  return out;
}

}  // namespace corpus
}  // namespace dysaug
