// include/dysaug/signal/mel.h

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

#ifndef DYSAUG_SIGNAL_MEL_H_
#define DYSAUG_SIGNAL_MEL_H_

#include <vector>

#include "dysaug/signal/waveform.h"
#include "dysaug/util/matrix.h"

namespace dysaug {
namespace signal {

DYSAUG_DEFINE_ERROR(InvalidMelConfig);

// Log Mel filter-bank extraction profile. Lengths in samples, frequencies in
// Hz. Defaults give the 40-channel, 25 ms / 10 ms profile at 16 kHz.
struct MelConfig {
  int n_mels = 40;
  int fft_len = 512;      // power of two
  int frame_len = 400;    // 25 ms at 16 kHz
  int frame_hop = 160;    // 10 ms
  double fmin = 20.0;
  double fmax = 7600.0;
  double log_floor = 1e-10;

  void Validate(int sample_rate) const;
};

// C x T log Mel filter-bank matrix. Row-major doubles; frame_hop and
// sample_rate record provenance for downstream duration bookkeeping.
struct Spectrogram {
  std::vector<double> values;  // n_mels * n_frames, row-major
  int n_mels = 0;
  int n_frames = 0;
  int frame_hop = 0;
  int sample_rate = 0;

  double &At(int c, int t) {
    return values[static_cast<size_t>(c) * n_frames + t];
  }
  double At(int c, int t) const {
    return values[static_cast<size_t>(c) * n_frames + t];
  }

  util::Matrix ToMatrix() const;
  static Spectrogram FromMatrix(const util::Matrix &m, int frame_hop = 0,
                                int sample_rate = 0);
};

// Per-frame processing: Hann window, zero-pad to fft_len, power spectrum,
// triangular Mel weighting, then log(max(energy, log_floor)). Frame count is
// 1 + floor((len - frame_len) / frame_hop).
Spectrogram MelFbank(const Waveform &wave, const MelConfig &cfg);

// Center frequencies (Hz) of the cfg.n_mels triangular filters.
std::vector<double> MelFilterCenters(const MelConfig &cfg);

// Triangular filter weights, n_mels x (fft_len/2 + 1).
util::Matrix MelFilterWeights(const MelConfig &cfg, int sample_rate);

}  // namespace signal
}  // namespace dysaug

#endif  // DYSAUG_SIGNAL_MEL_H_
