// include/dysaug/signal/wsola.h

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

#ifndef DYSAUG_SIGNAL_WSOLA_H_
#define DYSAUG_SIGNAL_WSOLA_H_

#include "dysaug/signal/waveform.h"

namespace dysaug {
namespace signal {

enum class WindowKind { kHann };

// Analysis parameters for waveform-similarity overlap-add time stretching.
// All lengths are in samples. Invariants: 0 < analysis_hop <= frame_len and
// 0 <= delta_max < analysis_hop.
struct WsolaConfig {
  int frame_len = 512;
  int analysis_hop = 128;
  int delta_max = 126;
  WindowKind window = WindowKind::kHann;

  // Default operating point: 32 ms frames, 8 ms hop, 7.9 ms search radius.
  static WsolaConfig ForSampleRate(int sample_rate);
  void Validate() const;
};

// Stretches the duration of `wave` by `alpha` while preserving pitch and
// spectral envelope. Output length is round(alpha * input length).
//
// Analysis blocks spaced analysis_hop apart are re-placed at synthesis hop
// alpha * analysis_hop; each block start is adjusted by the integer shift in
// [-delta_max, delta_max] that maximizes normalized cross-correlation with
// the natural continuation of the previous synthesis block (ties broken
// toward the smallest |shift|). Blocks are Hann-windowed and overlap-added
// with accumulated-window normalization.
Waveform TempoPerturb(const Waveform &wave, double alpha,
                      const WsolaConfig &cfg);

Waveform TempoPerturb(const Waveform &wave, double alpha);

}  // namespace signal
}  // namespace dysaug

#endif  // DYSAUG_SIGNAL_WSOLA_H_
