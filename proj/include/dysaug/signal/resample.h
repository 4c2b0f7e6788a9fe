// include/dysaug/signal/resample.h

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

#ifndef DYSAUG_SIGNAL_RESAMPLE_H_
#define DYSAUG_SIGNAL_RESAMPLE_H_

#include "dysaug/signal/waveform.h"

namespace dysaug {
namespace signal {

// Kaiser-windowed sinc interpolation kernel.
struct ResampleConfig {
  int num_taps = 64;        // total taps, even
  double kaiser_beta = 8.0;
};

// Speed perturbation y(t) = x(alpha * t): band-limited resampling that
// rescales duration by 1/alpha and frequency content by alpha. Output length
// is round(len / alpha). alpha == 1 returns the input unchanged.
Waveform SpeedPerturb(const Waveform &wave, double alpha,
                      const ResampleConfig &cfg);

Waveform SpeedPerturb(const Waveform &wave, double alpha);

}  // namespace signal
}  // namespace dysaug

#endif  // DYSAUG_SIGNAL_RESAMPLE_H_
