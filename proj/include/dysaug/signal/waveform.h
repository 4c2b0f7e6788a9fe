// include/dysaug/signal/waveform.h

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

#ifndef DYSAUG_SIGNAL_WAVEFORM_H_
#define DYSAUG_SIGNAL_WAVEFORM_H_

#include <cstddef>
#include <vector>

#include "dysaug/util/error.h"

namespace dysaug {
namespace signal {

DYSAUG_DEFINE_ERROR(AlphaOutOfRange);
DYSAUG_DEFINE_ERROR(WaveTooShort);

// Mono PCM signal. Amplitudes are nominally in [-1, 1].
struct Waveform {
  std::vector<float> samples;
  int sample_rate = 0;

  size_t NumSamples() const { return samples.size(); }
  double DurationSeconds() const {
    return sample_rate > 0
               ? static_cast<double>(samples.size()) / sample_rate
               : 0.0;
  }
};

// Perturbation factors outside this range are rejected by tempo_perturb and
// speed_perturb.
inline constexpr double kMinPerturbFactor = 0.25;
inline constexpr double kMaxPerturbFactor = 4.0;

void CheckPerturbFactor(double alpha);

}  // namespace signal
}  // namespace dysaug

#endif  // DYSAUG_SIGNAL_WAVEFORM_H_
