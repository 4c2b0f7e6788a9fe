// include/dysaug/corpus/stats.h

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

#ifndef DYSAUG_CORPUS_STATS_H_
#define DYSAUG_CORPUS_STATS_H_

#include <vector>

#include "dysaug/corpus/types.h"
#include "dysaug/signal/mel.h"

namespace dysaug {
namespace corpus {

DYSAUG_DEFINE_ERROR(EmptyInput);
DYSAUG_DEFINE_ERROR(ChannelMismatch);

struct SpeakerStats {
  std::vector<double> mean;  // per channel
  std::vector<double> std;   // per channel, floored at 1e-8
};

// Per-channel population mean/std pooled over all frames of all given
// spectrograms.
SpeakerStats ComputeSpeakerStats(
    const std::vector<const signal::Spectrogram *> &specs);
SpeakerStats ComputeSpeakerStats(const std::vector<signal::Spectrogram> &specs);

// (value - mean) / std per channel.
signal::Spectrogram Normalize(const signal::Spectrogram &spec,
                              const SpeakerStats &stats);
// value * std + mean per channel.
signal::Spectrogram Denormalize(const signal::Spectrogram &spec,
                                const SpeakerStats &stats);

}  // namespace corpus
}  // namespace dysaug

#endif  // DYSAUG_CORPUS_STATS_H_
