// include/dysaug/corpus/factors.h

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

#ifndef DYSAUG_CORPUS_FACTORS_H_
#define DYSAUG_CORPUS_FACTORS_H_

#include <set>
#include <string>
#include <vector>

#include "dysaug/corpus/types.h"

namespace dysaug {
namespace corpus {

DYSAUG_DEFINE_ERROR(EmptyAlignment);
DYSAUG_DEFINE_ERROR(AllSilence);
DYSAUG_DEFINE_ERROR(WordMismatch);
DYSAUG_DEFINE_ERROR(ZeroDuration);

// Labels excluded from duration statistics. The corpora's own silence
// stripping happens upstream; these guard against residual markers.
const std::set<std::string> &DefaultSilenceLabels();

// Mean non-silence phoneme token duration across all segments.
double MeanPhonemeDuration(const std::vector<PhonemeAlignment> &aligns,
                           const std::set<std::string> &silence_labels);

// Speaker-dependent perturbation factor alpha_j: the mean phoneme duration
// of the control corpus divided by the mean phoneme duration of the target
// speaker. Durations average over phoneme tokens.
double EstimateSdFactor(const std::vector<PhonemeAlignment> &target_aligns,
                        const std::vector<PhonemeAlignment> &control_aligns,
                        const std::set<std::string> &silence_labels =
                            DefaultSilenceLabels());

// Tempo factor that stretches the control utterance to the target's
// duration: target_duration / control_duration (tempo output length is
// factor x input length). The matching speed-perturbation factor is its
// reciprocal. When both utterances carry word ids, they must agree.
double PairScaleFactor(const Utterance &control_utt,
                       const Utterance &target_utt);

// Speed-perturbation counterpart: control_duration / target_duration.
double PairSpeedFactor(const Utterance &control_utt,
                       const Utterance &target_utt);

}  // namespace corpus
}  // namespace dysaug

#endif  // DYSAUG_CORPUS_FACTORS_H_
