// src/corpus/factors.cc

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

#include "dysaug/corpus/factors.h"

namespace dysaug {
namespace corpus {

const std::set<std::string> &DefaultSilenceLabels() {
  static const std::set<std::string> labels = {"sil", "sp", "spn", "noise"};
  return labels;
}

double MeanPhonemeDuration(const std::vector<PhonemeAlignment> &aligns,
                           const std::set<std::string> &silence_labels) {
  if (aligns.empty()) throw EmptyAlignment("no alignments given");
  double total = 0.0;
  long count = 0;
  for (const PhonemeAlignment &a : aligns) {
    for (const PhonemeSegment &s : a.segments) {
      if (silence_labels.count(s.label)) continue;
      total += s.end_s - s.start_s;
      ++count;
    }
  }
  if (count == 0) throw AllSilence("alignments contain no non-silence phones");
  return total / static_cast<double>(count);
}

double EstimateSdFactor(const std::vector<PhonemeAlignment> &target_aligns,
                        const std::vector<PhonemeAlignment> &control_aligns,
                        const std::set<std::string> &silence_labels) {
  const double d_control = MeanPhonemeDuration(control_aligns, silence_labels);
  const double d_target = MeanPhonemeDuration(target_aligns, silence_labels);
  return d_control / d_target;
}

double PairScaleFactor(const Utterance &control_utt,
                       const Utterance &target_utt) {
  if (!(control_utt.duration > 0.0 && target_utt.duration > 0.0))
    throw ZeroDuration("pair has a non-positive duration");
  if (!control_utt.word_id.empty() && !target_utt.word_id.empty() &&
      control_utt.word_id != target_utt.word_id)
    throw WordMismatch("pair words differ: '" + control_utt.word_id +
                       "' vs '" + target_utt.word_id + "'");
  return target_utt.duration / control_utt.duration;
}

double PairSpeedFactor(const Utterance &control_utt,
                       const Utterance &target_utt) {
  return 1.0 / PairScaleFactor(control_utt, target_utt);
}

}  // namespace corpus
}  // namespace dysaug
