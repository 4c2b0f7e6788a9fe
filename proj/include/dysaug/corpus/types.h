// include/dysaug/corpus/types.h

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

#ifndef DYSAUG_CORPUS_TYPES_H_
#define DYSAUG_CORPUS_TYPES_H_

#include <string>
#include <vector>

#include "dysaug/util/error.h"

namespace dysaug {
namespace corpus {

enum class SpeakerGroup { kControl, kTarget };

std::string ToString(SpeakerGroup g);
SpeakerGroup SpeakerGroupFromString(const std::string &s);

struct Utterance {
  std::string utt_id;
  std::string speaker_id;
  SpeakerGroup group = SpeakerGroup::kControl;
  std::string audio_path;
  double duration = 0.0;  // seconds
  std::string word_id;    // empty when the corpus is not parallel
};

struct PhonemeSegment {
  std::string label;
  double start_s = 0.0;
  double end_s = 0.0;
};

struct PhonemeAlignment {
  std::string utt_id;
  std::vector<PhonemeSegment> segments;  // sorted, non-overlapping
};

struct SpeakerProfile {
  std::string speaker_id;
  double sd_factor = 1.0;          // alpha_j, in (0, 10)
  std::vector<double> feat_mean;   // per-channel, may be empty
  std::vector<double> feat_std;    // strictly positive when present
};

}  // namespace corpus
}  // namespace dysaug

#endif  // DYSAUG_CORPUS_TYPES_H_
