// include/dysaug/corpus/pairing.h

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

#ifndef DYSAUG_CORPUS_PAIRING_H_
#define DYSAUG_CORPUS_PAIRING_H_

#include <cstdint>
#include <string>
#include <vector>

#include "dysaug/corpus/types.h"

namespace dysaug {
namespace corpus {

DYSAUG_DEFINE_ERROR(EmptySide);
DYSAUG_DEFINE_ERROR(MissingWordIds);
DYSAUG_DEFINE_ERROR(PairingError);

enum class PairStrategy { kRand, kAvg, kExhaustive, kParallel };

std::string ToString(PairStrategy s);
PairStrategy PairStrategyFromString(const std::string &s);

// Pseudo-target reference used by the avg strategy. The full reference is
// "MEAN_BASES@<speaker>" naming the target speaker whose per-utterance mean
// spectral bases stand in for a concrete utterance.
inline constexpr const char *kMeanBasesToken = "MEAN_BASES";

struct Pair {
  std::string source_utt_id;   // control side
  std::string target_ref;      // target utterance id or MEAN_BASES@<speaker>
  std::string target_speaker;  // resolved speaker of the target side
};

struct PairManifest {
  PairStrategy strategy = PairStrategy::kRand;
  uint64_t seed = 0;
  std::vector<Pair> pairs;
};

// Builds control-target pairings:
//   rand        one pair per control utterance, target drawn uniformly
//               (seeded) from the target list
//   avg         one pair per control utterance, referencing the mean bases
//               of a (seeded, uniformly drawn) target speaker
//   exhaustive  the full |control| x |target| cross product
//   parallel    each control utterance paired with every target utterance
//               sharing the same word id (word ids required on both sides)
PairManifest MakePairs(PairStrategy strategy,
                       const std::vector<Utterance> &control,
                       const std::vector<Utterance> &target, uint64_t seed);

void WritePairManifest(const std::string &path, const PairManifest &manifest);
PairManifest ReadPairManifest(const std::string &path);

}  // namespace corpus
}  // namespace dysaug

#endif  // DYSAUG_CORPUS_PAIRING_H_
