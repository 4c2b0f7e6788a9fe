// src/corpus/pairing.cc

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

#include "dysaug/corpus/pairing.h"

#include <fstream>
#include <sstream>

#include "dysaug/util/rng.h"

namespace dysaug {
namespace corpus {

std::string ToString(PairStrategy s) {
  switch (s) {
    case PairStrategy::kRand: return "rand";
    case PairStrategy::kAvg: return "avg";
    case PairStrategy::kExhaustive: return "exhaustive";
    case PairStrategy::kParallel: return "parallel";
  }
  return "rand";
}

PairStrategy PairStrategyFromString(const std::string &s) {
  if (s == "rand") return PairStrategy::kRand;
  if (s == "avg") return PairStrategy::kAvg;
  if (s == "exhaustive") return PairStrategy::kExhaustive;
  if (s == "parallel") return PairStrategy::kParallel;
  throw PairingError("unknown pairing strategy '" + s + "'");
}

PairManifest MakePairs(PairStrategy strategy,
                       const std::vector<Utterance> &control,
                       const std::vector<Utterance> &target, uint64_t seed) {
  if (control.empty()) throw EmptySide("MakePairs: control list is empty");
  if (target.empty()) throw EmptySide("MakePairs: target list is empty");

  PairManifest manifest;
  manifest.strategy = strategy;
  manifest.seed = seed;
  util::Rng rng(seed);

  switch (strategy) {
    case PairStrategy::kRand:
      for (const Utterance &c : control) {
        const Utterance &t = target[rng.UniformIndex(target.size())];
        manifest.pairs.push_back({c.utt_id, t.utt_id, t.speaker_id});
      }
      break;
    case PairStrategy::kAvg: {
      // Distinct target speakers in first-appearance order.
      std::vector<std::string> speakers;
      for (const Utterance &t : target) {
        bool known = false;
        for (const std::string &s : speakers)
          if (s == t.speaker_id) { known = true; break; }
        if (!known) speakers.push_back(t.speaker_id);
      }
      for (const Utterance &c : control) {
        const std::string &spk = speakers[rng.UniformIndex(speakers.size())];
        manifest.pairs.push_back(
            {c.utt_id, std::string(kMeanBasesToken) + "@" + spk, spk});
      }
      break;
    }
    case PairStrategy::kExhaustive:
      for (const Utterance &c : control)
        for (const Utterance &t : target)
          manifest.pairs.push_back({c.utt_id, t.utt_id, t.speaker_id});
      break;
    case PairStrategy::kParallel: {
      for (const Utterance &c : control)
        if (c.word_id.empty())
          throw MissingWordIds("MakePairs: control utterance '" + c.utt_id +
                               "' has no word id");
      for (const Utterance &t : target)
        if (t.word_id.empty())
          throw MissingWordIds("MakePairs: target utterance '" + t.utt_id +
                               "' has no word id");
      for (const Utterance &c : control)
        for (const Utterance &t : target)
          if (c.word_id == t.word_id)
            manifest.pairs.push_back({c.utt_id, t.utt_id, t.speaker_id});
      break;
    }
  }
  return manifest;
}

void WritePairManifest(const std::string &path, const PairManifest &manifest) {
  std::ofstream os(path, std::ios::trunc);
  if (!os) throw IoError("WritePairManifest: cannot open " + path);
  os << "strategy=" << ToString(manifest.strategy)
     << " seed=" << manifest.seed << "\n";
  for (const Pair &p : manifest.pairs)
    os << p.source_utt_id << " " << p.target_ref << " " << p.target_speaker
       << "\n";
  if (!os) throw IoError("WritePairManifest: write failed for " + path);
}

PairManifest ReadPairManifest(const std::string &path) {
  std::ifstream is(path);
  if (!is) throw IoError("ReadPairManifest: cannot open " + path);
  PairManifest manifest;
  std::string line;
  if (!std::getline(is, line))
    throw PairingError(path + ": missing header line");
  {
    std::istringstream iss(line);
    std::string tok;
    while (iss >> tok) {
      auto pos = tok.find('=');
      if (pos == std::string::npos)
        throw PairingError(path + ": bad header token '" + tok + "'");
      const std::string key = tok.substr(0, pos), value = tok.substr(pos + 1);
      if (key == "strategy")
        manifest.strategy = PairStrategyFromString(value);
      else if (key == "seed")
        manifest.seed = std::stoull(value);
      else
        throw PairingError(path + ": unknown header field '" + key + "'");
    }
  }
  int lineno = 1;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream iss(line);
    Pair p;
    if (!(iss >> p.source_utt_id >> p.target_ref >> p.target_speaker))
      throw PairingError(path + ":" + std::to_string(lineno) +
                         ": expected 'source target speaker'");
    manifest.pairs.push_back(std::move(p));
  }
  return manifest;
}

}  // namespace corpus
}  // namespace dysaug
