// include/dysaug/cli/config.h

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

#ifndef DYSAUG_CLI_CONFIG_H_
#define DYSAUG_CLI_CONFIG_H_

#include <string>
#include <vector>

#include "dysaug/corpus/pairing.h"
#include "dysaug/nn/optimizer.h"
#include "dysaug/signal/mel.h"
#include "dysaug/signal/wsola.h"

namespace dysaug {
namespace cli {

DYSAUG_DEFINE_ERROR(ConfigError);

// Augmentation tags, named after the system columns of the evaluation
// setup: signal-level tempo (T) and speed (S), tempo-GAN (TG), speed-GAN
// (SG), spectral-basis GAN (SBG) and the pipelined SBG+SG.
const std::vector<std::string> &KnownTags();

// Pipeline configuration: a single JSON file, every leaf overridable with
// repeated --set key=value flags using dotted paths (e.g.
// --set schedule.base_lr=1e-4). Unknown keys anywhere are rejected. The
// DYSAUG_SEED environment variable, when set, overrides `seed`.
struct PipelineConfig {
  uint64_t seed = 0;
  int jobs = 1;

  signal::MelConfig mel;
  bool wsola_explicit = false;  // when false, derive from the sample rate
  signal::WsolaConfig wsola;

  std::vector<double> si_factors = {0.9, 1.0, 1.1};
  double lambda = 0.2;
  corpus::PairStrategy pairing = corpus::PairStrategy::kRand;
  nn::TrainSchedule schedule;
  int window = 96;             // DCGAN training crop
  bool non_saturating = true;

  std::string control_manifest;
  std::string target_manifest;
  std::string alignments;
  std::string profiles;
  std::string out_dir;
  std::vector<std::string> tags;

  // Checkpoint prefixes; "{speaker}" expands to the target speaker id for
  // the per-speaker parallel models.
  std::string dcgan_tempo_checkpoint;
  std::string dcgan_speed_checkpoint;
  std::string sbg_checkpoint;

  void Validate() const;
};

PipelineConfig LoadConfig(const std::string &path,
                          const std::vector<std::string> &overrides);

// Parses from JSON text; origin is used in error messages.
PipelineConfig ParseConfig(const std::string &json_text,
                           const std::string &origin,
                           const std::vector<std::string> &overrides);

}  // namespace cli
}  // namespace dysaug

#endif  // DYSAUG_CLI_CONFIG_H_
