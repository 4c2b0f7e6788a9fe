// include/dysaug/cli/commands.h

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

#ifndef DYSAUG_CLI_COMMANDS_H_
#define DYSAUG_CLI_COMMANDS_H_

#include <ostream>
#include <string>
#include <vector>

#include "dysaug/cli/config.h"

namespace dysaug {
namespace cli {

DYSAUG_DEFINE_ERROR(CountMismatch);
DYSAUG_DEFINE_ERROR(MissingAlignments);

// Exit codes shared by every command: 0 success, 1 partial per-file
// failures, 2 configuration/validation errors. Commands log structured
// `key=value` records to `err` and human-readable summaries to `out`.

// Mel filter-bank extraction for every utterance in the manifest.
int CmdExtract(const PipelineConfig &cfg, const std::string &manifest_path,
               const std::string &out_archive, std::ostream &out,
               std::ostream &err);

// Speaker-dependent factor estimation from phoneme alignments; writes one
// profile line per target speaker.
int CmdEstimateFactors(const PipelineConfig &cfg,
                       const std::string &manifest_path,
                       const std::string &align_path,
                       const std::string &out_profiles, std::ostream &out,
                       std::ostream &err);

// Signal-level perturbation of a manifest's audio. mode is "tempo" or
// "speed". When factors is empty, speaker-dependent factors are taken from
// cfg.profiles and applied per target speaker.
int CmdPerturb(const PipelineConfig &cfg, const std::string &manifest_path,
               const std::string &mode, const std::vector<double> &factors,
               const std::string &out_dir, const std::string &out_manifest,
               std::ostream &out, std::ostream &err);

// Pair manifest construction per cfg.pairing.
int CmdPair(const PipelineConfig &cfg, const std::string &control_manifest,
            const std::string &target_manifest, const std::string &out_path,
            std::ostream &out, std::ostream &err);

// Parallel-data model training on duration-aligned feature archives with
// matching record ids. Features are normalized per speaker internally;
// the target archive must belong to a single target speaker.
int CmdTrainDcgan(const PipelineConfig &cfg,
                  const std::string &control_archive,
                  const std::string &target_archive,
                  const std::string &control_manifest,
                  const std::string &target_manifest,
                  const std::string &out_prefix, std::ostream &out,
                  std::ostream &err);

// Spectral-basis model training from feature archives; bases are derived
// here via SVD. The pairing file drives batch composition.
int CmdTrainSbg(const PipelineConfig &cfg, const std::string &control_archive,
                const std::string &target_archive,
                const std::string &target_manifest,
                const std::string &pairs_path, const std::string &out_prefix,
                std::ostream &out, std::ostream &err);

// Batch augmentation for every tag in cfg.tags, with count reconciliation
// and per-record provenance sidecars.
int CmdAugment(const PipelineConfig &cfg, std::ostream &out,
               std::ostream &err);

// Per-lambda generation sweep over a features archive using the configured
// spectral-basis checkpoint; prints a lambda/deviation table.
int CmdSweepLambda(const PipelineConfig &cfg,
                   const std::string &features_archive,
                   const std::vector<double> &grid, std::ostream &out,
                   std::ostream &err);

// Prints the contents of an archive, profile, pair manifest, or checkpoint
// metadata file.
int CmdInspect(const std::string &path, std::ostream &out, std::ostream &err);

}  // namespace cli
}  // namespace dysaug

#endif  // DYSAUG_CLI_COMMANDS_H_
