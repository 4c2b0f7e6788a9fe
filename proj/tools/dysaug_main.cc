// tools/dysaug_main.cc

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

#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dysaug/cli/commands.h"
#include "dysaug/cli/config.h"

namespace {

using dysaug::cli::PipelineConfig;

struct GlobalArgs {
  std::string config_path;
  std::vector<std::string> overrides;
};

PipelineConfig Load(const GlobalArgs &args) {
  if (args.config_path.empty())
    return dysaug::cli::ParseConfig("{}", "<defaults>", args.overrides);
  return dysaug::cli::LoadConfig(args.config_path, args.overrides);
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"Speaker-dependent data augmentation toolkit for atypical "
               "speech: signal perturbation, spectral-basis decomposition, "
               "and adversarial feature transforms"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand name

  GlobalArgs global;
  app.add_option("--config", global.config_path,
                 "Pipeline configuration file (JSON)");
  app.add_option("--set", global.overrides,
                 "Override a config field, e.g. --set schedule.base_lr=1e-4")
      ->take_all();

  // extract
  std::string manifest, out_path, mode = "speed";
  std::vector<double> factors;
  auto *extract = app.add_subcommand("extract", "Mel filter-bank extraction");
  extract->add_option("--manifest", manifest)->required();
  extract->add_option("--out", out_path)->required();

  // estimate-factors
  std::string align_path;
  auto *estimate =
      app.add_subcommand("estimate-factors",
                         "Speaker-dependent perturbation factor estimation");
  estimate->add_option("--manifest", manifest)->required();
  estimate->add_option("--alignments", align_path)->required();
  estimate->add_option("--out", out_path)->required();

  // perturb
  std::string out_dir, out_manifest;
  auto *perturb =
      app.add_subcommand("perturb", "Tempo or speed perturbation of audio");
  perturb->add_option("--manifest", manifest)->required();
  perturb->add_option("--mode", mode, "tempo or speed");
  perturb->add_option("--factors", factors,
                      "Explicit factors; omit to use speaker profiles");
  perturb->add_option("--out-dir", out_dir)->required();
  perturb->add_option("--out-manifest", out_manifest)->required();

  // pair
  std::string control_path, target_path;
  auto *pair = app.add_subcommand("pair", "Control/target pairing manifest");
  pair->add_option("--control", control_path)->required();
  pair->add_option("--target", target_path)->required();
  pair->add_option("--out", out_path)->required();

  // train-dcgan
  std::string control_archive, target_archive, target_manifest, prefix;
  auto *train_dcgan = app.add_subcommand(
      "train-dcgan", "Train the parallel-data convolutional model");
  train_dcgan->add_option("--control-features", control_archive)->required();
  train_dcgan->add_option("--target-features", target_archive)->required();
  train_dcgan->add_option("--control-manifest", control_path)->required();
  train_dcgan->add_option("--target-manifest", target_manifest)->required();
  train_dcgan->add_option("--out", prefix)->required();

  // train-sbg
  std::string pairs_path;
  auto *train_sbg =
      app.add_subcommand("train-sbg", "Train the spectral-basis model");
  train_sbg->add_option("--control-features", control_archive)->required();
  train_sbg->add_option("--target-features", target_archive)->required();
  train_sbg->add_option("--target-manifest", target_manifest)->required();
  train_sbg->add_option("--pairs", pairs_path)->required();
  train_sbg->add_option("--out", prefix)->required();

  // augment
  auto *augment =
      app.add_subcommand("augment", "Emit augmented feature archives");

  // sweep-lambda
  std::vector<double> grid = {0.001, 0.01, 0.1, 0.2, 1.0, 2.0, 5.0};
  auto *sweep = app.add_subcommand(
      "sweep-lambda", "Per-lambda generation sweep with a deviation table");
  sweep->add_option("--features", control_archive)->required();
  sweep->add_option("--grid", grid, "Lambda grid");

  // inspect
  auto *inspect = app.add_subcommand("inspect", "Describe an artifact file");
  inspect->add_option("path", out_path)->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (inspect->parsed())
      return dysaug::cli::CmdInspect(out_path, std::cout, std::cerr);

    PipelineConfig cfg = Load(global);
    if (extract->parsed())
      return dysaug::cli::CmdExtract(cfg, manifest, out_path, std::cout,
                                     std::cerr);
    if (estimate->parsed())
      return dysaug::cli::CmdEstimateFactors(cfg, manifest, align_path,
                                             out_path, std::cout, std::cerr);
    if (perturb->parsed())
      return dysaug::cli::CmdPerturb(cfg, manifest, mode, factors, out_dir,
                                     out_manifest, std::cout, std::cerr);
    if (pair->parsed())
      return dysaug::cli::CmdPair(cfg, control_path, target_path, out_path,
                                  std::cout, std::cerr);
    if (train_dcgan->parsed())
      return dysaug::cli::CmdTrainDcgan(cfg, control_archive, target_archive,
                                        control_path, target_manifest, prefix,
                                        std::cout, std::cerr);
    if (train_sbg->parsed())
      return dysaug::cli::CmdTrainSbg(cfg, control_archive, target_archive,
                                      target_manifest, pairs_path, prefix,
                                      std::cout, std::cerr);
    if (augment->parsed())
      return dysaug::cli::CmdAugment(cfg, std::cout, std::cerr);
    if (sweep->parsed())
      return dysaug::cli::CmdSweepLambda(cfg, control_archive, grid,
                                         std::cout, std::cerr);
  } catch (const dysaug::Error &e) {
    std::cerr << "event=error msg=\"" << e.what() << "\"\n";
    return 2;
  }
  return 2;
}
