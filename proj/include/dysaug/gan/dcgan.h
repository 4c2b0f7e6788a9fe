// include/dysaug/gan/dcgan.h

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

#ifndef DYSAUG_GAN_DCGAN_H_
#define DYSAUG_GAN_DCGAN_H_

#include <string>
#include <utility>
#include <vector>

#include "dysaug/gan/losses.h"
#include "dysaug/gan/report.h"
#include "dysaug/nn/layers.h"
#include "dysaug/nn/optimizer.h"
#include "dysaug/signal/mel.h"
#include "dysaug/util/rng.h"

namespace dysaug {
namespace gan {

// Per-speaker convolutional GAN over filter-bank windows.
//
// Generator: four 3x3 stride-1 convolutions (8, 8, 8, then 1 kernel), the
// first three followed by ReLU, each preceded by replicate padding so the
// output spectrogram keeps the input shape.
// Discriminator: four 2x2 stride-2 convolutions (8, 16, 32, 64 kernels),
// flatten, one fully connected layer, sigmoid. The flatten width is computed
// from (n_mels, window) rather than hard-coded.
struct DcganConfig {
  int n_mels = 40;
  int window = 96;  // training crop length in frames
  double init_stddev = 0.02;
  bool non_saturating = true;  // generator maximizes log D(G(x))
  // Adds identity center taps on a +/- channel pair on top of the random
  // init, so the untrained generator is a near-passthrough. The transform
  // GAN then learns a deviation from its input instead of rebuilding the
  // spectrogram from noise.
  bool identity_init = true;
  nn::TrainSchedule schedule;
  std::string target_speaker;
};

struct DcganModel {
  nn::Sequential<float> generator;
  nn::Sequential<float> discriminator;
  int n_mels = 40;
  int window = 96;
  std::string target_speaker;
};

DcganModel BuildDcgan(const DcganConfig &cfg, util::Rng *rng);

// Discriminator flatten dimension for a given input geometry.
int DcganFlattenDim(int n_mels, int window);

// Alternating one-discriminator-step / one-generator-step training on
// duration-aligned (control, target) spectrogram pairs. Every pair must have
// matching frame counts; features are expected speaker-normalized.
GanTrainReport TrainDcgan(
    DcganModel *model,
    const std::vector<std::pair<signal::Spectrogram, signal::Spectrogram>>
        &pairs,
    const DcganConfig &cfg);

// Runs the generator on a spectrogram of any duration (the stack is fully
// convolutional). Output shape equals input shape.
signal::Spectrogram DcganGenerate(const DcganModel &model,
                                  const signal::Spectrogram &input);

// Checkpoint container: <prefix>.gen.dgpt, <prefix>.disc.dgpt,
// <prefix>.json metadata.
void SaveDcgan(const std::string &prefix, const DcganModel &model);
DcganModel LoadDcgan(const std::string &prefix);

}  // namespace gan
}  // namespace dysaug

#endif  // DYSAUG_GAN_DCGAN_H_
