// include/dysaug/gan/sbg.h

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

#ifndef DYSAUG_GAN_SBG_H_
#define DYSAUG_GAN_SBG_H_

#include <map>
#include <string>
#include <vector>

#include "dysaug/corpus/pairing.h"
#include "dysaug/gan/dcgan.h"
#include "dysaug/gan/losses.h"
#include "dysaug/gan/report.h"
#include "dysaug/nn/layers.h"
#include "dysaug/signal/mel.h"
#include "dysaug/subspace/svd.h"
#include "dysaug/util/matrix.h"

namespace dysaug {
namespace gan {

// Spectral-basis GAN: emits a Tanh-bounded perturbation of the C x C
// spectral bases, scaled by lambda, conditioned on a target-speaker one-hot.
//
// Generator: three fully connected layers (512, 512, C*C outputs), LeakyReLU
// (slope 0.2) after the first two, Tanh after the last. Input is the
// flattened bases concatenated with the speaker one-hot.
// Discriminator: a trunk of three fully connected layers (256, 512, 256
// outputs) over the flattened bases, then two sigmoid heads: a scalar
// control-vs-target condition head and a per-speaker id head.
struct SbgConfig {
  int n_mels = 40;
  std::vector<int> gen_hidden = {512, 512};
  std::vector<int> disc_trunk = {256, 512, 256};
  double lambda = 0.2;  // 0.2 elderly profile, 0.1 dysarthric profile
  double leaky_slope = 0.2;
  double init_stddev = 0.02;
  bool non_saturating = true;
  nn::TrainSchedule schedule;
};

struct SbgModel {
  nn::Sequential<float> generator;
  nn::Sequential<float> trunk;
  nn::Sequential<float> cond_head;  // fc + sigmoid, scalar
  nn::Sequential<float> sid_head;   // fc + sigmoid, one output per speaker
  std::vector<std::string> speakers;  // one-hot vocabulary, frozen
  double lambda = 0.2;
  int n_mels = 40;

  int SpeakerIndex(const std::string &speaker) const;
};

SbgModel BuildSbg(const SbgConfig &cfg,
                  const std::vector<std::string> &speakers, util::Rng *rng);

// Raw generator output for one basis matrix: C x C entries in (-1, 1),
// before lambda scaling.
util::Matrix SbgPerturbationRaw(const SbgModel &model, const util::Matrix &u,
                                const std::string &target_speaker);

// Adversarial training over sign-canonical spectral bases. control_bases is
// keyed by utterance id; target bases are keyed per speaker then utterance.
// The pairing manifest drives batch composition; rand/avg/exhaustive
// strategies are valid here.
GanTrainReport TrainSbg(
    SbgModel *model, const std::map<std::string, util::Matrix> &control_bases,
    const std::map<std::string, std::map<std::string, util::Matrix>>
        &target_bases_by_speaker,
    const corpus::PairManifest &pairing, const SbgConfig &cfg);

// Full generation pipeline: decompose, perturb U with lambda * G(U, spk),
// recompose with the original singular values and temporal bases. Duration
// (T) is untouched.
signal::Spectrogram SbgGenerate(const SbgModel &model,
                                const signal::Spectrogram &input,
                                const std::string &target_speaker);

// Two-stage pipeline: speed-perturb the waveform by the speaker factor,
// extract filter banks, transform with the spectral-basis GAN, then with the
// parallel-data generator. Stage order is SBG then speed-GAN.
signal::Spectrogram SbgPlusSg(const signal::Waveform &control_wave,
                              const SbgModel &sbg_model,
                              const DcganModel &dcgan_model, double sd_factor,
                              const signal::MelConfig &mel_cfg);

// Checkpoint container: <prefix>.{gen,trunk,cond,sid}.dgpt + <prefix>.json.
void SaveSbg(const std::string &prefix, const SbgModel &model);
SbgModel LoadSbg(const std::string &prefix);

}  // namespace gan
}  // namespace dysaug

#endif  // DYSAUG_GAN_SBG_H_
