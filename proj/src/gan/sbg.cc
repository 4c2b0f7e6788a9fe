// src/gan/sbg.cc

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

#include "dysaug/gan/sbg.h"

#include <cmath>
#include <fstream>

#include <json.hpp>

#include "dysaug/nn/checkpoint.h"
#include "dysaug/nn/optimizer.h"
#include "dysaug/signal/resample.h"

namespace dysaug {
namespace gan {

using nn::LayerSpec;
using nn::Tensor;
using util::Matrix;

namespace {

std::vector<float> FlattenBases(const Matrix &u) {
  std::vector<float> out(u.Data().size());
  for (size_t i = 0; i < out.size(); ++i)
    out[i] = static_cast<float>(u.Data()[i]);
  return out;
}

// One resolved training pair: flattened source bases, flattened target
// bases, target speaker index.
struct ResolvedPair {
  const Matrix *source = nullptr;
  const Matrix *target = nullptr;
  int speaker = 0;
};

}  // namespace

int SbgModel::SpeakerIndex(const std::string &speaker) const {
  for (size_t i = 0; i < speakers.size(); ++i)
    if (speakers[i] == speaker) return static_cast<int>(i);
  throw UnknownSpeakerInPairing("speaker '" + speaker +
                                "' not in the model's one-hot vocabulary");
}

SbgModel BuildSbg(const SbgConfig &cfg,
                  const std::vector<std::string> &speakers, util::Rng *rng) {
  if (speakers.empty())
    throw UnknownSpeakerInPairing("BuildSbg: empty speaker vocabulary");
  if (cfg.gen_hidden.size() != 2 || cfg.disc_trunk.size() != 3)
    throw ShapeMismatch("BuildSbg: expected 2 generator and 3 trunk widths");

  SbgModel model;
  model.speakers = speakers;
  model.lambda = cfg.lambda;
  model.n_mels = cfg.n_mels;
  const int bases_dim = cfg.n_mels * cfg.n_mels;
  const int s = static_cast<int>(speakers.size());

  auto &g = model.generator;
  g.Add(LayerSpec::Fc(bases_dim + s, cfg.gen_hidden[0]))
      .Add(LayerSpec::MakeLeakyRelu(cfg.leaky_slope))
      .Add(LayerSpec::Fc(cfg.gen_hidden[0], cfg.gen_hidden[1]))
      .Add(LayerSpec::MakeLeakyRelu(cfg.leaky_slope))
      .Add(LayerSpec::Fc(cfg.gen_hidden[1], bases_dim))
      .Add(LayerSpec::MakeTanh());
  g.InitParams(rng, cfg.init_stddev);

  // LeakyReLU between the trunk layers for the same reason as the parallel
  // model: a linear trunk reduces the discriminator to one projection.
  auto &trunk = model.trunk;
  trunk.Add(LayerSpec::Fc(bases_dim, cfg.disc_trunk[0]))
      .Add(LayerSpec::MakeLeakyRelu(cfg.leaky_slope))
      .Add(LayerSpec::Fc(cfg.disc_trunk[0], cfg.disc_trunk[1]))
      .Add(LayerSpec::MakeLeakyRelu(cfg.leaky_slope))
      .Add(LayerSpec::Fc(cfg.disc_trunk[1], cfg.disc_trunk[2]))
      .Add(LayerSpec::MakeLeakyRelu(cfg.leaky_slope));
  trunk.InitParams(rng, cfg.init_stddev);

  model.cond_head.Add(LayerSpec::Fc(cfg.disc_trunk[2], 1))
      .Add(LayerSpec::MakeSigmoid());
  model.cond_head.InitParams(rng, cfg.init_stddev);
  model.sid_head.Add(LayerSpec::Fc(cfg.disc_trunk[2], s))
      .Add(LayerSpec::MakeSigmoid());
  model.sid_head.InitParams(rng, cfg.init_stddev);
  return model;
}

util::Matrix SbgPerturbationRaw(const SbgModel &model, const Matrix &u,
                                const std::string &target_speaker) {
  if (u.Rows() != model.n_mels || u.Cols() != model.n_mels)
    throw ShapeMismatch("SbgPerturbationRaw: bases must be C x C");
  const int spk = model.SpeakerIndex(target_speaker);
  const int bases_dim = model.n_mels * model.n_mels;
  std::vector<float> in(static_cast<size_t>(bases_dim) + model.speakers.size(),
                        0.0f);
  for (int i = 0; i < bases_dim; ++i)
    in[i] = static_cast<float>(u.Data()[i]);
  in[static_cast<size_t>(bases_dim) + spk] = 1.0f;
  auto x = Tensor<float>::Leaf(
      {1, bases_dim + static_cast<int>(model.speakers.size())}, std::move(in));
  auto y = model.generator.Forward(x);

  Matrix raw(model.n_mels, model.n_mels);
  for (int i = 0; i < bases_dim; ++i)
    raw.Data()[i] = static_cast<double>(y.Data()[i]);
  return raw;
}

GanTrainReport TrainSbg(
    SbgModel *model, const std::map<std::string, Matrix> &control_bases,
    const std::map<std::string, std::map<std::string, Matrix>>
        &target_bases_by_speaker,
    const corpus::PairManifest &pairing, const SbgConfig &cfg) {
  if (pairing.pairs.empty()) throw EmptyTrainingSet("TrainSbg: no pairs");
  cfg.schedule.Validate();
  const int c = model->n_mels;
  const int bases_dim = c * c;
  const int n_speakers = static_cast<int>(model->speakers.size());

  // Per-speaker mean bases for MEAN_BASES references.
  std::map<std::string, Matrix> mean_bases;
  for (const auto &[spk, utts] : target_bases_by_speaker) {
    std::vector<const Matrix *> ptrs;
    for (const auto &[id, u] : utts) ptrs.push_back(&u);
    if (!ptrs.empty()) mean_bases.emplace(spk, subspace::MeanBases(ptrs));
  }

  // Resolve every pair up front so malformed manifests fail before training.
  std::vector<ResolvedPair> resolved;
  resolved.reserve(pairing.pairs.size());
  const std::string mean_prefix = std::string(corpus::kMeanBasesToken) + "@";
  for (const auto &pair : pairing.pairs) {
    ResolvedPair r;
    auto src = control_bases.find(pair.source_utt_id);
    if (src == control_bases.end())
      throw UnknownSpeakerInPairing("TrainSbg: control utterance '" +
                                    pair.source_utt_id + "' has no bases");
    r.source = &src->second;
    r.speaker = model->SpeakerIndex(pair.target_speaker);
    if (pair.target_ref.rfind(mean_prefix, 0) == 0 ||
        pair.target_ref == corpus::kMeanBasesToken) {
      auto mb = mean_bases.find(pair.target_speaker);
      if (mb == mean_bases.end())
        throw UnknownSpeakerInPairing("TrainSbg: no bases for speaker '" +
                                      pair.target_speaker + "'");
      r.target = &mb->second;
    } else {
      auto spk_it = target_bases_by_speaker.find(pair.target_speaker);
      if (spk_it == target_bases_by_speaker.end())
        throw UnknownSpeakerInPairing("TrainSbg: no bases for speaker '" +
                                      pair.target_speaker + "'");
      auto utt_it = spk_it->second.find(pair.target_ref);
      if (utt_it == spk_it->second.end())
        throw UnknownSpeakerInPairing("TrainSbg: target utterance '" +
                                      pair.target_ref + "' has no bases");
      r.target = &utt_it->second;
    }
    if (r.source->Rows() != c || r.source->Cols() != c ||
        r.target->Rows() != c || r.target->Cols() != c)
      throw ShapeMismatch("TrainSbg: bases must be C x C");
    resolved.push_back(r);
  }

  util::Rng rng(cfg.schedule.seed);
  std::vector<Tensor<float>> disc_params;
  for (auto &p : model->trunk.Params()) disc_params.push_back(p);
  for (auto &p : model->cond_head.Params()) disc_params.push_back(p);
  for (auto &p : model->sid_head.Params()) disc_params.push_back(p);
  nn::Optimizer<float> opt_d(disc_params, cfg.schedule);
  nn::Optimizer<float> opt_g(model->generator.Params(), cfg.schedule);

  auto zero_disc_grads = [&]() {
    model->trunk.ZeroGrads();
    model->cond_head.ZeroGrads();
    model->sid_head.ZeroGrads();
  };

  GanTrainReport report;
  report.iters.reserve(static_cast<size_t>(cfg.schedule.max_iters));
  const int batch = cfg.schedule.batch_size;
  for (int iter = 0; iter < cfg.schedule.max_iters; ++iter) {
    // Assemble the batch: real target bases and generator inputs.
    std::vector<float> real(static_cast<size_t>(batch) * bases_dim);
    std::vector<float> source(static_cast<size_t>(batch) * bases_dim);
    std::vector<float> gen_in(static_cast<size_t>(batch) *
                              (bases_dim + n_speakers));
    std::vector<int> labels(batch);
    for (int b = 0; b < batch; ++b) {
      const ResolvedPair &r = resolved[rng.UniformIndex(resolved.size())];
      labels[b] = r.speaker;
      for (int i = 0; i < bases_dim; ++i) {
        real[static_cast<size_t>(b) * bases_dim + i] =
            static_cast<float>(r.target->Data()[i]);
        source[static_cast<size_t>(b) * bases_dim + i] =
            static_cast<float>(r.source->Data()[i]);
        gen_in[static_cast<size_t>(b) * (bases_dim + n_speakers) + i] =
            static_cast<float>(r.source->Data()[i]);
      }
      gen_in[static_cast<size_t>(b) * (bases_dim + n_speakers) + bases_dim +
             r.speaker] = 1.0f;
    }
    auto real_t = Tensor<float>::Leaf({batch, bases_dim}, real);
    auto source_t = Tensor<float>::Leaf({batch, bases_dim}, source);
    auto gen_in_t =
        Tensor<float>::Leaf({batch, bases_dim + n_speakers}, gen_in);

    auto synthesize = [&]() {
      auto delta = model->generator.Forward(gen_in_t);
      return nn::Add(source_t, nn::Scale(delta, model->lambda));
    };

    // Discriminator step: ascend L_c + L_sid.
    auto fake_t = synthesize().Detach();
    auto trunk_real = model->trunk.Forward(real_t);
    auto trunk_fake = model->trunk.Forward(fake_t);
    auto cond_real = model->cond_head.ForwardLogits(trunk_real);
    auto cond_fake = model->cond_head.ForwardLogits(trunk_fake);
    auto sid_real = model->sid_head.ForwardLogits(trunk_real);
    auto sid_fake = model->sid_head.ForwardLogits(trunk_fake);
    auto cond_value = RealFakeValue(cond_real, cond_fake);
    auto sid_bce =
        nn::Add(BceOneHot(sid_real, labels), BceOneHot(sid_fake, labels));
    auto d_loss = nn::Add(nn::Scale(cond_value, -1.0), sid_bce);
    nn::Backward(d_loss);
    opt_d.Step(iter);

    // Generator step: ascend L_sid - L_c.
    auto fake_live = synthesize();
    auto trunk_live = model->trunk.Forward(fake_live);
    auto cond_live = model->cond_head.ForwardLogits(trunk_live);
    auto sid_live = model->sid_head.ForwardLogits(trunk_live);
    auto adversarial =
        cfg.non_saturating
            ? BceWithLogits(cond_live, /*positive_label=*/true)
            : nn::Mean(nn::LogSigmoid(nn::Scale(cond_live, -1.0)));
    auto g_loss = nn::Add(BceOneHot(sid_live, labels), adversarial);
    nn::Backward(g_loss);
    opt_g.Step(iter);
    zero_disc_grads();

    GanTrainReport::Iteration rec;
    rec.iter = iter;
    rec.lr = nn::LearningRate(cfg.schedule, iter);
    rec.d_loss = static_cast<double>(d_loss.Data()[0]);
    rec.g_loss = static_cast<double>(g_loss.Data()[0]);
    long cond_correct = 0;
    for (float z : cond_real.Data())
      if (z > 0.0f) ++cond_correct;
    for (float z : cond_fake.Data())
      if (z < 0.0f) ++cond_correct;
    rec.d_acc = static_cast<double>(cond_correct) /
                static_cast<double>(2 * batch);
    long sid_correct = 0;
    for (int b = 0; b < batch; ++b) {
      int best = 0;
      for (int k = 1; k < n_speakers; ++k)
        if (sid_real.Data()[static_cast<size_t>(b) * n_speakers + k] >
            sid_real.Data()[static_cast<size_t>(b) * n_speakers + best])
          best = k;
      if (best == labels[b]) ++sid_correct;
    }
    rec.sid_acc =
        static_cast<double>(sid_correct) / static_cast<double>(batch);
    report.iters.push_back(rec);
  }
  return report;
}

signal::Spectrogram SbgGenerate(const SbgModel &model,
                                const signal::Spectrogram &input,
                                const std::string &target_speaker) {
  if (input.n_mels != model.n_mels)
    throw ShapeMismatch("SbgGenerate: channel count mismatch");
  auto svd = subspace::SvdDecompose(input);
  Matrix raw = SbgPerturbationRaw(model, svd.u, target_speaker);
  Matrix perturbed = subspace::ApplyPerturbation(svd.u, raw, model.lambda);
  return subspace::Recompose(perturbed, svd.sigma, svd.vt, input.frame_hop,
                             input.sample_rate);
}

signal::Spectrogram SbgPlusSg(const signal::Waveform &control_wave,
                              const SbgModel &sbg_model,
                              const DcganModel &dcgan_model, double sd_factor,
                              const signal::MelConfig &mel_cfg) {
  auto perturbed = signal::SpeedPerturb(control_wave, sd_factor);
  auto fbank = signal::MelFbank(perturbed, mel_cfg);
  auto sbg_out = SbgGenerate(sbg_model, fbank, dcgan_model.target_speaker);
  return DcganGenerate(dcgan_model, sbg_out);
}

void SaveSbg(const std::string &prefix, const SbgModel &model) {
  nn::SaveNet(prefix + ".gen.dgpt", model.generator);
  nn::SaveNet(prefix + ".trunk.dgpt", model.trunk);
  nn::SaveNet(prefix + ".cond.dgpt", model.cond_head);
  nn::SaveNet(prefix + ".sid.dgpt", model.sid_head);
  nlohmann::json meta = {
      {"kind", "sbg"},
      {"n_mels", model.n_mels},
      {"lambda", model.lambda},
      {"speakers", model.speakers},
  };
  std::ofstream os(prefix + ".json", std::ios::trunc);
  if (!os) throw IoError("SaveSbg: cannot open " + prefix + ".json");
  os << meta.dump(2) << "\n";
}

SbgModel LoadSbg(const std::string &prefix) {
  std::ifstream is(prefix + ".json");
  if (!is) throw MissingCheckpoint("LoadSbg: missing " + prefix + ".json");
  nlohmann::json meta = nlohmann::json::parse(is);
  if (meta.value("kind", "") != "sbg")
    throw MissingCheckpoint("LoadSbg: " + prefix + " is not an sbg");
  SbgModel model;
  model.n_mels = meta.at("n_mels").get<int>();
  model.lambda = meta.at("lambda").get<double>();
  model.speakers = meta.at("speakers").get<std::vector<std::string>>();
  model.generator = nn::LoadNet(prefix + ".gen.dgpt");
  model.trunk = nn::LoadNet(prefix + ".trunk.dgpt");
  model.cond_head = nn::LoadNet(prefix + ".cond.dgpt");
  model.sid_head = nn::LoadNet(prefix + ".sid.dgpt");
  return model;
}

}  // namespace gan
}  // namespace dysaug
