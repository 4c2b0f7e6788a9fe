// src/gan/dcgan.cc

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

#include "dysaug/gan/dcgan.h"

#include <cmath>
#include <fstream>

#include <json.hpp>

#include "dysaug/nn/checkpoint.h"

namespace dysaug {
namespace gan {

using nn::LayerSpec;
using nn::Tensor;

namespace {

// Copies a window of `width` frames starting at `offset` into a flat
// (1, C, width) block, replicating the final frame when the source is short.
void CopyWindow(const signal::Spectrogram &spec, int offset, int width,
                float *dst) {
  for (int c = 0; c < spec.n_mels; ++c)
    for (int t = 0; t < width; ++t) {
      int src = offset + t;
      if (src >= spec.n_frames) src = spec.n_frames - 1;
      dst[static_cast<size_t>(c) * width + t] =
          static_cast<float>(spec.At(c, src));
    }
}

struct Batch {
  Tensor<float> control;
  Tensor<float> target;
};

Batch SampleBatch(
    const std::vector<std::pair<signal::Spectrogram, signal::Spectrogram>>
        &pairs,
    int batch_size, int n_mels, int window, util::Rng *rng) {
  const size_t plane = static_cast<size_t>(n_mels) * window;
  std::vector<float> control(static_cast<size_t>(batch_size) * plane);
  std::vector<float> target(control.size());
  for (int b = 0; b < batch_size; ++b) {
    const auto &pair = pairs[rng->UniformIndex(pairs.size())];
    const int t_max = pair.first.n_frames - window;
    const int offset =
        t_max > 0 ? static_cast<int>(rng->UniformInt(0, t_max)) : 0;
    CopyWindow(pair.first, offset, window, control.data() + b * plane);
    CopyWindow(pair.second, offset, window, target.data() + b * plane);
  }
  Batch batch;
  batch.control = Tensor<float>::Leaf({batch_size, 1, n_mels, window},
                                      std::move(control));
  batch.target = Tensor<float>::Leaf({batch_size, 1, n_mels, window},
                                     std::move(target));
  return batch;
}

double FractionCorrect(const std::vector<float> &real_p,
                       const std::vector<float> &fake_p) {
  long correct = 0;
  for (float p : real_p)
    if (p > 0.5f) ++correct;
  for (float p : fake_p)
    if (p < 0.5f) ++correct;
  return static_cast<double>(correct) /
         static_cast<double>(real_p.size() + fake_p.size());
}

}  // namespace

int DcganFlattenDim(int n_mels, int window) {
  int h = n_mels, w = window;
  for (int i = 0; i < 4; ++i) {
    h = (h - 2) / 2 + 1;
    w = (w - 2) / 2 + 1;
  }
  return 64 * h * w;
}

DcganModel BuildDcgan(const DcganConfig &cfg, util::Rng *rng) {
  if (cfg.n_mels < 16 || cfg.window < 16)
    throw ShapeMismatch(
        "BuildDcgan: input must be at least 16 x 16 for four stride-2 convs");
  DcganModel model;
  model.n_mels = cfg.n_mels;
  model.window = cfg.window;
  model.target_speaker = cfg.target_speaker;

  auto &g = model.generator;
  g.Add(LayerSpec::ReplicatePad(1))
      .Add(LayerSpec::Conv2d(1, 8, 3, 3, 1, 1))
      .Add(LayerSpec::Relu())
      .Add(LayerSpec::ReplicatePad(1))
      .Add(LayerSpec::Conv2d(8, 8, 3, 3, 1, 1))
      .Add(LayerSpec::Relu())
      .Add(LayerSpec::ReplicatePad(1))
      .Add(LayerSpec::Conv2d(8, 8, 3, 3, 1, 1))
      .Add(LayerSpec::Relu())
      .Add(LayerSpec::ReplicatePad(1))
      .Add(LayerSpec::Conv2d(8, 1, 3, 3, 1, 1));
  g.InitParams(rng, cfg.init_stddev);
  if (cfg.identity_init) {
    // Center-tap passthrough: channel 0 carries relu(x), channel 1 carries
    // relu(-x), and the final conv recombines them into x.
    auto &layers = g.Layers();
    auto center = [](int oc, int ic, int cin) {
      return (static_cast<size_t>(oc) * cin + ic) * 9 + 4;
    };
    layers[1].weight.Data()[center(0, 0, 1)] += 1.0f;
    layers[1].weight.Data()[center(1, 0, 1)] -= 1.0f;
    for (int li : {4, 7})
      for (int ch : {0, 1})
        layers[li].weight.Data()[center(ch, ch, 8)] += 1.0f;
    layers[10].weight.Data()[center(0, 0, 8)] += 1.0f;
    layers[10].weight.Data()[center(0, 1, 8)] -= 1.0f;
  }

  // LeakyReLU after each strided conv: without a nonlinearity the four
  // convs collapse to a single linear probe, which a generator can satisfy
  // while drifting everywhere else.
  auto &d = model.discriminator;
  d.Add(LayerSpec::Conv2d(1, 8, 2, 2, 2, 2))
      .Add(LayerSpec::MakeLeakyRelu(0.2))
      .Add(LayerSpec::Conv2d(8, 16, 2, 2, 2, 2))
      .Add(LayerSpec::MakeLeakyRelu(0.2))
      .Add(LayerSpec::Conv2d(16, 32, 2, 2, 2, 2))
      .Add(LayerSpec::MakeLeakyRelu(0.2))
      .Add(LayerSpec::Conv2d(32, 64, 2, 2, 2, 2))
      .Add(LayerSpec::MakeLeakyRelu(0.2))
      .Add(LayerSpec::MakeFlatten())
      .Add(LayerSpec::Fc(DcganFlattenDim(cfg.n_mels, cfg.window), 1))
      .Add(LayerSpec::MakeSigmoid());
  d.InitParams(rng, cfg.init_stddev);
  return model;
}

GanTrainReport TrainDcgan(
    DcganModel *model,
    const std::vector<std::pair<signal::Spectrogram, signal::Spectrogram>>
        &pairs,
    const DcganConfig &cfg) {
  if (pairs.empty()) throw EmptyTrainingSet("TrainDcgan: no pairs");
  for (const auto &[control, target] : pairs) {
    if (control.n_mels != model->n_mels || target.n_mels != model->n_mels)
      throw ShapeMismatch("TrainDcgan: channel count mismatch");
    if (control.n_frames != target.n_frames)
      throw UnalignedPair("TrainDcgan: pair frame counts differ (" +
                          std::to_string(control.n_frames) + " vs " +
                          std::to_string(target.n_frames) + ")");
  }
  cfg.schedule.Validate();

  util::Rng rng(cfg.schedule.seed);
  nn::Optimizer<float> opt_d(model->discriminator.Params(), cfg.schedule);
  nn::Optimizer<float> opt_g(model->generator.Params(), cfg.schedule);

  GanTrainReport report;
  report.iters.reserve(static_cast<size_t>(cfg.schedule.max_iters));
  for (int iter = 0; iter < cfg.schedule.max_iters; ++iter) {
    Batch batch = SampleBatch(pairs, cfg.schedule.batch_size, model->n_mels,
                              model->window, &rng);

    // Discriminator step: ascend log D(real) + log(1 - D(G(control))).
    auto fake = model->generator.Forward(batch.control).Detach();
    auto real_logits = model->discriminator.ForwardLogits(batch.target);
    auto fake_logits = model->discriminator.ForwardLogits(fake);
    auto d_value = RealFakeValue(real_logits, fake_logits);
    auto d_loss = nn::Scale(d_value, -1.0);
    nn::Backward(d_loss);
    opt_d.Step(iter);

    // Generator step.
    auto fake2 = model->generator.Forward(batch.control);
    auto fake2_logits = model->discriminator.ForwardLogits(fake2);
    auto g_loss = cfg.non_saturating
                      ? BceWithLogits(fake2_logits, /*positive_label=*/true)
                      : nn::Mean(nn::LogSigmoid(nn::Scale(fake2_logits, -1.0)));
    nn::Backward(g_loss);
    opt_g.Step(iter);
    model->discriminator.ZeroGrads();

    GanTrainReport::Iteration rec;
    rec.iter = iter;
    rec.lr = nn::LearningRate(cfg.schedule, iter);
    rec.d_loss = static_cast<double>(d_loss.Data()[0]);
    rec.g_loss = static_cast<double>(g_loss.Data()[0]);
    std::vector<float> real_p(real_logits.Data().size());
    std::vector<float> fake_p(fake_logits.Data().size());
    for (size_t i = 0; i < real_p.size(); ++i)
      real_p[i] = nn::StableSigmoid(real_logits.Data()[i]);
    for (size_t i = 0; i < fake_p.size(); ++i)
      fake_p[i] = nn::StableSigmoid(fake_logits.Data()[i]);
    rec.d_acc = FractionCorrect(real_p, fake_p);
    rec.sid_acc = std::nan("");
    report.iters.push_back(rec);
  }
  return report;
}

signal::Spectrogram DcganGenerate(const DcganModel &model,
                                  const signal::Spectrogram &input) {
  if (input.n_mels != model.n_mels)
    throw ShapeMismatch("DcganGenerate: channel count mismatch");
  std::vector<float> data(input.values.size());
  for (size_t i = 0; i < data.size(); ++i)
    data[i] = static_cast<float>(input.values[i]);
  auto x = Tensor<float>::Leaf({1, 1, input.n_mels, input.n_frames},
                               std::move(data));
  auto y = model.generator.Forward(x);
  signal::Spectrogram out;
  out.n_mels = input.n_mels;
  out.n_frames = input.n_frames;
  out.frame_hop = input.frame_hop;
  out.sample_rate = input.sample_rate;
  out.values.resize(y.Data().size());
  for (size_t i = 0; i < out.values.size(); ++i)
    out.values[i] = static_cast<double>(y.Data()[i]);
  return out;
}

void SaveDcgan(const std::string &prefix, const DcganModel &model) {
  nn::SaveNet(prefix + ".gen.dgpt", model.generator);
  nn::SaveNet(prefix + ".disc.dgpt", model.discriminator);
  nlohmann::json meta = {
      {"kind", "dcgan"},
      {"n_mels", model.n_mels},
      {"window", model.window},
      {"target_speaker", model.target_speaker},
  };
  std::ofstream os(prefix + ".json", std::ios::trunc);
  if (!os) throw IoError("SaveDcgan: cannot open " + prefix + ".json");
  os << meta.dump(2) << "\n";
}

DcganModel LoadDcgan(const std::string &prefix) {
  std::ifstream is(prefix + ".json");
  if (!is)
    throw MissingCheckpoint("LoadDcgan: missing " + prefix + ".json");
  nlohmann::json meta = nlohmann::json::parse(is, nullptr,
                                              /*allow_exceptions=*/true);
  if (meta.value("kind", "") != "dcgan")
    throw MissingCheckpoint("LoadDcgan: " + prefix + " is not a dcgan");
  DcganModel model;
  model.n_mels = meta.at("n_mels").get<int>();
  model.window = meta.at("window").get<int>();
  model.target_speaker = meta.value("target_speaker", "");
  model.generator = nn::LoadNet(prefix + ".gen.dgpt");
  model.discriminator = nn::LoadNet(prefix + ".disc.dgpt");
  return model;
}

}  // namespace gan
}  // namespace dysaug
