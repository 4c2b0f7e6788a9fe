// tests/gan_test.cc

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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>

#include "dysaug/gan/dcgan.h"
#include "dysaug/gan/losses.h"
#include "dysaug/gan/sbg.h"
#include "test_util.h"

using namespace dysaug;
using namespace dysaug::testing;
using util::Matrix;

namespace {

// Generator fixture computing the exact identity: the first conv splits the
// signal into relu(x) and relu(-x) channels, the last recombines them.
gan::DcganModel MakeIdentityDcgan(int n_mels, int window) {
  gan::DcganConfig cfg;
  cfg.n_mels = n_mels;
  cfg.window = window;
  util::Rng rng(1);
  auto model = gan::BuildDcgan(cfg, &rng);
  auto &layers = model.generator.Layers();
  auto zero = [](nn::Tensor<float> &t) {
    std::fill(t.Data().begin(), t.Data().end(), 0.0f);
  };
  // conv at layer index 1: 1 -> 8
  zero(layers[1].weight);
  zero(layers[1].bias);
  layers[1].weight.Data()[0 * 9 + 4] = 1.0f;   // ch0 center: +x
  layers[1].weight.Data()[1 * 9 + 4] = -1.0f;  // ch1 center: -x
  // convs at 4 and 7: 8 -> 8 channelwise identity on ch0, ch1
  for (int li : {4, 7}) {
    zero(layers[li].weight);
    zero(layers[li].bias);
    for (int ch : {0, 1})
      layers[li].weight.Data()[(static_cast<size_t>(ch) * 8 + ch) * 9 + 4] =
          1.0f;
  }
  // conv at 10: 8 -> 1, recombine +ch0 - ch1
  zero(layers[10].weight);
  zero(layers[10].bias);
  layers[10].weight.Data()[0 * 9 + 4] = 1.0f;
  layers[10].weight.Data()[1 * 9 + 4] = -1.0f;
  return model;
}

std::string FileBytes(const std::string &path) {
  std::ifstream is(path, std::ios::binary);
  REQUIRE(is);
  return std::string((std::istreambuf_iterator<char>(is)),
                     std::istreambuf_iterator<char>());
}

}  // namespace

TEST_CASE("batched losses match a scalar-loop re-evaluation") {
  util::Rng rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 1 + static_cast<int>(rng.UniformIndex(8));
    const int m = 1 + static_cast<int>(rng.UniformIndex(8));
    std::vector<double> zr(n), zf(m);
    for (auto &v : zr) v = rng.Uniform() * 8.0 - 4.0;
    for (auto &v : zf) v = rng.Uniform() * 8.0 - 4.0;
    auto real = nn::Tensor<double>::Leaf({n, 1}, zr);
    auto fake = nn::Tensor<double>::Leaf({m, 1}, zf);
    const double got = gan::RealFakeValue(real, fake).Data()[0];

    double want = 0.0;
    for (double z : zr) want += std::log(1.0 / (1.0 + std::exp(-z))) / n;
    for (double z : zf) want += std::log(1.0 - 1.0 / (1.0 + std::exp(-z))) / m;
    CHECK(got == doctest::Approx(want).epsilon(1e-9));
  }
}

TEST_CASE("one-hot bce matches a scalar loop") {
  util::Rng rng(7);
  const int n = 5, k = 3;
  std::vector<double> z(n * k);
  for (auto &v : z) v = rng.Uniform() * 6.0 - 3.0;
  std::vector<int> labels = {0, 2, 1, 2, 0};
  auto logits = nn::Tensor<double>::Leaf({n, k}, z);
  const double got = gan::BceOneHot(logits, labels).Data()[0];

  double want = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < k; ++j) {
      const double p = 1.0 / (1.0 + std::exp(-z[i * k + j]));
      want -= (labels[i] == j ? std::log(p) : std::log(1.0 - p)) / n;
    }
  CHECK(got == doctest::Approx(want).epsilon(1e-9));
}

TEST_CASE("speaker-id value matches a scalar loop") {
  util::Rng rng(9);
  const int n = 4, k = 3;
  std::vector<double> zr(n * k), zf(n * k);
  for (auto &v : zr) v = rng.Uniform() * 6.0 - 3.0;
  for (auto &v : zf) v = rng.Uniform() * 6.0 - 3.0;
  std::vector<int> labels = {2, 0, 1, 1};
  auto real = nn::Tensor<double>::Leaf({n, k}, zr);
  auto fake = nn::Tensor<double>::Leaf({n, k}, zf);
  const double got =
      gan::SpeakerIdValue(real, fake, labels, labels).Data()[0];

  double want = 0.0;
  for (int i = 0; i < n; ++i) {
    want += std::log(1.0 / (1.0 + std::exp(-zr[i * k + labels[i]]))) / n;
    want += std::log(1.0 / (1.0 + std::exp(-zf[i * k + labels[i]]))) / n;
  }
  CHECK(got == doctest::Approx(want).epsilon(1e-9));
}

TEST_CASE("identity fixture generator reproduces its input") {
  auto model = MakeIdentityDcgan(16, 16);
  util::Rng rng(11);
  auto spec = RandomSpectrogram(&rng, 16, 23);
  auto out = gan::DcganGenerate(model, spec);
  REQUIRE(out.n_mels == spec.n_mels);
  REQUIRE(out.n_frames == spec.n_frames);
  for (size_t i = 0; i < spec.values.size(); ++i)
    CHECK(out.values[i] ==
          doctest::Approx(spec.values[i]).epsilon(1e-6));
}

TEST_CASE("dcgan generator preserves shape for any duration") {
  gan::DcganConfig cfg;
  cfg.n_mels = 40;
  cfg.window = 32;
  util::Rng rng(13);
  auto model = gan::BuildDcgan(cfg, &rng);
  for (int t : {9, 40, 127}) {
    auto spec = RandomSpectrogram(&rng, 40, t);
    auto out = gan::DcganGenerate(model, spec);
    CHECK(out.n_mels == 40);
    CHECK(out.n_frames == t);
  }
  auto wrong = RandomSpectrogram(&rng, 39, 10);
  CHECK_THROWS_AS(gan::DcganGenerate(model, wrong), ShapeMismatch);
}

TEST_CASE("dcgan flatten dimension follows the floor law") {
  CHECK(gan::DcganFlattenDim(40, 96) == 64 * 2 * 6);
  CHECK(gan::DcganFlattenDim(40, 32) == 64 * 2 * 2);
  CHECK(gan::DcganFlattenDim(16, 16) == 64 * 1 * 1);
}

TEST_CASE("train_dcgan rejects bad inputs") {
  gan::DcganConfig cfg;
  cfg.n_mels = 16;
  cfg.window = 16;
  cfg.schedule.max_iters = 1;
  util::Rng rng(17);
  auto model = gan::BuildDcgan(cfg, &rng);

  CHECK_THROWS_AS(gan::TrainDcgan(&model, {}, cfg), gan::EmptyTrainingSet);

  std::vector<std::pair<signal::Spectrogram, signal::Spectrogram>> bad;
  bad.emplace_back(RandomSpectrogram(&rng, 16, 20),
                   RandomSpectrogram(&rng, 16, 21));
  CHECK_THROWS_AS(gan::TrainDcgan(&model, bad, cfg), gan::UnalignedPair);
}

TEST_CASE("dcgan training is deterministic and checkpoints round trip") {
  auto run = [](const std::string &prefix) {
    gan::DcganConfig cfg;
    cfg.n_mels = 16;
    cfg.window = 16;
    cfg.schedule.max_iters = 12;
    cfg.schedule.batch_size = 4;
    cfg.schedule.seed = 77;
    cfg.target_speaker = "spk1";
    util::Rng rng(21);
    auto model = gan::BuildDcgan(cfg, &rng);
    util::Rng drng(22);
    std::vector<std::pair<signal::Spectrogram, signal::Spectrogram>> pairs;
    for (int i = 0; i < 6; ++i)
      pairs.emplace_back(RandomSpectrogram(&drng, 16, 24),
                         RandomSpectrogram(&drng, 16, 24));
    auto report = gan::TrainDcgan(&model, pairs, cfg);
    CHECK(report.iters.size() == 12);
    gan::SaveDcgan(prefix, model);
    return report;
  };
  const std::string p1 = TempPath("dcgan_a"), p2 = TempPath("dcgan_b");
  auto r1 = run(p1);
  auto r2 = run(p2);
  CHECK(FileBytes(p1 + ".gen.dgpt") == FileBytes(p2 + ".gen.dgpt"));
  CHECK(FileBytes(p1 + ".disc.dgpt") == FileBytes(p2 + ".disc.dgpt"));
  for (size_t i = 0; i < r1.iters.size(); ++i) {
    CHECK(r1.iters[i].d_loss == r2.iters[i].d_loss);
    CHECK(r1.iters[i].g_loss == r2.iters[i].g_loss);
  }

  auto loaded = gan::LoadDcgan(p1);
  CHECK(loaded.n_mels == 16);
  CHECK(loaded.target_speaker == "spk1");
  util::Rng srng(31);
  auto spec = RandomSpectrogram(&srng, 16, 20);
  auto a = gan::DcganGenerate(loaded, spec);
  gan::DcganConfig cfg2;  // regenerate with the in-memory model for parity
  auto b = gan::DcganGenerate(gan::LoadDcgan(p2), spec);
  for (size_t i = 0; i < a.values.size(); ++i) CHECK(a.values[i] == b.values[i]);

  for (const auto &p : {p1, p2})
    for (const char *suffix : {".gen.dgpt", ".disc.dgpt", ".json"})
      std::remove((p + suffix).c_str());
  CHECK_THROWS_AS(gan::LoadDcgan(p1), gan::MissingCheckpoint);
}

TEST_CASE("lr trace in the report follows the halving schedule") {
  gan::DcganConfig cfg;
  cfg.n_mels = 16;
  cfg.window = 16;
  cfg.schedule.max_iters = 8;
  cfg.schedule.batch_size = 2;
  cfg.schedule.halve_every = 3;
  cfg.schedule.base_lr = 4e-4;
  util::Rng rng(23);
  auto model = gan::BuildDcgan(cfg, &rng);
  util::Rng drng(24);
  std::vector<std::pair<signal::Spectrogram, signal::Spectrogram>> pairs;
  pairs.emplace_back(RandomSpectrogram(&drng, 16, 16),
                     RandomSpectrogram(&drng, 16, 16));
  auto report = gan::TrainDcgan(&model, pairs, cfg);
  for (const auto &it : report.iters)
    CHECK(it.lr == 4e-4 * std::ldexp(1.0, -(it.iter / 3)));
}

TEST_CASE("sbg generator output is tanh bounded and lambda scaled") {
  gan::SbgConfig cfg;
  cfg.n_mels = 12;
  cfg.gen_hidden = {32, 32};
  cfg.disc_trunk = {16, 24, 16};
  cfg.lambda = 0.2;
  util::Rng rng(41);
  auto model = gan::BuildSbg(cfg, {"s1", "s2"}, &rng);

  util::Rng mrng(43);
  for (int trial = 0; trial < 50; ++trial) {
    Matrix u = RandomMatrix(&mrng, 12, 12);
    Matrix raw = gan::SbgPerturbationRaw(model, u, "s2");
    CHECK(util::MaxAbs(raw) < 1.0);  // strict tanh range
    Matrix perturbed = subspace::ApplyPerturbation(u, raw, cfg.lambda);
    CHECK(util::MaxAbsDiff(perturbed, u) <= cfg.lambda);
  }
  CHECK_THROWS_AS(gan::SbgPerturbationRaw(model, RandomMatrix(&mrng, 12, 12),
                                          "unknown"),
                  gan::UnknownSpeakerInPairing);
}

TEST_CASE("sbg_generate with lambda zero is the identity") {
  gan::SbgConfig cfg;
  cfg.n_mels = 10;
  cfg.gen_hidden = {24, 24};
  cfg.disc_trunk = {12, 16, 12};
  cfg.lambda = 0.0;
  util::Rng rng(47);
  auto model = gan::BuildSbg(cfg, {"s1"}, &rng);

  util::Rng mrng(48);
  auto spec = RandomSpectrogram(&mrng, 10, 37);
  auto out = gan::SbgGenerate(model, spec, "s1");
  REQUIRE(out.n_frames == spec.n_frames);
  double num = 0.0, den = 0.0;
  for (size_t i = 0; i < spec.values.size(); ++i) {
    const double d = out.values[i] - spec.values[i];
    num += d * d;
    den += spec.values[i] * spec.values[i];
  }
  CHECK(std::sqrt(num / den) < 1e-10);
}

TEST_CASE("sbg_generate keeps duration and respects the deviation bound") {
  gan::SbgConfig cfg;
  cfg.n_mels = 14;
  cfg.gen_hidden = {32, 32};
  cfg.disc_trunk = {16, 16, 16};
  cfg.lambda = 0.3;
  util::Rng rng(53);
  auto model = gan::BuildSbg(cfg, {"s1"}, &rng);

  util::Rng mrng(54);
  for (int trial = 0; trial < 10; ++trial) {
    auto spec = RandomSpectrogram(&mrng, 14, 20 + trial);
    auto svd = subspace::SvdDecompose(spec);
    auto out = gan::SbgGenerate(model, spec, "s1");
    CHECK(out.n_frames == spec.n_frames);

    // ||S' - S||_F <= lambda * sqrt(C*C) * sigma_max * sqrt(T).
    double diff = 0.0;
    for (size_t i = 0; i < spec.values.size(); ++i) {
      const double d = out.values[i] - spec.values[i];
      diff += d * d;
    }
    diff = std::sqrt(diff);
    const double bound = cfg.lambda * 14.0 * svd.sigma[0] *
                         std::sqrt(static_cast<double>(spec.n_frames));
    CHECK(diff <= bound + 1e-9);
  }
}

TEST_CASE("sbg training requires known speakers and pairs") {
  gan::SbgConfig cfg;
  cfg.n_mels = 8;
  cfg.gen_hidden = {16, 16};
  cfg.disc_trunk = {8, 12, 8};
  cfg.schedule.max_iters = 1;
  util::Rng rng(59);
  auto model = gan::BuildSbg(cfg, {"s1"}, &rng);

  corpus::PairManifest empty;
  CHECK_THROWS_AS(gan::TrainSbg(&model, {}, {}, empty, cfg),
                  gan::EmptyTrainingSet);

  util::Rng mrng(60);
  std::map<std::string, Matrix> control = {{"c0", RandomMatrix(&mrng, 8, 8)}};
  std::map<std::string, std::map<std::string, Matrix>> targets;
  targets["s1"]["t0"] = RandomMatrix(&mrng, 8, 8);

  corpus::PairManifest bad;
  bad.pairs.push_back({"c0", "t0", "mystery"});
  CHECK_THROWS_AS(gan::TrainSbg(&model, control, targets, bad, cfg),
                  gan::UnknownSpeakerInPairing);

  corpus::PairManifest good;
  good.pairs.push_back({"c0", "t0", "s1"});
  auto report = gan::TrainSbg(&model, control, targets, good, cfg);
  CHECK(report.iters.size() == 1);
}

TEST_CASE("sbg mean-bases pairing resolves per speaker") {
  gan::SbgConfig cfg;
  cfg.n_mels = 8;
  cfg.gen_hidden = {16, 16};
  cfg.disc_trunk = {8, 12, 8};
  cfg.schedule.max_iters = 2;
  cfg.schedule.batch_size = 2;
  util::Rng rng(61);
  auto model = gan::BuildSbg(cfg, {"s1", "s2"}, &rng);

  util::Rng mrng(62);
  std::map<std::string, Matrix> control = {{"c0", RandomMatrix(&mrng, 8, 8)},
                                           {"c1", RandomMatrix(&mrng, 8, 8)}};
  std::map<std::string, std::map<std::string, Matrix>> targets;
  targets["s1"]["t0"] = RandomMatrix(&mrng, 8, 8);
  targets["s2"]["t1"] = RandomMatrix(&mrng, 8, 8);

  corpus::PairManifest pm;
  pm.strategy = corpus::PairStrategy::kAvg;
  pm.pairs.push_back({"c0", "MEAN_BASES@s1", "s1"});
  pm.pairs.push_back({"c1", "MEAN_BASES@s2", "s2"});
  auto report = gan::TrainSbg(&model, control, targets, pm, cfg);
  CHECK(report.iters.size() == 2);
  CHECK(std::isfinite(report.iters.back().d_loss));
}

TEST_CASE("sbg training is deterministic and checkpoints round trip") {
  auto run = [](const std::string &prefix) {
    gan::SbgConfig cfg;
    cfg.n_mels = 8;
    cfg.gen_hidden = {16, 16};
    cfg.disc_trunk = {8, 12, 8};
    cfg.lambda = 0.15;
    cfg.schedule.max_iters = 10;
    cfg.schedule.batch_size = 4;
    cfg.schedule.seed = 5;
    util::Rng rng(63);
    auto model = gan::BuildSbg(cfg, {"s1", "s2"}, &rng);
    util::Rng mrng(64);
    std::map<std::string, Matrix> control;
    std::map<std::string, std::map<std::string, Matrix>> targets;
    for (int i = 0; i < 4; ++i)
      control["c" + std::to_string(i)] = RandomMatrix(&mrng, 8, 8);
    targets["s1"]["t0"] = RandomMatrix(&mrng, 8, 8);
    targets["s2"]["t1"] = RandomMatrix(&mrng, 8, 8);
    corpus::PairManifest pm;
    for (int i = 0; i < 4; ++i)
      pm.pairs.push_back({"c" + std::to_string(i), i % 2 ? "t1" : "t0",
                          i % 2 ? "s2" : "s1"});
    gan::TrainSbg(&model, control, targets, pm, cfg);
    gan::SaveSbg(prefix, model);
  };
  const std::string p1 = TempPath("sbg_a"), p2 = TempPath("sbg_b");
  run(p1);
  run(p2);
  for (const char *part : {".gen.dgpt", ".trunk.dgpt", ".cond.dgpt",
                           ".sid.dgpt"})
    CHECK(FileBytes(p1 + part) == FileBytes(p2 + part));

  auto loaded = gan::LoadSbg(p1);
  CHECK(loaded.n_mels == 8);
  CHECK(loaded.lambda == 0.15);
  REQUIRE(loaded.speakers.size() == 2);
  CHECK(loaded.speakers[1] == "s2");

  for (const auto &p : {p1, p2})
    for (const char *suffix :
         {".gen.dgpt", ".trunk.dgpt", ".cond.dgpt", ".sid.dgpt", ".json"})
      std::remove((p + suffix).c_str());
}

TEST_CASE("sbg_plus_sg composed identity and framing law") {
  const int kRate = 16000;
  signal::MelConfig mel;
  mel.n_mels = 16;

  gan::SbgConfig scfg;
  scfg.n_mels = 16;
  scfg.gen_hidden = {16, 16};
  scfg.disc_trunk = {8, 8, 8};
  scfg.lambda = 0.0;
  util::Rng rng(71);
  auto sbg = gan::BuildSbg(scfg, {"spk"}, &rng);
  auto dcgan = MakeIdentityDcgan(16, 16);
  dcgan.target_speaker = "spk";

  auto wave = RandomWave(&rng, 1.0, kRate);

  SUBCASE("identity fixtures with sd_factor 1.0") {
    auto direct = signal::MelFbank(wave, mel);
    auto out = gan::SbgPlusSg(wave, sbg, dcgan, 1.0, mel);
    REQUIRE(out.n_frames == direct.n_frames);
    double num = 0.0, den = 0.0;
    for (size_t i = 0; i < direct.values.size(); ++i) {
      const double d = out.values[i] - direct.values[i];
      num += d * d;
      den += direct.values[i] * direct.values[i];
    }
    CHECK(std::sqrt(num / den) < 1e-5);
  }

  SUBCASE("sd_factor 0.5 doubles duration through framing") {
    auto out = gan::SbgPlusSg(wave, sbg, dcgan, 0.5, mel);
    const long stretched_len =
        std::lround(static_cast<double>(wave.NumSamples()) / 0.5);
    const int want_frames = 1 + static_cast<int>((stretched_len - mel.frame_len) /
                                                 mel.frame_hop);
    CHECK(out.n_frames == want_frames);
    const auto base = signal::MelFbank(wave, mel);
    CHECK(std::abs(out.n_frames - 2 * base.n_frames) <= 3);
  }
}

TEST_CASE("report files round trip") {
  gan::GanTrainReport report;
  for (int i = 0; i < 5; ++i)
    report.iters.push_back({i, 2e-4, -1.0 * i, 0.5 * i, 0.5, 0.75});
  const std::string path = TempPath("report");
  gan::WriteReport(path, report);
  auto back = gan::ReadReport(path);
  REQUIRE(back.iters.size() == 5);
  CHECK(back.iters[3].d_loss == report.iters[3].d_loss);
  CHECK(back.iters[4].lr == 2e-4);
  CHECK(back.FinalDiscAccuracy() == doctest::Approx(0.5));
  std::remove(path.c_str());
}
