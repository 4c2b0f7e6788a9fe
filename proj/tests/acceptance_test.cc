// tests/acceptance_test.cc

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

// End-to-end acceptance suite. Each test case covers one numbered criterion
// and prints a single PASS/FAIL line with its key measurements.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <vector>

#include "dysaug/cli/commands.h"
#include "dysaug/corpus/archive.h"
#include "dysaug/corpus/manifest.h"
#include "dysaug/corpus/pairing.h"
#include "dysaug/gan/dcgan.h"
#include "dysaug/gan/losses.h"
#include "dysaug/gan/sbg.h"
#include "dysaug/nn/grad_check.h"
#include "dysaug/nn/optimizer.h"
#include "dysaug/signal/resample.h"
#include "dysaug/signal/wav_io.h"
#include "dysaug/signal/wsola.h"
#include "dysaug/subspace/svd.h"
#include "test_util.h"

using namespace dysaug;
using namespace dysaug::testing;
using util::Matrix;
namespace fs = std::filesystem;

namespace {

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double Seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

void Report(int criterion, const char *name, bool pass, const char *fmt,
            ...) {
  char detail[512];
  va_list args;
  va_start(args, fmt);
  std::vsnprintf(detail, sizeof(detail), fmt, args);
  va_end(args);
  std::printf("[ACCEPTANCE] %2d. %-22s %s (%s)\n", criterion, name,
              pass ? "PASS" : "FAIL", detail);
  std::fflush(stdout);
}

double Sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }

}  // namespace

TEST_CASE("criterion 1: svd round trip") {
  Stopwatch watch;
  util::Rng rng(101);
  const std::vector<std::pair<int, int>> shapes = {{40, 50}, {40, 317},
                                                   {80, 64}};
  double worst = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    const auto [c, t] = shapes[trial % shapes.size()];
    Matrix m = RandomMatrix(&rng, c, t, 4.0);
    auto svd = subspace::SvdDecompose(m);
    Matrix rec = subspace::RecomposeMatrix(svd.u, svd.sigma, svd.vt);
    worst = std::max(worst, util::FrobeniusDistance(m, rec) /
                                util::FrobeniusNorm(m));
  }
  const double elapsed = watch.Seconds();
  const bool pass = worst < 1e-10 && elapsed < 10.0;
  Report(1, "svd-round-trip", pass, "max_rel_err=%.2e time=%.1fs", worst,
         elapsed);
  CHECK(worst < 1e-10);
  CHECK(elapsed < 10.0);
}

TEST_CASE("criterion 2: gradient oracle for every layer kind") {
  Stopwatch watch;
  util::Rng rng(202);
  const double tol = 1e-4;
  double worst = 0.0;
  int checked = 0;
  bool all_pass = true;

  auto probe = [&](nn::Sequential<double> &net, std::vector<int> shape) {
    std::vector<double> data;
    int64_t numel = 1;
    for (int d : shape) numel *= d;
    for (int64_t i = 0; i < numel; ++i) data.push_back(rng.Uniform() * 2 - 1);
    auto input = nn::Tensor<double>::Leaf(shape, std::move(data));
    auto report = nn::GradCheck(net, input, tol, rng.NextU64(), 12);
    worst = std::max(worst, report.max_rel_error);
    checked += report.num_checked;
    all_pass = all_pass && report.pass;
  };

  for (int trial = 0; trial < 10; ++trial) {
    const int h = 5 + static_cast<int>(rng.UniformIndex(4));
    const int w = 5 + static_cast<int>(rng.UniformIndex(4));
    const int cin = 1 + static_cast<int>(rng.UniformIndex(2));
    const int cout = 1 + static_cast<int>(rng.UniformIndex(3));

    {  // conv2d + relu + replicate_pad
      nn::Sequential<double> net;
      net.Add(nn::LayerSpec::ReplicatePad(1))
          .Add(nn::LayerSpec::Conv2d(cin, cout, 3, 3, 1, 1))
          .Add(nn::LayerSpec::Relu());
      net.InitParams(&rng, 0.5);
      probe(net, {1, cin, h, w});
    }
    {  // strided conv2d + tanh
      nn::Sequential<double> net;
      net.Add(nn::LayerSpec::Conv2d(cin, cout, 2, 2, 2, 2))
          .Add(nn::LayerSpec::MakeTanh());
      net.InitParams(&rng, 0.5);
      probe(net, {2, cin, h + 1, w + 1});
    }
    {  // flatten + fc + leaky_relu + fc + sigmoid
      nn::Sequential<double> net;
      net.Add(nn::LayerSpec::MakeFlatten())
          .Add(nn::LayerSpec::Fc(cin * h * w, 6))
          .Add(nn::LayerSpec::MakeLeakyRelu(0.2))
          .Add(nn::LayerSpec::Fc(6, 3))
          .Add(nn::LayerSpec::MakeSigmoid());
      net.InitParams(&rng, 0.5);
      probe(net, {1, cin, h, w});
    }
  }
  const double elapsed = watch.Seconds();
  const bool pass = all_pass && elapsed < 60.0;
  Report(2, "gradient-oracle", pass,
         "max_rel_err=%.2e coords=%d time=%.1fs", worst, checked, elapsed);
  CHECK(all_pass);
  CHECK(elapsed < 60.0);
}

TEST_CASE("criterion 3: duration and pitch laws") {
  Stopwatch watch;
  util::Rng rng(303);
  const int rate = 16000;
  const auto wsola = signal::WsolaConfig::ForSampleRate(rate);
  const std::vector<double> alphas = {0.5, 0.9, 1.0, 1.1, 2.0};

  bool tempo_ok = true, speed_ok = true, pitch_ok = true;
  long worst_tempo = 0, worst_speed = 0;
  for (double alpha : alphas) {
    for (int trial = 0; trial < 50; ++trial) {
      auto wave = RandomWave(&rng, 0.12 + rng.Uniform() * 0.25, rate);
      const long n = static_cast<long>(wave.NumSamples());

      auto stretched = signal::TempoPerturb(wave, alpha, wsola);
      const long tempo_err =
          std::labs(static_cast<long>(stretched.NumSamples()) -
                    std::lround(alpha * static_cast<double>(n)));
      worst_tempo = std::max(worst_tempo, tempo_err);
      if (tempo_err > wsola.frame_len) tempo_ok = false;

      auto resampled = signal::SpeedPerturb(wave, alpha);
      const long speed_err =
          std::labs(static_cast<long>(resampled.NumSamples()) -
                    std::lround(static_cast<double>(n) / alpha));
      worst_speed = std::max(worst_speed, speed_err);
      if (speed_err > 1) speed_ok = false;
    }

    // Pitch law on sinusoids: dominant frequency scales by alpha.
    const double f0 = 300.0 + 40.0 * alpha;
    auto tone = Sine(f0, 1.0, rate);
    auto shifted = signal::SpeedPerturb(tone, alpha);
    const double got = DominantFrequencyHz(shifted, 8192);
    if (std::fabs(got - alpha * f0) > FftBinHz(rate, 8192)) pitch_ok = false;
  }
  const double elapsed = watch.Seconds();
  const bool pass = tempo_ok && speed_ok && pitch_ok;
  Report(3, "duration-pitch-laws", pass,
         "max_tempo_err=%ld max_speed_err=%ld pitch=%s time=%.1fs",
         worst_tempo, worst_speed, pitch_ok ? "ok" : "off", elapsed);
  CHECK(tempo_ok);
  CHECK(speed_ok);
  CHECK(pitch_ok);
}

TEST_CASE("criterion 4: perturbation bounds and lambda-zero identity") {
  Stopwatch watch;
  const int c = 12;
  gan::SbgConfig cfg;
  cfg.n_mels = c;
  cfg.gen_hidden = {64, 64};
  cfg.disc_trunk = {32, 48, 32};
  util::Rng rng(404);
  auto model = gan::BuildSbg(cfg, {"s1", "s2", "s3"}, &rng);

  bool bound_ok = true;
  util::Rng mrng(405);
  for (int trial = 0; trial < 1000; ++trial) {
    const double lambda = trial % 2 ? 0.1 : 0.2;
    Matrix u = RandomMatrix(&mrng, c, c);
    Matrix raw = gan::SbgPerturbationRaw(
        model, u, model.speakers[trial % model.speakers.size()]);
    Matrix perturbed = subspace::ApplyPerturbation(u, raw, lambda);
    if (!(util::MaxAbsDiff(perturbed, u) <= lambda)) bound_ok = false;
  }

  // Full pipeline identity at lambda = 0.
  model.lambda = 0.0;
  double worst_identity = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    auto spec = RandomSpectrogram(&mrng, c, 20 + 7 * (trial % 5));
    auto out = gan::SbgGenerate(model, spec, "s2");
    double num = 0.0, den = 0.0;
    for (size_t i = 0; i < spec.values.size(); ++i) {
      const double d = out.values[i] - spec.values[i];
      num += d * d;
      den += spec.values[i] * spec.values[i];
    }
    worst_identity = std::max(worst_identity, std::sqrt(num / den));
  }
  const double elapsed = watch.Seconds();
  const bool pass = bound_ok && worst_identity < 1e-10;
  Report(4, "perturbation-bounds", pass,
         "bound=%s lambda0_rel_err=%.2e time=%.1fs",
         bound_ok ? "held" : "violated", worst_identity, elapsed);
  CHECK(bound_ok);
  CHECK(worst_identity < 1e-10);
}

TEST_CASE("criterion 5: loss-oracle equivalence") {
  Stopwatch watch;
  util::Rng rng(505);
  double worst = 0.0;
  for (int batch = 0; batch < 100; ++batch) {
    const int n = 1 + static_cast<int>(rng.UniformIndex(12));
    const int m = 1 + static_cast<int>(rng.UniformIndex(12));
    const int k = 2 + static_cast<int>(rng.UniformIndex(4));

    // Minimax/condition value: E[log D(real)] + E[log(1 - D(fake))].
    std::vector<double> zr(n), zf(m);
    for (auto &v : zr) v = rng.Uniform() * 10.0 - 5.0;
    for (auto &v : zf) v = rng.Uniform() * 10.0 - 5.0;
    const double batched =
        gan::RealFakeValue(nn::Tensor<double>::Leaf({n, 1}, zr),
                           nn::Tensor<double>::Leaf({m, 1}, zf))
            .Data()[0];
    double scalar = 0.0;
    for (double z : zr) scalar += std::log(Sigmoid(z)) / n;
    for (double z : zf) scalar += std::log(1.0 - Sigmoid(z)) / m;
    worst = std::max(worst, std::fabs(batched - scalar));

    // Speaker-id value: mean log-probability of the true speaker on
    // real and fake inputs.
    std::vector<double> sr(static_cast<size_t>(n) * k),
        sf(static_cast<size_t>(n) * k);
    std::vector<int> labels(n);
    for (auto &v : sr) v = rng.Uniform() * 10.0 - 5.0;
    for (auto &v : sf) v = rng.Uniform() * 10.0 - 5.0;
    for (auto &l : labels) l = static_cast<int>(rng.UniformIndex(k));
    const double sid_batched =
        gan::SpeakerIdValue(nn::Tensor<double>::Leaf({n, k}, sr),
                            nn::Tensor<double>::Leaf({n, k}, sf), labels,
                            labels)
            .Data()[0];
    double sid_scalar = 0.0;
    for (int i = 0; i < n; ++i) {
      sid_scalar += std::log(Sigmoid(sr[i * k + labels[i]])) / n;
      sid_scalar += std::log(Sigmoid(sf[i * k + labels[i]])) / n;
    }
    worst = std::max(worst, std::fabs(sid_batched - sid_scalar));

    // One-hot BCE used by the speaker head during training.
    const double bce_batched =
        gan::BceOneHot(nn::Tensor<double>::Leaf({n, k}, sr), labels).Data()[0];
    double bce_scalar = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < k; ++j) {
        const double p = Sigmoid(sr[i * k + j]);
        bce_scalar -=
            (labels[i] == j ? std::log(p) : std::log(1.0 - p)) / n;
      }
    worst = std::max(worst, std::fabs(bce_batched - bce_scalar));
  }
  const double elapsed = watch.Seconds();
  const bool pass = worst < 1e-6;
  Report(5, "loss-oracle", pass, "max_abs_err=%.2e time=%.1fs", worst,
         elapsed);
  CHECK(worst < 1e-6);
}

namespace {

// Toy parallel task: smooth spectrograms with a channel-identifying ramp;
// targets add a fixed Gaussian band.
constexpr int kToyMels = 40;

double ToyBand(int c) {
  const double d = (c - 25.0) / 4.0;
  return 2.0 * std::exp(-0.5 * d * d);
}

signal::Spectrogram ToyControl(util::Rng *rng, int frames) {
  signal::Spectrogram s;
  s.n_mels = kToyMels;
  s.n_frames = frames;
  s.values.resize(static_cast<size_t>(kToyMels) * frames);
  std::vector<double> walk(kToyMels, 0.0);
  for (int t = 0; t < frames; ++t)
    for (int c = 0; c < kToyMels; ++c) {
      const double env = -4.0 + 8.0 * c / (kToyMels - 1.0);
      walk[c] = 0.7 * walk[c] + 0.3 * (rng->Uniform() * 2.0 - 1.0);
      s.At(c, t) = env + 0.4 * walk[c];
    }
  return s;
}

signal::Spectrogram ToyTarget(const signal::Spectrogram &control) {
  auto out = control;
  for (int c = 0; c < control.n_mels; ++c)
    for (int t = 0; t < control.n_frames; ++t) out.At(c, t) += ToyBand(c);
  return out;
}

double MeanAbsError(const signal::Spectrogram &a,
                    const signal::Spectrogram &b) {
  double sum = 0.0;
  for (size_t i = 0; i < a.values.size(); ++i)
    sum += std::fabs(a.values[i] - b.values[i]);
  return sum / static_cast<double>(a.values.size());
}

}  // namespace

TEST_CASE("criterion 6: toy dcgan convergence") {
  Stopwatch watch;
  gan::DcganConfig cfg;
  cfg.n_mels = kToyMels;
  cfg.window = 16;
  cfg.schedule.max_iters = 3000;  // within the 5000-iteration budget
  cfg.schedule.batch_size = 16;
  cfg.schedule.halve_every = 1500;
  cfg.schedule.seed = 20260808;
  util::Rng rng(314159);
  auto model = gan::BuildDcgan(cfg, &rng);

  util::Rng drng(2718);
  std::vector<std::pair<signal::Spectrogram, signal::Spectrogram>> train;
  for (int i = 0; i < 500; ++i) {
    auto control = ToyControl(&drng, 40);
    train.emplace_back(control, ToyTarget(control));
  }
  std::vector<std::pair<signal::Spectrogram, signal::Spectrogram>> held;
  for (int i = 0; i < 50; ++i) {
    auto control = ToyControl(&drng, 40);
    held.emplace_back(control, ToyTarget(control));
  }

  auto report = gan::TrainDcgan(&model, train, cfg);

  double baseline = 0.0, post = 0.0;
  for (const auto &[control, target] : held) {
    baseline += MeanAbsError(control, target);
    post += MeanAbsError(gan::DcganGenerate(model, control), target);
  }
  const double ratio = post / baseline;
  const double d_acc = report.FinalDiscAccuracy();
  const double elapsed = watch.Seconds();
  const bool pass =
      ratio <= 0.5 && d_acc >= 0.35 && d_acc <= 0.65 && elapsed < 300.0;
  Report(6, "toy-dcgan", pass,
         "error_ratio=%.3f d_acc=%.3f iters=%d time=%.0fs", ratio, d_acc,
         cfg.schedule.max_iters, elapsed);
  CHECK(ratio <= 0.5);
  CHECK(d_acc >= 0.35);
  CHECK(d_acc <= 0.65);
  CHECK(elapsed < 300.0);
}

namespace {

// Toy spectral-basis task: three speakers, each a checkerboard offset in a
// distinct row block, targets built from the paired control bases.
constexpr int kSbgMels = 12;
constexpr double kSbgLambda = 0.2;

Matrix SbgRandomBases(util::Rng *rng) {
  signal::Spectrogram s;
  s.n_mels = kSbgMels;
  s.n_frames = 30;
  s.values.resize(static_cast<size_t>(kSbgMels) * 30);
  for (auto &v : s.values) v = rng->Uniform() * 8.0 - 4.0;
  return subspace::SvdDecompose(s).u;
}

Matrix SbgSpeakerOffset(int speaker) {
  Matrix off(kSbgMels, kSbgMels);
  const int rows = kSbgMels / 3;
  for (int r = speaker * rows; r < (speaker + 1) * rows; ++r)
    for (int c = 0; c < kSbgMels; ++c)
      off(r, c) = ((r + c) % 2 ? 0.75 : -0.75);
  return off;
}

}  // namespace

TEST_CASE("criterion 7: toy sbg convergence and lambda ablation") {
  Stopwatch watch;
  gan::SbgConfig cfg;
  cfg.n_mels = kSbgMels;
  cfg.gen_hidden = {256, 256};
  cfg.disc_trunk = {128, 192, 128};
  cfg.lambda = kSbgLambda;
  cfg.schedule.max_iters = 5000;
  cfg.schedule.batch_size = 32;
  cfg.schedule.halve_every = 2500;
  cfg.schedule.seed = 20260808;
  const std::vector<std::string> speakers = {"e0", "e1", "e2"};
  util::Rng rng(20260808 ^ 0x1234);
  auto model = gan::BuildSbg(cfg, speakers, &rng);

  util::Rng drng(777);
  std::map<std::string, Matrix> control;
  std::map<std::string, std::map<std::string, Matrix>> targets;
  corpus::PairManifest pairing;
  pairing.strategy = corpus::PairStrategy::kRand;
  for (int i = 0; i < 120; ++i) {
    const std::string cid = "c" + std::to_string(i);
    control[cid] = SbgRandomBases(&drng);
    const int spk = static_cast<int>(drng.UniformIndex(3));
    const std::string tid = "t" + std::to_string(i);
    targets[speakers[spk]][tid] =
        util::AddScaled(control[cid], SbgSpeakerOffset(spk), kSbgLambda);
    pairing.pairs.push_back({cid, tid, speakers[spk]});
  }

  auto report = gan::TrainSbg(&model, control, targets, pairing, cfg);

  double base = 0.0, post = 0.0;
  for (int i = 0; i < 30; ++i) {
    Matrix u = SbgRandomBases(&drng);
    const int spk = i % 3;
    Matrix target = util::AddScaled(u, SbgSpeakerOffset(spk), kSbgLambda);
    Matrix raw = gan::SbgPerturbationRaw(model, u, speakers[spk]);
    Matrix synth = subspace::ApplyPerturbation(u, raw, kSbgLambda);
    base += util::FrobeniusDistance(u, target);
    post += util::FrobeniusDistance(synth, target);
  }
  const double ratio = post / base;
  const double sid_acc = report.FinalSidAccuracy();

  // Ablation grid: mean relative spectrogram deviation must be monotone
  // non-decreasing in lambda.
  const std::vector<double> grid = {0.001, 0.01, 0.1, 0.2, 1.0, 2.0, 5.0};
  std::vector<double> deviations;
  for (double lambda : grid) {
    gan::SbgModel swept = model;
    swept.lambda = lambda;
    double total = 0.0;
    for (int i = 0; i < 10; ++i) {
      util::Rng srng(9000 + i);  // same spectrograms for every lambda
      auto spec = RandomSpectrogram(&srng, kSbgMels, 25);
      auto out = gan::SbgGenerate(swept, spec, speakers[i % 3]);
      double num = 0.0, den = 0.0;
      for (size_t k = 0; k < spec.values.size(); ++k) {
        const double d = out.values[k] - spec.values[k];
        num += d * d;
        den += spec.values[k] * spec.values[k];
      }
      total += std::sqrt(num / den);
    }
    deviations.push_back(total / 10.0);
  }
  bool monotone = true;
  for (size_t i = 1; i < deviations.size(); ++i)
    if (deviations[i] + 1e-15 < deviations[i - 1]) monotone = false;

  const double elapsed = watch.Seconds();
  const bool pass =
      ratio <= 0.5 && sid_acc > 0.9 && monotone && elapsed < 300.0;
  Report(7, "toy-sbg", pass,
         "error_ratio=%.3f sid_acc=%.3f monotone=%s time=%.0fs", ratio,
         sid_acc, monotone ? "yes" : "no", elapsed);
  CHECK(ratio <= 0.5);
  CHECK(sid_acc > 0.9);
  CHECK(monotone);
  CHECK(elapsed < 300.0);
}

TEST_CASE("criterion 8: bookkeeping laws") {
  Stopwatch watch;
  // SI expansion through the real pipeline: N target utterances, factor set
  // {0.9, 1.0, 1.1} -> exactly 3N archive records.
  const std::string dir = TempPath("accept_book");
  fs::create_directories(dir);
  util::Rng rng(808);
  std::vector<corpus::Utterance> target;
  for (int i = 0; i < 4; ++i) {
    corpus::Utterance u;
    u.utt_id = "d1_u" + std::to_string(i);
    u.speaker_id = "d1";
    u.group = corpus::SpeakerGroup::kTarget;
    u.audio_path = dir + "/" + u.utt_id + ".wav";
    auto wave = RandomWave(&rng, 0.3, 8000);
    signal::WriteWav(u.audio_path, wave);
    u.duration = wave.DurationSeconds();
    target.push_back(u);
  }
  std::vector<corpus::Utterance> control = target;
  for (auto &u : control) {
    u.utt_id = "c" + u.utt_id;
    u.speaker_id = "c1";
    u.group = corpus::SpeakerGroup::kControl;
  }
  const std::string cm = dir + "/control.manifest", tm = dir + "/target.manifest";
  corpus::WriteManifest(cm, control);
  corpus::WriteManifest(tm, target);

  cli::PipelineConfig cfg;
  cfg.mel.n_mels = 16;
  cfg.mel.fft_len = 256;
  cfg.mel.frame_len = 200;
  cfg.mel.frame_hop = 80;
  cfg.mel.fmax = 3800.0;
  cfg.si_factors = {0.9, 1.0, 1.1};
  cfg.control_manifest = cm;
  cfg.target_manifest = tm;
  cfg.out_dir = dir + "/aug";
  cfg.tags = {"S"};
  std::ostringstream out, err;
  const int rc = cli::CmdAugment(cfg, out, err);
  const auto records = corpus::ArchiveRead(cfg.out_dir + "/aug_S.dafa");
  const bool expansion_ok = rc == 0 && records.size() == 3 * target.size();

  // Exhaustive pairing count law.
  auto exhaustive = corpus::MakePairs(corpus::PairStrategy::kExhaustive,
                                      control, target, 3);
  const bool exhaustive_ok =
      exhaustive.pairs.size() == control.size() * target.size();

  // rand pairing: byte-for-byte reproducible from the seed.
  auto r1 = corpus::MakePairs(corpus::PairStrategy::kRand, control, target,
                              909);
  auto r2 = corpus::MakePairs(corpus::PairStrategy::kRand, control, target,
                              909);
  const std::string p1 = dir + "/p1.txt", p2 = dir + "/p2.txt";
  corpus::WritePairManifest(p1, r1);
  corpus::WritePairManifest(p2, r2);
  std::ifstream f1(p1, std::ios::binary), f2(p2, std::ios::binary);
  const std::string b1((std::istreambuf_iterator<char>(f1)),
                       std::istreambuf_iterator<char>());
  const std::string b2((std::istreambuf_iterator<char>(f2)),
                       std::istreambuf_iterator<char>());
  const bool rand_ok = !b1.empty() && b1 == b2;

  const double elapsed = watch.Seconds();
  const bool pass = expansion_ok && exhaustive_ok && rand_ok;
  Report(8, "bookkeeping", pass,
         "si_records=%zu/%zu exhaustive=%zu rand_reproducible=%s time=%.1fs",
         records.size(), 3 * target.size(), exhaustive.pairs.size(),
         rand_ok ? "yes" : "no", elapsed);
  CHECK(expansion_ok);
  CHECK(exhaustive_ok);
  CHECK(rand_ok);
  fs::remove_all(dir);
}

TEST_CASE("criterion 9: learning-rate schedule law") {
  Stopwatch watch;
  // A real recorded trace across both halving boundaries.
  gan::DcganConfig cfg;
  cfg.n_mels = 16;
  cfg.window = 16;
  cfg.schedule.max_iters = 5200;
  cfg.schedule.batch_size = 1;
  cfg.schedule.halve_every = 2500;
  cfg.schedule.base_lr = 2e-4;
  cfg.schedule.seed = 909;
  util::Rng rng(910);
  auto model = gan::BuildDcgan(cfg, &rng);
  util::Rng drng(911);
  std::vector<std::pair<signal::Spectrogram, signal::Spectrogram>> pairs;
  pairs.emplace_back(RandomSpectrogram(&drng, 16, 16),
                     RandomSpectrogram(&drng, 16, 16));
  auto report = gan::TrainDcgan(&model, pairs, cfg);

  bool exact = report.iters.size() == 5200;
  for (const auto &it : report.iters) {
    const double want =
        cfg.schedule.base_lr * std::ldexp(1.0, -(it.iter / 2500));
    if (it.lr != want) exact = false;
  }
  const bool boundaries =
      report.iters[2499].lr == 2e-4 && report.iters[2500].lr == 1e-4 &&
      report.iters[4999].lr == 1e-4 && report.iters[5000].lr == 5e-5;
  const double elapsed = watch.Seconds();
  const bool pass = exact && boundaries;
  Report(9, "schedule-law", pass, "iters=%zu exact=%s time=%.1fs",
         report.iters.size(), exact ? "yes" : "no", elapsed);
  CHECK(exact);
  CHECK(boundaries);
}

TEST_CASE("criterion 10: archive integrity") {
  Stopwatch watch;
  util::Rng rng(1010);
  std::map<std::string, signal::Spectrogram> features;
  for (int i = 0; i < 1000; ++i) {
    auto spec = RandomSpectrogram(&rng, 4 + static_cast<int>(rng.UniformIndex(8)),
                                  6 + static_cast<int>(rng.UniformIndex(20)));
    for (auto &v : spec.values) v = static_cast<double>(static_cast<float>(v));
    features["utt" + std::to_string(i)] = std::move(spec);
  }
  const std::string path = TempPath("accept_archive");
  corpus::ArchiveWrite(path, features);
  auto back = corpus::ArchiveRead(path);
  bool identical = back.size() == features.size();
  for (const auto &[id, spec] : features) {
    const auto it = back.find(id);
    if (it == back.end() || it->second.n_mels != spec.n_mels ||
        it->second.n_frames != spec.n_frames ||
        it->second.values != spec.values) {
      identical = false;
      break;
    }
  }

  std::ifstream is(path, std::ios::binary);
  const std::string bytes((std::istreambuf_iterator<char>(is)),
                          std::istreambuf_iterator<char>());
  is.close();
  int rejected = 0;
  const int trials = 100;
  for (int trial = 0; trial < trials; ++trial) {
    const size_t cut = 1 + rng.UniformIndex(bytes.size() - 1);
    const std::string cut_path = TempPath("accept_cut");
    {
      std::ofstream os(cut_path, std::ios::binary | std::ios::trunc);
      os.write(bytes.data(), static_cast<std::streamsize>(cut));
    }
    try {
      corpus::ArchiveRead(cut_path);
    } catch (const corpus::CorruptArchive &) {
      ++rejected;
    }
    std::remove(cut_path.c_str());
  }
  std::remove(path.c_str());

  const double elapsed = watch.Seconds();
  const bool pass = identical && rejected == trials;
  Report(10, "archive-integrity", pass,
         "round_trip=%s truncations_rejected=%d/%d time=%.1fs",
         identical ? "bit-identical" : "MISMATCH", rejected, trials, elapsed);
  CHECK(identical);
  CHECK(rejected == trials);
}
