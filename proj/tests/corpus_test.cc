// tests/corpus_test.cc

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

#include <cstdio>
#include <fstream>
#include <sstream>

#include "dysaug/corpus/archive.h"
#include "dysaug/corpus/factors.h"
#include "dysaug/corpus/manifest.h"
#include "dysaug/corpus/pairing.h"
#include "dysaug/corpus/stats.h"
#include "dysaug/signal/wsola.h"
#include "test_util.h"

using namespace dysaug;
using namespace dysaug::testing;
using namespace dysaug::corpus;

namespace {

PhonemeAlignment MakeAlign(const std::string &id,
                           const std::vector<double> &durations,
                           const std::string &label = "aa") {
  PhonemeAlignment a;
  a.utt_id = id;
  double t = 0.0;
  for (double d : durations) {
    a.segments.push_back({label, t, t + d});
    t += d;
  }
  return a;
}

Utterance MakeUtt(const std::string &id, const std::string &spk,
                  SpeakerGroup group, double duration,
                  const std::string &word = "") {
  Utterance u;
  u.utt_id = id;
  u.speaker_id = spk;
  u.group = group;
  u.audio_path = id + ".wav";
  u.duration = duration;
  u.word_id = word;
  return u;
}

}  // namespace

TEST_CASE("estimate_sd_factor on equal and doubled durations") {
  auto control = {MakeAlign("c1", {0.1, 0.1, 0.1})};
  auto same = {MakeAlign("t1", {0.1, 0.1})};
  CHECK(EstimateSdFactor(same, control) == doctest::Approx(1.0));

  // Control mean 0.08 s vs target mean 0.16 s -> 0.5.
  auto fast = {MakeAlign("c2", {0.08, 0.08})};
  auto slow = {MakeAlign("t2", {0.16, 0.16, 0.16})};
  CHECK(EstimateSdFactor(slow, fast) == doctest::Approx(0.5));

  // Slower target gives alpha < 1, which lengthens perturbed control speech.
  CHECK(EstimateSdFactor(slow, fast) < 1.0);
}

TEST_CASE("estimate_sd_factor excludes silence and rejects empties") {
  PhonemeAlignment a = MakeAlign("t", {0.2, 0.2});
  a.segments.push_back({"sil", 0.4, 2.4});  // would skew the mean if counted
  auto control = {MakeAlign("c", {0.1, 0.1})};
  CHECK(EstimateSdFactor({a}, control) == doctest::Approx(0.5));

  CHECK_THROWS_AS(
      EstimateSdFactor(std::vector<PhonemeAlignment>{}, control),
      EmptyAlignment);
  PhonemeAlignment silent;
  silent.utt_id = "s";
  silent.segments.push_back({"sil", 0.0, 1.0});
  CHECK_THROWS_AS(EstimateSdFactor({silent}, control), AllSilence);
}

TEST_CASE("estimate_sd_factor scale law") {
  util::Rng rng(61);
  std::vector<PhonemeAlignment> control = {MakeAlign("c", {0.07, 0.12, 0.09})};
  std::vector<PhonemeAlignment> target = {MakeAlign("t", {0.11, 0.2, 0.14})};
  const double base = EstimateSdFactor(target, control);
  for (double k : {0.5, 1.7, 3.0}) {
    std::vector<PhonemeAlignment> scaled = target;
    for (auto &a : scaled)
      for (auto &s : a.segments) {
        s.start_s *= k;
        s.end_s *= k;
      }
    CHECK(EstimateSdFactor(scaled, control) ==
          doctest::Approx(base / k).epsilon(1e-12));
  }
}

TEST_CASE("pair_scale_factor matches the duration ratio") {
  auto c = MakeUtt("c", "spkC", SpeakerGroup::kControl, 1.0);
  auto t = MakeUtt("t", "spkT", SpeakerGroup::kTarget, 2.0);
  CHECK(PairScaleFactor(c, t) == doctest::Approx(2.0));
  CHECK(PairSpeedFactor(c, t) == doctest::Approx(0.5));

  auto c2 = MakeUtt("c2", "spkC", SpeakerGroup::kControl, 1.5);
  auto t2 = MakeUtt("t2", "spkT", SpeakerGroup::kTarget, 1.0);
  CHECK(PairScaleFactor(c2, t2) == doctest::Approx(2.0 / 3.0));

  auto e = MakeUtt("e", "spk", SpeakerGroup::kControl, 1.0);
  CHECK(PairScaleFactor(e, e) == doctest::Approx(1.0));

  auto w1 = MakeUtt("w1", "a", SpeakerGroup::kControl, 1.0, "cat");
  auto w2 = MakeUtt("w2", "b", SpeakerGroup::kTarget, 1.0, "dog");
  CHECK_THROWS_AS(PairScaleFactor(w1, w2), WordMismatch);

  auto z = MakeUtt("z", "a", SpeakerGroup::kControl, 0.0);
  CHECK_THROWS_AS(PairScaleFactor(z, t), ZeroDuration);
}

TEST_CASE("pair scale factor stretches control to target duration") {
  // Closed-form factor, then verify through the actual perturbation.
  auto wave = Sine(250.0, 1.0, 16000);
  auto c = MakeUtt("c", "spkC", SpeakerGroup::kControl, 1.0);
  auto t = MakeUtt("t", "spkT", SpeakerGroup::kTarget, 2.0);
  const double factor = PairScaleFactor(c, t);
  auto out = signal::TempoPerturb(wave, factor);
  const auto cfg = signal::WsolaConfig::ForSampleRate(16000);
  CHECK(std::fabs(out.DurationSeconds() - t.duration) <=
        static_cast<double>(cfg.frame_len) / 16000.0);
}

TEST_CASE("compute_speaker_stats constants and hand-computed case") {
  signal::Spectrogram flat;
  flat.n_mels = 3;
  flat.n_frames = 4;
  flat.values.assign(12, 3.0);
  auto stats = ComputeSpeakerStats(
      std::vector<const signal::Spectrogram *>{&flat});
  for (double m : stats.mean) CHECK(m == doctest::Approx(3.0));
  for (double s : stats.std) CHECK(s == doctest::Approx(1e-8));

  // Channel 0 frames {0,2} and {4,6}: mean 3, population std sqrt(5).
  signal::Spectrogram a, b;
  a.n_mels = b.n_mels = 1;
  a.n_frames = b.n_frames = 2;
  a.values = {0.0, 2.0};
  b.values = {4.0, 6.0};
  auto st = ComputeSpeakerStats(
      std::vector<const signal::Spectrogram *>{&a, &b});
  CHECK(st.mean[0] == doctest::Approx(3.0));
  CHECK(st.std[0] == doctest::Approx(std::sqrt(5.0)));
}

TEST_CASE("normalize gives pooled zero mean unit variance") {
  util::Rng rng(71);
  std::vector<signal::Spectrogram> specs;
  for (int i = 0; i < 3; ++i)
    specs.push_back(RandomSpectrogram(&rng, 8, 20 + 5 * i));
  auto stats = ComputeSpeakerStats(specs);
  std::vector<signal::Spectrogram> normed;
  for (const auto &s : specs) normed.push_back(Normalize(s, stats));
  auto post = ComputeSpeakerStats(normed);
  for (int c = 0; c < 8; ++c) {
    CHECK(std::fabs(post.mean[c]) < 1e-6);
    CHECK(std::fabs(post.std[c] - 1.0) < 1e-6);
  }
  // Round trip.
  auto back = Denormalize(normed[0], stats);
  for (size_t i = 0; i < back.values.size(); ++i)
    CHECK(back.values[i] == doctest::Approx(specs[0].values[i]));

  CHECK_THROWS_AS(ComputeSpeakerStats(std::vector<signal::Spectrogram>{}),
                  EmptyInput);
  signal::Spectrogram wrong = RandomSpectrogram(&rng, 9, 5);
  CHECK_THROWS_AS(Normalize(wrong, stats), ChannelMismatch);
}

TEST_CASE("make_pairs count laws and determinism") {
  std::vector<Utterance> control, target;
  for (int i = 0; i < 3; ++i)
    control.push_back(MakeUtt("c" + std::to_string(i), "ctrl",
                              SpeakerGroup::kControl, 1.0));
  for (int i = 0; i < 4; ++i)
    target.push_back(MakeUtt("t" + std::to_string(i),
                             "spk" + std::to_string(i % 2),
                             SpeakerGroup::kTarget, 1.0));

  auto ex = MakePairs(PairStrategy::kExhaustive, control, target, 1);
  CHECK(ex.pairs.size() == 12);

  auto rand1 = MakePairs(PairStrategy::kRand, control, target, 42);
  auto rand2 = MakePairs(PairStrategy::kRand, control, target, 42);
  REQUIRE(rand1.pairs.size() == 3);
  for (size_t i = 0; i < rand1.pairs.size(); ++i) {
    CHECK(rand1.pairs[i].source_utt_id == rand2.pairs[i].source_utt_id);
    CHECK(rand1.pairs[i].target_ref == rand2.pairs[i].target_ref);
    // Each control utterance used exactly once, in order.
    CHECK(rand1.pairs[i].source_utt_id == control[i].utt_id);
  }

  auto avg = MakePairs(PairStrategy::kAvg, control, target, 7);
  REQUIRE(avg.pairs.size() == 3);
  for (const auto &p : avg.pairs) {
    CHECK(p.target_ref.rfind(kMeanBasesToken, 0) == 0);
    CHECK(p.target_ref == std::string(kMeanBasesToken) + "@" + p.target_speaker);
  }

  CHECK_THROWS_AS(MakePairs(PairStrategy::kRand, {}, target, 1), EmptySide);
  CHECK_THROWS_AS(MakePairs(PairStrategy::kParallel, control, target, 1),
                  MissingWordIds);
}

TEST_CASE("parallel pairing matches word ids") {
  std::vector<Utterance> control = {
      MakeUtt("c0", "ctrl", SpeakerGroup::kControl, 1.0, "cat"),
      MakeUtt("c1", "ctrl", SpeakerGroup::kControl, 1.0, "dog"),
  };
  std::vector<Utterance> target = {
      MakeUtt("t0", "spk", SpeakerGroup::kTarget, 2.0, "cat"),
      MakeUtt("t1", "spk", SpeakerGroup::kTarget, 2.0, "cat"),
      MakeUtt("t2", "spk", SpeakerGroup::kTarget, 2.0, "bird"),
  };
  auto pm = MakePairs(PairStrategy::kParallel, control, target, 0);
  REQUIRE(pm.pairs.size() == 2);
  CHECK(pm.pairs[0].source_utt_id == "c0");
  CHECK(pm.pairs[0].target_ref == "t0");
  CHECK(pm.pairs[1].target_ref == "t1");
}

TEST_CASE("pair manifest file round trip") {
  std::vector<Utterance> control = {
      MakeUtt("c0", "ctrl", SpeakerGroup::kControl, 1.0)};
  std::vector<Utterance> target = {
      MakeUtt("t0", "spk", SpeakerGroup::kTarget, 1.0)};
  auto pm = MakePairs(PairStrategy::kRand, control, target, 5);
  const std::string path = TempPath("pairs");
  WritePairManifest(path, pm);
  auto back = ReadPairManifest(path);
  CHECK(back.strategy == pm.strategy);
  CHECK(back.seed == pm.seed);
  REQUIRE(back.pairs.size() == pm.pairs.size());
  CHECK(back.pairs[0].source_utt_id == pm.pairs[0].source_utt_id);
  CHECK(back.pairs[0].target_ref == pm.pairs[0].target_ref);
  std::remove(path.c_str());
}

TEST_CASE("manifest parse, round trip, and validation") {
  std::vector<Utterance> utts = {
      MakeUtt("u1", "s1", SpeakerGroup::kControl, 1.25, "cat"),
      MakeUtt("u2", "s2", SpeakerGroup::kTarget, 0.75),
  };
  const std::string path = TempPath("manifest");
  WriteManifest(path, utts);
  auto back = ReadManifest(path);
  REQUIRE(back.size() == 2);
  CHECK(back[0].utt_id == "u1");
  CHECK(back[0].word_id == "cat");
  CHECK(back[1].group == SpeakerGroup::kTarget);
  CHECK(back[1].duration == doctest::Approx(0.75));
  std::remove(path.c_str());

  std::istringstream dup(
      "id=a speaker=s group=control path=p duration=1\n"
      "id=a speaker=s group=control path=p duration=1\n");
  CHECK_THROWS_AS(ParseManifest(dup, "dup"), ManifestError);

  std::istringstream unknown("id=a speaker=s group=control path=p duration=1 "
                             "extra=1\n");
  CHECK_THROWS_AS(ParseManifest(unknown, "unknown"), ManifestError);
}

TEST_CASE("alignment parse validates ordering") {
  std::istringstream good("u1 aa 0.0 0.5\nu1 bb 0.5 0.7\nu2 cc 0 1\n");
  auto aligns = ParseAlignments(good, "good");
  REQUIRE(aligns.size() == 2);
  CHECK(aligns[0].segments.size() == 2);

  std::istringstream overlap("u1 aa 0.0 0.5\nu1 bb 0.4 0.7\n");
  CHECK_THROWS_AS(ParseAlignments(overlap, "overlap"), ManifestError);

  std::istringstream backwards("u1 aa 0.5 0.2\n");
  CHECK_THROWS_AS(ParseAlignments(backwards, "backwards"), ManifestError);
}

TEST_CASE("speaker profile round trip") {
  std::vector<SpeakerProfile> profiles = {
      {"spk1", 0.8125, {0.5, -1.25}, {1.0, 2.5}},
      {"spk2", 1.5, {}, {}},
  };
  const std::string path = TempPath("profiles");
  WriteProfiles(path, profiles);
  auto back = ReadProfiles(path);
  REQUIRE(back.size() == 2);
  CHECK(back[0].speaker_id == "spk1");
  CHECK(back[0].sd_factor == 0.8125);
  REQUIRE(back[0].feat_mean.size() == 2);
  CHECK(back[0].feat_mean[1] == -1.25);
  CHECK(back[1].feat_std.empty());
  std::remove(path.c_str());
}

TEST_CASE("archive round trip is bit exact") {
  util::Rng rng(83);
  std::map<std::string, signal::Spectrogram> feats;
  for (int i = 0; i < 5; ++i) {
    auto s = RandomSpectrogram(&rng, 4 + i, 10 + 3 * i);
    // Float-valued payloads so the double -> float cast is lossless.
    for (auto &v : s.values) v = static_cast<double>(static_cast<float>(v));
    feats["utt" + std::to_string(i)] = s;
  }
  const std::string path = TempPath("archive");
  ArchiveWrite(path, feats);
  auto back = ArchiveRead(path);
  REQUIRE(back.size() == feats.size());
  for (const auto &[id, spec] : feats) {
    REQUIRE(back.count(id) == 1);
    const auto &r = back.at(id);
    CHECK(r.n_mels == spec.n_mels);
    CHECK(r.n_frames == spec.n_frames);
    for (size_t i = 0; i < spec.values.size(); ++i)
      CHECK(r.values[i] == spec.values[i]);
  }
  std::remove(path.c_str());
}

TEST_CASE("empty archive is valid") {
  const std::string path = TempPath("archive_empty");
  ArchiveWrite(path, {});
  CHECK(ArchiveRead(path).empty());
  std::remove(path.c_str());
}

TEST_CASE("truncated archives are rejected, never partially read") {
  util::Rng rng(89);
  std::map<std::string, signal::Spectrogram> feats;
  for (int i = 0; i < 3; ++i)
    feats["utt" + std::to_string(i)] = RandomSpectrogram(&rng, 6, 12);
  const std::string path = TempPath("archive_trunc");
  ArchiveWrite(path, feats);

  std::ifstream is(path, std::ios::binary);
  std::string bytes((std::istreambuf_iterator<char>(is)),
                    std::istreambuf_iterator<char>());
  is.close();

  for (int trial = 0; trial < 24; ++trial) {
    const size_t cut = 1 + rng.UniformIndex(bytes.size() - 1);
    const std::string cut_path = TempPath("archive_cut");
    std::ofstream os(cut_path, std::ios::binary | std::ios::trunc);
    os.write(bytes.data(), static_cast<std::streamsize>(cut));
    os.close();
    CHECK_THROWS_AS(ArchiveRead(cut_path), CorruptArchive);
    std::remove(cut_path.c_str());
  }

  // Flipping a payload byte must break the checksum.
  std::string corrupted = bytes;
  corrupted[bytes.size() - 8] ^= 0x5A;
  const std::string bad_path = TempPath("archive_bad");
  std::ofstream os(bad_path, std::ios::binary | std::ios::trunc);
  os.write(corrupted.data(), static_cast<std::streamsize>(corrupted.size()));
  os.close();
  CHECK_THROWS_AS(ArchiveRead(bad_path), CorruptArchive);
  std::remove(bad_path.c_str());
  std::remove(path.c_str());
}
