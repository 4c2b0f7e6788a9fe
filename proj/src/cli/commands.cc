// src/cli/commands.cc

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

#include "dysaug/cli/commands.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <set>

#include <json.hpp>

#include "dysaug/corpus/archive.h"
#include "dysaug/corpus/factors.h"
#include "dysaug/corpus/manifest.h"
#include "dysaug/corpus/pairing.h"
#include "dysaug/corpus/stats.h"
#include "dysaug/gan/dcgan.h"
#include "dysaug/gan/sbg.h"
#include "dysaug/nn/checkpoint.h"
#include "dysaug/signal/resample.h"
#include "dysaug/signal/wav_io.h"
#include "dysaug/signal/wsola.h"
#include "dysaug/subspace/svd.h"
#include "dysaug/util/parallel.h"

namespace dysaug {
namespace cli {

namespace {

namespace fs = std::filesystem;
using corpus::SpeakerGroup;
using corpus::Utterance;
using signal::Spectrogram;

std::string FormatG(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

signal::WsolaConfig WsolaFor(const PipelineConfig &cfg, int sample_rate) {
  return cfg.wsola_explicit ? cfg.wsola
                            : signal::WsolaConfig::ForSampleRate(sample_rate);
}

// Work-item outcome used by the extraction/augmentation loops.
struct ItemResult {
  std::string id;
  std::optional<Spectrogram> spec;
  std::string error;
  std::string stages;  // provenance chain, ';' separated
  std::string speaker;
};

std::map<std::string, std::vector<const Spectrogram *>> GroupBySpeaker(
    const std::vector<ItemResult> &items) {
  std::map<std::string, std::vector<const Spectrogram *>> by_speaker;
  for (const auto &item : items)
    if (item.spec) by_speaker[item.speaker].push_back(&*item.spec);
  return by_speaker;
}

// Writes successful records plus a provenance sidecar (<archive>.meta).
void WriteArchiveWithMeta(const std::string &archive_path,
                          const std::vector<ItemResult> &items) {
  std::map<std::string, Spectrogram> records;
  for (const auto &item : items)
    if (item.spec) {
      if (!records.emplace(item.id, *item.spec).second)
        throw corpus::DuplicateId("duplicate augmented record id '" +
                                  item.id + "'");
    }
  corpus::ArchiveWrite(archive_path, records);

  std::ofstream meta(archive_path + ".meta", std::ios::trunc);
  if (!meta) throw IoError("cannot open " + archive_path + ".meta");
  for (const auto &item : items)
    if (item.spec) meta << item.id << "\t" << item.stages << "\n";
}

std::map<std::string, double> SdFactorsBySpeaker(const PipelineConfig &cfg) {
  if (cfg.profiles.empty())
    throw ConfigError("this command needs `profiles` in the config");
  std::map<std::string, double> factors;
  for (const auto &p : corpus::ReadProfiles(cfg.profiles))
    factors[p.speaker_id] = p.sd_factor;
  return factors;
}

std::vector<std::string> TargetSpeakersInOrder(
    const std::vector<Utterance> &utts) {
  std::vector<std::string> speakers;
  for (const auto &u : utts) {
    if (u.group != SpeakerGroup::kTarget) continue;
    if (std::find(speakers.begin(), speakers.end(), u.speaker_id) ==
        speakers.end())
      speakers.push_back(u.speaker_id);
  }
  return speakers;
}

// Normalizes every successful item per speaker (pooled stats within this
// item set), in place.
void NormalizePerSpeaker(std::vector<ItemResult> *items) {
  auto by_speaker = GroupBySpeaker(*items);
  std::map<std::string, corpus::SpeakerStats> stats;
  for (const auto &[spk, specs] : by_speaker)
    stats.emplace(spk, corpus::ComputeSpeakerStats(specs));
  for (auto &item : *items)
    if (item.spec) item.spec = corpus::Normalize(*item.spec, stats.at(item.speaker));
}

int CountFailures(const std::vector<ItemResult> &items, std::ostream &err,
                  const char *event) {
  int failed = 0;
  for (const auto &item : items)
    if (!item.spec) {
      ++failed;
      err << "event=" << event << " id=" << item.id << " msg=\""
          << item.error << "\"\n";
    }
  return failed;
}

}  // namespace

int CmdExtract(const PipelineConfig &cfg, const std::string &manifest_path,
               const std::string &out_archive, std::ostream &out,
               std::ostream &err) {
  const auto utts = corpus::ReadManifest(manifest_path);
  std::vector<ItemResult> items(utts.size());
  util::ParallelFor(utts.size(), cfg.jobs, [&](size_t i) {
    items[i].id = utts[i].utt_id;
    items[i].speaker = utts[i].speaker_id;
    try {
      auto wave = signal::ReadWav(utts[i].audio_path);
      items[i].spec = signal::MelFbank(wave, cfg.mel);
      items[i].stages = "mel_fbank";
    } catch (const Error &e) {
      items[i].error = e.what();
    }
  });

  WriteArchiveWithMeta(out_archive, items);
  const int failed = CountFailures(items, err, "extract_error");
  long frames = 0;
  for (const auto &item : items)
    if (item.spec) frames += item.spec->n_frames;
  out << "extract archive=" << out_archive << " records="
      << (items.size() - failed) << " failed=" << failed
      << " total_frames=" << frames << "\n";
  return failed ? 1 : 0;
}

int CmdEstimateFactors(const PipelineConfig &cfg,
                       const std::string &manifest_path,
                       const std::string &align_path,
                       const std::string &out_profiles, std::ostream &out,
                       std::ostream &err) {
  (void)cfg;
  const auto utts = corpus::ReadManifest(manifest_path);
  const auto aligns = corpus::ReadAlignments(align_path);
  std::map<std::string, corpus::PhonemeAlignment> by_utt;
  for (const auto &a : aligns) by_utt[a.utt_id] = a;

  std::vector<corpus::PhonemeAlignment> control_aligns;
  std::map<std::string, std::vector<corpus::PhonemeAlignment>> target_aligns;
  std::vector<std::string> target_order = TargetSpeakersInOrder(utts);
  for (const auto &u : utts) {
    auto it = by_utt.find(u.utt_id);
    if (it == by_utt.end()) continue;
    if (u.group == SpeakerGroup::kControl)
      control_aligns.push_back(it->second);
    else
      target_aligns[u.speaker_id].push_back(it->second);
  }
  if (target_order.empty())
    throw ConfigError("estimate-factors: manifest has no target speakers");
  if (control_aligns.empty())
    throw MissingAlignments("no control alignments found");

  std::vector<std::string> missing;
  for (const auto &spk : target_order)
    if (!target_aligns.count(spk)) missing.push_back(spk);
  if (!missing.empty()) {
    for (const auto &spk : missing)
      err << "event=missing_alignments speaker=" << spk << "\n";
    throw MissingAlignments("alignments missing for " +
                            std::to_string(missing.size()) + " speaker(s)");
  }

  const double d_control =
      corpus::MeanPhonemeDuration(control_aligns,
                                  corpus::DefaultSilenceLabels());
  std::vector<corpus::SpeakerProfile> profiles;
  for (const auto &spk : target_order) {
    corpus::SpeakerProfile p;
    p.speaker_id = spk;
    p.sd_factor =
        corpus::EstimateSdFactor(target_aligns.at(spk), control_aligns);
    profiles.push_back(std::move(p));
  }
  corpus::WriteProfiles(out_profiles, profiles);
  out << "estimate-factors profiles=" << out_profiles
      << " speakers=" << profiles.size()
      << " control_mean_phoneme_s=" << FormatG(d_control) << "\n";
  for (const auto &p : profiles)
    out << "speaker=" << p.speaker_id
        << " sd_factor=" << FormatG(p.sd_factor) << "\n";
  return 0;
}

int CmdPerturb(const PipelineConfig &cfg, const std::string &manifest_path,
               const std::string &mode, const std::vector<double> &factors,
               const std::string &out_dir, const std::string &out_manifest,
               std::ostream &out, std::ostream &err) {
  if (mode != "tempo" && mode != "speed")
    throw ConfigError("perturb: mode must be tempo or speed");
  const auto utts = corpus::ReadManifest(manifest_path);
  fs::create_directories(out_dir);

  // (factor label, factor, speaker tag) triples to apply per utterance.
  struct Job {
    std::string label;
    double factor;
  };
  std::vector<Job> jobs;
  if (!factors.empty()) {
    for (double f : factors) jobs.push_back({FormatG(f), f});
  } else {
    for (const auto &[spk, f] : SdFactorsBySpeaker(cfg))
      jobs.push_back({spk, mode == "tempo" ? 1.0 / f : f});
  }
  if (jobs.empty()) throw ConfigError("perturb: no factors to apply");

  struct WavResult {
    Utterance utt;
    bool ok = false;
    std::string error;
  };
  std::vector<WavResult> results(utts.size() * jobs.size());
  util::ParallelFor(results.size(), cfg.jobs, [&](size_t k) {
    const auto &u = utts[k / jobs.size()];
    const auto &job = jobs[k % jobs.size()];
    WavResult &r = results[k];
    r.utt = u;
    r.utt.utt_id = mode + "-" + job.label + "-" + u.utt_id;
    r.utt.audio_path = (fs::path(out_dir) / (r.utt.utt_id + ".wav")).string();
    try {
      auto wave = signal::ReadWav(u.audio_path);
      signal::Waveform perturbed =
          mode == "tempo"
              ? signal::TempoPerturb(wave, job.factor,
                                     WsolaFor(cfg, wave.sample_rate))
              : signal::SpeedPerturb(wave, job.factor);
      signal::WriteWav(r.utt.audio_path, perturbed);
      r.utt.duration = perturbed.DurationSeconds();
      r.ok = true;
    } catch (const Error &e) {
      r.error = e.what();
    }
  });

  std::vector<Utterance> out_utts;
  int failed = 0;
  for (const auto &r : results) {
    if (r.ok) {
      out_utts.push_back(r.utt);
    } else {
      ++failed;
      err << "event=perturb_error id=" << r.utt.utt_id << " msg=\"" << r.error
          << "\"\n";
    }
  }
  corpus::WriteManifest(out_manifest, out_utts);
  out << "perturb mode=" << mode << " inputs=" << utts.size()
      << " factors=" << jobs.size() << " outputs=" << out_utts.size()
      << " failed=" << failed << " manifest=" << out_manifest << "\n";
  return failed ? 1 : 0;
}

int CmdPair(const PipelineConfig &cfg, const std::string &control_manifest,
            const std::string &target_manifest, const std::string &out_path,
            std::ostream &out, std::ostream &err) {
  (void)err;
  auto all_control = corpus::ReadManifest(control_manifest);
  auto all_target = corpus::ReadManifest(target_manifest);
  std::vector<Utterance> control, target;
  for (auto &u : all_control)
    if (u.group == SpeakerGroup::kControl) control.push_back(u);
  for (auto &u : all_target)
    if (u.group == SpeakerGroup::kTarget) target.push_back(u);

  auto manifest = corpus::MakePairs(cfg.pairing, control, target, cfg.seed);
  corpus::WritePairManifest(out_path, manifest);
  out << "pair strategy=" << corpus::ToString(cfg.pairing)
      << " control=" << control.size() << " target=" << target.size()
      << " pairs=" << manifest.pairs.size() << " out=" << out_path << "\n";
  return 0;
}

int CmdTrainDcgan(const PipelineConfig &cfg,
                  const std::string &control_archive,
                  const std::string &target_archive,
                  const std::string &control_manifest,
                  const std::string &target_manifest,
                  const std::string &out_prefix, std::ostream &out,
                  std::ostream &err) {
  (void)err;
  auto control_feats = corpus::ArchiveRead(control_archive);
  auto target_feats = corpus::ArchiveRead(target_archive);

  // The two archives share record ids (one per aligned pair), so each side
  // keeps its own id -> speaker map.
  std::map<std::string, std::string> control_speaker_of, target_speaker_of;
  for (const auto &u : corpus::ReadManifest(control_manifest))
    control_speaker_of[u.utt_id] = u.speaker_id;
  std::set<std::string> target_speakers;
  for (const auto &u : corpus::ReadManifest(target_manifest)) {
    target_speaker_of[u.utt_id] = u.speaker_id;
    if (u.group == SpeakerGroup::kTarget) target_speakers.insert(u.speaker_id);
  }
  if (target_speakers.size() != 1)
    throw ConfigError(
        "train-dcgan: the parallel model is per target speaker; the target "
        "manifest must contain exactly one target speaker, got " +
        std::to_string(target_speakers.size()));

  // Speaker-level normalization on both sides.
  auto normalize_map = [](std::map<std::string, Spectrogram> *feats,
                          const std::map<std::string, std::string> &speaker_of,
                          const char *side) {
    std::map<std::string, std::vector<const Spectrogram *>> by_speaker;
    for (auto &[id, spec] : *feats) {
      auto it = speaker_of.find(id);
      if (it == speaker_of.end())
        throw ConfigError(std::string("train-dcgan: utterance '") + id +
                          "' is missing from the " + side + " manifest");
      by_speaker[it->second].push_back(&spec);
    }
    std::map<std::string, corpus::SpeakerStats> stats;
    for (const auto &[spk, specs] : by_speaker)
      stats.emplace(spk, corpus::ComputeSpeakerStats(specs));
    for (auto &[id, spec] : *feats)
      spec = corpus::Normalize(spec, stats.at(speaker_of.at(id)));
  };
  normalize_map(&control_feats, control_speaker_of, "control");
  normalize_map(&target_feats, target_speaker_of, "target");

  std::vector<std::pair<Spectrogram, Spectrogram>> pairs;
  for (const auto &[id, control_spec] : control_feats) {
    auto it = target_feats.find(id);
    if (it != target_feats.end())
      pairs.emplace_back(control_spec, it->second);
  }
  if (pairs.empty())
    throw gan::EmptyTrainingSet(
        "train-dcgan: no common record ids between the two archives");

  gan::DcganConfig dcfg;
  dcfg.n_mels = cfg.mel.n_mels;
  dcfg.window = cfg.window;
  dcfg.non_saturating = cfg.non_saturating;
  dcfg.schedule = cfg.schedule;
  dcfg.schedule.seed = cfg.seed;
  dcfg.target_speaker = *target_speakers.begin();
  util::Rng rng(cfg.seed);
  auto model = gan::BuildDcgan(dcfg, &rng);
  auto report = gan::TrainDcgan(&model, pairs, dcfg);
  gan::SaveDcgan(out_prefix, model);
  gan::WriteReport(out_prefix + ".report", report);

  out << "train-dcgan pairs=" << pairs.size()
      << " iters=" << report.iters.size()
      << " speaker=" << dcfg.target_speaker
      << " final_d_acc=" << FormatG(report.FinalDiscAccuracy())
      << " checkpoint=" << out_prefix << "\n";
  return 0;
}

int CmdTrainSbg(const PipelineConfig &cfg, const std::string &control_archive,
                const std::string &target_archive,
                const std::string &target_manifest,
                const std::string &pairs_path, const std::string &out_prefix,
                std::ostream &out, std::ostream &err) {
  (void)err;
  auto control_feats = corpus::ArchiveRead(control_archive);
  auto target_feats = corpus::ArchiveRead(target_archive);
  auto target_utts = corpus::ReadManifest(target_manifest);
  auto pairing = corpus::ReadPairManifest(pairs_path);

  std::map<std::string, std::string> speaker_of;
  for (const auto &u : target_utts) speaker_of[u.utt_id] = u.speaker_id;
  const auto speakers = TargetSpeakersInOrder(target_utts);
  if (speakers.empty())
    throw ConfigError("train-sbg: target manifest has no target speakers");

  // SVD bases for both sides. Canonical signs come from the decomposition.
  std::map<std::string, util::Matrix> control_bases;
  std::map<std::string, std::map<std::string, util::Matrix>> target_bases;
  {
    std::vector<const std::string *> ids;
    std::vector<const Spectrogram *> specs;
    for (const auto &[id, spec] : control_feats) {
      ids.push_back(&id);
      specs.push_back(&spec);
    }
    std::vector<util::Matrix> bases(ids.size());
    util::ParallelFor(ids.size(), cfg.jobs, [&](size_t i) {
      bases[i] = subspace::SvdDecompose(*specs[i]).u;
    });
    for (size_t i = 0; i < ids.size(); ++i)
      control_bases.emplace(*ids[i], std::move(bases[i]));
  }
  for (const auto &[id, spec] : target_feats) {
    auto it = speaker_of.find(id);
    if (it == speaker_of.end())
      throw ConfigError("train-sbg: target utterance '" + id +
                        "' is missing from the manifest");
    target_bases[it->second].emplace(id, subspace::SvdDecompose(spec).u);
  }

  gan::SbgConfig scfg;
  scfg.n_mels = cfg.mel.n_mels;
  scfg.lambda = cfg.lambda;
  scfg.non_saturating = cfg.non_saturating;
  scfg.schedule = cfg.schedule;
  scfg.schedule.seed = cfg.seed;
  util::Rng rng(cfg.seed);
  auto model = gan::BuildSbg(scfg, speakers, &rng);
  auto report = gan::TrainSbg(&model, control_bases, target_bases, pairing,
                              scfg);
  gan::SaveSbg(out_prefix, model);
  gan::WriteReport(out_prefix + ".report", report);

  out << "train-sbg pairs=" << pairing.pairs.size()
      << " speakers=" << speakers.size()
      << " iters=" << report.iters.size()
      << " final_sid_acc=" << FormatG(report.FinalSidAccuracy())
      << " checkpoint=" << out_prefix << "\n";
  return 0;
}

namespace {

std::string ExpandSpeaker(const std::string &pattern,
                          const std::string &speaker) {
  std::string result = pattern;
  const std::string token = "{speaker}";
  auto pos = result.find(token);
  if (pos != std::string::npos) result.replace(pos, token.size(), speaker);
  return result;
}

gan::DcganModel LoadDcganFor(const std::string &pattern,
                             const std::string &speaker) {
  if (pattern.empty())
    throw gan::MissingCheckpoint(
        "augment: a GAN tag needs its checkpoint configured");
  return gan::LoadDcgan(ExpandSpeaker(pattern, speaker));
}

// Runs one augmentation tag; returns items (one per expected record).
std::vector<ItemResult> RunTag(
    const PipelineConfig &cfg, const std::string &tag,
    const std::vector<Utterance> &control, const std::vector<Utterance> &target,
    const std::vector<std::string> &target_speakers,
    const std::map<std::string, double> &sd_factors) {
  std::vector<ItemResult> items;

  auto sd_factor = [&](const std::string &spk) {
    auto it = sd_factors.find(spk);
    if (it == sd_factors.end())
      throw ConfigError("augment: no sd_factor profile for speaker '" + spk +
                        "'");
    return it->second;
  };

  if (tag == "S") {
    // Speaker-independent speed perturbation of target speech.
    items.resize(target.size() * cfg.si_factors.size());
    util::ParallelFor(items.size(), cfg.jobs, [&](size_t k) {
      const auto &u = target[k / cfg.si_factors.size()];
      const double f = cfg.si_factors[k % cfg.si_factors.size()];
      ItemResult &item = items[k];
      item.id = "S.sp" + FormatG(f) + "." + u.utt_id;
      item.speaker = u.speaker_id;
      item.stages = "speed_perturb alpha=" + FormatG(f);
      try {
        auto wave = signal::ReadWav(u.audio_path);
        item.spec = signal::MelFbank(signal::SpeedPerturb(wave, f), cfg.mel);
      } catch (const Error &e) {
        item.error = e.what();
      }
    });
    return items;
  }

  // Remaining tags transform control speech toward each target speaker.
  items.resize(control.size() * target_speakers.size());

  if (tag == "T" || tag == "TG" || tag == "SG") {
    const bool tempo = tag == "T" || tag == "TG";
    util::ParallelFor(items.size(), cfg.jobs, [&](size_t k) {
      const auto &u = control[k / target_speakers.size()];
      const std::string &spk = target_speakers[k % target_speakers.size()];
      ItemResult &item = items[k];
      item.id = tag + "." + spk + "." + u.utt_id;
      item.speaker = spk;
      const double alpha_j = sd_factor(spk);
      const double factor = tempo ? 1.0 / alpha_j : alpha_j;
      item.stages = (tempo ? "tempo_perturb alpha=" : "speed_perturb alpha=") +
                    FormatG(factor);
      try {
        auto wave = signal::ReadWav(u.audio_path);
        auto perturbed =
            tempo ? signal::TempoPerturb(wave, factor,
                                         WsolaFor(cfg, wave.sample_rate))
                  : signal::SpeedPerturb(wave, factor);
        item.spec = signal::MelFbank(perturbed, cfg.mel);
      } catch (const Error &e) {
        item.error = e.what();
      }
    });

    if (tag == "TG" || tag == "SG") {
      // Normalize the perturbed inputs per control speaker, transform with
      // the per-target-speaker generator, then renormalize the outputs per
      // target speaker before archiving.
      std::vector<ItemResult> inputs = items;
      for (size_t k = 0; k < inputs.size(); ++k)
        inputs[k].speaker = control[k / target_speakers.size()].speaker_id;
      NormalizePerSpeaker(&inputs);

      std::map<std::string, gan::DcganModel> models;
      const std::string &pattern = tag == "TG" ? cfg.dcgan_tempo_checkpoint
                                               : cfg.dcgan_speed_checkpoint;
      for (const auto &spk : target_speakers)
        models.emplace(spk, LoadDcganFor(pattern, spk));

      util::ParallelFor(items.size(), cfg.jobs, [&](size_t k) {
        ItemResult &item = items[k];
        if (!inputs[k].spec) return;
        item.stages += ";dcgan speaker=" + item.speaker;
        try {
          item.spec = gan::DcganGenerate(models.at(item.speaker),
                                         *inputs[k].spec);
        } catch (const Error &e) {
          item.spec.reset();
          item.error = e.what();
        }
      });
      NormalizePerSpeaker(&items);
    }
    return items;
  }

  if (tag == "SBG" || tag == "SBG+SG") {
    if (cfg.sbg_checkpoint.empty())
      throw gan::MissingCheckpoint("augment: tag " + tag +
                                   " needs sbg_checkpoint");
    auto sbg = gan::LoadSbg(cfg.sbg_checkpoint);

    if (tag == "SBG") {
      util::ParallelFor(items.size(), cfg.jobs, [&](size_t k) {
        const auto &u = control[k / target_speakers.size()];
        const std::string &spk = target_speakers[k % target_speakers.size()];
        ItemResult &item = items[k];
        item.id = "SBG." + spk + "." + u.utt_id;
        item.speaker = spk;
        item.stages = "sbg lambda=" + FormatG(sbg.lambda) + " speaker=" + spk;
        try {
          auto wave = signal::ReadWav(u.audio_path);
          item.spec =
              gan::SbgGenerate(sbg, signal::MelFbank(wave, cfg.mel), spk);
        } catch (const Error &e) {
          item.error = e.what();
        }
      });
      return items;
    }

    // SBG+SG: speed perturbation, spectral-basis transform, then speed-GAN.
    std::map<std::string, gan::DcganModel> models;
    for (const auto &spk : target_speakers)
      models.emplace(spk, LoadDcganFor(cfg.dcgan_speed_checkpoint, spk));
    util::ParallelFor(items.size(), cfg.jobs, [&](size_t k) {
      const auto &u = control[k / target_speakers.size()];
      const std::string &spk = target_speakers[k % target_speakers.size()];
      ItemResult &item = items[k];
      item.id = "SBG+SG." + spk + "." + u.utt_id;
      item.speaker = spk;
      const double alpha_j = sd_factor(spk);
      item.stages = "speed_perturb alpha=" + FormatG(alpha_j) +
                    ";sbg lambda=" + FormatG(sbg.lambda) + " speaker=" + spk +
                    ";dcgan speaker=" + spk;
      try {
        auto wave = signal::ReadWav(u.audio_path);
        item.spec =
            gan::SbgPlusSg(wave, sbg, models.at(spk), alpha_j, cfg.mel);
      } catch (const Error &e) {
        item.error = e.what();
      }
    });
    NormalizePerSpeaker(&items);
    return items;
  }

  throw ConfigError("augment: unknown tag '" + tag + "'");
}

}  // namespace

int CmdAugment(const PipelineConfig &cfg, std::ostream &out,
               std::ostream &err) {
  if (cfg.tags.empty()) throw ConfigError("augment: no tags configured");
  if (cfg.control_manifest.empty() || cfg.target_manifest.empty())
    throw ConfigError("augment: control_manifest and target_manifest required");
  if (cfg.out_dir.empty()) throw ConfigError("augment: out_dir required");
  fs::create_directories(cfg.out_dir);

  std::vector<Utterance> control, target;
  for (const auto &u : corpus::ReadManifest(cfg.control_manifest))
    if (u.group == SpeakerGroup::kControl) control.push_back(u);
  for (const auto &u : corpus::ReadManifest(cfg.target_manifest))
    if (u.group == SpeakerGroup::kTarget) target.push_back(u);
  const auto target_speakers = TargetSpeakersInOrder(target);
  if (control.empty() || target.empty() || target_speakers.empty())
    throw ConfigError("augment: need control and target utterances");

  const bool needs_factors =
      std::any_of(cfg.tags.begin(), cfg.tags.end(), [](const std::string &t) {
        return t == "T" || t == "TG" || t == "SG" || t == "SBG+SG";
      });
  std::map<std::string, double> sd_factors;
  if (needs_factors) sd_factors = SdFactorsBySpeaker(cfg);

  int exit_code = 0;
  for (const std::string &tag : cfg.tags) {
    const size_t expected =
        tag == "S" ? target.size() * cfg.si_factors.size()
                   : control.size() * target_speakers.size();
    auto items =
        RunTag(cfg, tag, control, target, target_speakers, sd_factors);
    if (items.size() != expected)
      throw CountMismatch("augment: tag " + tag + " produced " +
                          std::to_string(items.size()) + " items, expected " +
                          std::to_string(expected));

    const std::string archive_path =
        (fs::path(cfg.out_dir) / ("aug_" + tag + ".dafa")).string();
    WriteArchiveWithMeta(archive_path, items);
    const int failed = CountFailures(items, err, "augment_error");
    const size_t written = items.size() - static_cast<size_t>(failed);

    // Reconciliation: every expected record is either written or accounted
    // for as a failure.
    if (written + static_cast<size_t>(failed) != expected)
      throw CountMismatch("augment: tag " + tag + " lost records");
    out << "augment tag=" << tag << " expected=" << expected
        << " written=" << written << " failed=" << failed
        << " archive=" << archive_path << "\n";
    if ((tag == "SBG" || tag == "SBG+SG") &&
        gan::LoadSbg(cfg.sbg_checkpoint).lambda == 0.0)
      out << "augment tag=" << tag
          << " note=\"lambda is zero: spectral-basis stage is degenerate "
             "(identity)\"\n";
    if (failed) exit_code = 1;
  }
  return exit_code;
}

int CmdSweepLambda(const PipelineConfig &cfg,
                   const std::string &features_archive,
                   const std::vector<double> &grid, std::ostream &out,
                   std::ostream &err) {
  (void)err;
  if (grid.empty()) throw ConfigError("sweep-lambda: empty grid");
  if (cfg.sbg_checkpoint.empty())
    throw gan::MissingCheckpoint("sweep-lambda: sbg_checkpoint required");
  if (cfg.out_dir.empty()) throw ConfigError("sweep-lambda: out_dir required");
  fs::create_directories(cfg.out_dir);

  auto base_model = gan::LoadSbg(cfg.sbg_checkpoint);
  auto feats = corpus::ArchiveRead(features_archive);
  if (feats.empty()) throw ConfigError("sweep-lambda: empty archive");

  for (double lambda : grid) {
    gan::SbgModel model = base_model;
    model.lambda = lambda;
    double total_dev = 0.0;
    long count = 0;
    std::map<std::string, Spectrogram> records;
    for (const auto &[id, spec] : feats)
      for (const auto &spk : model.speakers) {
        auto generated = gan::SbgGenerate(model, spec, spk);
        double num = 0.0, den = 0.0;
        for (size_t i = 0; i < spec.values.size(); ++i) {
          const double d = generated.values[i] - spec.values[i];
          num += d * d;
          den += spec.values[i] * spec.values[i];
        }
        total_dev += den > 0.0 ? std::sqrt(num / den) : 0.0;
        ++count;
        records.emplace("L" + FormatG(lambda) + "." + spk + "." + id,
                        std::move(generated));
      }
    const std::string archive_path =
        (fs::path(cfg.out_dir) / ("sweep_lambda_" + FormatG(lambda) + ".dafa"))
            .string();
    corpus::ArchiveWrite(archive_path, records);
    out << "sweep-lambda lambda=" << FormatG(lambda)
        << " mean_rel_deviation=" << FormatG(total_dev / count)
        << " records=" << count << " archive=" << archive_path << "\n";
  }
  return 0;
}

int CmdInspect(const std::string &path, std::ostream &out, std::ostream &err) {
  (void)err;
  std::ifstream probe(path, std::ios::binary);
  if (!probe) throw IoError("inspect: cannot open " + path);
  char magic[4] = {0, 0, 0, 0};
  probe.read(magic, 4);
  probe.close();

  if (std::string(magic, 4) == "DAFA") {
    auto feats = corpus::ArchiveRead(path);
    long frames = 0;
    for (const auto &[id, spec] : feats) {
      out << "record id=" << id << " channels=" << spec.n_mels
          << " frames=" << spec.n_frames << "\n";
      frames += spec.n_frames;
    }
    out << "inspect archive=" << path << " records=" << feats.size()
        << " total_frames=" << frames << " checksums=ok\n";
    return 0;
  }
  if (std::string(magic, 4) == "DGPT") {
    auto net = nn::LoadNet(path);
    for (const auto &layer : net.Layers()) {
      out << "layer kind=" << nn::ToString(layer.spec.kind);
      if (layer.spec.HasParams())
        out << " params="
            << layer.weight.Data().size() + layer.bias.Data().size();
      out << "\n";
    }
    out << "inspect checkpoint=" << path << " layers=" << net.NumLayers()
        << "\n";
    return 0;
  }

  // Fall back to the text formats.
  std::ifstream is(path);
  std::string first;
  std::getline(is, first);
  if (first.rfind("strategy=", 0) == 0) {
    auto pm = corpus::ReadPairManifest(path);
    out << "inspect pairs=" << pm.pairs.size()
        << " strategy=" << corpus::ToString(pm.strategy)
        << " seed=" << pm.seed << "\n";
    return 0;
  }
  if (first.rfind("speaker=", 0) == 0) {
    auto profiles = corpus::ReadProfiles(path);
    for (const auto &p : profiles)
      out << "profile speaker=" << p.speaker_id
          << " sd_factor=" << FormatG(p.sd_factor) << "\n";
    out << "inspect profiles=" << profiles.size() << "\n";
    return 0;
  }
  throw ConfigError("inspect: unrecognized file format: " + path);
}

}  // namespace cli
}  // namespace dysaug
