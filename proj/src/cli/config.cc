// src/cli/config.cc

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

#include "dysaug/cli/config.h"

#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace dysaug {
namespace cli {

using nlohmann::json;

const std::vector<std::string> &KnownTags() {
  static const std::vector<std::string> tags = {"T",   "S",   "TG",
                                                "SG",  "SBG", "SBG+SG"};
  return tags;
}

namespace {

const std::set<std::string> kTopKeys = {
    "seed",          "jobs",           "mel",
    "wsola",         "si_factors",     "lambda",
    "pairing",       "schedule",       "window",
    "non_saturating", "control_manifest", "target_manifest",
    "alignments",    "profiles",       "out_dir",
    "tags",          "dcgan_tempo_checkpoint",
    "dcgan_speed_checkpoint",          "sbg_checkpoint"};
const std::set<std::string> kMelKeys = {"n_mels",    "fft_len", "frame_len",
                                        "frame_hop", "fmin",    "fmax",
                                        "log_floor"};
const std::set<std::string> kWsolaKeys = {"frame_len", "analysis_hop",
                                          "delta_max"};
const std::set<std::string> kScheduleKeys = {
    "base_lr",    "halve_every", "max_iters", "batch_size",
    "optimizer",  "adam_beta1",  "adam_beta2", "adam_eps"};

void CheckKeys(const json &obj, const std::set<std::string> &known,
               const std::string &where) {
  for (const auto &[key, value] : obj.items())
    if (!known.count(key))
      throw ConfigError(where + ": unknown field '" + key + "'");
}

// Applies "a.b=value" to the JSON tree. Values parse as JSON when possible
// (numbers, booleans, arrays), otherwise as strings.
void ApplyOverride(json *root, const std::string &spec,
                   const std::string &origin) {
  const auto eq = spec.find('=');
  if (eq == std::string::npos || eq == 0)
    throw ConfigError(origin + ": override must be key=value, got '" + spec +
                      "'");
  const std::string path = spec.substr(0, eq);
  const std::string value = spec.substr(eq + 1);

  json *node = root;
  std::istringstream iss(path);
  std::string part;
  std::vector<std::string> parts;
  while (std::getline(iss, part, '.')) parts.push_back(part);
  if (parts.empty()) throw ConfigError(origin + ": empty override key");
  for (size_t i = 0; i + 1 < parts.size(); ++i)
    node = &(*node)[parts[i]];

  json parsed = json::parse(value, nullptr, /*allow_exceptions=*/false);
  if (parsed.is_discarded())
    (*node)[parts.back()] = value;  // plain string
  else
    (*node)[parts.back()] = parsed;
}

}  // namespace

void PipelineConfig::Validate() const {
  if (jobs < 1) throw ConfigError("jobs must be >= 1");
  schedule.Validate();
  if (window < 16) throw ConfigError("window must be >= 16");
  if (lambda < 0.0) throw ConfigError("lambda must be >= 0");
  for (double f : si_factors)
    if (!(f >= signal::kMinPerturbFactor && f <= signal::kMaxPerturbFactor))
      throw ConfigError("si_factor outside [0.25, 4.0]");
  for (const std::string &tag : tags) {
    bool known = false;
    for (const std::string &t : KnownTags())
      if (t == tag) known = true;
    if (!known) throw ConfigError("unknown augmentation tag '" + tag + "'");
  }
}

PipelineConfig ParseConfig(const std::string &json_text,
                           const std::string &origin,
                           const std::vector<std::string> &overrides) {
  json root = json::parse(json_text, nullptr, /*allow_exceptions=*/false);
  if (root.is_discarded())
    throw ConfigError(origin + ": not valid JSON");
  if (!root.is_object()) throw ConfigError(origin + ": top level must be an object");

  for (const std::string &o : overrides) ApplyOverride(&root, o, origin);

  CheckKeys(root, kTopKeys, origin);
  PipelineConfig cfg;
  cfg.seed = root.value("seed", cfg.seed);
  cfg.jobs = root.value("jobs", cfg.jobs);

  if (root.contains("mel")) {
    const json &mel = root.at("mel");
    CheckKeys(mel, kMelKeys, origin + ".mel");
    cfg.mel.n_mels = mel.value("n_mels", cfg.mel.n_mels);
    cfg.mel.fft_len = mel.value("fft_len", cfg.mel.fft_len);
    cfg.mel.frame_len = mel.value("frame_len", cfg.mel.frame_len);
    cfg.mel.frame_hop = mel.value("frame_hop", cfg.mel.frame_hop);
    cfg.mel.fmin = mel.value("fmin", cfg.mel.fmin);
    cfg.mel.fmax = mel.value("fmax", cfg.mel.fmax);
    cfg.mel.log_floor = mel.value("log_floor", cfg.mel.log_floor);
  }
  if (root.contains("wsola")) {
    const json &w = root.at("wsola");
    CheckKeys(w, kWsolaKeys, origin + ".wsola");
    cfg.wsola_explicit = true;
    cfg.wsola.frame_len = w.value("frame_len", cfg.wsola.frame_len);
    cfg.wsola.analysis_hop = w.value("analysis_hop", cfg.wsola.analysis_hop);
    cfg.wsola.delta_max = w.value("delta_max", cfg.wsola.delta_max);
  }
  if (root.contains("si_factors"))
    cfg.si_factors = root.at("si_factors").get<std::vector<double>>();
  cfg.lambda = root.value("lambda", cfg.lambda);
  if (root.contains("pairing"))
    cfg.pairing =
        corpus::PairStrategyFromString(root.at("pairing").get<std::string>());
  if (root.contains("schedule")) {
    const json &s = root.at("schedule");
    CheckKeys(s, kScheduleKeys, origin + ".schedule");
    cfg.schedule.base_lr = s.value("base_lr", cfg.schedule.base_lr);
    cfg.schedule.halve_every = s.value("halve_every", cfg.schedule.halve_every);
    cfg.schedule.max_iters = s.value("max_iters", cfg.schedule.max_iters);
    cfg.schedule.batch_size = s.value("batch_size", cfg.schedule.batch_size);
    cfg.schedule.adam_beta1 = s.value("adam_beta1", cfg.schedule.adam_beta1);
    cfg.schedule.adam_beta2 = s.value("adam_beta2", cfg.schedule.adam_beta2);
    cfg.schedule.adam_eps = s.value("adam_eps", cfg.schedule.adam_eps);
    if (s.contains("optimizer")) {
      const std::string opt = s.at("optimizer").get<std::string>();
      if (opt == "sgd")
        cfg.schedule.optimizer = nn::OptimizerKind::kSgd;
      else if (opt == "adam")
        cfg.schedule.optimizer = nn::OptimizerKind::kAdam;
      else
        throw ConfigError(origin + ": unknown optimizer '" + opt + "'");
    }
  }
  cfg.window = root.value("window", cfg.window);
  cfg.non_saturating = root.value("non_saturating", cfg.non_saturating);
  cfg.control_manifest = root.value("control_manifest", cfg.control_manifest);
  cfg.target_manifest = root.value("target_manifest", cfg.target_manifest);
  cfg.alignments = root.value("alignments", cfg.alignments);
  cfg.profiles = root.value("profiles", cfg.profiles);
  cfg.out_dir = root.value("out_dir", cfg.out_dir);
  if (root.contains("tags"))
    cfg.tags = root.at("tags").get<std::vector<std::string>>();
  cfg.dcgan_tempo_checkpoint =
      root.value("dcgan_tempo_checkpoint", cfg.dcgan_tempo_checkpoint);
  cfg.dcgan_speed_checkpoint =
      root.value("dcgan_speed_checkpoint", cfg.dcgan_speed_checkpoint);
  cfg.sbg_checkpoint = root.value("sbg_checkpoint", cfg.sbg_checkpoint);

  if (const char *env_seed = std::getenv("DYSAUG_SEED")) {
    try {
      cfg.seed = std::stoull(env_seed);
    } catch (const std::exception &) {
      throw ConfigError("DYSAUG_SEED is not an integer: '" +
                        std::string(env_seed) + "'");
    }
  }
  cfg.Validate();
  return cfg;
}

PipelineConfig LoadConfig(const std::string &path,
                          const std::vector<std::string> &overrides) {
  std::ifstream is(path);
  if (!is) throw IoError("LoadConfig: cannot open " + path);
  std::stringstream buf;
  buf << is.rdbuf();
  return ParseConfig(buf.str(), path, overrides);
}

}  // namespace cli
}  // namespace dysaug
