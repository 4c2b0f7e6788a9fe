// src/corpus/manifest.cc

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

#include "dysaug/corpus/manifest.h"

#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace dysaug {
namespace corpus {

namespace {

std::vector<std::string> SplitWs(const std::string &line) {
  std::vector<std::string> out;
  std::istringstream iss(line);
  std::string tok;
  while (iss >> tok) out.push_back(tok);
  return out;
}

// Splits "key=value"; value may itself contain '='.
bool SplitKv(const std::string &tok, std::string *key, std::string *value) {
  auto pos = tok.find('=');
  if (pos == std::string::npos || pos == 0) return false;
  *key = tok.substr(0, pos);
  *value = tok.substr(pos + 1);
  return true;
}

double ParseDouble(const std::string &s, const std::string &where) {
  size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception &) {
    throw ManifestError(where + ": bad number '" + s + "'");
  }
  if (used != s.size())
    throw ManifestError(where + ": bad number '" + s + "'");
  return v;
}

std::string FormatG(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::vector<double> ParseDoubleList(const std::string &s,
                                    const std::string &where) {
  std::vector<double> out;
  std::string cur;
  std::istringstream iss(s);
  while (std::getline(iss, cur, ','))
    out.push_back(ParseDouble(cur, where));
  return out;
}

std::string FormatDoubleList(const std::vector<double> &v) {
  std::string out;
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) out += ',';
    out += FormatG(v[i]);
  }
  return out;
}

}  // namespace

std::string ToString(SpeakerGroup g) {
  return g == SpeakerGroup::kControl ? "control" : "target";
}

SpeakerGroup SpeakerGroupFromString(const std::string &s) {
  if (s == "control") return SpeakerGroup::kControl;
  if (s == "target") return SpeakerGroup::kTarget;
  throw ManifestError("unknown speaker group '" + s + "'");
}

std::vector<Utterance> ParseManifest(std::istream &is,
                                     const std::string &origin) {
  std::vector<Utterance> out;
  std::set<std::string> seen;
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    const std::string where = origin + ":" + std::to_string(lineno);
    Utterance utt;
    bool have_id = false, have_speaker = false, have_group = false,
         have_path = false, have_duration = false;
    for (const std::string &tok : SplitWs(line)) {
      std::string key, value;
      if (!SplitKv(tok, &key, &value))
        throw ManifestError(where + ": expected key=value, got '" + tok + "'");
      if (key == "id") {
        utt.utt_id = value;
        have_id = true;
      } else if (key == "speaker") {
        utt.speaker_id = value;
        have_speaker = true;
      } else if (key == "group") {
        utt.group = SpeakerGroupFromString(value);
        have_group = true;
      } else if (key == "path") {
        utt.audio_path = value;
        have_path = true;
      } else if (key == "duration") {
        utt.duration = ParseDouble(value, where);
        have_duration = true;
      } else if (key == "word") {
        utt.word_id = value;
      } else {
        throw ManifestError(where + ": unknown field '" + key + "'");
      }
    }
    if (!have_id || !have_speaker || !have_group || !have_path ||
        !have_duration)
      throw ManifestError(where + ": missing required field");
    if (utt.duration <= 0.0)
      throw ManifestError(where + ": duration must be positive");
    if (!seen.insert(utt.utt_id).second)
      throw ManifestError(where + ": duplicate utterance id '" + utt.utt_id +
                          "'");
    out.push_back(std::move(utt));
  }
  return out;
}

std::vector<Utterance> ReadManifest(const std::string &path) {
  std::ifstream is(path);
  if (!is) throw IoError("ReadManifest: cannot open " + path);
  return ParseManifest(is, path);
}

void WriteManifest(const std::string &path,
                   const std::vector<Utterance> &utts) {
  std::ofstream os(path, std::ios::trunc);
  if (!os) throw IoError("WriteManifest: cannot open " + path);
  for (const Utterance &u : utts) {
    os << "id=" << u.utt_id << " speaker=" << u.speaker_id
       << " group=" << ToString(u.group) << " path=" << u.audio_path
       << " duration=" << FormatG(u.duration);
    if (!u.word_id.empty()) os << " word=" << u.word_id;
    os << "\n";
  }
  if (!os) throw IoError("WriteManifest: write failed for " + path);
}

std::vector<PhonemeAlignment> ParseAlignments(std::istream &is,
                                              const std::string &origin) {
  std::map<std::string, PhonemeAlignment> by_utt;
  std::vector<std::string> order;
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    const std::string where = origin + ":" + std::to_string(lineno);
    auto toks = SplitWs(line);
    if (toks.size() != 4)
      throw ManifestError(where + ": expected 'utt phoneme start end'");
    PhonemeSegment seg;
    seg.label = toks[1];
    seg.start_s = ParseDouble(toks[2], where);
    seg.end_s = ParseDouble(toks[3], where);
    if (!(seg.end_s > seg.start_s))
      throw ManifestError(where + ": segment end must exceed start");
    auto it = by_utt.find(toks[0]);
    if (it == by_utt.end()) {
      order.push_back(toks[0]);
      it = by_utt.emplace(toks[0], PhonemeAlignment{toks[0], {}}).first;
    }
    if (!it->second.segments.empty() &&
        seg.start_s < it->second.segments.back().end_s - 1e-9)
      throw ManifestError(where + ": segments must be sorted, non-overlapping");
    it->second.segments.push_back(seg);
  }
  std::vector<PhonemeAlignment> out;
  out.reserve(order.size());
  for (const std::string &id : order) out.push_back(std::move(by_utt[id]));
  return out;
}

std::vector<PhonemeAlignment> ReadAlignments(const std::string &path) {
  std::ifstream is(path);
  if (!is) throw IoError("ReadAlignments: cannot open " + path);
  return ParseAlignments(is, path);
}

void WriteAlignments(const std::string &path,
                     const std::vector<PhonemeAlignment> &aligns) {
  std::ofstream os(path, std::ios::trunc);
  if (!os) throw IoError("WriteAlignments: cannot open " + path);
  for (const PhonemeAlignment &a : aligns)
    for (const PhonemeSegment &s : a.segments)
      os << a.utt_id << " " << s.label << " " << FormatG(s.start_s) << " "
         << FormatG(s.end_s) << "\n";
  if (!os) throw IoError("WriteAlignments: write failed for " + path);
}

std::vector<SpeakerProfile> ReadProfiles(const std::string &path) {
  std::ifstream is(path);
  if (!is) throw IoError("ReadProfiles: cannot open " + path);
  std::vector<SpeakerProfile> out;
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    const std::string where = path + ":" + std::to_string(lineno);
    SpeakerProfile p;
    bool have_speaker = false;
    for (const std::string &tok : SplitWs(line)) {
      std::string key, value;
      if (!SplitKv(tok, &key, &value))
        throw ManifestError(where + ": expected key=value");
      if (key == "speaker") {
        p.speaker_id = value;
        have_speaker = true;
      } else if (key == "sd_factor") {
        p.sd_factor = ParseDouble(value, where);
      } else if (key == "mean") {
        p.feat_mean = ParseDoubleList(value, where);
      } else if (key == "std") {
        p.feat_std = ParseDoubleList(value, where);
      } else {
        throw ManifestError(where + ": unknown field '" + key + "'");
      }
    }
    if (!have_speaker) throw ManifestError(where + ": missing speaker");
    if (!(p.sd_factor > 0.0 && p.sd_factor < 10.0))
      throw ManifestError(where + ": sd_factor outside (0, 10)");
    out.push_back(std::move(p));
  }
  return out;
}

void WriteProfiles(const std::string &path,
                   const std::vector<SpeakerProfile> &profiles) {
  std::ofstream os(path, std::ios::trunc);
  if (!os) throw IoError("WriteProfiles: cannot open " + path);
  for (const SpeakerProfile &p : profiles) {
    os << "speaker=" << p.speaker_id << " sd_factor=" << FormatG(p.sd_factor);
    if (!p.feat_mean.empty()) os << " mean=" << FormatDoubleList(p.feat_mean);
    if (!p.feat_std.empty()) os << " std=" << FormatDoubleList(p.feat_std);
    os << "\n";
  }
  if (!os) throw IoError("WriteProfiles: write failed for " + path);
}

}  // namespace corpus
}  // namespace dysaug
