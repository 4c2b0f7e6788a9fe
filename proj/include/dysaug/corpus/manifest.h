// include/dysaug/corpus/manifest.h

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

#ifndef DYSAUG_CORPUS_MANIFEST_H_
#define DYSAUG_CORPUS_MANIFEST_H_

#include <string>
#include <vector>

#include "dysaug/corpus/types.h"

namespace dysaug {
namespace corpus {

DYSAUG_DEFINE_ERROR(ManifestError);

// Line-delimited UTF-8 manifest. One utterance per line as whitespace
// separated key=value fields:
//
//   id=<utt> speaker=<spk> group=<control|target> path=<file> duration=<sec> [word=<id>]
//
// Field values must not contain whitespace. Blank lines and lines starting
// with '#' are skipped. Duplicate utterance ids and unknown keys are errors.
std::vector<Utterance> ReadManifest(const std::string &path);
void WriteManifest(const std::string &path,
                   const std::vector<Utterance> &utts);

std::vector<Utterance> ParseManifest(std::istream &is,
                                     const std::string &origin);

// Alignment file: one segment per line, `utt_id phoneme start_s end_s`.
// Segments of an utterance must be sorted, non-overlapping, end > start.
std::vector<PhonemeAlignment> ReadAlignments(const std::string &path);
std::vector<PhonemeAlignment> ParseAlignments(std::istream &is,
                                              const std::string &origin);
void WriteAlignments(const std::string &path,
                     const std::vector<PhonemeAlignment> &aligns);

// Speaker profile file: `speaker=<id> sd_factor=<g> [mean=v,v,... std=v,v,...]`.
std::vector<SpeakerProfile> ReadProfiles(const std::string &path);
void WriteProfiles(const std::string &path,
                   const std::vector<SpeakerProfile> &profiles);

}  // namespace corpus
}  // namespace dysaug

#endif  // DYSAUG_CORPUS_MANIFEST_H_
