// include/dysaug/corpus/archive.h

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

#ifndef DYSAUG_CORPUS_ARCHIVE_H_
#define DYSAUG_CORPUS_ARCHIVE_H_

#include <map>
#include <string>

#include "dysaug/corpus/types.h"
#include "dysaug/signal/mel.h"

namespace dysaug {
namespace corpus {

DYSAUG_DEFINE_ERROR(DuplicateId);
DYSAUG_DEFINE_ERROR(CorruptArchive);

// Binary feature archive, little-endian throughout:
//
//   magic   "DAFA"
//   version u32
//   count   u64
//   record* count times:
//     id_len  u16
//     id      id_len UTF-8 bytes
//     C       u32
//     T       u32
//     data    C*T float32, row-major
//     crc     u32, CRC-32 of the float payload bytes
//
// Values are stored as float32; doubles are narrowed on write. Records are
// written in id order, so archives are byte-identical for equal contents.
inline constexpr uint32_t kArchiveVersion = 1;

void ArchiveWrite(const std::string &path,
                  const std::map<std::string, signal::Spectrogram> &features);

std::map<std::string, signal::Spectrogram> ArchiveRead(
    const std::string &path);

}  // namespace corpus
}  // namespace dysaug

#endif  // DYSAUG_CORPUS_ARCHIVE_H_
