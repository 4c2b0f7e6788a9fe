// src/corpus/archive.cc

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

#include "dysaug/corpus/archive.h"

#include <cstring>
#include <fstream>
#include <limits>
#include <vector>

#include "dysaug/util/binary_io.h"
#include "dysaug/util/crc32.h"

namespace dysaug {
namespace corpus {

using util::Crc32;

void ArchiveWrite(const std::string &path,
                  const std::map<std::string, signal::Spectrogram> &features) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw IoError("ArchiveWrite: cannot open " + path);

  os.write("DAFA", 4);
  util::WriteU32Le(os, kArchiveVersion);
  util::WriteU64Le(os, static_cast<uint64_t>(features.size()));

  std::vector<unsigned char> payload;
  for (const auto &[id, spec] : features) {
    if (id.empty() || id.size() > std::numeric_limits<uint16_t>::max())
      throw IoError("ArchiveWrite: bad record id '" + id + "'");
    if (spec.n_mels < 1 || spec.n_frames < 1)
      throw ShapeMismatch("ArchiveWrite: record '" + id + "' is empty");

    util::WriteU16Le(os, static_cast<uint16_t>(id.size()));
    os.write(id.data(), static_cast<std::streamsize>(id.size()));
    util::WriteU32Le(os, static_cast<uint32_t>(spec.n_mels));
    util::WriteU32Le(os, static_cast<uint32_t>(spec.n_frames));

    payload.resize(spec.values.size() * 4);
    for (size_t i = 0; i < spec.values.size(); ++i) {
      const float f = static_cast<float>(spec.values[i]);
      uint32_t bits;
      std::memcpy(&bits, &f, 4);
      for (int b = 0; b < 4; ++b)
        payload[i * 4 + b] =
            static_cast<unsigned char>((bits >> (8 * b)) & 0xFF);
    }
    os.write(reinterpret_cast<const char *>(payload.data()),
             static_cast<std::streamsize>(payload.size()));
    util::WriteU32Le(os, Crc32(payload.data(), payload.size()));
  }
  if (!os) throw IoError("ArchiveWrite: write failed for " + path);
}

std::map<std::string, signal::Spectrogram> ArchiveRead(
    const std::string &path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw IoError("ArchiveRead: cannot open " + path);

  char magic[4];
  if (!is.read(magic, 4) || std::memcmp(magic, "DAFA", 4) != 0)
    throw CorruptArchive(path + ": bad magic");
  uint32_t version = 0;
  if (!util::ReadU32Le(is, &version) || version != kArchiveVersion)
    throw CorruptArchive(path + ": unsupported version");
  uint64_t count = 0;
  if (!util::ReadU64Le(is, &count))
    throw CorruptArchive(path + ": truncated header");

  std::map<std::string, signal::Spectrogram> out;
  std::vector<unsigned char> payload;
  for (uint64_t r = 0; r < count; ++r) {
    uint16_t id_len = 0;
    if (!util::ReadU16Le(is, &id_len))
      throw CorruptArchive(path + ": truncated record header");
    std::string id(id_len, '\0');
    if (!is.read(id.data(), id_len))
      throw CorruptArchive(path + ": truncated record id");
    uint32_t c = 0, t = 0;
    if (!util::ReadU32Le(is, &c) || !util::ReadU32Le(is, &t))
      throw CorruptArchive(path + ": truncated record shape");
    if (c == 0 || t == 0 ||
        static_cast<uint64_t>(c) * t > (1ull << 31))
      throw CorruptArchive(path + ": implausible record shape");

    const size_t n = static_cast<size_t>(c) * t;
    payload.resize(n * 4);
    if (!is.read(reinterpret_cast<char *>(payload.data()),
                 static_cast<std::streamsize>(payload.size())))
      throw CorruptArchive(path + ": truncated record payload");
    uint32_t crc = 0;
    if (!util::ReadU32Le(is, &crc))
      throw CorruptArchive(path + ": truncated record checksum");
    if (crc != Crc32(payload.data(), payload.size()))
      throw CorruptArchive(path + ": checksum mismatch in record '" + id +
                           "'");

    signal::Spectrogram spec;
    spec.n_mels = static_cast<int>(c);
    spec.n_frames = static_cast<int>(t);
    spec.values.resize(n);
    for (size_t i = 0; i < n; ++i) {
      uint32_t bits = 0;
      for (int b = 0; b < 4; ++b)
        bits |= static_cast<uint32_t>(payload[i * 4 + b]) << (8 * b);
      float f;
      std::memcpy(&f, &bits, 4);
      spec.values[i] = static_cast<double>(f);
    }
    if (!out.emplace(std::move(id), std::move(spec)).second)
      throw DuplicateId(path + ": duplicate record id");
  }
  return out;
}

}  // namespace corpus
}  // namespace dysaug
