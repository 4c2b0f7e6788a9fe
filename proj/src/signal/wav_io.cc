// src/signal/wav_io.cc

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

#include "dysaug/signal/wav_io.h"

#include <cmath>
#include <cstdint>
#include <fstream>

#include "dysaug/util/binary_io.h"

namespace dysaug {
namespace signal {

using util::ReadU16Le;
using util::ReadU32Le;
using util::WriteU16Le;
using util::WriteU32Le;

namespace {

bool ReadTag(std::istream &is, char tag[4]) {
  return static_cast<bool>(is.read(tag, 4));
}

bool TagIs(const char tag[4], const char *want) {
  return tag[0] == want[0] && tag[1] == want[1] && tag[2] == want[2] &&
         tag[3] == want[3];
}

}  // namespace

Waveform ReadWav(const std::string &path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw IoError("ReadWav: cannot open " + path);

  char tag[4];
  uint32_t riff_size = 0;
  if (!ReadTag(is, tag) || !TagIs(tag, "RIFF") || !ReadU32Le(is, &riff_size) ||
      !ReadTag(is, tag) || !TagIs(tag, "WAVE"))
    throw WavFormatError(path + ": not a RIFF/WAVE file");

  uint16_t audio_format = 0, channels = 0, bits = 0, block_align = 0;
  uint32_t sample_rate = 0, byte_rate = 0;
  bool have_fmt = false;

  Waveform wave;
  while (ReadTag(is, tag)) {
    uint32_t chunk_size = 0;
    if (!ReadU32Le(is, &chunk_size))
      throw WavFormatError(path + ": truncated chunk header");
    if (TagIs(tag, "fmt ")) {
      if (chunk_size < 16) throw WavFormatError(path + ": fmt chunk too small");
      if (!ReadU16Le(is, &audio_format) || !ReadU16Le(is, &channels) ||
          !ReadU32Le(is, &sample_rate) || !ReadU32Le(is, &byte_rate) ||
          !ReadU16Le(is, &block_align) || !ReadU16Le(is, &bits))
        throw WavFormatError(path + ": truncated fmt chunk");
      is.seekg(chunk_size - 16, std::ios::cur);
      have_fmt = true;
    } else if (TagIs(tag, "data")) {
      if (!have_fmt) throw WavFormatError(path + ": data chunk before fmt");
      if (audio_format != 1)
        throw WavFormatError(path + ": only PCM (format 1) is supported");
      if (channels != 1)
        throw WavFormatError(path + ": mono required, got " +
                             std::to_string(channels) + " channels");
      if (bits != 16)
        throw WavFormatError(path + ": 16-bit samples required, got " +
                             std::to_string(bits));
      const uint32_t n = chunk_size / 2;
      wave.samples.resize(n);
      for (uint32_t i = 0; i < n; ++i) {
        uint16_t raw;
        if (!ReadU16Le(is, &raw))
          throw WavFormatError(path + ": truncated data chunk");
        int16_t s = static_cast<int16_t>(raw);
        wave.samples[i] = static_cast<float>(s) / 32768.0f;
      }
      wave.sample_rate = static_cast<int>(sample_rate);
      return wave;
    } else {
      // Skip unknown chunks (LIST, fact, ...), honoring padding to even size.
      is.seekg(chunk_size + (chunk_size & 1u), std::ios::cur);
    }
  }
  throw WavFormatError(path + ": no data chunk found");
}

void WriteWav(const std::string &path, const Waveform &wave) {
  if (wave.sample_rate <= 0) throw WavFormatError("WriteWav: bad sample rate");
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw IoError("WriteWav: cannot open " + path);

  const uint32_t data_bytes = static_cast<uint32_t>(wave.samples.size() * 2);
  os.write("RIFF", 4);
  WriteU32Le(os, 36 + data_bytes);
  os.write("WAVE", 4);
  os.write("fmt ", 4);
  WriteU32Le(os, 16);
  WriteU16Le(os, 1);  // PCM
  WriteU16Le(os, 1);  // mono
  WriteU32Le(os, static_cast<uint32_t>(wave.sample_rate));
  WriteU32Le(os, static_cast<uint32_t>(wave.sample_rate) * 2);
  WriteU16Le(os, 2);   // block align
  WriteU16Le(os, 16);  // bits per sample
  os.write("data", 4);
  WriteU32Le(os, data_bytes);
  for (float v : wave.samples) {
    double clamped = std::fmin(1.0, std::fmax(-1.0, static_cast<double>(v)));
    int s = static_cast<int>(std::lround(clamped * 32767.0));
    WriteU16Le(os, static_cast<uint16_t>(static_cast<int16_t>(s)));
  }
  if (!os) throw IoError("WriteWav: write failed for " + path);
}

}  // namespace signal
}  // namespace dysaug
