// include/dysaug/nn/checkpoint.h

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

#ifndef DYSAUG_NN_CHECKPOINT_H_
#define DYSAUG_NN_CHECKPOINT_H_

#include <cstring>
#include <fstream>
#include <string>
#include <vector>

#include "dysaug/nn/layers.h"
#include "dysaug/util/binary_io.h"
#include "dysaug/util/crc32.h"

namespace dysaug {
namespace nn {

DYSAUG_DEFINE_ERROR(CorruptCheckpoint);

// Parameter checkpoint, little-endian:
//
//   magic   "DGPT"
//   version u32
//   layers  u32
//   layer*  kind u32, 12 x u32 shape fields, slope f32,
//           payload count u64, count float32 (weight then bias),
//           crc u32 over the payload bytes
inline constexpr uint32_t kCheckpointVersion = 1;

inline void SaveNet(std::ostream &os, const Sequential<float> &net) {
  os.write("DGPT", 4);
  util::WriteU32Le(os, kCheckpointVersion);
  util::WriteU32Le(os, static_cast<uint32_t>(net.NumLayers()));
  for (const Layer<float> &layer : net.Layers()) {
    const LayerSpec &s = layer.spec;
    util::WriteU32Le(os, static_cast<uint32_t>(s.kind));
    const int fields[12] = {s.in_channels, s.out_channels, s.kernel_h,
                            s.kernel_w,    s.stride_h,     s.stride_w,
                            s.in_features, s.out_features, s.pad_top,
                            s.pad_bottom,  s.pad_left,     s.pad_right};
    for (int f : fields) util::WriteU32Le(os, static_cast<uint32_t>(f));
    util::WriteF32Le(os, static_cast<float>(s.slope));

    std::vector<float> payload;
    if (s.HasParams()) {
      payload.insert(payload.end(), layer.weight.Data().begin(),
                     layer.weight.Data().end());
      payload.insert(payload.end(), layer.bias.Data().begin(),
                     layer.bias.Data().end());
    }
    util::WriteU64Le(os, static_cast<uint64_t>(payload.size()));
    std::vector<unsigned char> bytes(payload.size() * 4);
    for (size_t i = 0; i < payload.size(); ++i) {
      uint32_t bits;
      std::memcpy(&bits, &payload[i], 4);
      for (int b = 0; b < 4; ++b)
        bytes[i * 4 + b] = static_cast<unsigned char>((bits >> (8 * b)) & 0xFF);
    }
    os.write(reinterpret_cast<const char *>(bytes.data()),
             static_cast<std::streamsize>(bytes.size()));
    util::WriteU32Le(os, util::Crc32(bytes.data(), bytes.size()));
  }
}

inline void SaveNet(const std::string &path, const Sequential<float> &net) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw IoError("SaveNet: cannot open " + path);
  SaveNet(os, net);
  if (!os) throw IoError("SaveNet: write failed for " + path);
}

inline Sequential<float> LoadNet(std::istream &is, const std::string &origin) {
  char magic[4];
  if (!is.read(magic, 4) || std::memcmp(magic, "DGPT", 4) != 0)
    throw CorruptCheckpoint(origin + ": bad magic");
  uint32_t version = 0, n_layers = 0;
  if (!util::ReadU32Le(is, &version) || version != kCheckpointVersion)
    throw CorruptCheckpoint(origin + ": unsupported version");
  if (!util::ReadU32Le(is, &n_layers))
    throw CorruptCheckpoint(origin + ": truncated header");

  Sequential<float> net;
  for (uint32_t li = 0; li < n_layers; ++li) {
    uint32_t kind = 0;
    if (!util::ReadU32Le(is, &kind) || kind > 7)
      throw CorruptCheckpoint(origin + ": bad layer kind");
    LayerSpec s;
    s.kind = static_cast<LayerKind>(kind);
    uint32_t fields[12];
    for (auto &f : fields)
      if (!util::ReadU32Le(is, &f))
        throw CorruptCheckpoint(origin + ": truncated layer fields");
    s.in_channels = static_cast<int>(fields[0]);
    s.out_channels = static_cast<int>(fields[1]);
    s.kernel_h = static_cast<int>(fields[2]);
    s.kernel_w = static_cast<int>(fields[3]);
    s.stride_h = static_cast<int>(fields[4]);
    s.stride_w = static_cast<int>(fields[5]);
    s.in_features = static_cast<int>(fields[6]);
    s.out_features = static_cast<int>(fields[7]);
    s.pad_top = static_cast<int>(fields[8]);
    s.pad_bottom = static_cast<int>(fields[9]);
    s.pad_left = static_cast<int>(fields[10]);
    s.pad_right = static_cast<int>(fields[11]);
    float slope = 0.0f;
    if (!util::ReadF32Le(is, &slope))
      throw CorruptCheckpoint(origin + ": truncated slope");
    s.slope = static_cast<double>(slope);

    uint64_t count = 0;
    if (!util::ReadU64Le(is, &count))
      throw CorruptCheckpoint(origin + ": truncated payload count");
    if (count > (1ull << 31))
      throw CorruptCheckpoint(origin + ": implausible payload size");
    std::vector<unsigned char> bytes(static_cast<size_t>(count) * 4);
    if (!bytes.empty() &&
        !is.read(reinterpret_cast<char *>(bytes.data()),
                 static_cast<std::streamsize>(bytes.size())))
      throw CorruptCheckpoint(origin + ": truncated payload");
    uint32_t crc = 0;
    if (!util::ReadU32Le(is, &crc))
      throw CorruptCheckpoint(origin + ": truncated checksum");
    if (crc != util::Crc32(bytes.data(), bytes.size()))
      throw CorruptCheckpoint(origin + ": checksum mismatch");

    net.Add(s);
    if (s.HasParams()) {
      std::vector<int> wshape =
          s.kind == LayerKind::kConv2d
              ? std::vector<int>{s.out_channels, s.in_channels, s.kernel_h,
                                 s.kernel_w}
              : std::vector<int>{s.out_features, s.in_features};
      int64_t wn = 1;
      for (int d : wshape) wn *= d;
      const int bn =
          s.kind == LayerKind::kConv2d ? s.out_channels : s.out_features;
      if (static_cast<uint64_t>(wn + bn) != count)
        throw CorruptCheckpoint(origin + ": payload size does not match spec");
      std::vector<float> w(static_cast<size_t>(wn)), b(static_cast<size_t>(bn));
      for (size_t i = 0; i < w.size() + b.size(); ++i) {
        uint32_t bits = 0;
        for (int byte = 0; byte < 4; ++byte)
          bits |= static_cast<uint32_t>(bytes[i * 4 + byte]) << (8 * byte);
        float f;
        std::memcpy(&f, &bits, 4);
        if (i < w.size())
          w[i] = f;
        else
          b[i - w.size()] = f;
      }
      Layer<float> &layer = net.Layers().back();
      layer.weight = Tensor<float>::Leaf(wshape, std::move(w), true);
      layer.bias = Tensor<float>::Leaf({bn}, std::move(b), true);
    } else if (count != 0) {
      throw CorruptCheckpoint(origin + ": unexpected payload");
    }
  }
  return net;
}

inline Sequential<float> LoadNet(const std::string &path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw IoError("LoadNet: cannot open " + path);
  return LoadNet(is, path);
}

}  // namespace nn
}  // namespace dysaug

#endif  // DYSAUG_NN_CHECKPOINT_H_
