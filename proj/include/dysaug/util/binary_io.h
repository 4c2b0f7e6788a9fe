// include/dysaug/util/binary_io.h

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

#ifndef DYSAUG_UTIL_BINARY_IO_H_
#define DYSAUG_UTIL_BINARY_IO_H_

#include <cstdint>
#include <cstring>
#include <istream>
#include <ostream>
#include <string>

namespace dysaug {
namespace util {

// Little-endian scalar I/O. Values are assembled byte-wise so the on-disk
// formats are identical on any host.

inline void WriteU16Le(std::ostream &os, uint16_t v) {
  unsigned char b[2] = {static_cast<unsigned char>(v & 0xFF),
                        static_cast<unsigned char>((v >> 8) & 0xFF)};
  os.write(reinterpret_cast<const char *>(b), 2);
}

inline void WriteU32Le(std::ostream &os, uint32_t v) {
  unsigned char b[4];
  for (int i = 0; i < 4; ++i) b[i] = static_cast<unsigned char>((v >> (8 * i)) & 0xFF);
  os.write(reinterpret_cast<const char *>(b), 4);
}

inline void WriteU64Le(std::ostream &os, uint64_t v) {
  unsigned char b[8];
  for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>((v >> (8 * i)) & 0xFF);
  os.write(reinterpret_cast<const char *>(b), 8);
}

inline void WriteF32Le(std::ostream &os, float v) {
  uint32_t bits;
  std::memcpy(&bits, &v, 4);
  WriteU32Le(os, bits);
}

inline bool ReadU16Le(std::istream &is, uint16_t *v) {
  unsigned char b[2];
  if (!is.read(reinterpret_cast<char *>(b), 2)) return false;
  *v = static_cast<uint16_t>(b[0] | (b[1] << 8));
  return true;
}

inline bool ReadU32Le(std::istream &is, uint32_t *v) {
  unsigned char b[4];
  if (!is.read(reinterpret_cast<char *>(b), 4)) return false;
  *v = 0;
  for (int i = 0; i < 4; ++i) *v |= static_cast<uint32_t>(b[i]) << (8 * i);
  return true;
}

inline bool ReadU64Le(std::istream &is, uint64_t *v) {
  unsigned char b[8];
  if (!is.read(reinterpret_cast<char *>(b), 8)) return false;
  *v = 0;
  for (int i = 0; i < 8; ++i) *v |= static_cast<uint64_t>(b[i]) << (8 * i);
  return true;
}

inline bool ReadF32Le(std::istream &is, float *v) {
  uint32_t bits;
  if (!ReadU32Le(is, &bits)) return false;
  std::memcpy(v, &bits, 4);
  return true;
}

}  // namespace util
}  // namespace dysaug

#endif  // DYSAUG_UTIL_BINARY_IO_H_
