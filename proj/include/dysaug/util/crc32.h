// include/dysaug/util/crc32.h

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

#ifndef DYSAUG_UTIL_CRC32_H_
#define DYSAUG_UTIL_CRC32_H_

#include <cstddef>
#include <cstdint>

namespace dysaug {
namespace util {

// CRC-32 (IEEE 802.3, reflected, polynomial 0xEDB88320).
uint32_t Crc32(const void *data, size_t len);

}  // namespace util
}  // namespace dysaug

#endif  // DYSAUG_UTIL_CRC32_H_
