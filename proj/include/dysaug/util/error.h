// include/dysaug/util/error.h

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

#ifndef DYSAUG_UTIL_ERROR_H_
#define DYSAUG_UTIL_ERROR_H_

#include <stdexcept>
#include <string>

namespace dysaug {

// Base class for all errors raised by this library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string &msg) : std::runtime_error(msg) {}
};

#define DYSAUG_DEFINE_ERROR(Name)                            \
  class Name : public ::dysaug::Error {                     \
   public:                                                   \
    explicit Name(const std::string &msg) : Error(msg) {}    \
  }

// Shared across modules.
DYSAUG_DEFINE_ERROR(IoError);
DYSAUG_DEFINE_ERROR(ShapeMismatch);

}  // namespace dysaug

#endif  // DYSAUG_UTIL_ERROR_H_
