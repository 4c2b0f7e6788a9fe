// include/dysaug/signal/wav_io.h

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

#ifndef DYSAUG_SIGNAL_WAV_IO_H_
#define DYSAUG_SIGNAL_WAV_IO_H_

#include <string>

#include "dysaug/signal/waveform.h"

namespace dysaug {
namespace signal {

DYSAUG_DEFINE_ERROR(WavFormatError);

// RIFF/WAVE, 16-bit PCM, mono, little-endian. Stereo or non-PCM input is
// rejected rather than silently mixed down.
Waveform ReadWav(const std::string &path);
void WriteWav(const std::string &path, const Waveform &wave);

}  // namespace signal
}  // namespace dysaug

#endif  // DYSAUG_SIGNAL_WAV_IO_H_
