// lytrack/audio.h

// Copyright 2026 The lytrack authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef LYTRACK_AUDIO_H_
#define LYTRACK_AUDIO_H_

#include <cstdint>
#include <string>
#include <vector>

#include "lytrack/common.h"

namespace lytrack {

struct AudioBuffer {
  std::vector<float> samples;  // mono, nominally in [-1, 1]
  int sample_rate_hz = 0;
};

// RIFF/WAVE reader. Accepts mono PCM 16-bit or IEEE float 32-bit; anything
// else (and in particular multichannel files) is rejected with FormatError.
AudioBuffer ReadWav(const std::string& path);

// Writes mono IEEE float 32-bit WAVE.
void WriteWav(const std::string& path, const AudioBuffer& audio);

// Linear-phase polyphase rational resampler. Output length is exactly
// round(n_in * target / source); an identical-rate call returns the input
// bit-for-bit. Edges are handled by replicating the first/last sample, so a
// constant signal stays constant all the way to the boundaries.
AudioBuffer Resample(const AudioBuffer& audio, int target_rate_hz);

}  // namespace lytrack

#endif  // LYTRACK_AUDIO_H_
