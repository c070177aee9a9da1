// audio.cc

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

#include "lytrack/audio.h"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <numeric>

#include "lytrack/io_util.h"

namespace lytrack {

namespace {

constexpr uint16_t kFormatPcm = 1;
constexpr uint16_t kFormatFloat = 3;

float Pcm16ToFloat(int16_t s) { return static_cast<float>(s) / 32768.0f; }

}  // namespace

AudioBuffer ReadWav(const std::string& path) {
  std::ifstream is = io::OpenIn(path);

  char riff[4];
  uint32_t riff_size = 0;
  char wave[4];
  if (!io::GetBytes(is, riff, 4) || std::memcmp(riff, "RIFF", 4) != 0)
    throw FormatError(StrFormat("%s: not a RIFF file", path.c_str()));
  if (!io::GetU32(is, &riff_size) || !io::GetBytes(is, wave, 4) ||
      std::memcmp(wave, "WAVE", 4) != 0)
    throw FormatError(StrFormat("%s: not a WAVE file", path.c_str()));

  uint16_t format = 0, channels = 0, bits = 0;
  uint32_t rate = 0;
  bool have_fmt = false;
  AudioBuffer out;

  // Chunk walk; "fmt " must precede "data".
  for (;;) {
    char id[4];
    uint32_t size = 0;
    if (!io::GetBytes(is, id, 4) || !io::GetU32(is, &size)) break;
    if (std::memcmp(id, "fmt ", 4) == 0) {
      uint16_t block_align = 0;
      uint32_t byte_rate = 0;
      if (!io::GetU16(is, &format) || !io::GetU16(is, &channels) ||
          !io::GetU32(is, &rate) || !io::GetU32(is, &byte_rate) ||
          !io::GetU16(is, &block_align) || !io::GetU16(is, &bits))
        throw FormatError(StrFormat("%s: truncated fmt chunk", path.c_str()));
      if (size > 16) is.seekg(size - 16, std::ios::cur);
      have_fmt = true;
    } else if (std::memcmp(id, "data", 4) == 0) {
      if (!have_fmt) throw FormatError(StrFormat("%s: data before fmt", path.c_str()));
      if (channels != 1)
        throw FormatError(StrFormat(
            "%s: %u channels; only mono input is supported (downmix first)",
            path.c_str(), channels));
      if (format == kFormatPcm && bits == 16) {
        const size_t n = size / 2;
        out.samples.resize(n);
        for (size_t i = 0; i < n; ++i) {
          uint16_t u;
          if (!io::GetU16(is, &u))
            throw FormatError(StrFormat("%s: truncated data chunk", path.c_str()));
          out.samples[i] = Pcm16ToFloat(static_cast<int16_t>(u));
        }
      } else if (format == kFormatFloat && bits == 32) {
        const size_t n = size / 4;
        out.samples.resize(n);
        if (!io::GetF32Array(is, out.samples.data(), n))
          throw FormatError(StrFormat("%s: truncated data chunk", path.c_str()));
      } else {
        throw FormatError(StrFormat("%s: unsupported sample format %u/%u-bit",
                                    path.c_str(), format, bits));
      }
      out.sample_rate_hz = static_cast<int>(rate);
      return out;
    } else {
      is.seekg(size + (size & 1), std::ios::cur);  // chunks are word-aligned
    }
    if (!is) break;
  }
  throw FormatError(StrFormat("%s: no data chunk found", path.c_str()));
}

void WriteWav(const std::string& path, const AudioBuffer& audio) {
  if (audio.sample_rate_hz <= 0) throw Error("WriteWav: sample rate must be positive");
  std::ofstream os = io::OpenOut(path);
  const uint32_t data_bytes = static_cast<uint32_t>(audio.samples.size() * 4);
  os.write("RIFF", 4);
  io::PutU32(os, 4 + 8 + 16 + 8 + data_bytes);
  os.write("WAVE", 4);
  os.write("fmt ", 4);
  io::PutU32(os, 16);
  io::PutU16(os, kFormatFloat);
  io::PutU16(os, 1);
  io::PutU32(os, static_cast<uint32_t>(audio.sample_rate_hz));
  io::PutU32(os, static_cast<uint32_t>(audio.sample_rate_hz) * 4);
  io::PutU16(os, 4);
  io::PutU16(os, 32);
  os.write("data", 4);
  io::PutU32(os, data_bytes);
  io::PutF32Array(os, audio.samples.data(), audio.samples.size());
  if (!os) throw IoError(StrFormat("write failed: %s", path.c_str()));
}

AudioBuffer Resample(const AudioBuffer& audio, int target_rate_hz) {
  if (audio.sample_rate_hz <= 0 || target_rate_hz <= 0)
    throw Error("Resample: rates must be positive");
  if (target_rate_hz == audio.sample_rate_hz) return audio;

  const int64_t g = std::gcd(audio.sample_rate_hz, target_rate_hz);
  const int64_t up = target_rate_hz / g;    // L
  const int64_t down = audio.sample_rate_hz / g;  // M

  const int64_t n_in = static_cast<int64_t>(audio.samples.size());
  const int64_t n_out = (2 * n_in * up + down) / (2 * down);  // round(n_in*L/M)
  AudioBuffer out;
  out.sample_rate_hz = target_rate_hz;
  out.samples.resize(static_cast<size_t>(n_out));
  if (n_in == 0) return out;

  // Windowed-sinc lowpass designed at the upsampled rate L*fs_in, cutoff at
  // the tighter of the two Nyquist frequencies. 12 zero crossings per side.
  const int64_t q = std::max(up, down);
  const int64_t half = 12 * q;
  const int64_t n_taps = 2 * half + 1;
  std::vector<double> taps(static_cast<size_t>(n_taps));
  for (int64_t i = 0; i < n_taps; ++i) {
    const double x = static_cast<double>(i - half) / static_cast<double>(q);
    const double sinc = (x == 0.0) ? 1.0 : std::sin(M_PI * x) / (M_PI * x);
    const double w = 0.5 + 0.5 * std::cos(M_PI * static_cast<double>(i - half) /
                                          static_cast<double>(half + 1));
    taps[static_cast<size_t>(i)] = sinc * w;
  }
  // Normalize each polyphase branch to unit DC gain: a constant input then
  // maps to the same constant output exactly.
  for (int64_t p = 0; p < up; ++p) {
    double s = 0.0;
    for (int64_t i = p; i < n_taps; i += up) s += taps[static_cast<size_t>(i)];
    if (s != 0.0)
      for (int64_t i = p; i < n_taps; i += up) taps[static_cast<size_t>(i)] /= s;
  }

  auto sample_at = [&](int64_t idx) -> double {
    if (idx < 0) idx = 0;                 // replicate edges
    if (idx >= n_in) idx = n_in - 1;
    return static_cast<double>(audio.samples[static_cast<size_t>(idx)]);
  };

  for (int64_t j = 0; j < n_out; ++j) {
    const int64_t num = j * down + half;  // center position on the dense grid
    const int64_t phase = num % up;
    const int64_t n0 = num / up;
    double acc = 0.0;
    for (int64_t i = phase, k = 0; i < n_taps; i += up, ++k)
      acc += taps[static_cast<size_t>(i)] * sample_at(n0 - k);
    out.samples[static_cast<size_t>(j)] = static_cast<float>(acc);
  }
  return out;
}

}  // namespace lytrack
