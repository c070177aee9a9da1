// lytrack/io_util.h

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

#ifndef LYTRACK_IO_UTIL_H_
#define LYTRACK_IO_UTIL_H_

#include <cstdint>
#include <cstring>
#include <fstream>
#include <string>

#include "lytrack/common.h"

namespace lytrack {

// All on-disk formats are little-endian regardless of host byte order.

namespace io {

inline void PutU16(std::ostream& os, uint16_t v) {
  unsigned char b[2] = {static_cast<unsigned char>(v & 0xff),
                        static_cast<unsigned char>(v >> 8)};
  os.write(reinterpret_cast<const char*>(b), 2);
}

inline void PutU32(std::ostream& os, uint32_t v) {
  unsigned char b[4];
  for (int i = 0; i < 4; ++i) b[i] = static_cast<unsigned char>((v >> (8 * i)) & 0xff);
  os.write(reinterpret_cast<const char*>(b), 4);
}

inline void PutU8(std::ostream& os, uint8_t v) {
  os.write(reinterpret_cast<const char*>(&v), 1);
}

inline void PutF32(std::ostream& os, float v) {
  uint32_t u;
  std::memcpy(&u, &v, 4);
  PutU32(os, u);
}

inline void PutF64(std::ostream& os, double v) {
  uint64_t u;
  std::memcpy(&u, &v, 8);
  unsigned char b[8];
  for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>((u >> (8 * i)) & 0xff);
  os.write(reinterpret_cast<const char*>(b), 8);
}

// Readers return false on EOF/short read so callers can raise a typed error
// with context (file, tensor, field).

inline bool GetBytes(std::istream& is, void* dst, size_t n) {
  is.read(reinterpret_cast<char*>(dst), static_cast<std::streamsize>(n));
  return static_cast<size_t>(is.gcount()) == n;
}

inline bool GetU16(std::istream& is, uint16_t* v) {
  unsigned char b[2];
  if (!GetBytes(is, b, 2)) return false;
  *v = static_cast<uint16_t>(b[0] | (b[1] << 8));
  return true;
}

inline bool GetU32(std::istream& is, uint32_t* v) {
  unsigned char b[4];
  if (!GetBytes(is, b, 4)) return false;
  *v = 0;
  for (int i = 0; i < 4; ++i) *v |= static_cast<uint32_t>(b[i]) << (8 * i);
  return true;
}

inline bool GetU8(std::istream& is, uint8_t* v) { return GetBytes(is, v, 1); }

inline bool GetF32(std::istream& is, float* v) {
  uint32_t u;
  if (!GetU32(is, &u)) return false;
  std::memcpy(v, &u, 4);
  return true;
}

inline bool GetF64(std::istream& is, double* v) {
  unsigned char b[8];
  if (!GetBytes(is, b, 8)) return false;
  uint64_t u = 0;
  for (int i = 0; i < 8; ++i) u |= static_cast<uint64_t>(b[i]) << (8 * i);
  std::memcpy(v, &u, 8);
  return true;
}

inline void PutF32Array(std::ostream& os, const float* v, size_t n) {
  for (size_t i = 0; i < n; ++i) PutF32(os, v[i]);
}

inline bool GetF32Array(std::istream& is, float* v, size_t n) {
  for (size_t i = 0; i < n; ++i)
    if (!GetF32(is, &v[i])) return false;
  return true;
}

inline std::ofstream OpenOut(const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw IoError(StrFormat("cannot open '%s' for writing", path.c_str()));
  return os;
}

inline std::ifstream OpenIn(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw IoError(StrFormat("cannot open '%s' for reading", path.c_str()));
  return is;
}

// Reads and checks a fixed magic string; throws FormatError on mismatch.
inline void ExpectMagic(std::istream& is, const char* magic, const std::string& what) {
  const size_t n = std::strlen(magic);
  std::string got(n, '\0');
  if (!GetBytes(is, got.data(), n) || got != magic)
    throw FormatError(StrFormat("%s: bad magic (expected \"%s\")", what.c_str(), magic));
}

}  // namespace io
}  // namespace lytrack

#endif  // LYTRACK_IO_UTIL_H_
