// lytrack/common.h

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

#ifndef LYTRACK_COMMON_H_
#define LYTRACK_COMMON_H_

#include <cstdarg>
#include <cstdint>
#include <cstdio>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace lytrack {

// Base class for everything this library throws. Subtypes exist so callers
// (and the CLI) can distinguish file/format problems from runtime ones.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define LYTRACK_DEFINE_ERROR(Name)    \
  class Name : public Error {         \
   public:                            \
    using Error::Error;               \
  }

LYTRACK_DEFINE_ERROR(EmptyInputError);      // input shorter than one window
LYTRACK_DEFINE_ERROR(RateMismatchError);    // audio rate != config rate
LYTRACK_DEFINE_ERROR(DimensionError);       // vector/matrix length mismatch
LYTRACK_DEFINE_ERROR(IndexError);           // index out of range
LYTRACK_DEFINE_ERROR(ShapeError);           // tensor shape mismatch
LYTRACK_DEFINE_ERROR(FormatError);          // bad magic / malformed file
LYTRACK_DEFINE_ERROR(TruncatedTensorError); // weight file ends mid-tensor
LYTRACK_DEFINE_ERROR(MissingTensorError);   // spec references an absent tensor
LYTRACK_DEFINE_ERROR(ParseError);           // text input (CSV/JSON) malformed
LYTRACK_DEFINE_ERROR(CountError);           // paired sequences of unequal length
LYTRACK_DEFINE_ERROR(EmptyAlignmentError);  // transfer called with no events
LYTRACK_DEFINE_ERROR(SpecError);            // invalid warp/network description
LYTRACK_DEFINE_ERROR(IoError);              // file cannot be opened/read/written

#undef LYTRACK_DEFINE_ERROR

// printf-style std::string formatter for error messages.
inline std::string StrFormat(const char* fmt, ...) {
  va_list ap;
  va_start(ap, fmt);
  va_list ap2;
  va_copy(ap2, ap);
  const int n = std::vsnprintf(nullptr, 0, fmt, ap);
  va_end(ap);
  std::string out(n > 0 ? static_cast<size_t>(n) : 0, '\0');
  if (n > 0) std::vsnprintf(out.data(), out.size() + 1, fmt, ap2);
  va_end(ap2);
  return out;
}

// Dense row-major matrix of floats. All feature/posteriogram payloads use
// this; heavier linear algebra is not needed anywhere in the engine.
struct Matrix {
  int64_t rows = 0;
  int64_t cols = 0;
  std::vector<float> data;

  Matrix() = default;
  Matrix(int64_t r, int64_t c) : rows(r), cols(c), data(static_cast<size_t>(r * c), 0.0f) {}

  float& at(int64_t r, int64_t c) { return data[static_cast<size_t>(r * cols + c)]; }
  float at(int64_t r, int64_t c) const { return data[static_cast<size_t>(r * cols + c)]; }

  std::span<float> row(int64_t r) {
    return {data.data() + r * cols, static_cast<size_t>(cols)};
  }
  std::span<const float> row(int64_t r) const {
    return {data.data() + r * cols, static_cast<size_t>(cols)};
  }

  bool operator==(const Matrix& o) const {
    return rows == o.rows && cols == o.cols && data == o.data;
  }
};

}  // namespace lytrack

#endif  // LYTRACK_COMMON_H_
