// lytrack/features.h

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

#ifndef LYTRACK_FEATURES_H_
#define LYTRACK_FEATURES_H_

#include <string>
#include <vector>

#include "lytrack/audio.h"
#include "lytrack/common.h"

namespace lytrack {

// The three feature families the tracker knows about:
//   kModel80    80 MFCCs at 16 kHz        (acoustic model input)
//   kBaseline   120 MFCCs minus the first 20, at 44.1 kHz
//   kRecitative 25 LPC-derived MFCCs at 1500 Hz
enum class FeatureVariant { kModel80, kBaseline, kRecitative };

struct FeatureConfig {
  FeatureVariant variant = FeatureVariant::kModel80;
  int sample_rate_hz = 16000;
  double window_ms = 20.0;
  double hop_ms = 10.0;
  int n_mel_bands = 80;
  int n_coeffs = 80;
  int drop_first = 0;   // leading DCT coefficients discarded
  int lpc_order = 12;   // recitative only

  static FeatureConfig Model80();
  static FeatureConfig Baseline();
  static FeatureConfig Recitative();

  int output_dim() const { return n_coeffs - drop_first; }
  void Validate() const;
};

FeatureVariant ParseVariant(const std::string& name);  // "model80" | "baseline" | "recitative"
const char* VariantName(FeatureVariant v);

struct FeatureMatrix {
  Matrix data;                        // T x D
  double frame_period_ms = 0.0;
  double first_frame_center_ms = 0.0;
};

// Slices the signal into Hann-windowed frames of round(window_ms*sr/1000)
// samples every round(hop_ms*sr/1000) samples. No padding: a trailing
// partial window is dropped, and audio shorter than one window raises
// EmptyInputError. Frame count is floor((N - W)/H) + 1.
Matrix FrameSignal(const AudioBuffer& audio, double window_ms, double hop_ms);

// Periodic Hann window of length n, as used by FrameSignal.
std::vector<double> HannWindow(int n);

// MFCC pipeline: Hann frame -> power spectrum (FFT size = next pow2 >= W)
// -> mel filterbank -> log, floored at 1e-10 -> orthonormal DCT-II, keep
// n_coeffs and drop the first drop_first. model80 and baseline only.
FeatureMatrix Mfcc(const AudioBuffer& audio, const FeatureConfig& config,
                   bool parallel = true);

// LPC-envelope variant: per frame autocorrelation -> Levinson-Durbin ->
// power envelope on the FFT grid -> mel -> log -> DCT. 25-dim at 1500 Hz.
FeatureMatrix RecitativeFeature(const AudioBuffer& audio, const FeatureConfig& config,
                                bool parallel = true);

// Dispatches on config.variant (resampling is the caller's business).
FeatureMatrix ComputeFeatures(const AudioBuffer& audio, const FeatureConfig& config,
                              bool parallel = true);

struct LpcResult {
  std::vector<double> coefficients;  // a_1..a_order, prediction x[n] ~ sum a_k x[n-k]
  double prediction_error = 0.0;
};

// Levinson-Durbin recursion on autocorrelation[0..order]. A zero-energy frame
// (r0 <= 0) yields all-zero coefficients and error 0, signalling silence.
LpcResult LevinsonDurbin(const std::vector<double>& autocorrelation, int order);

// Power of the all-pole envelope gain / |1 - sum a_k e^{-i w k}|^2 at
// angular frequency omega (radians/sample).
double LpcEnvelopePower(const std::vector<double>& coefficients, double gain,
                        double omega);

// Orthonormal DCT-II (and its inverse); applying Dct then DctInverse is the
// identity. n_out <= x.size() keeps the leading coefficients only.
std::vector<double> Dct(const std::vector<double>& x, int n_out);
std::vector<double> DctInverse(const std::vector<double>& coeffs, int n_out);

// FEAT1 container: magic "FEAT1", u32 T, u32 D, f64 frame_period_ms,
// f64 first_frame_center_ms, then T*D little-endian f32 row-major.
void SaveFeatures(const std::string& path, const FeatureMatrix& features);
FeatureMatrix LoadFeatures(const std::string& path);

}  // namespace lytrack

#endif  // LYTRACK_FEATURES_H_
