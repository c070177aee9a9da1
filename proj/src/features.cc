// features.cc

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

#include "lytrack/features.h"

#include <algorithm>
#include <cmath>
#include <complex>

#include "lytrack/io_util.h"

namespace lytrack {

namespace {

constexpr double kLogFloor = 1e-10;  // log(max(e, floor)) keeps silence finite

int NextPow2(int n) {
  int p = 1;
  while (p < n) p <<= 1;
  return p;
}

// Iterative radix-2 complex FFT, in place. Sizes here are always powers of
// two (FFT size = next pow2 >= window length).
void Fft(std::vector<std::complex<double>>& a) {
  const size_t n = a.size();
  for (size_t i = 1, j = 0; i < n; ++i) {
    size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (size_t len = 2; len <= n; len <<= 1) {
    const double ang = -2.0 * M_PI / static_cast<double>(len);
    const std::complex<double> wl(std::cos(ang), std::sin(ang));
    for (size_t i = 0; i < n; i += len) {
      std::complex<double> w(1.0, 0.0);
      for (size_t k = 0; k < len / 2; ++k) {
        const std::complex<double> u = a[i + k];
        const std::complex<double> v = a[i + k + len / 2] * w;
        a[i + k] = u + v;
        a[i + k + len / 2] = u - v;
        w *= wl;
      }
    }
  }
}

// HTK mel scale.
double HzToMel(double hz) { return 2595.0 * std::log10(1.0 + hz / 700.0); }

// Triangular mel filterbank over FFT bins 0..nfft/2, band edges spread
// linearly in mel between 0 Hz and Nyquist.
struct MelFilterbank {
  int n_bands;
  int n_bins;
  std::vector<std::vector<double>> weights;  // [band][bin]

  MelFilterbank(int bands, int nfft, int sample_rate_hz)
      : n_bands(bands), n_bins(nfft / 2 + 1), weights(static_cast<size_t>(bands)) {
    const double nyquist = sample_rate_hz / 2.0;
    const double mel_max = HzToMel(nyquist);
    std::vector<double> edges_hz(static_cast<size_t>(bands) + 2);
    for (int i = 0; i < bands + 2; ++i) {
      const double mel = mel_max * static_cast<double>(i) / (bands + 1);
      edges_hz[static_cast<size_t>(i)] = 700.0 * (std::pow(10.0, mel / 2595.0) - 1.0);
    }
    for (int b = 0; b < bands; ++b) {
      auto& w = weights[static_cast<size_t>(b)];
      w.assign(static_cast<size_t>(n_bins), 0.0);
      const double lo = edges_hz[static_cast<size_t>(b)];
      const double mid = edges_hz[static_cast<size_t>(b) + 1];
      const double hi = edges_hz[static_cast<size_t>(b) + 2];
      for (int k = 0; k < n_bins; ++k) {
        const double f = static_cast<double>(k) * sample_rate_hz / nfft;
        if (f > lo && f < mid)
          w[static_cast<size_t>(k)] = (f - lo) / (mid - lo);
        else if (f >= mid && f < hi)
          w[static_cast<size_t>(k)] = (hi - f) / (hi - mid);
      }
    }
  }

  void Apply(const std::vector<double>& power, std::vector<double>* out) const {
    out->resize(static_cast<size_t>(n_bands));
    for (int b = 0; b < n_bands; ++b) {
      const auto& w = weights[static_cast<size_t>(b)];
      double acc = 0.0;
      for (int k = 0; k < n_bins; ++k) acc += w[static_cast<size_t>(k)] * power[static_cast<size_t>(k)];
      (*out)[static_cast<size_t>(b)] = acc;
    }
  }
};

// Orthonormal DCT-II matrix, n_out x n_in.
struct DctMatrix {
  int n_in, n_out;
  std::vector<double> m;

  DctMatrix(int in, int out) : n_in(in), n_out(out), m(static_cast<size_t>(in) * out) {
    const double s0 = std::sqrt(1.0 / n_in);
    const double sk = std::sqrt(2.0 / n_in);
    for (int k = 0; k < n_out; ++k)
      for (int n = 0; n < n_in; ++n)
        m[static_cast<size_t>(k) * n_in + n] =
            (k == 0 ? s0 : sk) * std::cos(M_PI * (2.0 * n + 1.0) * k / (2.0 * n_in));
  }

  void Apply(const std::vector<double>& x, std::vector<double>* out) const {
    out->resize(static_cast<size_t>(n_out));
    for (int k = 0; k < n_out; ++k) {
      double acc = 0.0;
      for (int n = 0; n < n_in; ++n) acc += m[static_cast<size_t>(k) * n_in + n] * x[static_cast<size_t>(n)];
      (*out)[static_cast<size_t>(k)] = acc;
    }
  }
};

int WindowSamples(double window_ms, int sr) {
  return static_cast<int>(std::lround(window_ms * sr / 1000.0));
}
int HopSamples(double hop_ms, int sr) {
  return static_cast<int>(std::lround(hop_ms * sr / 1000.0));
}

// Shared per-pipeline state so parallel and serial runs perform identical
// per-frame arithmetic.
struct MfccPipeline {
  int win, hop, nfft;
  std::vector<double> hann;
  MelFilterbank mel;
  DctMatrix dct;
  const FeatureConfig& cfg;

  MfccPipeline(const FeatureConfig& c, int sr)
      : win(WindowSamples(c.window_ms, sr)),
        hop(HopSamples(c.hop_ms, sr)),
        nfft(NextPow2(win)),
        hann(HannWindow(win)),
        mel(c.n_mel_bands, nfft, sr),
        dct(c.n_mel_bands, c.n_coeffs),
        cfg(c) {}

  void ComputeFrame(const float* samples, float* out_row) const {
    std::vector<std::complex<double>> buf(static_cast<size_t>(nfft), {0.0, 0.0});
    for (int i = 0; i < win; ++i)
      buf[static_cast<size_t>(i)] = {samples[i] * hann[static_cast<size_t>(i)], 0.0};
    Fft(buf);
    std::vector<double> power(static_cast<size_t>(nfft / 2 + 1));
    for (int k = 0; k <= nfft / 2; ++k) power[static_cast<size_t>(k)] = std::norm(buf[static_cast<size_t>(k)]);
    std::vector<double> energies, coeffs;
    mel.Apply(power, &energies);
    for (double& e : energies) e = std::log(std::max(e, kLogFloor));
    dct.Apply(energies, &coeffs);
    for (int d = cfg.drop_first; d < cfg.n_coeffs; ++d)
      out_row[d - cfg.drop_first] = static_cast<float>(coeffs[static_cast<size_t>(d)]);
  }
};

// Time-domain autocorrelation lags 0..order of a windowed frame.
void Autocorrelate(const std::vector<double>& x, int order, std::vector<double>* r) {
  r->assign(static_cast<size_t>(order) + 1, 0.0);
  const int n = static_cast<int>(x.size());
  for (int k = 0; k <= order; ++k) {
    double acc = 0.0;
    for (int i = 0; i + k < n; ++i) acc += x[static_cast<size_t>(i)] * x[static_cast<size_t>(i + k)];
    (*r)[static_cast<size_t>(k)] = acc;
  }
}

struct RecitativePipeline {
  int win, hop, nfft;
  std::vector<double> hann;
  MelFilterbank mel;
  DctMatrix dct;
  const FeatureConfig& cfg;

  RecitativePipeline(const FeatureConfig& c, int sr)
      : win(WindowSamples(c.window_ms, sr)),
        hop(HopSamples(c.hop_ms, sr)),
        nfft(NextPow2(win)),
        hann(HannWindow(win)),
        mel(c.n_mel_bands, nfft, sr),
        dct(c.n_mel_bands, c.n_coeffs),
        cfg(c) {}

  void ComputeFrame(const float* samples, float* out_row) const {
    std::vector<double> x(static_cast<size_t>(win));
    for (int i = 0; i < win; ++i) x[static_cast<size_t>(i)] = samples[i] * hann[static_cast<size_t>(i)];
    std::vector<double> r;
    Autocorrelate(x, cfg.lpc_order, &r);
    const LpcResult lpc = LevinsonDurbin(r, cfg.lpc_order);
    std::vector<double> envelope(static_cast<size_t>(nfft / 2 + 1));
    for (int k = 0; k <= nfft / 2; ++k)
      envelope[static_cast<size_t>(k)] =
          LpcEnvelopePower(lpc.coefficients, lpc.prediction_error,
                           2.0 * M_PI * static_cast<double>(k) / nfft);
    std::vector<double> energies, coeffs;
    mel.Apply(envelope, &energies);
    for (double& e : energies) e = std::log(std::max(e, kLogFloor));
    dct.Apply(energies, &coeffs);
    for (int d = cfg.drop_first; d < cfg.n_coeffs; ++d)
      out_row[d - cfg.drop_first] = static_cast<float>(coeffs[static_cast<size_t>(d)]);
  }
};

void CheckRate(const AudioBuffer& audio, const FeatureConfig& cfg) {
  if (audio.sample_rate_hz != cfg.sample_rate_hz)
    throw RateMismatchError(StrFormat("audio is %d Hz but config expects %d Hz",
                                      audio.sample_rate_hz, cfg.sample_rate_hz));
}

template <typename Pipeline>
FeatureMatrix RunFramewise(const AudioBuffer& audio, const FeatureConfig& cfg,
                           bool parallel) {
  CheckRate(audio, cfg);
  const int sr = cfg.sample_rate_hz;
  const Pipeline pipe(cfg, sr);
  const int64_t n = static_cast<int64_t>(audio.samples.size());
  if (n < pipe.win)
    throw EmptyInputError(StrFormat("audio (%lld samples) shorter than one %d-sample window",
                                    static_cast<long long>(n), pipe.win));
  const int64_t frames = (n - pipe.win) / pipe.hop + 1;

  FeatureMatrix out;
  out.data = Matrix(frames, cfg.output_dim());
  out.frame_period_ms = cfg.hop_ms;
  out.first_frame_center_ms = (pipe.win - 1) * 500.0 / sr;

  if (parallel) {
#pragma omp parallel for schedule(static)
    for (int64_t t = 0; t < frames; ++t)
      pipe.ComputeFrame(audio.samples.data() + t * pipe.hop, out.data.row(t).data());
  } else {
    for (int64_t t = 0; t < frames; ++t)
      pipe.ComputeFrame(audio.samples.data() + t * pipe.hop, out.data.row(t).data());
  }
  return out;
}

}  // namespace

FeatureConfig FeatureConfig::Model80() {
  FeatureConfig c;
  c.variant = FeatureVariant::kModel80;
  c.sample_rate_hz = 16000;
  c.n_mel_bands = 80;
  c.n_coeffs = 80;
  c.drop_first = 0;
  return c;
}

FeatureConfig FeatureConfig::Baseline() {
  FeatureConfig c;
  c.variant = FeatureVariant::kBaseline;
  c.sample_rate_hz = 44100;
  c.n_mel_bands = 120;
  c.n_coeffs = 120;
  c.drop_first = 20;
  return c;
}

FeatureConfig FeatureConfig::Recitative() {
  FeatureConfig c;
  c.variant = FeatureVariant::kRecitative;
  c.sample_rate_hz = 1500;
  c.n_mel_bands = 25;
  c.n_coeffs = 25;
  c.drop_first = 0;
  c.lpc_order = 12;
  return c;
}

void FeatureConfig::Validate() const {
  if (sample_rate_hz <= 0) throw Error("FeatureConfig: sample rate must be positive");
  if (!(window_ms >= hop_ms && hop_ms > 0))
    throw Error("FeatureConfig: need window_ms >= hop_ms > 0");
  if (n_coeffs > n_mel_bands) throw Error("FeatureConfig: n_coeffs > n_mel_bands");
  if (drop_first < 0 || drop_first >= n_coeffs)
    throw Error("FeatureConfig: drop_first out of range");
  if (variant != FeatureVariant::kBaseline && drop_first != 0)
    throw Error("FeatureConfig: drop_first is baseline-only");
  if (variant == FeatureVariant::kRecitative && lpc_order < 1)
    throw Error("FeatureConfig: lpc_order must be >= 1");
}

FeatureVariant ParseVariant(const std::string& name) {
  if (name == "model80") return FeatureVariant::kModel80;
  if (name == "baseline") return FeatureVariant::kBaseline;
  if (name == "recitative") return FeatureVariant::kRecitative;
  throw Error(StrFormat("unknown feature variant '%s'", name.c_str()));
}

const char* VariantName(FeatureVariant v) {
  switch (v) {
    case FeatureVariant::kModel80: return "model80";
    case FeatureVariant::kBaseline: return "baseline";
    case FeatureVariant::kRecitative: return "recitative";
  }
  return "?";
}

std::vector<double> HannWindow(int n) {
  std::vector<double> w(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i)
    w[static_cast<size_t>(i)] = 0.5 - 0.5 * std::cos(2.0 * M_PI * i / n);
  return w;
}

Matrix FrameSignal(const AudioBuffer& audio, double window_ms, double hop_ms) {
  if (audio.sample_rate_hz <= 0) throw Error("FrameSignal: sample rate must be positive");
  if (!(window_ms >= hop_ms && hop_ms > 0))
    throw Error("FrameSignal: need window_ms >= hop_ms > 0");
  const int win = WindowSamples(window_ms, audio.sample_rate_hz);
  const int hop = HopSamples(hop_ms, audio.sample_rate_hz);
  const int64_t n = static_cast<int64_t>(audio.samples.size());
  if (n < win)
    throw EmptyInputError(StrFormat("audio (%lld samples) shorter than one %d-sample window",
                                    static_cast<long long>(n), win));
  const std::vector<double> hann = HannWindow(win);
  const int64_t frames = (n - win) / hop + 1;
  Matrix out(frames, win);
  for (int64_t t = 0; t < frames; ++t)
    for (int i = 0; i < win; ++i)
      out.at(t, i) = static_cast<float>(audio.samples[static_cast<size_t>(t * hop + i)] *
                                        hann[static_cast<size_t>(i)]);
  return out;
}

FeatureMatrix Mfcc(const AudioBuffer& audio, const FeatureConfig& config, bool parallel) {
  config.Validate();
  if (config.variant == FeatureVariant::kRecitative)
    throw Error("Mfcc: recitative variant uses RecitativeFeature");
  return RunFramewise<MfccPipeline>(audio, config, parallel);
}

FeatureMatrix RecitativeFeature(const AudioBuffer& audio, const FeatureConfig& config,
                                bool parallel) {
  config.Validate();
  if (config.variant != FeatureVariant::kRecitative)
    throw Error("RecitativeFeature: config variant must be recitative");
  return RunFramewise<RecitativePipeline>(audio, config, parallel);
}

FeatureMatrix ComputeFeatures(const AudioBuffer& audio, const FeatureConfig& config,
                              bool parallel) {
  if (config.variant == FeatureVariant::kRecitative)
    return RecitativeFeature(audio, config, parallel);
  return Mfcc(audio, config, parallel);
}

LpcResult LevinsonDurbin(const std::vector<double>& autocorrelation, int order) {
  if (order < 0) throw Error("LevinsonDurbin: negative order");
  if (static_cast<int>(autocorrelation.size()) < order + 1)
    throw DimensionError(StrFormat("LevinsonDurbin: need %d lags, got %zu",
                                   order + 1, autocorrelation.size()));
  LpcResult res;
  res.coefficients.assign(static_cast<size_t>(order), 0.0);
  const double r0 = autocorrelation[0];
  if (r0 <= 0.0) {
    res.prediction_error = 0.0;  // silent frame
    return res;
  }
  double err = r0;
  for (int i = 1; i <= order; ++i) {
    double acc = autocorrelation[static_cast<size_t>(i)];
    for (int j = 1; j < i; ++j)
      acc -= res.coefficients[static_cast<size_t>(j) - 1] * autocorrelation[static_cast<size_t>(i - j)];
    if (err <= 0.0) break;  // perfectly predictable already
    const double k = acc / err;
    std::vector<double> prev(res.coefficients.begin(), res.coefficients.begin() + (i - 1));
    res.coefficients[static_cast<size_t>(i) - 1] = k;
    for (int j = 1; j < i; ++j)
      res.coefficients[static_cast<size_t>(j) - 1] =
          prev[static_cast<size_t>(j) - 1] - k * prev[static_cast<size_t>(i - j) - 1];
    err *= (1.0 - k * k);
  }
  res.prediction_error = std::max(err, 0.0);
  return res;
}

double LpcEnvelopePower(const std::vector<double>& coefficients, double gain,
                        double omega) {
  if (gain <= 0.0) return 0.0;
  double re = 1.0, im = 0.0;
  for (size_t k = 0; k < coefficients.size(); ++k) {
    const double w = omega * static_cast<double>(k + 1);
    re -= coefficients[k] * std::cos(w);
    im += coefficients[k] * std::sin(w);
  }
  const double denom = re * re + im * im;
  if (denom < 1e-30) return gain / 1e-30;
  return gain / denom;
}

std::vector<double> Dct(const std::vector<double>& x, int n_out) {
  const int n_in = static_cast<int>(x.size());
  if (n_out < 1 || n_out > n_in) throw DimensionError("Dct: n_out out of range");
  DctMatrix m(n_in, n_out);
  std::vector<double> out;
  m.Apply(x, &out);
  return out;
}

std::vector<double> DctInverse(const std::vector<double>& coeffs, int n_out) {
  const int n_in = static_cast<int>(coeffs.size());
  if (n_out < n_in) throw DimensionError("DctInverse: n_out < coefficient count");
  // Transpose of the orthonormal DCT-II matrix (zero-padded coefficients).
  DctMatrix m(n_out, n_in);
  std::vector<double> out(static_cast<size_t>(n_out), 0.0);
  for (int n = 0; n < n_out; ++n) {
    double acc = 0.0;
    for (int k = 0; k < n_in; ++k)
      acc += m.m[static_cast<size_t>(k) * n_out + n] * coeffs[static_cast<size_t>(k)];
    out[static_cast<size_t>(n)] = acc;
  }
  return out;
}

void SaveFeatures(const std::string& path, const FeatureMatrix& features) {
  std::ofstream os = io::OpenOut(path);
  os.write("FEAT1", 5);
  io::PutU32(os, static_cast<uint32_t>(features.data.rows));
  io::PutU32(os, static_cast<uint32_t>(features.data.cols));
  io::PutF64(os, features.frame_period_ms);
  io::PutF64(os, features.first_frame_center_ms);
  io::PutF32Array(os, features.data.data.data(), features.data.data.size());
  if (!os) throw IoError(StrFormat("write failed: %s", path.c_str()));
}

FeatureMatrix LoadFeatures(const std::string& path) {
  std::ifstream is = io::OpenIn(path);
  io::ExpectMagic(is, "FEAT1", path);
  uint32_t t = 0, d = 0;
  FeatureMatrix out;
  if (!io::GetU32(is, &t) || !io::GetU32(is, &d) ||
      !io::GetF64(is, &out.frame_period_ms) || !io::GetF64(is, &out.first_frame_center_ms))
    throw FormatError(StrFormat("%s: truncated FEAT1 header", path.c_str()));
  out.data = Matrix(t, d);
  if (!io::GetF32Array(is, out.data.data.data(), out.data.data.size()))
    throw FormatError(StrFormat("%s: truncated FEAT1 payload", path.c_str()));
  return out;
}

}  // namespace lytrack
