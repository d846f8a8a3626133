// include/tandem/lfcc.hpp

// Copyright 2026  Tandem Toolkit Authors

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

// Linear frequency cepstral coefficients.
//
// Pipeline per frame: Hamming window -> zero-padded FFT -> one-sided
// power spectrum -> triangular filterbank with linearly spaced centers
// spanning 0..fs/2 -> floored natural log -> orthonormal DCT-II, first
// n_cepstral coefficients kept (coefficient 0 included) -> deltas and
// double deltas appended.

#ifndef TANDEM_LFCC_HPP_
#define TANDEM_LFCC_HPP_

#include <cmath>
#include <complex>
#include <vector>

#include "tandem/audio.hpp"
#include "tandem/dsp.hpp"
#include "tandem/features.hpp"
#include "tandem/fft.hpp"

namespace tandem {

/// Floor applied to power values before the log in both feature pipelines.
inline constexpr double kLogFloor = 1e-10;

struct LfccConfig {
  double frame_length_ms = 20.0;
  double frame_shift_ms = 10.0;
  size_t fft_size = 512;
  size_t n_filters = 20;
  size_t n_cepstral = 20;
  int delta_window = 2;

  size_t FrameLength(int sample_rate) const {
    return static_cast<size_t>(std::lround(frame_length_ms * sample_rate /
                                           1000.0));
  }
  size_t FrameShift(int sample_rate) const {
    return static_cast<size_t>(std::lround(frame_shift_ms * sample_rate /
                                           1000.0));
  }

  void Validate(int sample_rate) const {
    Require(frame_length_ms > 0 && frame_shift_ms > 0,
            "lfcc: frame length/shift must be positive");
    Require(frame_shift_ms <= frame_length_ms,
            "lfcc: frame shift must not exceed frame length");
    Require(fft_size >= 2 && (fft_size & (fft_size - 1)) == 0,
            "lfcc: fft_size must be a power of two");
    Require(FrameLength(sample_rate) <= fft_size,
            "lfcc: frame (", FrameLength(sample_rate),
            " samples) does not fit the FFT size ", fft_size);
    Require(n_filters >= 1, "lfcc: need at least one filter");
    Require(n_cepstral >= 1 && n_cepstral <= n_filters,
            "lfcc: n_cepstral must be in [1, n_filters]");
    Require(delta_window >= 1, "lfcc: delta window must be >= 1");
  }
};

/// Triangular filterbank with linearly spaced centers covering 0..fs/2,
/// sampled at the one-sided FFT bin frequencies.  Row j holds filter j's
/// weight for each of the fft_size/2 + 1 bins; peak weight is 1.
inline std::vector<std::vector<double>> LinearTriangularFilterbank(
    size_t n_filters, size_t fft_size, int sample_rate) {
  const size_t n_bins = fft_size / 2 + 1;
  const double nyquist = sample_rate / 2.0;
  std::vector<double> edges(n_filters + 2);
  for (size_t j = 0; j < edges.size(); j++)
    edges[j] = nyquist * static_cast<double>(j) /
               static_cast<double>(n_filters + 1);

  std::vector<std::vector<double>> fb(n_filters,
                                      std::vector<double>(n_bins, 0.0));
  for (size_t j = 0; j < n_filters; j++) {
    double lo = edges[j], mid = edges[j + 1], hi = edges[j + 2];
    for (size_t k = 0; k < n_bins; k++) {
      double f = static_cast<double>(k) * sample_rate /
                 static_cast<double>(fft_size);
      if (f > lo && f < mid) {
        fb[j][k] = (f - lo) / (mid - lo);
      } else if (f == mid) {
        fb[j][k] = 1.0;
      } else if (f > mid && f < hi) {
        fb[j][k] = (hi - f) / (hi - mid);
      }
    }
  }
  return fb;
}

/// Filterbank log energies, the pipeline up to (not including) the DCT.
/// Exposed separately so the cepstra can be checked stage by stage.
inline FeatureMatrix LfccLogEnergies(const AudioBuffer &audio,
                                     const LfccConfig &cfg) {
  audio.Check("lfcc");
  cfg.Validate(audio.sample_rate);
  const size_t flen = cfg.FrameLength(audio.sample_rate);
  const size_t shift = cfg.FrameShift(audio.sample_rate);
  Require(audio.samples.size() >= flen,
          "lfcc: audio (", audio.samples.size(),
          " samples) is shorter than one frame (", flen, ")");

  const size_t n_frames = (audio.samples.size() - flen) / shift + 1;
  const size_t n_bins = cfg.fft_size / 2 + 1;
  const std::vector<double> window = HammingWindow(flen);
  const auto fb =
      LinearTriangularFilterbank(cfg.n_filters, cfg.fft_size, audio.sample_rate);

  FeatureMatrix out(n_frames, cfg.n_filters);
  std::vector<std::complex<double>> buf(cfg.fft_size);
  std::vector<double> power(n_bins);
  for (size_t t = 0; t < n_frames; t++) {
    std::fill(buf.begin(), buf.end(), std::complex<double>(0.0, 0.0));
    const double *frame = &audio.samples[t * shift];
    for (size_t i = 0; i < flen; i++) buf[i] = frame[i] * window[i];
    Fft(&buf);
    for (size_t k = 0; k < n_bins; k++) power[k] = std::norm(buf[k]);
    for (size_t j = 0; j < cfg.n_filters; j++) {
      double e = 0.0;
      for (size_t k = 0; k < n_bins; k++) e += fb[j][k] * power[k];
      out.At(t, j) = std::log(std::max(e, kLogFloor));
    }
  }
  return out;
}

inline FeatureMatrix Lfcc(const AudioBuffer &audio, const LfccConfig &cfg) {
  FeatureMatrix loge = LfccLogEnergies(audio, cfg);
  DctPlan dct(cfg.n_filters);
  FeatureMatrix cep(loge.frames, cfg.n_cepstral);
  for (size_t t = 0; t < loge.frames; t++)
    dct.Apply(loge.Row(t), cep.Row(t), cfg.n_cepstral);
  FeatureMatrix out = AppendDeltas(cep, cfg.delta_window);
  out.CheckFinite("lfcc");
  return out;
}

}  // namespace tandem

#endif  // TANDEM_LFCC_HPP_
