// include/tandem/cqcc.hpp

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

// Constant-Q cepstral coefficients.
//
// The constant-Q transform places bin k at f_k = f_min * 2^(k/B) with
// Q = 1 / (2^(1/B) - 1), so every bin sees the same ratio of center
// frequency to bandwidth.  Bin k uses a symmetric Hann window of
// N_k = round(Q * fs / f_k) samples centered on the frame position;
// frames step by `hop` samples and windows reaching past the signal see
// zeros.  Explicitly:
//
//   X(k, t) = (1/N_k) * sum_j x[t*hop - floor(N_k/2) + j]
//                           * w_k[j] * exp(-2*pi*i * f_k * j / fs)
//
// The cepstrum then follows |X|^2 -> floored log -> cubic-spline
// resampling of the geometric frequency axis onto a linear grid ->
// orthonormal DCT-II -> keep n_cepstral coefficients -> deltas.

#ifndef TANDEM_CQCC_HPP_
#define TANDEM_CQCC_HPP_

#include <cmath>
#include <complex>
#include <vector>

#include "tandem/audio.hpp"
#include "tandem/dsp.hpp"
#include "tandem/features.hpp"
#include "tandem/lfcc.hpp"  // kLogFloor

namespace tandem {

struct CqccConfig {
  size_t bins_per_octave = 96;
  double f_min = 0.0;  // 0 = f_max / 2^9
  double f_max = 0.0;  // 0 = sample_rate / 2
  size_t hop = 160;
  size_t n_cepstral = 30;
  size_t resample_points_per_octave = 96;
  bool include_c0 = true;
  int delta_window = 2;

  double ResolvedFmax(int sample_rate) const {
    return f_max > 0.0 ? f_max : sample_rate / 2.0;
  }
  double ResolvedFmin(int sample_rate) const {
    return f_min > 0.0 ? f_min : ResolvedFmax(sample_rate) / 512.0;
  }

  void Validate(int sample_rate) const {
    Require(bins_per_octave >= 1, "cqcc: bins_per_octave must be >= 1");
    double lo = ResolvedFmin(sample_rate), hi = ResolvedFmax(sample_rate);
    Require(lo > 0.0 && lo < hi && hi <= sample_rate / 2.0,
            "cqcc: need 0 < f_min < f_max <= sample_rate/2 (got ", lo, ", ",
            hi, ")");
    Require(hop >= 1, "cqcc: hop must be >= 1");
    Require(n_cepstral >= 1, "cqcc: n_cepstral must be >= 1");
    Require(resample_points_per_octave >= 1,
            "cqcc: resample_points_per_octave must be >= 1");
    Require(delta_window >= 1, "cqcc: delta window must be >= 1");
  }
};

/// Geometry of one constant-Q analysis: bin frequencies and window sizes.
struct CqtGeometry {
  double q = 0.0;
  std::vector<double> bin_freqs;
  std::vector<size_t> window_lengths;

  static CqtGeometry Make(const CqccConfig &cfg, int sample_rate) {
    cfg.Validate(sample_rate);
    const double lo = cfg.ResolvedFmin(sample_rate);
    const double hi = cfg.ResolvedFmax(sample_rate);
    const double b = static_cast<double>(cfg.bins_per_octave);
    CqtGeometry g;
    g.q = 1.0 / (std::pow(2.0, 1.0 / b) - 1.0);
    const size_t n_bins =
        static_cast<size_t>(std::floor(b * std::log2(hi / lo))) + 1;
    for (size_t k = 0; k < n_bins; k++) {
      double f = lo * std::pow(2.0, static_cast<double>(k) / b);
      g.bin_freqs.push_back(f);
      size_t n = static_cast<size_t>(std::lround(g.q * sample_rate / f));
      g.window_lengths.push_back(std::max<size_t>(n, 2));
    }
    return g;
  }
};

struct CqtMatrix {
  size_t frames = 0;
  size_t bins = 0;
  std::vector<std::complex<double>> values;  // row-major frames x bins
  std::vector<double> bin_freqs;

  std::complex<double> &At(size_t t, size_t k) { return values[t * bins + k]; }
  std::complex<double> At(size_t t, size_t k) const {
    return values[t * bins + k];
  }
};

/// Constant-Q transform by direct evaluation of the definition above.
/// Kernels are materialized once per bin and swept across all frames,
/// which keeps memory at one window and the arithmetic identical to the
/// definition.
inline CqtMatrix Cqt(const AudioBuffer &audio, const CqccConfig &cfg) {
  audio.Check("cqt");
  CqtGeometry g = CqtGeometry::Make(cfg, audio.sample_rate);
  const size_t n = audio.samples.size();
  const size_t longest = g.window_lengths.front();
  Require(n >= longest, "cqt: input too short (", n, " samples, lowest bin needs ",
          longest, ")");

  CqtMatrix m;
  m.frames = (n - 1) / cfg.hop + 1;
  m.bins = g.bin_freqs.size();
  m.bin_freqs = g.bin_freqs;
  m.values.assign(m.frames * m.bins, {0.0, 0.0});

  std::vector<double> ker_re, ker_im;
  for (size_t k = 0; k < m.bins; k++) {
    const size_t nk = g.window_lengths[k];
    const std::vector<double> window = HannWindow(nk);
    ker_re.resize(nk);
    ker_im.resize(nk);
    const double w0 = -2.0 * M_PI * g.bin_freqs[k] / audio.sample_rate;
    for (size_t j = 0; j < nk; j++) {
      double ang = w0 * static_cast<double>(j);
      ker_re[j] = window[j] * std::cos(ang);
      ker_im[j] = window[j] * std::sin(ang);
    }
    const long half = static_cast<long>(nk / 2);
    const double *base = audio.samples.data();
    for (size_t t = 0; t < m.frames; t++) {
      const long start = static_cast<long>(t * cfg.hop) - half;
      const size_t j0 = start < 0 ? static_cast<size_t>(-start) : 0;
      const size_t j1 = static_cast<size_t>(
          std::min<long>(static_cast<long>(nk), static_cast<long>(n) - start));
      double re = 0.0, im = 0.0;
      for (size_t j = j0; j < j1; j++) {
        double s = base[static_cast<size_t>(start + static_cast<long>(j))];
        re += s * ker_re[j];
        im += s * ker_im[j];
      }
      m.At(t, k) = std::complex<double>(re / nk, im / nk);
    }
  }
  return m;
}

/// The linear frequency grid the geometric log spectrum is resampled to.
inline std::vector<double> CqccLinearGrid(const CqtGeometry &g,
                                          size_t points_per_octave) {
  const double lo = g.bin_freqs.front();
  const double hi = g.bin_freqs.back();
  const double octaves = std::log2(hi / lo);
  const size_t count =
      static_cast<size_t>(std::lround(points_per_octave * octaves)) + 1;
  std::vector<double> grid(count);
  for (size_t i = 0; i < count; i++)
    grid[i] = lo + (hi - lo) * static_cast<double>(i) /
                       static_cast<double>(count - 1);
  return grid;
}

inline FeatureMatrix Cqcc(const AudioBuffer &audio, const CqccConfig &cfg) {
  CqtGeometry g = CqtGeometry::Make(cfg, audio.sample_rate);
  CqtMatrix m = Cqt(audio, cfg);
  const std::vector<double> grid =
      CqccLinearGrid(g, cfg.resample_points_per_octave);
  Require(cfg.n_cepstral + (cfg.include_c0 ? 0 : 1) <= grid.size(),
          "cqcc: n_cepstral exceeds the resampled spectrum size");

  DctPlan dct(grid.size());
  const size_t first = cfg.include_c0 ? 0 : 1;
  FeatureMatrix cep(m.frames, cfg.n_cepstral);
  std::vector<double> logspec(m.bins), lin(grid.size()), coeffs(grid.size());
  for (size_t t = 0; t < m.frames; t++) {
    for (size_t k = 0; k < m.bins; k++)
      logspec[k] = std::log(std::max(std::norm(m.At(t, k)), kLogFloor));
    CubicSpline spline(m.bin_freqs, logspec);
    for (size_t i = 0; i < grid.size(); i++) lin[i] = spline.Eval(grid[i]);
    dct.Apply(lin.data(), coeffs.data(), first + cfg.n_cepstral);
    for (size_t c = 0; c < cfg.n_cepstral; c++) cep.At(t, c) = coeffs[first + c];
  }
  FeatureMatrix out = AppendDeltas(cep, cfg.delta_window);
  out.CheckFinite("cqcc");
  return out;
}

}  // namespace tandem

#endif  // TANDEM_CQCC_HPP_
