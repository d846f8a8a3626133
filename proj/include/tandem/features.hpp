// include/tandem/features.hpp

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

#ifndef TANDEM_FEATURES_HPP_
#define TANDEM_FEATURES_HPP_

#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <vector>

#include "tandem/common.hpp"
#include "tandem/io_util.hpp"

namespace tandem {

/// Row-major frames x dims matrix of finite reals.
struct FeatureMatrix {
  size_t frames = 0;
  size_t dims = 0;
  std::vector<double> values;

  FeatureMatrix() = default;
  FeatureMatrix(size_t f, size_t d) : frames(f), dims(d), values(f * d, 0.0) {}

  double &At(size_t f, size_t d) { return values[f * dims + d]; }
  double At(size_t f, size_t d) const { return values[f * dims + d]; }
  const double *Row(size_t f) const { return &values[f * dims]; }
  double *Row(size_t f) { return &values[f * dims]; }

  void CheckFinite(const char *what) const {
    for (double v : values)
      Require(std::isfinite(v), what, ": non-finite feature value");
  }
};

/// Appends regression deltas and double deltas:
///
///   delta_t = sum_{n=1..W} n * (c_{t+n} - c_{t-n}) / (2 * sum_{n=1..W} n^2)
///
/// with out-of-range frames replicated from the edges; the double delta
/// applies the same operator to the deltas.  Output dims = 3 * input dims.
inline FeatureMatrix AppendDeltas(const FeatureMatrix &m, int window) {
  Require(window >= 1, "deltas: window must be >= 1");
  Require(m.frames >= 1, "deltas: empty input");
  const int t_max = static_cast<int>(m.frames) - 1;

  double denom = 0.0;
  for (int n = 1; n <= window; n++) denom += static_cast<double>(n) * n;
  denom *= 2.0;

  auto delta_of = [&](const FeatureMatrix &src) {
    FeatureMatrix d(src.frames, src.dims);
    for (int t = 0; t <= t_max; t++) {
      for (size_t k = 0; k < src.dims; k++) {
        double acc = 0.0;
        for (int n = 1; n <= window; n++) {
          int hi = std::min(t + n, t_max);
          int lo = std::max(t - n, 0);
          acc += n * (src.At(hi, k) - src.At(lo, k));
        }
        d.At(t, k) = acc / denom;
      }
    }
    return d;
  };

  FeatureMatrix d1 = delta_of(m);
  FeatureMatrix d2 = delta_of(d1);

  FeatureMatrix out(m.frames, m.dims * 3);
  for (size_t t = 0; t < m.frames; t++) {
    for (size_t k = 0; k < m.dims; k++) {
      out.At(t, k) = m.At(t, k);
      out.At(t, m.dims + k) = d1.At(t, k);
      out.At(t, 2 * m.dims + k) = d2.At(t, k);
    }
  }
  return out;
}

// Binary feature container: 16-byte header (8-byte magic, u32 version,
// u32 reserved), u32 frame count, u32 dim count, then row-major f64
// values, everything little-endian.
inline constexpr char kFeatureMagic[8] = {'T', 'N', 'D', 'M',
                                          'F', 'E', 'A', '\0'};
inline constexpr uint32_t kFeatureVersion = 1;

inline void WriteFeatures(const FeatureMatrix &m, std::ostream &out) {
  out.write(kFeatureMagic, 8);
  PutU32Le(out, kFeatureVersion);
  PutU32Le(out, 0);
  PutU32Le(out, static_cast<uint32_t>(m.frames));
  PutU32Le(out, static_cast<uint32_t>(m.dims));
  for (double v : m.values) PutF64Le(out, v);
  Require(out.good(), "feature write failed");
}

inline FeatureMatrix ReadFeatures(std::istream &in) {
  char magic[8];
  in.read(magic, 8);
  Require(in.good() && std::memcmp(magic, kFeatureMagic, 8) == 0,
          "feature read: bad magic");
  uint32_t version = GetU32Le(in);
  Require(version == kFeatureVersion, "feature read: unsupported version ",
          version);
  GetU32Le(in);  // reserved
  uint32_t frames = GetU32Le(in);
  uint32_t dims = GetU32Le(in);
  FeatureMatrix m(frames, dims);
  for (auto &v : m.values) v = GetF64Le(in);
  return m;
}

/// Debug CSV export: one frame per line.
inline void WriteFeaturesCsv(const FeatureMatrix &m, std::ostream &out) {
  char buf[40];
  for (size_t t = 0; t < m.frames; t++) {
    for (size_t k = 0; k < m.dims; k++) {
      std::snprintf(buf, sizeof(buf), "%.17g", m.At(t, k));
      out << (k ? "," : "") << buf;
    }
    out << '\n';
  }
}

}  // namespace tandem

#endif  // TANDEM_FEATURES_HPP_
