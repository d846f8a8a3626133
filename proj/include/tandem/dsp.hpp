// include/tandem/dsp.hpp

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

// Small signal-processing building blocks shared by the feature
// extractors: window functions, an orthonormal DCT-II, and a natural
// cubic spline interpolator.

#ifndef TANDEM_DSP_HPP_
#define TANDEM_DSP_HPP_

#include <cmath>
#include <vector>

#include "tandem/common.hpp"

namespace tandem {

/// Symmetric Hann window, w[0] == w[n-1] == 0.
inline std::vector<double> HannWindow(size_t n) {
  Require(n >= 2, "window: length must be >= 2");
  std::vector<double> w(n);
  for (size_t i = 0; i < n; i++)
    w[i] = 0.5 - 0.5 * std::cos(2.0 * M_PI * static_cast<double>(i) /
                                static_cast<double>(n - 1));
  return w;
}

/// Symmetric Hamming window.
inline std::vector<double> HammingWindow(size_t n) {
  Require(n >= 2, "window: length must be >= 2");
  std::vector<double> w(n);
  for (size_t i = 0; i < n; i++)
    w[i] = 0.54 - 0.46 * std::cos(2.0 * M_PI * static_cast<double>(i) /
                                  static_cast<double>(n - 1));
  return w;
}

/// Orthonormal DCT-II with a precomputed basis; worth it because the
/// feature extractors apply the same size to every frame.
class DctPlan {
 public:
  explicit DctPlan(size_t n) : n_(n), basis_(n * n) {
    Require(n >= 1, "dct: empty size");
    for (size_t k = 0; k < n; k++) {
      double scale = std::sqrt((k == 0 ? 1.0 : 2.0) / static_cast<double>(n));
      for (size_t j = 0; j < n; j++)
        basis_[k * n + j] =
            scale * std::cos(M_PI / static_cast<double>(n) *
                             (static_cast<double>(j) + 0.5) *
                             static_cast<double>(k));
    }
  }

  size_t size() const { return n_; }

  /// Writes the first `keep` coefficients of the transform of `in` to `out`.
  void Apply(const double *in, double *out, size_t keep) const {
    Require(keep <= n_, "dct: keep > size");
    for (size_t k = 0; k < keep; k++) {
      double acc = 0.0;
      const double *row = &basis_[k * n_];
      for (size_t j = 0; j < n_; j++) acc += row[j] * in[j];
      out[k] = acc;
    }
  }

  std::vector<double> Apply(const std::vector<double> &in) const {
    Require(in.size() == n_, "dct: size mismatch");
    std::vector<double> out(n_);
    Apply(in.data(), out.data(), n_);
    return out;
  }

 private:
  size_t n_;
  std::vector<double> basis_;  // row k = basis vector of coefficient k
};

/// Natural cubic spline through strictly increasing knots; second
/// derivatives from the standard tridiagonal system (Thomas algorithm).
class CubicSpline {
 public:
  CubicSpline(std::vector<double> x, std::vector<double> y)
      : x_(std::move(x)), y_(std::move(y)) {
    const size_t n = x_.size();
    Require(n >= 2, "spline: needs at least 2 knots");
    Require(y_.size() == n, "spline: x/y size mismatch");
    for (size_t i = 1; i < n; i++)
      Require(x_[i] > x_[i - 1], "spline: knots must be strictly increasing");
    m_.assign(n, 0.0);
    if (n == 2) return;

    const size_t k = n - 2;
    std::vector<double> diag(k), rhs(k), sub(k), sup(k);
    for (size_t i = 0; i < k; i++) {
      double h0 = x_[i + 1] - x_[i];
      double h1 = x_[i + 2] - x_[i + 1];
      sub[i] = h0;
      diag[i] = 2.0 * (h0 + h1);
      sup[i] = h1;
      rhs[i] = 6.0 * ((y_[i + 2] - y_[i + 1]) / h1 - (y_[i + 1] - y_[i]) / h0);
    }
    for (size_t i = 1; i < k; i++) {
      double f = sub[i] / diag[i - 1];
      diag[i] -= f * sup[i - 1];
      rhs[i] -= f * rhs[i - 1];
    }
    m_[k] = rhs[k - 1] / diag[k - 1];
    for (size_t i = k - 1; i > 0; i--)
      m_[i] = (rhs[i - 1] - sup[i - 1] * m_[i + 1]) / diag[i - 1];
  }

  /// Evaluates at t; t outside the knot range extrapolates the end cubic.
  double Eval(double t) const {
    size_t lo = 0, hi = x_.size() - 1;
    while (hi - lo > 1) {
      size_t mid = (lo + hi) / 2;
      (x_[mid] <= t ? lo : hi) = mid;
    }
    double h = x_[lo + 1] - x_[lo];
    double u = (x_[lo + 1] - t) / h;
    double w = (t - x_[lo]) / h;
    return u * y_[lo] + w * y_[lo + 1] +
           ((u * u * u - u) * m_[lo] + (w * w * w - w) * m_[lo + 1]) * h * h /
               6.0;
  }

 private:
  std::vector<double> x_, y_, m_;
};

}  // namespace tandem

#endif  // TANDEM_DSP_HPP_
