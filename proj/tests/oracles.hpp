// tests/oracles.hpp

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

// Brute-force reference computations used by the unit and acceptance
// suites.  Everything here recomputes results from first principles with
// naive loops; nothing shares code with the library implementations it
// checks.

#ifndef TANDEM_TESTS_ORACLES_HPP_
#define TANDEM_TESTS_ORACLES_HPP_

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <set>
#include <vector>

namespace oracles {

struct CountPoint {
  double threshold;
  int64_t miss;  // # positives strictly below threshold
  int64_t fa;    // # negatives at or above threshold
};

inline int64_t CountBelow(const std::vector<double> &v, double t) {
  int64_t k = 0;
  for (double x : v)
    if (x < t) k++;
  return k;
}

inline int64_t CountAtOrAbove(const std::vector<double> &v, double t) {
  int64_t k = 0;
  for (double x : v)
    if (x >= t) k++;
  return k;
}

/// Every empirical operating point, enumerated at thresholds midway
/// between consecutive distinct pooled scores (plus one below the
/// minimum and one above the maximum), each counted with fresh loops.
inline std::vector<CountPoint> EnumerateOperatingPoints(
    const std::vector<double> &pos, const std::vector<double> &neg) {
  std::set<double> pooled(pos.begin(), pos.end());
  pooled.insert(neg.begin(), neg.end());
  std::vector<double> v(pooled.begin(), pooled.end());
  std::vector<double> probes;
  probes.push_back(v.front() - 1.0);
  for (size_t i = 0; i + 1 < v.size(); i++)
    probes.push_back(v[i] + 0.5 * (v[i + 1] - v[i]));
  probes.push_back(v.back() + 1.0);

  std::vector<CountPoint> out;
  for (double t : probes)
    out.push_back({t, CountBelow(pos, t), CountAtOrAbove(neg, t)});
  return out;
}

/// Minimum of beta*p_miss + p_fa over every threshold, by enumeration.
inline double BruteForceMinTdcf(const std::vector<double> &bona,
                                const std::vector<double> &spoof,
                                double beta) {
  auto pts = EnumerateOperatingPoints(bona, spoof);
  double best = std::numeric_limits<double>::infinity();
  for (const auto &p : pts) {
    double c = beta * (static_cast<double>(p.miss) /
                       static_cast<double>(bona.size())) +
               static_cast<double>(p.fa) / static_cast<double>(spoof.size());
    best = std::min(best, c);
  }
  return best;
}

struct BruteEer {
  double eer;
  double threshold;
};

/// EER by scanning the step functions over the distinct data values.
/// Rule under test: if p_miss == p_fa at some candidate score values,
/// the EER is that rate and the threshold is the midpoint of the open
/// interval attaining it; otherwise the straight segment between the two
/// operating points around the sign change is intersected with the
/// diagonal and the threshold is the last value on the negative side.
inline BruteEer BruteForceEer(const std::vector<double> &pos,
                              const std::vector<double> &neg) {
  const int64_t np = static_cast<int64_t>(pos.size());
  const int64_t nn = static_cast<int64_t>(neg.size());
  std::set<double> pooled(pos.begin(), pos.end());
  pooled.insert(neg.begin(), neg.end());
  std::vector<double> v(pooled.begin(), pooled.end());

  // miss/fa counts at each candidate value, plus an above-max sentinel.
  std::vector<double> thr(v);
  thr.push_back(v.back() + 1.0);  // stands in for +infinity
  std::vector<int64_t> miss, fa;
  for (double t : thr) {
    miss.push_back(CountBelow(pos, t));
    fa.push_back(CountAtOrAbove(neg, t));
  }

  size_t i = 0;
  while (miss[i] * nn - fa[i] * np < 0) i++;

  BruteEer r{};
  if (miss[i] * nn - fa[i] * np == 0) {
    size_t j = i;
    while (j + 1 < thr.size() && miss[j + 1] * nn - fa[j + 1] * np == 0) j++;
    r.eer = static_cast<double>(miss[i]) / static_cast<double>(np);
    r.threshold = 0.5 * (thr[i - 1] + thr[j]);
  } else {
    const int64_t dm = miss[i] - miss[i - 1];
    const int64_t df = fa[i] - fa[i - 1];
    r.eer = static_cast<double>(fa[i - 1] * dm - miss[i - 1] * df) /
            static_cast<double>(dm * nn - df * np);
    r.threshold = thr[i - 1];
  }
  return r;
}

/// Plain O(n^2) discrete Fourier transform.
inline std::vector<std::complex<double>> NaiveDft(
    const std::vector<std::complex<double>> &x) {
  const size_t n = x.size();
  std::vector<std::complex<double>> out(n);
  for (size_t k = 0; k < n; k++) {
    std::complex<double> acc = 0.0;
    for (size_t j = 0; j < n; j++) {
      double ang = -2.0 * M_PI * static_cast<double>(k) *
                   static_cast<double>(j) / static_cast<double>(n);
      acc += x[j] * std::complex<double>(std::cos(ang), std::sin(ang));
    }
    out[k] = acc;
  }
  return out;
}

/// Direct convolution, full length (n + m - 1).
inline std::vector<double> NaiveConvolve(const std::vector<double> &a,
                                         const std::vector<double> &b) {
  std::vector<double> out(a.size() + b.size() - 1, 0.0);
  for (size_t i = 0; i < a.size(); i++)
    for (size_t j = 0; j < b.size(); j++) out[i + j] += a[i] * b[j];
  return out;
}

/// Orthonormal DCT-II by direct cosine summation.
inline std::vector<double> NaiveDctII(const std::vector<double> &x) {
  const size_t n = x.size();
  std::vector<double> out(n);
  for (size_t k = 0; k < n; k++) {
    double acc = 0.0;
    for (size_t j = 0; j < n; j++)
      acc += x[j] * std::cos(M_PI / static_cast<double>(n) *
                             (static_cast<double>(j) + 0.5) *
                             static_cast<double>(k));
    double scale = std::sqrt((k == 0 ? 1.0 : 2.0) / static_cast<double>(n));
    out[k] = scale * acc;
  }
  return out;
}

/// Natural cubic spline evaluated by solving the full dense linear system
/// for the knot second derivatives with Gaussian elimination.
class DenseNaturalSpline {
 public:
  DenseNaturalSpline(std::vector<double> x, std::vector<double> y)
      : x_(std::move(x)), y_(std::move(y)) {
    const size_t n = x_.size();
    m_.assign(n, 0.0);
    if (n < 3) return;
    const size_t k = n - 2;  // interior knots
    std::vector<std::vector<double>> a(k, std::vector<double>(k + 1, 0.0));
    for (size_t i = 0; i < k; i++) {
      double h0 = x_[i + 1] - x_[i];
      double h1 = x_[i + 2] - x_[i + 1];
      if (i > 0) a[i][i - 1] = h0;
      a[i][i] = 2.0 * (h0 + h1);
      if (i + 1 < k) a[i][i + 1] = h1;
      a[i][k] = 6.0 * ((y_[i + 2] - y_[i + 1]) / h1 - (y_[i + 1] - y_[i]) / h0);
    }
    for (size_t col = 0; col < k; col++) {  // partial pivoting
      size_t piv = col;
      for (size_t r = col + 1; r < k; r++)
        if (std::fabs(a[r][col]) > std::fabs(a[piv][col])) piv = r;
      std::swap(a[col], a[piv]);
      for (size_t r = 0; r < k; r++) {
        if (r == col || a[r][col] == 0.0) continue;
        double f = a[r][col] / a[col][col];
        for (size_t c = col; c <= k; c++) a[r][c] -= f * a[col][c];
      }
    }
    for (size_t i = 0; i < k; i++) m_[i + 1] = a[i][k] / a[i][i];
  }

  double Eval(double t) const {
    size_t n = x_.size();
    size_t i = 0;
    while (i + 2 < n && t > x_[i + 1]) i++;
    double h = x_[i + 1] - x_[i];
    double u = (x_[i + 1] - t) / h, w = (t - x_[i]) / h;
    return u * y_[i] + w * y_[i + 1] +
           ((u * u * u - u) * m_[i] + (w * w * w - w) * m_[i + 1]) * h * h /
               6.0;
  }

 private:
  std::vector<double> x_, y_, m_;
};

}  // namespace oracles

#endif  // TANDEM_TESTS_ORACLES_HPP_
