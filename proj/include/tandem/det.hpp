// include/tandem/det.hpp

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

// Empirical detection error trade-off curves and the equal error rate.
//
// Score convention: higher score means more bona-fide-like (more
// target-like for ASV scores).  At a threshold s the miss rate counts
// positive-class scores strictly below s and the false alarm rate counts
// negative-class scores at or above s.  Candidate thresholds are the
// distinct pooled score values plus -inf/+inf sentinels, which makes the
// curve contain every empirical operating point including (0,1) and (1,0).

#ifndef TANDEM_DET_HPP_
#define TANDEM_DET_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "tandem/common.hpp"

namespace tandem {

struct DetCurve {
  std::vector<double> thresholds;  // ascending, first = -inf, last = +inf
  std::vector<double> p_miss;      // non-decreasing, in [0,1]
  std::vector<double> p_fa;        // non-increasing, in [0,1]

  // Underlying counts; kept so that crossing arithmetic can be done
  // exactly in integers (p_miss[i] == miss_count[i] / n_positive etc).
  std::vector<int64_t> miss_count;  // # positive scores <  threshold
  std::vector<int64_t> fa_count;    // # negative scores >= threshold
  int64_t n_positive = 0;
  int64_t n_negative = 0;

  size_t size() const { return thresholds.size(); }
};

struct EerResult {
  double eer = 0.0;
  double threshold = 0.0;
};

/// Builds the empirical DET curve for one positive (bona fide / target)
/// and one negative (spoof / nontarget) score list.
inline DetCurve ComputeDetCurve(std::span<const double> positive,
                                std::span<const double> negative) {
  Require(!positive.empty() && !negative.empty(),
          "det curve: degenerate class (needs scores of both keys)");
  for (double v : positive)
    Require(std::isfinite(v), "det curve: non-finite positive score");
  for (double v : negative)
    Require(std::isfinite(v), "det curve: non-finite negative score");

  std::vector<double> pos(positive.begin(), positive.end());
  std::vector<double> neg(negative.begin(), negative.end());
  std::sort(pos.begin(), pos.end());
  std::sort(neg.begin(), neg.end());

  std::vector<double> pooled;
  pooled.reserve(pos.size() + neg.size());
  std::merge(pos.begin(), pos.end(), neg.begin(), neg.end(),
             std::back_inserter(pooled));
  pooled.erase(std::unique(pooled.begin(), pooled.end()), pooled.end());

  const int64_t np = static_cast<int64_t>(pos.size());
  const int64_t nn = static_cast<int64_t>(neg.size());
  const double inf = std::numeric_limits<double>::infinity();

  DetCurve c;
  c.n_positive = np;
  c.n_negative = nn;
  c.thresholds.reserve(pooled.size() + 2);
  c.miss_count.reserve(pooled.size() + 2);
  c.fa_count.reserve(pooled.size() + 2);

  c.thresholds.push_back(-inf);
  c.miss_count.push_back(0);
  c.fa_count.push_back(nn);

  size_t ip = 0, in = 0;  // # sorted scores strictly below current threshold
  for (double s : pooled) {
    while (ip < pos.size() && pos[ip] < s) ip++;
    while (in < neg.size() && neg[in] < s) in++;
    c.thresholds.push_back(s);
    c.miss_count.push_back(static_cast<int64_t>(ip));
    c.fa_count.push_back(nn - static_cast<int64_t>(in));
  }

  c.thresholds.push_back(inf);
  c.miss_count.push_back(np);
  c.fa_count.push_back(0);

  c.p_miss.resize(c.thresholds.size());
  c.p_fa.resize(c.thresholds.size());
  for (size_t i = 0; i < c.thresholds.size(); i++) {
    c.p_miss[i] = static_cast<double>(c.miss_count[i]) / static_cast<double>(np);
    c.p_fa[i] = static_cast<double>(c.fa_count[i]) / static_cast<double>(nn);
  }
  return c;
}

/// Equal error rate of a DET curve, with the threshold where it occurs.
///
/// The step functions p_miss(s) and p_fa(s) are constant between
/// consecutive candidate thresholds, so either some candidate attains
/// p_miss == p_fa exactly, or the difference jumps across zero at a
/// candidate.  In the first case the EER is that common rate and the
/// reported threshold is the midpoint of the open interval of thresholds
/// attaining it; in the second the EER is the diagonal crossing of the
/// straight segment between the two adjacent operating points and the
/// reported threshold is the jump location.  All sign tests and the
/// crossing itself are evaluated in integer count arithmetic, so ties and
/// the symmetric-distribution case come out exact.
inline EerResult ComputeEer(const DetCurve &c) {
  const int64_t np = c.n_positive, nn = c.n_negative;
  const size_t n = c.size();
  Require(n >= 3 && c.miss_count.size() == n && c.fa_count.size() == n &&
              np > 0 && nn > 0,
          "eer: curve is missing its counts");
  // d_i = p_miss - p_fa, scaled by np*nn to stay integral.
  auto d = [&](size_t i) { return c.miss_count[i] * nn - c.fa_count[i] * np; };

  size_t i = 0;
  while (i < n && d(i) < 0) i++;
  Require(i > 0 && i < n, "eer: malformed curve");

  EerResult r;
  if (d(i) == 0) {
    size_t j = i;
    while (j + 1 < n && d(j + 1) == 0) j++;
    r.eer = c.p_miss[i];
    r.threshold = 0.5 * (c.thresholds[i - 1] + c.thresholds[j]);
  } else {
    // d jumps from negative to positive at candidate i; interpolate the
    // (p_fa, p_miss) segment between points i-1 and i against the diagonal.
    const int64_t bm0 = c.miss_count[i - 1], bm1 = c.miss_count[i];
    const int64_t sf0 = c.fa_count[i - 1], sf1 = c.fa_count[i];
    const int64_t num = sf0 * (bm1 - bm0) - bm0 * (sf1 - sf0);
    const int64_t den = (bm1 - bm0) * nn - (sf1 - sf0) * np;
    r.eer = static_cast<double>(num) / static_cast<double>(den);
    r.threshold = c.thresholds[i - 1];
  }
  return r;
}

inline EerResult ComputeEer(std::span<const double> positive,
                            std::span<const double> negative) {
  return ComputeEer(ComputeDetCurve(positive, negative));
}

/// ASV operating point: the EER threshold of target vs nontarget scores.
inline double AsvOperatingPoint(std::span<const double> target,
                                std::span<const double> nontarget) {
  return ComputeEer(ComputeDetCurve(target, nontarget)).threshold;
}

struct AsvErrorRates {
  double threshold = 0.0;
  double p_miss_asv = 0.0;        // targets rejected
  double p_fa_asv = 0.0;          // nontargets accepted
  double p_miss_spoof_asv = 0.0;  // spoofs rejected
};

/// ASV miss, false alarm and spoof-miss rates at one shared threshold.
inline AsvErrorRates ComputeAsvErrorRates(double threshold,
                                          std::span<const double> target,
                                          std::span<const double> nontarget,
                                          std::span<const double> spoof) {
  Require(std::isfinite(threshold), "asv rates: non-finite threshold");
  Require(!target.empty() && !nontarget.empty(),
          "asv rates: degenerate class (empty target or nontarget list)");
  Require(!spoof.empty(), "asv rates: empty spoof list");
  auto frac_below = [&](std::span<const double> v) {
    size_t k = 0;
    for (double x : v)
      if (x < threshold) k++;
    return static_cast<double>(k) / static_cast<double>(v.size());
  };
  auto frac_at_or_above = [&](std::span<const double> v) {
    size_t k = 0;
    for (double x : v)
      if (x >= threshold) k++;
    return static_cast<double>(k) / static_cast<double>(v.size());
  };
  AsvErrorRates r;
  r.threshold = threshold;
  r.p_miss_asv = frac_below(target);
  r.p_fa_asv = frac_at_or_above(nontarget);
  r.p_miss_spoof_asv = frac_below(spoof);
  return r;
}

}  // namespace tandem

#endif  // TANDEM_DET_HPP_
