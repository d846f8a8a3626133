// include/tandem/gmm.hpp

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

// Diagonal-covariance Gaussian mixtures: EM training with seeded
// k-means++ initialization, stable average log-likelihood, and the
// two-model log-likelihood-ratio score used by the countermeasure
// back-ends.  Training is bit-reproducible given (data, config, seed);
// all the randomness flows through the pinned Rng stream.

#ifndef TANDEM_GMM_HPP_
#define TANDEM_GMM_HPP_

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <numeric>
#include <ostream>
#include <vector>

#include "tandem/common.hpp"
#include "tandem/features.hpp"
#include "tandem/io_util.hpp"
#include "tandem/rng.hpp"

namespace tandem {

struct GmmModel {
  size_t n_components = 0;
  size_t dims = 0;
  std::vector<double> weights;    // K, on the simplex
  std::vector<double> means;     // K x D row-major
  std::vector<double> variances;  // K x D, every entry above the floor

  double Mean(size_t k, size_t d) const { return means[k * dims + d]; }
  double Variance(size_t k, size_t d) const { return variances[k * dims + d]; }

  void Validate() const {
    Require(n_components >= 1 && dims >= 1, "gmm: empty model");
    Require(weights.size() == n_components &&
                means.size() == n_components * dims &&
                variances.size() == n_components * dims,
            "gmm: inconsistent field sizes");
    double sum = 0.0;
    for (double w : weights) {
      Require(w >= 0.0 && std::isfinite(w), "gmm: bad weight");
      sum += w;
    }
    Require(std::fabs(sum - 1.0) <= 1e-12, "gmm: weights sum to ", sum);
    for (double v : variances)
      Require(v > 0.0 && std::isfinite(v), "gmm: non-positive variance");
    for (double m : means) Require(std::isfinite(m), "gmm: non-finite mean");
  }
};

struct TrainConfig {
  size_t n_components = 512;
  size_t max_iterations = 50;
  double log_likelihood_tolerance = 1e-5;  // nats per frame
  double variance_floor_factor = 0.01;     // fraction of global variance
  uint64_t seed = 0;
  size_t kmeans_subsample = 100000;  // frames used for initialization
  size_t kmeans_iterations = 10;

  void Validate() const {
    Require(n_components >= 1, "train: n_components must be >= 1");
    Require(max_iterations >= 1, "train: max_iterations must be >= 1");
    Require(log_likelihood_tolerance > 0.0, "train: tolerance must be > 0");
    Require(variance_floor_factor > 0.0, "train: floor factor must be > 0");
    Require(kmeans_subsample >= 1, "train: subsample must be >= 1");
  }
};

struct TrainResult {
  GmmModel model;
  std::vector<double> log_likelihood;  // one entry per EM iteration
};

namespace gmm_detail {

inline void CheckFrames(const FeatureMatrix &frames) {
  Require(frames.frames >= 1 && frames.dims >= 1, "gmm: empty feature matrix");
  frames.CheckFinite("gmm");
}

// Per-component log density constant: -0.5 * sum_d log(2 pi var_d).
inline std::vector<double> LogConsts(const GmmModel &m) {
  std::vector<double> c(m.n_components);
  for (size_t k = 0; k < m.n_components; k++) {
    double acc = 0.0;
    for (size_t d = 0; d < m.dims; d++)
      acc += std::log(2.0 * M_PI * m.Variance(k, d));
    c[k] = -0.5 * acc;
  }
  return c;
}

}  // namespace gmm_detail

/// Per-dimension variance floor: factor times the global (biased)
/// per-dimension variance of the data, with a tiny absolute fallback for
/// dimensions that are constant in the data.
inline std::vector<double> VarianceFloor(const FeatureMatrix &frames,
                                         double factor) {
  gmm_detail::CheckFrames(frames);
  const size_t t_n = frames.frames, d_n = frames.dims;
  std::vector<double> mean(d_n, 0.0), var(d_n, 0.0);
  for (size_t t = 0; t < t_n; t++)
    for (size_t d = 0; d < d_n; d++) mean[d] += frames.At(t, d);
  for (double &m : mean) m /= static_cast<double>(t_n);
  for (size_t t = 0; t < t_n; t++)
    for (size_t d = 0; d < d_n; d++) {
      double x = frames.At(t, d) - mean[d];
      var[d] += x * x;
    }
  for (double &v : var) {
    v = factor * (v / static_cast<double>(t_n));
    if (v <= 0.0) v = 1e-10;
  }
  return var;
}

/// Mean log mixture density per frame, via log-sum-exp over components.
inline double AvgLogLikelihood(const GmmModel &model,
                               const FeatureMatrix &frames) {
  model.Validate();
  gmm_detail::CheckFrames(frames);
  Require(frames.dims == model.dims, "gmm: feature dims ", frames.dims,
          " do not match model dims ", model.dims);
  const size_t k_n = model.n_components;
  std::vector<double> log_w(k_n);
  for (size_t k = 0; k < k_n; k++)
    log_w[k] = model.weights[k] > 0.0
                   ? std::log(model.weights[k])
                   : -std::numeric_limits<double>::infinity();
  const std::vector<double> consts = gmm_detail::LogConsts(model);

  double total = 0.0;
  std::vector<double> lp(k_n);
  for (size_t t = 0; t < frames.frames; t++) {
    const double *x = frames.Row(t);
    double mx = -std::numeric_limits<double>::infinity();
    for (size_t k = 0; k < k_n; k++) {
      double e = 0.0;
      const double *mu = &model.means[k * model.dims];
      const double *var = &model.variances[k * model.dims];
      for (size_t d = 0; d < model.dims; d++) {
        double z = x[d] - mu[d];
        e += z * z / var[d];
      }
      lp[k] = log_w[k] + consts[k] - 0.5 * e;
      mx = std::max(mx, lp[k]);
    }
    double s = 0.0;
    for (size_t k = 0; k < k_n; k++) s += std::exp(lp[k] - mx);
    total += mx + std::log(s);
  }
  return total / static_cast<double>(frames.frames);
}

struct EmStepResult {
  GmmModel next;
  double avg_log_likelihood = 0.0;  // of the input model on the data
  size_t rescued_components = 0;
};

/// One EM iteration.  The M-step floors every variance elementwise and
/// reseeds components whose responsibility mass fell below 1e-8 * frames
/// at the frames with the lowest likelihood under the input model (one
/// frame per rescued component, ascending likelihood), giving each one
/// frame's worth of weight before renormalizing.
inline EmStepResult EmStep(const GmmModel &model, const FeatureMatrix &frames,
                           const std::vector<double> &variance_floor) {
  model.Validate();
  gmm_detail::CheckFrames(frames);
  Require(frames.dims == model.dims, "gmm: feature dims ", frames.dims,
          " do not match model dims ", model.dims);
  Require(variance_floor.size() == model.dims, "gmm: floor size mismatch");

  const size_t k_n = model.n_components, d_n = model.dims, t_n = frames.frames;
  std::vector<double> log_w(k_n);
  for (size_t k = 0; k < k_n; k++)
    log_w[k] = model.weights[k] > 0.0
                   ? std::log(model.weights[k])
                   : -std::numeric_limits<double>::infinity();
  const std::vector<double> consts = gmm_detail::LogConsts(model);

  std::vector<double> mass(k_n, 0.0);
  std::vector<double> sum1(k_n * d_n, 0.0), sum2(k_n * d_n, 0.0);
  std::vector<double> frame_ll(t_n);
  std::vector<double> lp(k_n);
  double total = 0.0;

  for (size_t t = 0; t < t_n; t++) {
    const double *x = frames.Row(t);
    double mx = -std::numeric_limits<double>::infinity();
    for (size_t k = 0; k < k_n; k++) {
      double e = 0.0;
      const double *mu = &model.means[k * d_n];
      const double *var = &model.variances[k * d_n];
      for (size_t d = 0; d < d_n; d++) {
        double z = x[d] - mu[d];
        e += z * z / var[d];
      }
      lp[k] = log_w[k] + consts[k] - 0.5 * e;
      mx = std::max(mx, lp[k]);
    }
    double s = 0.0;
    for (size_t k = 0; k < k_n; k++) s += std::exp(lp[k] - mx);
    double ll = mx + std::log(s);
    frame_ll[t] = ll;
    total += ll;
    for (size_t k = 0; k < k_n; k++) {
      double g = std::exp(lp[k] - ll);
      if (g == 0.0) continue;
      mass[k] += g;
      double *s1 = &sum1[k * d_n];
      double *s2 = &sum2[k * d_n];
      for (size_t d = 0; d < d_n; d++) {
        s1[d] += g * x[d];
        s2[d] += g * x[d] * x[d];
      }
    }
  }

  EmStepResult res;
  res.avg_log_likelihood = total / static_cast<double>(t_n);
  GmmModel &next = res.next;
  next.n_components = k_n;
  next.dims = d_n;
  next.weights.assign(k_n, 0.0);
  next.means.assign(k_n * d_n, 0.0);
  next.variances.assign(k_n * d_n, 0.0);

  const double rescue_threshold = 1e-8 * static_cast<double>(t_n);
  std::vector<size_t> starved;
  for (size_t k = 0; k < k_n; k++) {
    if (mass[k] < rescue_threshold) {
      starved.push_back(k);
      continue;
    }
    next.weights[k] = mass[k] / static_cast<double>(t_n);
    for (size_t d = 0; d < d_n; d++) {
      double mu = sum1[k * d_n + d] / mass[k];
      double var = sum2[k * d_n + d] / mass[k] - mu * mu;
      next.means[k * d_n + d] = mu;
      next.variances[k * d_n + d] = std::max(var, variance_floor[d]);
    }
  }

  if (!starved.empty()) {
    res.rescued_components = starved.size();
    std::vector<size_t> order(t_n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) {
      return frame_ll[a] < frame_ll[b];
    });
    double wsum = 0.0;
    for (double w : next.weights) wsum += w;
    for (size_t i = 0; i < starved.size(); i++) {
      size_t k = starved[i];
      size_t t = order[i % t_n];
      for (size_t d = 0; d < d_n; d++) {
        next.means[k * d_n + d] = frames.At(t, d);
        // keep the previous spread, floored
        next.variances[k * d_n + d] =
            std::max(model.Variance(k, d), variance_floor[d]);
      }
      next.weights[k] = 1.0 / static_cast<double>(t_n);
      wsum += next.weights[k];
    }
    for (double &w : next.weights) w /= wsum;
  }

  // guard against drift off the simplex
  double sum = 0.0;
  for (double w : next.weights) sum += w;
  for (double &w : next.weights) w /= sum;
  return res;
}

/// Seeded k-means++ centers plus a few Lloyd sweeps on (a subsample of)
/// the data; returns the initial mixture: means at the centers, global
/// variance everywhere, weights from cluster occupancy.
inline GmmModel InitKmeansPlusPlus(const FeatureMatrix &frames,
                                   const TrainConfig &cfg) {
  gmm_detail::CheckFrames(frames);
  cfg.Validate();
  const size_t d_n = frames.dims;
  Require(frames.frames >= cfg.n_components, "gmm: fewer frames (",
          frames.frames, ") than components (", cfg.n_components, ")");

  Rng rng(cfg.seed);
  std::vector<size_t> pool(frames.frames);
  std::iota(pool.begin(), pool.end(), 0);
  if (frames.frames > cfg.kmeans_subsample) {
    // partial Fisher-Yates; the first `kmeans_subsample` entries become
    // the subsample
    for (size_t i = 0; i < cfg.kmeans_subsample; i++) {
      size_t j = i + rng.UniformIndex(pool.size() - i);
      std::swap(pool[i], pool[j]);
    }
    pool.resize(cfg.kmeans_subsample);
    std::sort(pool.begin(), pool.end());
  }
  const size_t s_n = pool.size();
  const size_t k_n = cfg.n_components;

  auto dist2 = [&](size_t t, const double *c) {
    const double *x = frames.Row(t);
    double acc = 0.0;
    for (size_t d = 0; d < d_n; d++) {
      double z = x[d] - c[d];
      acc += z * z;
    }
    return acc;
  };

  std::vector<double> centers(k_n * d_n, 0.0);
  {  // k-means++ seeding
    size_t first = pool[rng.UniformIndex(s_n)];
    std::copy_n(frames.Row(first), d_n, centers.begin());
    std::vector<double> best_d2(s_n);
    for (size_t i = 0; i < s_n; i++) best_d2[i] = dist2(pool[i], &centers[0]);
    for (size_t k = 1; k < k_n; k++) {
      double total = std::accumulate(best_d2.begin(), best_d2.end(), 0.0);
      size_t pick;
      if (total > 0.0) {
        double u = rng.Uniform(0.0, total);
        double acc = 0.0;
        pick = s_n - 1;
        for (size_t i = 0; i < s_n; i++) {
          acc += best_d2[i];
          if (u < acc) {
            pick = i;
            break;
          }
        }
      } else {
        pick = rng.UniformIndex(s_n);
      }
      std::copy_n(frames.Row(pool[pick]), d_n, centers.begin() + k * d_n);
      for (size_t i = 0; i < s_n; i++)
        best_d2[i] = std::min(best_d2[i], dist2(pool[i], &centers[k * d_n]));
    }
  }

  std::vector<size_t> assign(s_n, 0);
  std::vector<size_t> count(k_n, 0);
  for (size_t iter = 0; iter < cfg.kmeans_iterations; iter++) {
    bool changed = false;
    for (size_t i = 0; i < s_n; i++) {
      size_t best = 0;
      double best_d = dist2(pool[i], &centers[0]);
      for (size_t k = 1; k < k_n; k++) {
        double d = dist2(pool[i], &centers[k * d_n]);
        if (d < best_d) {
          best_d = d;
          best = k;
        }
      }
      if (assign[i] != best) changed = true;
      assign[i] = best;
    }
    std::fill(count.begin(), count.end(), 0);
    std::vector<double> acc(k_n * d_n, 0.0);
    for (size_t i = 0; i < s_n; i++) {
      count[assign[i]]++;
      const double *x = frames.Row(pool[i]);
      for (size_t d = 0; d < d_n; d++) acc[assign[i] * d_n + d] += x[d];
    }
    for (size_t k = 0; k < k_n; k++) {
      if (count[k] == 0) {
        // adopt the subsample point farthest from its own center
        size_t worst = 0;
        double worst_d = -1.0;
        for (size_t i = 0; i < s_n; i++) {
          double d = dist2(pool[i], &centers[assign[i] * d_n]);
          if (d > worst_d) {
            worst_d = d;
            worst = i;
          }
        }
        std::copy_n(frames.Row(pool[worst]), d_n, centers.begin() + k * d_n);
        assign[worst] = k;
        count[k] = 1;
        changed = true;
        continue;
      }
      for (size_t d = 0; d < d_n; d++)
        centers[k * d_n + d] = acc[k * d_n + d] / count[k];
    }
    if (!changed) break;
  }

  // final occupancy for the weights
  std::fill(count.begin(), count.end(), 0);
  for (size_t i = 0; i < s_n; i++) {
    size_t best = 0;
    double best_d = dist2(pool[i], &centers[0]);
    for (size_t k = 1; k < k_n; k++) {
      double d = dist2(pool[i], &centers[k * d_n]);
      if (d < best_d) {
        best_d = d;
        best = k;
      }
    }
    count[best]++;
  }

  const std::vector<double> floor = VarianceFloor(frames, 1.0);  // global var
  const std::vector<double> floored =
      VarianceFloor(frames, cfg.variance_floor_factor);
  GmmModel m;
  m.n_components = k_n;
  m.dims = d_n;
  m.means = centers;
  m.weights.resize(k_n);
  m.variances.resize(k_n * d_n);
  double wsum = 0.0;
  for (size_t k = 0; k < k_n; k++) {
    m.weights[k] = std::max<double>(static_cast<double>(count[k]),
                                    1.0);  // no zero-weight starts
    wsum += m.weights[k];
    for (size_t d = 0; d < d_n; d++)
      m.variances[k * d_n + d] = std::max(floor[d], floored[d]);
  }
  for (double &w : m.weights) w /= wsum;
  return m;
}

/// EM from an explicit starting model.  Stops when the per-frame
/// log-likelihood improves by less than the tolerance or at the
/// iteration cap; the history holds the likelihood of the model at the
/// start of each iteration.
inline TrainResult TrainEmFrom(const GmmModel &init,
                               const FeatureMatrix &frames,
                               const TrainConfig &cfg) {
  cfg.Validate();
  const std::vector<double> floor =
      VarianceFloor(frames, cfg.variance_floor_factor);
  TrainResult out;
  out.model = init;
  for (size_t it = 0; it < cfg.max_iterations; it++) {
    EmStepResult step = EmStep(out.model, frames, floor);
    if (!out.log_likelihood.empty() &&
        step.avg_log_likelihood - out.log_likelihood.back() <
            cfg.log_likelihood_tolerance) {
      out.log_likelihood.push_back(step.avg_log_likelihood);
      break;
    }
    out.log_likelihood.push_back(step.avg_log_likelihood);
    out.model = std::move(step.next);
  }
  return out;
}

inline TrainResult TrainEm(const FeatureMatrix &frames,
                           const TrainConfig &cfg) {
  return TrainEmFrom(InitKmeansPlusPlus(frames, cfg), frames, cfg);
}

/// Log-likelihood ratio of two models on one utterance's frames;
/// positive favors the first (bona fide) model.
inline double LlrScore(const GmmModel &bonafide, const GmmModel &spoof,
                       const FeatureMatrix &frames) {
  return AvgLogLikelihood(bonafide, frames) - AvgLogLikelihood(spoof, frames);
}

// Binary model container: 16-byte header (8-byte magic, u32 version, u32
// reserved), u32 component count, u32 dims, then weights, means and
// variances as little-endian f64.
inline constexpr char kGmmMagic[8] = {'T', 'N', 'D', 'M', 'G', 'M', 'M', '\0'};
inline constexpr uint32_t kGmmVersion = 1;

inline void WriteGmm(const GmmModel &m, std::ostream &out) {
  m.Validate();
  out.write(kGmmMagic, 8);
  PutU32Le(out, kGmmVersion);
  PutU32Le(out, 0);
  PutU32Le(out, static_cast<uint32_t>(m.n_components));
  PutU32Le(out, static_cast<uint32_t>(m.dims));
  for (double v : m.weights) PutF64Le(out, v);
  for (double v : m.means) PutF64Le(out, v);
  for (double v : m.variances) PutF64Le(out, v);
  Require(out.good(), "gmm write failed");
}

inline GmmModel ReadGmm(std::istream &in) {
  char magic[8];
  in.read(magic, 8);
  Require(in.good() && std::memcmp(magic, kGmmMagic, 8) == 0,
          "gmm read: bad magic");
  uint32_t version = GetU32Le(in);
  Require(version == kGmmVersion, "gmm read: unsupported version ", version);
  GetU32Le(in);
  GmmModel m;
  m.n_components = GetU32Le(in);
  m.dims = GetU32Le(in);
  Require(m.n_components > 0 && m.dims > 0, "gmm read: empty model");
  m.weights.resize(m.n_components);
  m.means.resize(m.n_components * m.dims);
  m.variances.resize(m.n_components * m.dims);
  for (auto &v : m.weights) v = GetF64Le(in);
  for (auto &v : m.means) v = GetF64Le(in);
  for (auto &v : m.variances) v = GetF64Le(in);
  m.Validate();
  return m;
}

/// Human-readable JSON export of a model, full double precision.
inline void WriteGmmJson(const GmmModel &m, std::ostream &out) {
  char buf[40];
  auto num = [&](double v) {
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    out << buf;
  };
  auto array = [&](const std::vector<double> &v, size_t begin, size_t len) {
    out << '[';
    for (size_t i = 0; i < len; i++) {
      if (i) out << ',';
      num(v[begin + i]);
    }
    out << ']';
  };
  out << "{\n  \"n_components\": " << m.n_components
      << ",\n  \"dims\": " << m.dims << ",\n  \"weights\": ";
  array(m.weights, 0, m.n_components);
  out << ",\n  \"means\": [";
  for (size_t k = 0; k < m.n_components; k++) {
    if (k) out << ',';
    out << "\n    ";
    array(m.means, k * m.dims, m.dims);
  }
  out << "\n  ],\n  \"variances\": [";
  for (size_t k = 0; k < m.n_components; k++) {
    if (k) out << ',';
    out << "\n    ";
    array(m.variances, k * m.dims, m.dims);
  }
  out << "\n  ]\n}\n";
}

}  // namespace tandem

#endif  // TANDEM_GMM_HPP_
