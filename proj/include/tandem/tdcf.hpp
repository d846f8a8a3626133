// include/tandem/tdcf.hpp

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

// Minimum normalized tandem detection cost.
//
// A tandem system chains a spoofing countermeasure (CM) in front of an
// ASV system.  With the ASV operating point fixed, the normalized tandem
// cost at CM threshold s reduces to
//
//     tdcf(s) = beta * P_miss_cm(s) + P_fa_cm(s)
//
// where beta = C1 / C2 folds together the application priors/costs and
// the ASV error rates:
//
//     C1 = pi_tar * (c_miss_cm - c_miss_asv * p_miss_asv)
//          - pi_non * c_fa_asv * p_fa_asv
//     C2 = c_fa_cm * pi_spoof * (1 - p_miss_spoof_asv)
//
// The reported metric is min_s tdcf(s) over all empirical thresholds,
// i.e. the cost under oracle calibration.  Because C2 scales with the
// ASV spoof false-accept rate of an attack, beta is inversely
// proportional to that rate: weak attacks are dominated by the penalty
// for rejecting bona fide users, strong attacks by missed spoofs.

#ifndef TANDEM_TDCF_HPP_
#define TANDEM_TDCF_HPP_

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "tandem/det.hpp"
#include "tandem/protocol.hpp"

namespace tandem {

struct CostModel {
  double pi_tar = 0.0;
  double pi_non = 0.0;
  double pi_spoof = 0.0;
  double c_miss_cm = 0.0;
  double c_fa_cm = 0.0;
  double c_miss_asv = 0.0;
  double c_fa_asv = 0.0;

  /// The conventional evaluation parameters these tools ship with.
  /// Override via a cost config file when an evaluation plan says otherwise.
  static CostModel ChallengeDefaults() {
    CostModel m;
    m.pi_tar = 0.9405;
    m.pi_non = 0.0095;
    m.pi_spoof = 0.05;
    m.c_miss_cm = 1.0;
    m.c_fa_cm = 10.0;
    m.c_miss_asv = 1.0;
    m.c_fa_asv = 10.0;
    return m;
  }

  void Validate() const {
    Require(pi_tar >= 0 && pi_non >= 0 && pi_spoof >= 0,
            "cost model: negative prior");
    Require(std::fabs(pi_tar + pi_non + pi_spoof - 1.0) <= 1e-12,
            "cost model: priors must sum to 1 (got ",
            pi_tar + pi_non + pi_spoof, ")");
    Require(c_miss_cm >= 0 && c_fa_cm >= 0 && c_miss_asv >= 0 && c_fa_asv >= 0,
            "cost model: negative cost");
    Require(c_miss_cm > 0 || c_fa_cm > 0 || c_miss_asv > 0 || c_fa_asv > 0,
            "cost model: at least one cost must be positive");
  }
};

/// The two unnormalized cost coefficients entering beta.
struct TandemCosts {
  double c1 = 0.0;  // weight on CM misses
  double c2 = 0.0;  // weight on CM false alarms
};

inline TandemCosts ComputeTandemCosts(const CostModel &cost,
                                      const AsvErrorRates &rates) {
  TandemCosts c;
  c.c1 = cost.pi_tar * (cost.c_miss_cm - cost.c_miss_asv * rates.p_miss_asv) -
         cost.pi_non * cost.c_fa_asv * rates.p_fa_asv;
  c.c2 = cost.c_fa_cm * cost.pi_spoof * (1.0 - rates.p_miss_spoof_asv);
  return c;
}

inline double AttackBeta(const CostModel &cost, const AsvErrorRates &rates) {
  cost.Validate();
  TandemCosts c = ComputeTandemCosts(cost, rates);
  Require(c.c2 > 0.0,
          "attack-free condition: beta undefined (the attack is never "
          "accepted by the ASV system, C2 == 0)");
  Require(c.c1 > 0.0,
          "invalid tandem configuration: C1 <= 0 (rejecting every trial "
          "would be optimal for this ASV operating point)");
  return c.c1 / c.c2;
}

enum class Normalization {
  kEq1,       // beta * P_miss + P_fa
  kMinCosts,  // (C1 * P_miss + C2 * P_fa) / min(C1, C2)
};

struct TdcfResult {
  double beta = 0.0;
  double min_tdcf = 0.0;
  double argmin_threshold = 0.0;
  std::string attack_label;  // attack id or "pooled"
};

/// Minimum of beta * p_miss + p_fa over every threshold of the curve.
/// Ties keep the lowest threshold.  The kMinCosts variant rescales by
/// max(1, 1/beta), which is the same minimizer.
inline TdcfResult MinTdcf(const DetCurve &curve, double beta,
                          Normalization norm = Normalization::kEq1) {
  Require(beta > 0.0, "min tdcf: beta must be positive");
  Require(curve.size() >= 3, "min tdcf: empty curve");
  size_t best = 0;
  double best_cost = std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < curve.size(); i++) {
    double c = beta * curve.p_miss[i] + curve.p_fa[i];
    if (c < best_cost) {
      best_cost = c;
      best = i;
    }
  }
  TdcfResult r;
  r.beta = beta;
  r.min_tdcf = norm == Normalization::kEq1
                   ? best_cost
                   : best_cost * std::max(1.0, 1.0 / beta);
  r.argmin_threshold = curve.thresholds[best];
  return r;
}

inline TdcfResult MinTdcf(std::span<const double> cm_bonafide,
                          std::span<const double> cm_spoof, double beta,
                          Normalization norm = Normalization::kEq1) {
  return MinTdcf(ComputeDetCurve(cm_bonafide, cm_spoof), beta, norm);
}

enum class PooledBetaMode {
  kPooledRates,         // beta from spoof rates pooled over all attacks
  kAverageAttackBetas,  // arithmetic mean of the per-attack betas
};

struct EvalOptions {
  CostModel cost = CostModel::ChallengeDefaults();
  Normalization normalization = Normalization::kEq1;
  PooledBetaMode pooled_beta = PooledBetaMode::kPooledRates;
  // When set, the ASV operating point is pinned externally (e.g. derived
  // from development-partition target/nontarget scores) instead of being
  // taken from the evaluated ASV file itself.
  std::optional<double> fixed_asv_threshold;
};

/// Attacks whose beta reaches this level are flagged in reports: the
/// induced cost charges bona fide rejections an order of magnitude more
/// than missed spoofs, so a weak attack can still dominate the metric.
inline constexpr double kHighPenaltyBeta = 10.0;

struct AttackResult {
  TdcfResult tdcf;
  double cm_eer = 0.0;
  double cm_eer_threshold = 0.0;
  AsvErrorRates asv_rates;            // at the shared ASV threshold
  double asv_eer_under_attack = 0.0;  // target vs this attack's spoof scores
  bool high_penalty = false;          // beta >= kHighPenaltyBeta
};

struct TandemEvaluation {
  double asv_threshold = 0.0;
  double asv_eer = 0.0;  // target vs nontarget, no attack
  AsvErrorRates pooled_asv_rates;
  double cm_eer = 0.0;
  double cm_eer_threshold = 0.0;
  TdcfResult pooled;
  std::map<std::string, AttackResult> attacks;  // keyed by attack label
  DetCurve pooled_cm_curve;
  size_t ignored_asv_attacks = 0;  // asv spoof records of attacks absent in cm
};

/// Full tandem evaluation of a CM score set against an ASV score set:
/// pooled and attack-decomposed minimum t-DCF plus CM EERs.
///
/// The ASV operating point is the EER threshold of the target/nontarget
/// scores and is shared by every decomposition.  Per-attack results
/// restrict both the ASV spoof rates (hence beta) and the CM spoof
/// trade-off to that attack; bona fide CM scores are shared.  CM and ASV
/// trial ids live in different universes, so alignment is by attack label
/// only: every attack present in the CM scores must also appear in the
/// ASV scores.
inline TandemEvaluation EvaluateTandem(const ScoreSet &cm, const ScoreSet &asv,
                                       const EvalOptions &opt = EvalOptions()) {
  Require(cm.kind == ScoreKind::kCm, "evaluate: first score set must be cm");
  Require(asv.kind == ScoreKind::kAsv, "evaluate: second score set must be asv");
  opt.cost.Validate();

  std::vector<double> cm_bona, cm_spoof_all;
  std::map<std::string, std::vector<double>> cm_spoof;
  for (const auto &r : cm.records) {
    if (r.key == Key::kBonafide) {
      cm_bona.push_back(r.score);
    } else {
      cm_spoof[r.attack_label].push_back(r.score);
      cm_spoof_all.push_back(r.score);
    }
  }
  Require(!cm_bona.empty(), "evaluate: cm scores have no bonafide trials");
  Require(!cm_spoof_all.empty(), "evaluate: cm scores have no spoof trials");

  std::vector<double> asv_target, asv_nontarget;
  std::map<std::string, std::vector<double>> asv_spoof;
  for (const auto &r : asv.records) {
    switch (r.key) {
      case Key::kTarget: asv_target.push_back(r.score); break;
      case Key::kNontarget: asv_nontarget.push_back(r.score); break;
      case Key::kSpoof: asv_spoof[r.attack_label].push_back(r.score); break;
      default: Fail("evaluate: asv scores contain key '", KeyName(r.key), "'");
    }
  }
  Require(!asv_target.empty() && !asv_nontarget.empty(),
          "evaluate: asv scores need both target and nontarget trials");

  TandemEvaluation ev;
  EerResult asv_eer = ComputeEer(asv_target, asv_nontarget);
  ev.asv_threshold = opt.fixed_asv_threshold.value_or(asv_eer.threshold);
  ev.asv_eer = asv_eer.eer;
  Require(std::isfinite(ev.asv_threshold), "evaluate: non-finite asv threshold");

  // Pooled ASV spoof rates use the attacks the CM is being scored on.
  std::vector<double> asv_spoof_pooled;
  for (const auto &[attack, scores] : asv_spoof) {
    if (cm_spoof.count(attack)) {
      asv_spoof_pooled.insert(asv_spoof_pooled.end(), scores.begin(),
                              scores.end());
    } else {
      ev.ignored_asv_attacks++;
    }
  }
  for (const auto &[attack, scores] : cm_spoof) {
    auto it = asv_spoof.find(attack);
    Require(it != asv_spoof.end() && !it->second.empty(),
            "evaluate: attack '", attack,
            "' has cm scores but no asv spoof scores");
    (void)scores;
  }

  ev.pooled_cm_curve = ComputeDetCurve(cm_bona, cm_spoof_all);
  EerResult cm_eer = ComputeEer(ev.pooled_cm_curve);
  ev.cm_eer = cm_eer.eer;
  ev.cm_eer_threshold = cm_eer.threshold;

  for (const auto &[attack, scores] : cm_spoof) {
    AttackResult a;
    a.asv_rates = ComputeAsvErrorRates(ev.asv_threshold, asv_target,
                                       asv_nontarget, asv_spoof.at(attack));
    double b = AttackBeta(opt.cost, a.asv_rates);
    DetCurve curve = ComputeDetCurve(cm_bona, scores);
    a.tdcf = MinTdcf(curve, b, opt.normalization);
    a.tdcf.attack_label = attack;
    a.high_penalty = b >= kHighPenaltyBeta;
    EerResult e = ComputeEer(curve);
    a.cm_eer = e.eer;
    a.cm_eer_threshold = e.threshold;
    a.asv_eer_under_attack = ComputeEer(asv_target, asv_spoof.at(attack)).eer;
    ev.attacks.emplace(attack, std::move(a));
  }

  ev.pooled_asv_rates = ComputeAsvErrorRates(ev.asv_threshold, asv_target,
                                             asv_nontarget, asv_spoof_pooled);
  double pooled_beta;
  if (opt.pooled_beta == PooledBetaMode::kPooledRates) {
    pooled_beta = AttackBeta(opt.cost, ev.pooled_asv_rates);
  } else {
    double sum = 0.0;
    for (const auto &[attack, a] : ev.attacks) sum += a.tdcf.beta;
    pooled_beta = sum / static_cast<double>(ev.attacks.size());
  }
  ev.pooled = MinTdcf(ev.pooled_cm_curve, pooled_beta, opt.normalization);
  ev.pooled.attack_label = "pooled";
  return ev;
}

}  // namespace tandem

#endif  // TANDEM_TDCF_HPP_
