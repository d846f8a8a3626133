// include/tandem/report.hpp

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

// Report emission (JSON, TSV, DET CSV, DET SVG) and multi-submission
// ranking with per-attack boxplot data.  Tables print minimum t-DCF to 4
// decimals and EERs as percentages to 2 decimals; the JSON carries full
// precision.

#ifndef TANDEM_REPORT_HPP_
#define TANDEM_REPORT_HPP_

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <ostream>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "tandem/common.hpp"
#include "tandem/det.hpp"
#include "tandem/io_util.hpp"
#include "tandem/protocol.hpp"
#include "tandem/tdcf.hpp"

namespace tandem {

inline constexpr int kReportSchemaVersion = 1;

namespace report_detail {

// JSON has no infinities; sentinel thresholds become signed sentinel
// strings.
inline nlohmann::json JsonNumber(double v) {
  if (std::isfinite(v)) return v;
  return v > 0 ? "inf" : "-inf";
}

inline std::string FormatThreshold(double v) {
  if (!std::isfinite(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace report_detail

inline const char *NormalizationName(Normalization n) {
  return n == Normalization::kEq1 ? "eq1" : "min_costs";
}

inline const char *PooledBetaModeName(PooledBetaMode m) {
  return m == PooledBetaMode::kPooledRates ? "pooled_rates"
                                           : "average_attack_betas";
}

inline nlohmann::json EvaluationToJson(const TandemEvaluation &ev,
                                       const EvalOptions &opt) {
  using nlohmann::json;
  json j;
  j["schema_version"] = kReportSchemaVersion;
  j["normalization"] = NormalizationName(opt.normalization);
  j["pooled_beta_mode"] = PooledBetaModeName(opt.pooled_beta);
  j["cost_model"] = {
      {"pi_tar", opt.cost.pi_tar},       {"pi_non", opt.cost.pi_non},
      {"pi_spoof", opt.cost.pi_spoof},   {"c_miss_cm", opt.cost.c_miss_cm},
      {"c_fa_cm", opt.cost.c_fa_cm},     {"c_miss_asv", opt.cost.c_miss_asv},
      {"c_fa_asv", opt.cost.c_fa_asv}};
  j["asv"] = {{"threshold", report_detail::JsonNumber(ev.asv_threshold)},
              {"eer", ev.asv_eer},
              {"p_miss_asv", ev.pooled_asv_rates.p_miss_asv},
              {"p_fa_asv", ev.pooled_asv_rates.p_fa_asv},
              {"p_miss_spoof_asv", ev.pooled_asv_rates.p_miss_spoof_asv}};
  j["cm"] = {{"eer", ev.cm_eer},
             {"eer_threshold", report_detail::JsonNumber(ev.cm_eer_threshold)}};
  j["pooled"] = {
      {"beta", ev.pooled.beta},
      {"min_tdcf", ev.pooled.min_tdcf},
      {"argmin_threshold", report_detail::JsonNumber(ev.pooled.argmin_threshold)},
      {"cm_eer", ev.cm_eer}};
  json attacks = json::object();
  for (const auto &[label, a] : ev.attacks) {
    attacks[label] = {
        {"beta", a.tdcf.beta},
        {"min_tdcf", a.tdcf.min_tdcf},
        {"argmin_threshold",
         report_detail::JsonNumber(a.tdcf.argmin_threshold)},
        {"cm_eer", a.cm_eer},
        {"asv_eer_under_attack", a.asv_eer_under_attack},
        {"p_miss_asv", a.asv_rates.p_miss_asv},
        {"p_fa_asv", a.asv_rates.p_fa_asv},
        {"p_miss_spoof_asv", a.asv_rates.p_miss_spoof_asv},
        {"high_penalty", a.high_penalty}};
  }
  j["attacks"] = attacks;
  j["ignored_asv_attacks"] = ev.ignored_asv_attacks;
  return j;
}

/// One row per attack plus the pooled row; min t-DCF to 4 decimals, EERs
/// in percent to 2 decimals, rates to 4 decimals.
inline void WriteEvaluationTsv(const TandemEvaluation &ev, std::ostream &out) {
  out << "attack\tbeta\tmin_tdcf\targmin_threshold\tcm_eer_pct\t"
         "asv_eer_under_attack_pct\tp_miss_asv\tp_fa_asv\tp_miss_spoof_asv\t"
         "high_penalty\n";
  char buf[256];
  auto row = [&](const std::string &label, double beta, double tdcf,
                 double thr, double cm_eer, double asv_eer,
                 const AsvErrorRates &r, bool high_penalty) {
    std::snprintf(buf, sizeof(buf),
                  "%s\t%.6g\t%.4f\t%s\t%.2f\t%.2f\t%.4f\t%.4f\t%.4f\t%d\n",
                  label.c_str(), beta, tdcf,
                  report_detail::FormatThreshold(thr).c_str(), 100.0 * cm_eer,
                  100.0 * asv_eer, r.p_miss_asv, r.p_fa_asv,
                  r.p_miss_spoof_asv, high_penalty ? 1 : 0);
    out << buf;
  };
  row("pooled", ev.pooled.beta, ev.pooled.min_tdcf,
      ev.pooled.argmin_threshold, ev.cm_eer, ev.asv_eer, ev.pooled_asv_rates,
      ev.pooled.beta >= kHighPenaltyBeta);
  for (const auto &[label, a] : ev.attacks)
    row(label, a.tdcf.beta, a.tdcf.min_tdcf, a.tdcf.argmin_threshold, a.cm_eer,
        a.asv_eer_under_attack, a.asv_rates, a.high_penalty);
}

/// DET curve export: `threshold,p_miss,p_fa` per operating point.
inline void WriteDetCsv(const DetCurve &curve, std::ostream &out) {
  out << "threshold,p_miss,p_fa\n";
  char buf[128];
  for (size_t i = 0; i < curve.size(); i++) {
    std::snprintf(buf, sizeof(buf), "%s,%.17g,%.17g\n",
                  report_detail::FormatThreshold(curve.thresholds[i]).c_str(),
                  curve.p_miss[i], curve.p_fa[i]);
    out << buf;
  }
}

/// Inverse standard normal CDF (Acklam's rational approximation,
/// refined with one Halley step); the probit scale of DET axes.
inline double Probit(double p) {
  Require(p > 0.0 && p < 1.0, "probit: p must be in (0, 1)");
  static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                             -2.759285104469687e+02, 1.383577518672690e+02,
                             -3.066479806614716e+01, 2.506628277459239e+00};
  static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                             -1.556989798598866e+02, 6.680131188771972e+01,
                             -1.328068155288572e+01};
  static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                             -2.400758277161838e+00, -2.549732539343734e+00,
                             4.374664141464968e+00,  2.938163982698783e+00};
  static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                             2.445134137142996e+00, 3.754408661907416e+00};
  const double plow = 0.02425, phigh = 1 - plow;
  double x;
  if (p < plow) {
    double q = std::sqrt(-2 * std::log(p));
    x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1);
  } else if (p <= phigh) {
    double q = p - 0.5, r = q * q;
    x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) *
        q /
        (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1);
  } else {
    double q = std::sqrt(-2 * std::log(1 - p));
    x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1);
  }
  // one Halley refinement against erfc
  double e = 0.5 * std::erfc(-x / std::sqrt(2.0)) - p;
  double u = e * std::sqrt(2 * M_PI) * std::exp(x * x / 2);
  return x - u / (1 + x * u / 2);
}

/// DET plot on log-probit axes as a standalone SVG.  One polyline per
/// curve; rates are clipped to [0.05%, 60%] for display.
inline void WriteDetSvg(const std::map<std::string, const DetCurve *> &curves,
                        std::ostream &out) {
  const double lo = 0.0005, hi = 0.60;
  const double plo = Probit(lo), phi = Probit(hi);
  const int size = 640, margin = 60;
  const double span = phi - plo;
  auto sx = [&](double p) {
    return margin + (Probit(std::clamp(p, lo, hi)) - plo) / span *
                        (size - 2 * margin);
  };
  auto sy = [&](double p) {
    return size - margin -
           (Probit(std::clamp(p, lo, hi)) - plo) / span * (size - 2 * margin);
  };

  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size
      << "\" height=\"" << size << "\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  const double ticks[] = {0.001, 0.002, 0.005, 0.01, 0.02,
                          0.05,  0.1,   0.2,   0.4};
  char buf[256];
  for (double t : ticks) {
    std::snprintf(buf, sizeof(buf),
                  "<line x1=\"%.1f\" y1=\"%d\" x2=\"%.1f\" y2=\"%d\" "
                  "stroke=\"#ddd\"/>\n",
                  sx(t), margin, sx(t), size - margin);
    out << buf;
    std::snprintf(buf, sizeof(buf),
                  "<line x1=\"%d\" y1=\"%.1f\" x2=\"%d\" y2=\"%.1f\" "
                  "stroke=\"#ddd\"/>\n",
                  margin, sy(t), size - margin, sy(t));
    out << buf;
    std::snprintf(buf, sizeof(buf),
                  "<text x=\"%.1f\" y=\"%d\" font-size=\"10\" "
                  "text-anchor=\"middle\">%g</text>\n",
                  sx(t), size - margin + 14, 100 * t);
    out << buf;
    std::snprintf(buf, sizeof(buf),
                  "<text x=\"%d\" y=\"%.1f\" font-size=\"10\" "
                  "text-anchor=\"end\">%g</text>\n",
                  margin - 4, sy(t) + 3, 100 * t);
    out << buf;
  }
  out << "<text x=\"" << size / 2 << "\" y=\"" << size - 16
      << "\" font-size=\"12\" text-anchor=\"middle\">False alarm rate "
         "(%)</text>\n";
  out << "<text x=\"16\" y=\"" << size / 2
      << "\" font-size=\"12\" text-anchor=\"middle\" transform=\"rotate(-90 "
         "16 "
      << size / 2 << ")\">Miss rate (%)</text>\n";

  static const char *palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                  "#ff7f0e", "#8c564b", "#e377c2", "#7f7f7f",
                                  "#bcbd22", "#17becf"};
  size_t color = 0;
  int legend_y = margin + 12;
  for (const auto &[label, curve] : curves) {
    out << "<polyline fill=\"none\" stroke=\"" << palette[color % 10]
        << "\" stroke-width=\"1.5\" points=\"";
    for (size_t i = 0; i < curve->size(); i++) {
      std::snprintf(buf, sizeof(buf), "%.1f,%.1f ", sx(curve->p_fa[i]),
                    sy(curve->p_miss[i]));
      out << buf;
    }
    out << "\"/>\n";
    std::snprintf(buf, sizeof(buf),
                  "<text x=\"%d\" y=\"%d\" font-size=\"11\" fill=\"%s\">%s"
                  "</text>\n",
                  size - margin - 120, legend_y, palette[color % 10],
                  label.c_str());
    out << buf;
    legend_y += 14;
    color++;
  }
  out << "</svg>\n";
}

// ---------------------------------------------------------------------------
// Multi-submission ranking

struct SubmissionEntry {
  std::string team_id;
  std::string label;  // "primary" or "single"
  std::string score_path;
};

/// Submission list: `TEAM_ID LABEL PATH` per line, `#` comments.
inline std::vector<SubmissionEntry> ParseSubmissionList(std::istream &in) {
  std::vector<SubmissionEntry> out;
  std::set<std::string> seen;
  std::string line;
  size_t lineno = 0;
  while (std::getline(in, line)) {
    lineno++;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::istringstream ls(line);
    std::string team, label, path;
    if (!(ls >> team)) continue;
    if (team[0] == '#') continue;
    Require(static_cast<bool>(ls >> label >> path), "submissions line ",
            lineno, ": expected 'TEAM_ID LABEL PATH'");
    Require(label == "primary" || label == "single", "submissions line ",
            lineno, ": label must be 'primary' or 'single', got '", label,
            "'");
    Require(seen.insert(team + "/" + label).second, "submissions line ",
            lineno, ": duplicate team '", team, "' with label '", label, "'");
    out.push_back({team, label, path});
  }
  return out;
}

struct RankedSubmission {
  SubmissionEntry entry;
  double min_tdcf = 0.0;
  double cm_eer = 0.0;
  std::map<std::string, double> attack_tdcf;
};

/// Evaluates every submission against the shared ASV scores and sorts by
/// pooled min t-DCF ascending, ties broken by CM EER then team id.
inline std::vector<RankedSubmission> RankSubmissions(
    const std::vector<SubmissionEntry> &entries, const ScoreSet &asv,
    const EvalOptions &opt = EvalOptions()) {
  std::vector<RankedSubmission> rows;
  for (const auto &e : entries) {
    RankedSubmission row;
    row.entry = e;
    try {
      std::ifstream in(e.score_path);
      Require(in.good(), "cannot open '", e.score_path, "'");
      ScoreSet cm = ParseScores(in, ScoreKind::kCm);
      TandemEvaluation ev = EvaluateTandem(cm, asv, opt);
      row.min_tdcf = ev.pooled.min_tdcf;
      row.cm_eer = ev.cm_eer;
      for (const auto &[label, a] : ev.attacks)
        row.attack_tdcf[label] = a.tdcf.min_tdcf;
    } catch (const std::exception &ex) {
      Fail("rank: submission '", e.team_id, "' (", e.score_path,
           "): ", ex.what());
    }
    rows.push_back(std::move(row));
  }
  std::sort(rows.begin(), rows.end(),
            [](const RankedSubmission &a, const RankedSubmission &b) {
              if (a.min_tdcf != b.min_tdcf) return a.min_tdcf < b.min_tdcf;
              if (a.cm_eer != b.cm_eer) return a.cm_eer < b.cm_eer;
              return a.entry.team_id < b.entry.team_id;
            });
  return rows;
}

inline void WriteRankingTsv(const std::vector<RankedSubmission> &rows,
                            std::ostream &out) {
  out << "rank\tteam_id\tlabel\tmin_tdcf\tcm_eer_pct\n";
  char buf[160];
  for (size_t i = 0; i < rows.size(); i++) {
    std::snprintf(buf, sizeof(buf), "%zu\t%s\t%s\t%.4f\t%.2f\n", i + 1,
                  rows[i].entry.team_id.c_str(), rows[i].entry.label.c_str(),
                  rows[i].min_tdcf, 100.0 * rows[i].cm_eer);
    out << buf;
  }
}

struct BoxplotRow {
  std::string attack;  // attack label or "pooled"
  double min = 0, q1 = 0, median = 0, q3 = 0, max = 0;
};

/// Linear-interpolation quantile (the numpy default) over sorted values.
inline double Quantile(std::vector<double> sorted, double q) {
  Require(!sorted.empty(), "quantile: empty");
  double pos = q * static_cast<double>(sorted.size() - 1);
  size_t lo = static_cast<size_t>(std::floor(pos));
  size_t hi = std::min(lo + 1, sorted.size() - 1);
  double frac = pos - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

/// Five-number summaries of min t-DCF across the top-N ranked
/// submissions: one row pooled, one per attack (attacks every top-N
/// submission has).
inline std::vector<BoxplotRow> BoxplotData(
    const std::vector<RankedSubmission> &ranked, size_t top_n) {
  Require(!ranked.empty(), "boxplot: no submissions");
  size_t n = std::min(top_n, ranked.size());
  auto five = [](std::vector<double> v, const std::string &name) {
    std::sort(v.begin(), v.end());
    BoxplotRow r;
    r.attack = name;
    r.min = v.front();
    r.q1 = Quantile(v, 0.25);
    r.median = Quantile(v, 0.5);
    r.q3 = Quantile(v, 0.75);
    r.max = v.back();
    return r;
  };

  std::vector<BoxplotRow> rows;
  std::vector<double> pooled;
  for (size_t i = 0; i < n; i++) pooled.push_back(ranked[i].min_tdcf);
  rows.push_back(five(pooled, "pooled"));

  for (const auto &[label, unused] : ranked[0].attack_tdcf) {
    (void)unused;
    std::vector<double> vals;
    for (size_t i = 0; i < n; i++) {
      auto it = ranked[i].attack_tdcf.find(label);
      if (it != ranked[i].attack_tdcf.end()) vals.push_back(it->second);
    }
    if (vals.size() == n) rows.push_back(five(vals, label));
  }
  return rows;
}

inline void WriteBoxplotCsv(const std::vector<BoxplotRow> &rows,
                            std::ostream &out) {
  out << "attack,min,q1,median,q3,max\n";
  char buf[200];
  for (const auto &r : rows) {
    std::snprintf(buf, sizeof(buf), "%s,%.6f,%.6f,%.6f,%.6f,%.6f\n",
                  r.attack.c_str(), r.min, r.q1, r.median, r.q3, r.max);
    out << buf;
  }
}

}  // namespace tandem

#endif  // TANDEM_REPORT_HPP_
