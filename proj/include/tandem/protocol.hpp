// include/tandem/protocol.hpp

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

// Text formats handled here:
//
//   protocol file, one trial per line, 5 whitespace-separated fields:
//     SPEAKER_ID TRIAL_ID SYSTEM_ID ATTACK_LABEL KEY
//   where SYSTEM_ID may be the placeholder `-` (it carries the acoustic
//   environment label for simulated replay protocols) and KEY is
//   `bonafide` or `spoof`.
//
//   score file, one trial per line, 4 fields:
//     TRIAL_ID ATTACK_LABEL KEY SCORE
//   where KEY is `bonafide`/`spoof` for countermeasure scores and
//   `target`/`nontarget`/`spoof` for ASV scores, and SCORE is a finite
//   decimal real.
//
// Lines are split on LF with an optional trailing CR; fields are separated
// by runs of ASCII spaces/tabs; lines starting with `#` are comments.
// The writer emits `TRIAL_ID ATTACK_LABEL KEY SCORE\n` with single spaces
// and scores in plain decimal notation with 6 significant digits.

#ifndef TANDEM_PROTOCOL_HPP_
#define TANDEM_PROTOCOL_HPP_

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "tandem/common.hpp"

namespace tandem {

enum class Key { kBonafide, kSpoof, kTarget, kNontarget };

enum class Subset { kTrain, kDev, kEval };

enum class ScoreKind { kCm, kAsv };

inline const char *KeyName(Key k) {
  switch (k) {
    case Key::kBonafide: return "bonafide";
    case Key::kSpoof: return "spoof";
    case Key::kTarget: return "target";
    case Key::kNontarget: return "nontarget";
  }
  return "?";
}

struct TrialRecord {
  std::string speaker_id;
  std::string trial_id;
  std::string system_id;     // `-` when unused; acoustic label for replay sims
  std::string attack_label;  // "bonafide" or an attack identifier
  Key key = Key::kBonafide;
  Subset subset = Subset::kTrain;
};

struct ScoreRecord {
  std::string trial_id;
  std::string attack_label;
  Key key = Key::kBonafide;
  double score = 0.0;
};

struct ScoreSet {
  std::vector<ScoreRecord> records;
  ScoreKind kind = ScoreKind::kCm;
};

namespace detail {

inline std::vector<std::string_view> SplitFields(std::string_view line) {
  std::vector<std::string_view> out;
  size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) i++;
    size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t') j++;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

// Strips one trailing CR; callers have already split on LF.
inline std::string_view StripCr(std::string_view line) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  return line;
}

inline bool ParseKeyToken(std::string_view tok, Key *key) {
  if (tok == "bonafide") { *key = Key::kBonafide; return true; }
  if (tok == "spoof")    { *key = Key::kSpoof;    return true; }
  if (tok == "target")   { *key = Key::kTarget;   return true; }
  if (tok == "nontarget"){ *key = Key::kNontarget;return true; }
  return false;
}

inline bool KeyAllowed(Key key, ScoreKind kind) {
  if (kind == ScoreKind::kCm)
    return key == Key::kBonafide || key == Key::kSpoof;
  return key == Key::kTarget || key == Key::kNontarget || key == Key::kSpoof;
}

}  // namespace detail

/// Formats a finite score in plain decimal notation (never scientific)
/// rounded to 6 significant digits, trailing zeros trimmed.  This is the
/// writer half of the score-file round trip: a score that is already a
/// 6-significant-digit decimal survives emit -> parse unchanged.
inline std::string FormatScore(double x) {
  Require(std::isfinite(x), "FormatScore: non-finite value");
  if (x == 0.0) return "0";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.5e", x);
  // buf looks like "-1.23456e+07": collect sign, 6 digits, exponent.
  std::string s(buf);
  bool neg = s[0] == '-';
  size_t p = neg ? 1 : 0;
  std::string digits;
  digits.push_back(s[p]);
  for (size_t i = p + 2; i < p + 7; i++) digits.push_back(s[i]);
  int exp10 = std::atoi(s.c_str() + s.find('e') + 1);

  std::string out;
  if (exp10 >= 5) {
    // all six digits land left of the point
    out = digits + std::string(static_cast<size_t>(exp10) - 5, '0');
  } else if (exp10 >= 0) {
    out = digits.substr(0, exp10 + 1) + "." + digits.substr(exp10 + 1);
  } else {
    out = "0." + std::string(static_cast<size_t>(-exp10) - 1, '0') + digits;
  }
  if (out.find('.') != std::string::npos) {
    size_t last = out.find_last_not_of('0');
    if (out[last] == '.') last--;
    out.erase(last + 1);
  }
  if (out == "0") return "0";  // underflow to zero loses the sign
  return neg ? "-" + out : out;
}

/// Parses a protocol stream.  One TrialRecord per non-empty non-comment
/// line, order preserved.  `subset` tags every record; protocol files are
/// per-partition so the caller knows which one it is reading.
inline std::vector<TrialRecord> ParseProtocol(std::istream &in,
                                              Subset subset = Subset::kTrain) {
  std::vector<TrialRecord> out;
  std::unordered_set<std::string_view> seen;
  std::string line;
  size_t lineno = 0;
  while (std::getline(in, line)) {
    lineno++;
    std::string_view sv = detail::StripCr(line);
    auto fields = detail::SplitFields(sv);
    if (fields.empty()) continue;
    if (fields[0][0] == '#') continue;
    Require(fields.size() == 5, "protocol line ", lineno, ": expected 5 fields, got ",
            fields.size());
    TrialRecord rec;
    rec.speaker_id = std::string(fields[0]);
    rec.trial_id = std::string(fields[1]);
    rec.system_id = std::string(fields[2]);
    rec.attack_label = std::string(fields[3]);
    Require(!rec.trial_id.empty(), "protocol line ", lineno, ": empty trial id");
    Key key;
    Require(detail::ParseKeyToken(fields[4], &key) &&
                (key == Key::kBonafide || key == Key::kSpoof),
            "protocol line ", lineno, ": bad key token '", fields[4], "'");
    rec.key = key;
    rec.subset = subset;
    Require((rec.key == Key::kBonafide) == (rec.attack_label == "bonafide"),
            "protocol line ", lineno, ": key '", KeyName(rec.key),
            "' inconsistent with attack label '", rec.attack_label, "'");
    out.push_back(std::move(rec));
  }
  seen.reserve(out.size());
  for (size_t i = 0; i < out.size(); i++)
    Require(seen.insert(out[i].trial_id).second, "protocol: duplicate trial id '",
            out[i].trial_id, "'");
  return out;
}

/// Parses a score stream.  Order preserved; every score must be finite;
/// trial ids must be unique; key tokens must belong to `kind`'s domain.
inline ScoreSet ParseScores(std::istream &in, ScoreKind kind) {
  ScoreSet set;
  set.kind = kind;
  std::string line;
  size_t lineno = 0;
  while (std::getline(in, line)) {
    lineno++;
    std::string_view sv = detail::StripCr(line);
    auto fields = detail::SplitFields(sv);
    if (fields.empty()) continue;
    if (fields[0][0] == '#') continue;
    Require(fields.size() == 4, "score line ", lineno, ": expected 4 fields, got ",
            fields.size());
    ScoreRecord rec;
    rec.trial_id = std::string(fields[0]);
    rec.attack_label = std::string(fields[1]);
    Require(!rec.trial_id.empty(), "score line ", lineno, ": empty trial id");
    Require(detail::ParseKeyToken(fields[2], &rec.key),
            "score line ", lineno, ": unknown key token '", fields[2], "'");
    Require(detail::KeyAllowed(rec.key, kind), "score line ", lineno, ": key '",
            fields[2], "' not valid for ", kind == ScoreKind::kCm ? "cm" : "asv",
            " scores");
    std::string num(fields[3]);
    char *end = nullptr;
    rec.score = std::strtod(num.c_str(), &end);
    Require(end == num.c_str() + num.size() && !num.empty(),
            "score line ", lineno, ": bad score '", num, "'");
    Require(std::isfinite(rec.score), "score line ", lineno, ": non-finite score '",
            num, "'");
    set.records.push_back(std::move(rec));
  }
  std::unordered_set<std::string_view> seen;
  seen.reserve(set.records.size());
  for (const auto &r : set.records)
    Require(seen.insert(r.trial_id).second, "scores: duplicate trial id '",
            r.trial_id, "'");
  return set;
}

inline void EmitScores(const ScoreSet &set, std::ostream &out) {
  for (const auto &r : set.records)
    out << r.trial_id << ' ' << r.attack_label << ' ' << KeyName(r.key) << ' '
        << FormatScore(r.score) << '\n';
}

struct JoinResult {
  ScoreSet joined;         // protocol order, labels/keys from the protocol
  size_t dropped_extra = 0;  // score records not covered by the protocol
};

/// Joins a score set against a protocol.  The protocol is authoritative:
/// the result is in protocol order with attack labels and keys from the
/// protocol.  Missing trials are an error (up to 10 ids listed); label or
/// key mismatches are an error; extra score records are dropped and counted.
/// For ASV score sets a protocol `bonafide` row accepts either `target` or
/// `nontarget`, which keeps the original ASV key in the output.
inline JoinResult Join(const std::vector<TrialRecord> &protocol,
                       const ScoreSet &scores) {
  std::unordered_map<std::string_view, const ScoreRecord *> by_id;
  by_id.reserve(scores.records.size());
  for (const auto &r : scores.records) by_id.emplace(r.trial_id, &r);

  std::vector<std::string> missing;
  size_t missing_total = 0;
  for (const auto &t : protocol) {
    if (by_id.find(t.trial_id) == by_id.end()) {
      missing_total++;
      if (missing.size() < 10) missing.push_back(t.trial_id);
    }
  }
  if (missing_total > 0) {
    std::string list;
    for (size_t i = 0; i < missing.size(); i++)
      list += (i ? ", " : "") + missing[i];
    Fail("join: ", missing_total, " protocol trial(s) missing from scores: ",
         list, missing_total > missing.size() ? ", ..." : "");
  }

  JoinResult res;
  res.joined.kind = scores.kind;
  res.joined.records.reserve(protocol.size());
  for (const auto &t : protocol) {
    const ScoreRecord *s = by_id.at(t.trial_id);
    bool key_ok =
        scores.kind == ScoreKind::kCm
            ? s->key == t.key
            : (t.key == Key::kBonafide
                   ? (s->key == Key::kTarget || s->key == Key::kNontarget)
                   : s->key == Key::kSpoof);
    Require(key_ok, "join: trial '", t.trial_id, "': score key '",
            KeyName(s->key), "' does not match protocol key '", KeyName(t.key),
            "'");
    Require(s->attack_label == t.attack_label, "join: trial '", t.trial_id,
            "': score attack label '", s->attack_label,
            "' does not match protocol label '", t.attack_label, "'");
    ScoreRecord r = *s;
    r.attack_label = t.attack_label;
    res.joined.records.push_back(std::move(r));
  }
  res.dropped_extra = scores.records.size() - protocol.size();
  return res;
}

}  // namespace tandem

#endif  // TANDEM_PROTOCOL_HPP_
