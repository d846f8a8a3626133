// include/tandem/config.hpp

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

// Key-value text configuration.  One `key = value...` assignment per
// line, `#` comments, values whitespace-separated.  Every loader checks
// its key set, so a typo fails with the offending key named instead of
// being silently ignored.
//
// Keys by consumer:
//
//   cost model:      pi_tar pi_non pi_spoof c_miss_cm c_fa_cm
//                    c_miss_asv c_fa_asv
//   lfcc:            frame_length_ms frame_shift_ms fft_size n_filters
//                    n_cepstral delta_window
//   cqcc:            bins_per_octave f_min f_max hop n_cepstral
//                    resample_points_per_octave include_c0 delta_window
//   gmm training:    components max_iterations tolerance
//                    variance_floor_factor seed kmeans_subsample
//                    kmeans_iterations
//   category table:  room_area.{a,b,c} (lo hi)   t60.{a,b,c} (lo hi)
//                    talker_mic.{a,b,c} (lo hi)
//                    attacker_talker.{A,B,C} (lo hi)
//                    device.{A,B,C}.passband (lo hi)
//                    device.{A,B,C}.drive    room_height (lo hi)
//                    room_aspect (lo hi)     sample_rate

#ifndef TANDEM_CONFIG_HPP_
#define TANDEM_CONFIG_HPP_

#include <cstdlib>
#include <initializer_list>
#include <istream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "tandem/common.hpp"
#include "tandem/gmm.hpp"
#include "tandem/io_util.hpp"
#include "tandem/lfcc.hpp"
#include "tandem/cqcc.hpp"
#include "tandem/pa_sim.hpp"
#include "tandem/tdcf.hpp"

namespace tandem {

class KeyValueConfig {
 public:
  KeyValueConfig() = default;

  static KeyValueConfig Parse(std::istream &in) {
    KeyValueConfig cfg;
    std::string line;
    size_t lineno = 0;
    while (std::getline(in, line)) {
      lineno++;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      size_t hash = line.find('#');
      if (hash != std::string::npos) line.erase(hash);
      std::istringstream ls(line);
      std::string key;
      if (!(ls >> key)) continue;
      std::string eq;
      ls >> eq;
      Require(eq == "=", "config line ", lineno, ": expected '", key,
              " = value'");
      std::vector<std::string> values;
      std::string v;
      while (ls >> v) values.push_back(v);
      Require(!values.empty(), "config line ", lineno, ": key '", key,
              "' has no value");
      Require(cfg.entries_.emplace(key, values).second, "config line ", lineno,
              ": duplicate key '", key, "'");
    }
    return cfg;
  }

  static KeyValueConfig FromFile(const std::string &path) {
    std::istringstream in(ReadFileToString(path));
    try {
      return Parse(in);
    } catch (const Error &e) {
      Fail(path, ": ", e.what());
    }
  }

  bool Has(const std::string &key) const { return entries_.count(key) > 0; }

  double GetDouble(const std::string &key, double fallback) const {
    auto it = entries_.find(key);
    if (it == entries_.end()) return fallback;
    Require(it->second.size() == 1, "config key '", key,
            "' wants a single number");
    return ToDouble(key, it->second[0]);
  }

  size_t GetSize(const std::string &key, size_t fallback) const {
    double v = GetDouble(key, static_cast<double>(fallback));
    Require(v >= 0 && v == std::floor(v), "config key '", key,
            "' wants a non-negative integer");
    return static_cast<size_t>(v);
  }

  bool GetBool(const std::string &key, bool fallback) const {
    auto it = entries_.find(key);
    if (it == entries_.end()) return fallback;
    Require(it->second.size() == 1, "config key '", key,
            "' wants a single 0/1 value");
    const std::string &s = it->second[0];
    if (s == "0" || s == "false") return false;
    if (s == "1" || s == "true") return true;
    Fail("config key '", key, "': bad boolean '", s, "'");
  }

  Range GetRange(const std::string &key, Range fallback) const {
    auto it = entries_.find(key);
    if (it == entries_.end()) return fallback;
    Require(it->second.size() == 2, "config key '", key,
            "' wants two numbers (lo hi)");
    return {ToDouble(key, it->second[0]), ToDouble(key, it->second[1])};
  }

  /// Rejects any key outside the allowed set, naming the offender.
  void RequireKeys(std::initializer_list<const char *> allowed) const {
    std::set<std::string> ok;
    for (const char *k : allowed) ok.insert(k);
    for (const auto &[key, values] : entries_)
      Require(ok.count(key) > 0, "config: unknown key '", key, "'");
  }

  /// Canonical fingerprint over sorted key/value pairs.
  uint64_t Hash() const {
    uint64_t h = 0xcbf29ce484222325ull;
    for (const auto &[key, values] : entries_) {
      h = Fnv1a(key, h);
      for (const auto &v : values) h = Fnv1a(v, h);
    }
    return h;
  }

 private:
  static double ToDouble(const std::string &key, const std::string &s) {
    char *end = nullptr;
    double v = std::strtod(s.c_str(), &end);
    Require(end == s.c_str() + s.size() && !s.empty(), "config key '", key,
            "': bad number '", s, "'");
    return v;
  }

  std::map<std::string, std::vector<std::string>> entries_;
};

inline CostModel LoadCostModel(const KeyValueConfig &cfg) {
  cfg.RequireKeys({"pi_tar", "pi_non", "pi_spoof", "c_miss_cm", "c_fa_cm",
                   "c_miss_asv", "c_fa_asv"});
  CostModel m = CostModel::ChallengeDefaults();
  m.pi_tar = cfg.GetDouble("pi_tar", m.pi_tar);
  m.pi_non = cfg.GetDouble("pi_non", m.pi_non);
  m.pi_spoof = cfg.GetDouble("pi_spoof", m.pi_spoof);
  m.c_miss_cm = cfg.GetDouble("c_miss_cm", m.c_miss_cm);
  m.c_fa_cm = cfg.GetDouble("c_fa_cm", m.c_fa_cm);
  m.c_miss_asv = cfg.GetDouble("c_miss_asv", m.c_miss_asv);
  m.c_fa_asv = cfg.GetDouble("c_fa_asv", m.c_fa_asv);
  m.Validate();
  return m;
}

inline LfccConfig LoadLfccConfig(const KeyValueConfig &cfg) {
  cfg.RequireKeys({"frame_length_ms", "frame_shift_ms", "fft_size",
                   "n_filters", "n_cepstral", "delta_window"});
  LfccConfig c;
  c.frame_length_ms = cfg.GetDouble("frame_length_ms", c.frame_length_ms);
  c.frame_shift_ms = cfg.GetDouble("frame_shift_ms", c.frame_shift_ms);
  c.fft_size = cfg.GetSize("fft_size", c.fft_size);
  c.n_filters = cfg.GetSize("n_filters", c.n_filters);
  c.n_cepstral = cfg.GetSize("n_cepstral", c.n_cepstral);
  c.delta_window = static_cast<int>(cfg.GetSize("delta_window", c.delta_window));
  return c;
}

inline CqccConfig LoadCqccConfig(const KeyValueConfig &cfg) {
  cfg.RequireKeys({"bins_per_octave", "f_min", "f_max", "hop", "n_cepstral",
                   "resample_points_per_octave", "include_c0", "delta_window"});
  CqccConfig c;
  c.bins_per_octave = cfg.GetSize("bins_per_octave", c.bins_per_octave);
  c.f_min = cfg.GetDouble("f_min", c.f_min);
  c.f_max = cfg.GetDouble("f_max", c.f_max);
  c.hop = cfg.GetSize("hop", c.hop);
  c.n_cepstral = cfg.GetSize("n_cepstral", c.n_cepstral);
  c.resample_points_per_octave =
      cfg.GetSize("resample_points_per_octave", c.resample_points_per_octave);
  c.include_c0 = cfg.GetBool("include_c0", c.include_c0);
  c.delta_window = static_cast<int>(cfg.GetSize("delta_window", c.delta_window));
  return c;
}

inline TrainConfig LoadTrainConfig(const KeyValueConfig &cfg) {
  cfg.RequireKeys({"components", "max_iterations", "tolerance",
                   "variance_floor_factor", "seed", "kmeans_subsample",
                   "kmeans_iterations"});
  TrainConfig c;
  c.n_components = cfg.GetSize("components", c.n_components);
  c.max_iterations = cfg.GetSize("max_iterations", c.max_iterations);
  c.log_likelihood_tolerance =
      cfg.GetDouble("tolerance", c.log_likelihood_tolerance);
  c.variance_floor_factor =
      cfg.GetDouble("variance_floor_factor", c.variance_floor_factor);
  c.seed = cfg.GetSize("seed", 0);
  c.kmeans_subsample = cfg.GetSize("kmeans_subsample", c.kmeans_subsample);
  c.kmeans_iterations = cfg.GetSize("kmeans_iterations", c.kmeans_iterations);
  c.Validate();
  return c;
}

inline CategoryTable LoadCategoryTable(const KeyValueConfig &cfg) {
  cfg.RequireKeys({"room_area.a", "room_area.b", "room_area.c",
                   "t60.a", "t60.b", "t60.c",
                   "talker_mic.a", "talker_mic.b", "talker_mic.c",
                   "attacker_talker.A", "attacker_talker.B",
                   "attacker_talker.C",
                   "device.A.passband", "device.B.passband",
                   "device.C.passband",
                   "device.A.drive", "device.B.drive", "device.C.drive",
                   "room_height", "room_aspect", "sample_rate"});
  CategoryTable t;
  const char *abc = "abc";
  const char *upper = "ABC";
  for (int i = 0; i < 3; i++) {
    std::string lo(1, abc[i]), up(1, upper[i]);
    t.room_area_m2[i] = cfg.GetRange("room_area." + lo, t.room_area_m2[i]);
    t.t60_s[i] = cfg.GetRange("t60." + lo, t.t60_s[i]);
    t.talker_mic_m[i] = cfg.GetRange("talker_mic." + lo, t.talker_mic_m[i]);
    t.attacker_talker_m[i] =
        cfg.GetRange("attacker_talker." + up, t.attacker_talker_m[i]);
    Range pb = cfg.GetRange("device." + up + ".passband",
                            {t.devices[i].passband_low_hz,
                             t.devices[i].passband_high_hz});
    t.devices[i].passband_low_hz = pb.lo;
    t.devices[i].passband_high_hz = pb.hi;
    t.devices[i].nonlinearity_drive = cfg.GetDouble(
        "device." + up + ".drive", t.devices[i].nonlinearity_drive);
  }
  t.room_height_m = cfg.GetRange("room_height", t.room_height_m);
  t.room_aspect = cfg.GetRange("room_aspect", t.room_aspect);
  t.sample_rate = static_cast<int>(cfg.GetSize("sample_rate", t.sample_rate));
  t.Validate();
  return t;
}

}  // namespace tandem

#endif  // TANDEM_CONFIG_HPP_
