// include/tandem/pa_sim.hpp

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

// Controlled simulation of physical-access presentations.
//
// Bona fide access: talker -> room channel -> ASV microphone.  Replay
// attack: talker -> room channel -> attacker's recorder, replayed
// through a band-limited non-linear loudspeaker at the attacker's
// position -> room channel -> ASV microphone.  Room channels come from
// the image-source model in rir.hpp.
//
// Configurations are organized by category: 3 room sizes x 3
// reverberation levels x 3 talker-to-mic distances give 27 acoustic
// configurations, and 3 attacker-to-talker distances x 3 replay device
// qualities give 9 replay configurations (attack labels "AA".."CC",
// first letter distance, second letter quality).  Concrete parameters
// are drawn uniformly from per-category ranges; the draw is a pure
// function of (category, seed), and dataset generation derives per-trial
// seeds from a master seed in one of two disjoint spaces ("train" and
// "eval") so evaluation-side rooms and devices never reuse those seen in
// training.

#ifndef TANDEM_PA_SIM_HPP_
#define TANDEM_PA_SIM_HPP_

#include <array>
#include <cmath>
#include <filesystem>
#include <string>
#include <vector>

#include "tandem/audio.hpp"
#include "tandem/fft.hpp"
#include "tandem/parallel.hpp"
#include "tandem/protocol.hpp"
#include "tandem/rir.hpp"
#include "tandem/rng.hpp"

namespace tandem {

struct PaCategoryLabel {
  int room_size = 0;           // 0..2 -> a..c
  int reverberation = 0;       // 0..2 -> a..c
  int talker_to_mic = 0;       // 0..2 -> a..c
  int attacker_to_talker = 0;  // 0..2 -> A..C
  int device_quality = 0;      // 0..2 -> A..C

  void Validate() const {
    for (int v : {room_size, reverberation, talker_to_mic, attacker_to_talker,
                  device_quality})
      Require(v >= 0 && v <= 2, "pa category: index out of range");
  }

  /// "abc" style acoustic configuration id.
  std::string AcousticId() const {
    return {static_cast<char>('a' + room_size),
            static_cast<char>('a' + reverberation),
            static_cast<char>('a' + talker_to_mic)};
  }

  /// "AC" style replay configuration id.
  std::string AttackId() const {
    return {static_cast<char>('A' + attacker_to_talker),
            static_cast<char>('A' + device_quality)};
  }

  /// Parses "abc" plus an attack label ("BC", or "bonafide"/"-"/"" for
  /// bona fide trials, which leave the replay fields at category A).
  static PaCategoryLabel Parse(const std::string &acoustic,
                               const std::string &attack) {
    Require(acoustic.size() == 3, "pa category: acoustic id '", acoustic,
            "' must have 3 letters");
    PaCategoryLabel c;
    auto low = [&](char ch, const char *what) {
      Require(ch >= 'a' && ch <= 'c', "pa category: bad ", what, " letter '",
              ch, "' (want a..c)");
      return ch - 'a';
    };
    c.room_size = low(acoustic[0], "room size");
    c.reverberation = low(acoustic[1], "reverberation");
    c.talker_to_mic = low(acoustic[2], "talker-to-mic");
    if (!(attack.empty() || attack == "-" || attack == "bonafide")) {
      Require(attack.size() == 2, "pa category: attack id '", attack,
              "' must have 2 letters");
      auto up = [&](char ch, const char *what) {
        Require(ch >= 'A' && ch <= 'C', "pa category: bad ", what,
                " letter '", ch, "' (want A..C)");
        return ch - 'A';
      };
      c.attacker_to_talker = up(attack[0], "attacker-to-talker");
      c.device_quality = up(attack[1], "device quality");
    }
    return c;
  }
};

struct ReplayDeviceSpec {
  int quality = 0;  // 0..2 -> A..C
  double passband_low_hz = 20.0;
  double passband_high_hz = 8000.0;
  double nonlinearity_drive = 0.0;  // 0 = linear

  void Validate(int sample_rate) const {
    Require(quality >= 0 && quality <= 2, "device: bad quality");
    Require(passband_low_hz >= 0.0 &&
                passband_low_hz < passband_high_hz &&
                passband_high_hz <= sample_rate / 2.0,
            "device: need 0 <= low < high <= sample_rate/2");
    Require(nonlinearity_drive >= 0.0, "device: drive must be >= 0");
  }
};

struct Range {
  double lo = 0.0, hi = 0.0;
  void Validate(const char *what) const {
    Require(lo <= hi, what, ": range [", lo, ", ", hi, "] is inverted");
  }
};

/// Per-category parameter ranges.  These presets are explicit,
/// overridable conventions consistent with the category ordering
/// (small/medium/large, near/far, good/poor); replace them via a
/// category config file when a concrete evaluation defines its own.
struct CategoryTable {
  std::array<Range, 3> room_area_m2{{{2, 5}, {5, 10}, {10, 20}}};
  std::array<Range, 3> t60_s{{{0.05, 0.25}, {0.25, 0.5}, {0.5, 0.75}}};
  std::array<Range, 3> talker_mic_m{{{0.1, 0.5}, {0.5, 1.0}, {1.0, 1.5}}};
  std::array<Range, 3> attacker_talker_m{{{0.1, 0.5}, {0.5, 1.0}, {1.0, 1.5}}};
  Range room_height_m{2.5, 3.0};
  Range room_aspect{0.6, 1.0};  // width / length
  std::array<ReplayDeviceSpec, 3> devices{{
      {0, 20.0, 8000.0, 0.1},    // A: wide band, nearly linear
      {1, 100.0, 6000.0, 1.0},   // B
      {2, 300.0, 4000.0, 3.0},   // C: narrow band, heavy clipping
  }};
  int sample_rate = 16000;

  void Validate() const {
    for (const auto &r : room_area_m2) r.Validate("room area");
    for (const auto &r : t60_s) r.Validate("t60");
    for (const auto &r : talker_mic_m) r.Validate("talker-mic distance");
    for (const auto &r : attacker_talker_m)
      r.Validate("attacker-talker distance");
    room_height_m.Validate("room height");
    room_aspect.Validate("room aspect");
    Require(room_aspect.lo > 0.0 && room_aspect.hi <= 1.0,
            "room aspect must be in (0, 1]");
    Require(sample_rate > 0, "sample rate must be > 0");
    for (const auto &d : devices) d.Validate(sample_rate);
    Require(t60_s[0].lo > 0.0, "t60 must be > 0");
    for (int i = 0; i < 3; i++) {
      Require(room_area_m2[i].lo > 0.0, "room area must be > 0");
      Require(talker_mic_m[i].lo >= 0.1 && attacker_talker_m[i].lo >= 0.1,
              "distances below 0.1 m are not sampleable");
    }
    // higher quality means a wider passband and a lower drive
    for (int i = 1; i < 3; i++) {
      Require(devices[i].passband_low_hz >= devices[i - 1].passband_low_hz &&
                  devices[i].passband_high_hz <=
                      devices[i - 1].passband_high_hz,
              "device quality ", static_cast<char>('A' + i),
              " must have a passband inside quality ",
              static_cast<char>('A' + i - 1), "'s");
      Require(devices[i].nonlinearity_drive >=
                  devices[i - 1].nonlinearity_drive,
              "device drive must not decrease from quality A to C");
    }
  }
};

/// One concrete sampled configuration.
struct PaConfig {
  PaCategoryLabel category;
  RoomSpec room;
  Vec3 talker_pos, mic_pos, attacker_pos;
  ReplayDeviceSpec device;
  uint64_t rng_seed = 0;

  /// Stable fingerprint of every concrete parameter (not the seed), used
  /// to verify that different seed spaces never share a configuration.
  uint64_t Hash() const {
    std::vector<double> nums = {
        room.length,    room.width,    room.height,    room.t60,
        talker_pos.x,   talker_pos.y,  talker_pos.z,   mic_pos.x,
        mic_pos.y,      mic_pos.z,     attacker_pos.x, attacker_pos.y,
        attacker_pos.z, device.passband_low_hz, device.passband_high_hz,
        device.nonlinearity_drive};
    uint64_t h = Fnv1a(nums.data(), nums.size() * sizeof(double));
    int cats[5] = {category.room_size, category.reverberation,
                   category.talker_to_mic, category.attacker_to_talker,
                   category.device_quality};
    return Fnv1a(cats, sizeof(cats), h);
  }
};

inline constexpr double kWallClearance = 0.1;

namespace pa_detail {

// Position at `dist` from `anchor` in a uniformly random direction.
inline Vec3 RandomOffset(Rng *rng, const Vec3 &anchor, double dist) {
  // isotropic direction from three gaussians
  double x, y, z, n;
  do {
    x = rng->NextGaussian();
    y = rng->NextGaussian();
    z = rng->NextGaussian();
    n = std::sqrt(x * x + y * y + z * z);
  } while (n < 1e-9);
  return {anchor.x + dist * x / n, anchor.y + dist * y / n,
          anchor.z + dist * z / n};
}

}  // namespace pa_detail

/// Draws one concrete configuration for a category.  Pure function of
/// (category, seed, table): the same arguments always return the same
/// configuration, bit for bit.
inline PaConfig SampleConfig(const PaCategoryLabel &category, uint64_t seed,
                             const CategoryTable &table = CategoryTable()) {
  category.Validate();
  table.Validate();
  Rng rng(seed);

  PaConfig cfg;
  cfg.category = category;
  cfg.rng_seed = seed;

  const Range &area_r = table.room_area_m2[category.room_size];
  double area = rng.Uniform(area_r.lo, area_r.hi);
  double aspect = rng.Uniform(table.room_aspect.lo, table.room_aspect.hi);
  cfg.room.length = std::sqrt(area / aspect);
  cfg.room.width = area / cfg.room.length;
  cfg.room.height = rng.Uniform(table.room_height_m.lo, table.room_height_m.hi);
  const Range &t60_r = table.t60_s[category.reverberation];
  cfg.room.t60 = rng.Uniform(t60_r.lo, t60_r.hi);

  auto draw_inside = [&](double clearance) {
    return Vec3{rng.Uniform(clearance, cfg.room.length - clearance),
                rng.Uniform(clearance, cfg.room.width - clearance),
                rng.Uniform(clearance, cfg.room.height - clearance)};
  };

  const Range &tm = table.talker_mic_m[category.talker_to_mic];
  const Range &at = table.attacker_talker_m[category.attacker_to_talker];
  for (int attempt = 0;; attempt++) {
    Require(attempt < 20000,
            "pa sample: could not place positions for category ",
            category.AcousticId(), "/", category.AttackId(),
            " inside the sampled room");
    cfg.talker_pos = draw_inside(kWallClearance);
    double d_mic = rng.Uniform(tm.lo, tm.hi);
    cfg.mic_pos = pa_detail::RandomOffset(&rng, cfg.talker_pos, d_mic);
    if (!cfg.room.Contains(cfg.mic_pos, kWallClearance)) continue;
    double d_att = rng.Uniform(at.lo, at.hi);
    cfg.attacker_pos = pa_detail::RandomOffset(&rng, cfg.talker_pos, d_att);
    if (!cfg.room.Contains(cfg.attacker_pos, kWallClearance)) continue;
    if (Distance(cfg.attacker_pos, cfg.mic_pos) < 0.05) continue;
    break;
  }
  cfg.device = table.devices[category.device_quality];
  return cfg;
}

/// Linear-phase FIR band-pass (Blackman-windowed sinc, 511 taps), applied
/// with its group delay removed so output aligns with input.  A high edge
/// at Nyquist degenerates to a pure high-pass, a low edge at 0 to a pure
/// low-pass.
inline std::vector<double> BandPassTaps(double low_hz, double high_hz,
                                        int sample_rate, size_t n_taps = 511) {
  Require(n_taps % 2 == 1, "bandpass: tap count must be odd");
  Require(low_hz >= 0.0 && low_hz < high_hz && high_hz <= sample_rate / 2.0,
          "bandpass: need 0 <= low < high <= sample_rate/2");
  const int mid = static_cast<int>(n_taps / 2);
  const double nyquist = sample_rate / 2.0;
  std::vector<double> taps(n_taps, 0.0);

  auto lowpass = [&](double fc, int n) {
    // normalized cutoff in (0, 1]; at 1 this is the identity
    double w = fc / nyquist;
    if (w >= 1.0) return n == 0 ? 1.0 : 0.0;
    double u = static_cast<double>(n);
    return n == 0 ? w : w * std::sin(M_PI * w * u) / (M_PI * w * u);
  };

  for (size_t i = 0; i < n_taps; i++) {
    int n = static_cast<int>(i) - mid;
    double x = static_cast<double>(n) / mid;
    double window =
        0.42 + 0.5 * std::cos(M_PI * x) + 0.08 * std::cos(2.0 * M_PI * x);
    double ideal = lowpass(high_hz, n) - (low_hz > 0.0 ? lowpass(low_hz, n) : 0.0);
    taps[i] = ideal * window;
  }
  return taps;
}

/// Replay loudspeaker: band-limit to the device passband, then memoryless
/// soft clipping y = tanh(g x) / tanh(g); g = 0 is the identity.
inline AudioBuffer ApplyReplayDevice(const AudioBuffer &audio,
                                     const ReplayDeviceSpec &device) {
  audio.Check("replay device");
  device.Validate(audio.sample_rate);

  AudioBuffer out;
  out.sample_rate = audio.sample_rate;
  const std::vector<double> taps =
      BandPassTaps(device.passband_low_hz, device.passband_high_hz,
                   audio.sample_rate);
  const size_t group_delay = taps.size() / 2;
  std::vector<double> filtered = FftConvolve(audio.samples, taps);
  out.samples.assign(filtered.begin() + group_delay,
                     filtered.begin() + group_delay + audio.samples.size());

  if (device.nonlinearity_drive > 0.0) {
    const double g = device.nonlinearity_drive;
    const double norm = std::tanh(g);
    for (double &s : out.samples) s = std::tanh(g * s) / norm;
  }
  return out;
}

namespace pa_detail {

inline std::vector<double> RoomChannel(const PaConfig &cfg, const Vec3 &from,
                                       const Vec3 &to, int sample_rate) {
  const double r = EyringReflectionCoefficient(cfg.room);
  return RirImageMethod(cfg.room, from, to, SuggestedMaxOrder(r), sample_rate);
}

inline AudioBuffer Convolved(const AudioBuffer &audio,
                             const std::vector<double> &channel) {
  AudioBuffer out;
  out.sample_rate = audio.sample_rate;
  out.samples = FftConvolve(audio.samples, channel);
  return out;
}

}  // namespace pa_detail

/// Bona fide presentation: talker's speech through the talker->mic room
/// channel, peak-normalized to 0.95.
inline AudioBuffer SimulateBonafide(const AudioBuffer &speech,
                                    const PaConfig &cfg) {
  speech.Check("simulate bonafide");
  AudioBuffer out = pa_detail::Convolved(
      speech, pa_detail::RoomChannel(cfg, cfg.talker_pos, cfg.mic_pos,
                                     speech.sample_rate));
  PeakNormalize(&out, 0.95);
  return out;
}

/// Replay attack: talker -> attacker recording position, through the
/// replay device, then attacker position (as a loudspeaker) -> mic.
/// Peak-normalized to 0.95.
inline AudioBuffer SimulateReplay(const AudioBuffer &speech,
                                  const PaConfig &cfg) {
  speech.Check("simulate replay");
  AudioBuffer captured = pa_detail::Convolved(
      speech, pa_detail::RoomChannel(cfg, cfg.talker_pos, cfg.attacker_pos,
                                     speech.sample_rate));
  AudioBuffer replayed = ApplyReplayDevice(captured, cfg.device);
  AudioBuffer out = pa_detail::Convolved(
      replayed, pa_detail::RoomChannel(cfg, cfg.attacker_pos, cfg.mic_pos,
                                       speech.sample_rate));
  PeakNormalize(&out, 0.95);
  return out;
}

enum class SeedSplit { kTrainDev, kEval };

inline const char *SeedSplitName(SeedSplit s) {
  return s == SeedSplit::kTrainDev ? "train" : "eval";
}

/// Per-trial configuration seed.  The two splits salt the hash
/// differently, so their seed spaces are disjoint and the concrete
/// rooms/devices drawn for evaluation are unknown at training time.
inline uint64_t TrialConfigSeed(uint64_t master_seed,
                                const std::string &trial_id, SeedSplit split) {
  return DeriveSeed(master_seed, trial_id,
                    split == SeedSplit::kTrainDev ? 0x74726e64ull
                                                  : 0x6576616cull);
}

struct RenderedTrial {
  std::string trial_id;
  std::string attack_label;
  Key key = Key::kBonafide;
  std::string acoustic_id;
  uint64_t config_seed = 0;
  uint64_t config_hash = 0;
  std::string wav_path;
};

struct DatasetManifest {
  uint64_t master_seed = 0;
  SeedSplit split = SeedSplit::kTrainDev;
  int sample_rate = 16000;
  std::vector<RenderedTrial> trials;
};

/// Renders a whole protocol: for each trial, the acoustic triple comes
/// from the protocol's SYSTEM_ID column ("abc"), the replay pair from the
/// attack label ("AC"), the source audio from `<source_dir>/<trial>.wav`,
/// and the output goes to `<out_dir>/<trial>.wav`.  A pure function of
/// (protocol, table, master_seed, split) given fixed source audio.
inline DatasetManifest GenerateDataset(const std::vector<TrialRecord> &protocol,
                                       const CategoryTable &table,
                                       uint64_t master_seed, SeedSplit split,
                                       const std::string &source_dir,
                                       const std::string &out_dir,
                                       size_t jobs = 1) {
  table.Validate();
  namespace fs = std::filesystem;
  fs::create_directories(out_dir);

  DatasetManifest manifest;
  manifest.master_seed = master_seed;
  manifest.split = split;
  manifest.sample_rate = table.sample_rate;
  manifest.trials.resize(protocol.size());

  // check sources up front so the error names the first offending trial
  for (const auto &t : protocol) {
    fs::path src = fs::path(source_dir) / (t.trial_id + ".wav");
    Require(fs::exists(src), "simulate: missing source audio for trial '",
            t.trial_id, "' (", src.string(), ")");
  }

  ParallelFor(jobs, protocol.size(), [&](size_t i) {
    const TrialRecord &t = protocol[i];
    PaCategoryLabel cat = PaCategoryLabel::Parse(t.system_id, t.attack_label);
    uint64_t seed = TrialConfigSeed(master_seed, t.trial_id, split);
    PaConfig cfg = SampleConfig(cat, seed, table);

    AudioBuffer speech =
        ReadWav((fs::path(source_dir) / (t.trial_id + ".wav")).string());
    Require(speech.sample_rate == table.sample_rate, "simulate: trial '",
            t.trial_id, "': source rate ", speech.sample_rate,
            " does not match table rate ", table.sample_rate);
    AudioBuffer rendered = t.key == Key::kBonafide ? SimulateBonafide(speech, cfg)
                                                   : SimulateReplay(speech, cfg);

    std::string out_path = (fs::path(out_dir) / (t.trial_id + ".wav")).string();
    WriteWav(rendered, out_path);

    RenderedTrial &r = manifest.trials[i];
    r.trial_id = t.trial_id;
    r.attack_label = t.attack_label;
    r.key = t.key;
    r.acoustic_id = cat.AcousticId();
    r.config_seed = seed;
    r.config_hash = cfg.Hash();
    r.wav_path = out_path;
  });
  return manifest;
}

}  // namespace tandem

#endif  // TANDEM_PA_SIM_HPP_
