// include/tandem/audio.hpp

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

// Mono 16-bit PCM RIFF/WAVE in and out.  Samples are doubles in [-1, 1];
// reading divides by 32768, writing clamps and rounds to 16 bits.

#ifndef TANDEM_AUDIO_HPP_
#define TANDEM_AUDIO_HPP_

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "tandem/common.hpp"
#include "tandem/io_util.hpp"

namespace tandem {

struct AudioBuffer {
  std::vector<double> samples;
  int sample_rate = 16000;

  void Check(const char *what) const {
    Require(!samples.empty(), what, ": empty audio");
    Require(sample_rate > 0, what, ": bad sample rate");
    for (double s : samples)
      Require(std::isfinite(s), what, ": non-finite sample");
  }

  double DurationSeconds() const {
    return static_cast<double>(samples.size()) / sample_rate;
  }
};

/// Scales so the absolute peak lands at `peak` (no-op on all-zero audio).
inline void PeakNormalize(AudioBuffer *audio, double peak = 0.95) {
  double mx = 0.0;
  for (double s : audio->samples) mx = std::max(mx, std::fabs(s));
  if (mx == 0.0) return;
  double g = peak / mx;
  for (double &s : audio->samples) s *= g;
}

inline void WriteWav(const AudioBuffer &audio, std::ostream &out) {
  const uint32_t n = static_cast<uint32_t>(audio.samples.size());
  const uint32_t data_bytes = n * 2;
  const uint32_t rate = static_cast<uint32_t>(audio.sample_rate);
  out.write("RIFF", 4);
  PutU32Le(out, 36 + data_bytes);
  out.write("WAVE", 4);
  out.write("fmt ", 4);
  PutU32Le(out, 16);
  PutU16Le(out, 1);  // PCM
  PutU16Le(out, 1);  // mono
  PutU32Le(out, rate);
  PutU32Le(out, rate * 2);  // byte rate
  PutU16Le(out, 2);         // block align
  PutU16Le(out, 16);        // bits per sample
  out.write("data", 4);
  PutU32Le(out, data_bytes);
  for (double s : audio.samples) {
    double clamped = std::clamp(s, -1.0, 1.0);
    int v = static_cast<int>(std::lround(clamped * 32767.0));
    PutU16Le(out, static_cast<uint16_t>(static_cast<int16_t>(v)));
  }
  Require(out.good(), "wav write failed");
}

inline void WriteWav(const AudioBuffer &audio, const std::string &path) {
  std::ofstream out(path, std::ios::binary);
  Require(out.good(), "cannot open '", path, "' for writing");
  WriteWav(audio, out);
}

inline AudioBuffer ReadWav(std::istream &in, const std::string &name = "wav") {
  char tag[4];
  in.read(tag, 4);
  Require(in.good() && std::memcmp(tag, "RIFF", 4) == 0, name,
          ": not a RIFF file");
  GetU32Le(in);
  in.read(tag, 4);
  Require(in.good() && std::memcmp(tag, "WAVE", 4) == 0, name,
          ": not a WAVE file");

  AudioBuffer audio;
  bool got_fmt = false;
  while (true) {
    in.read(tag, 4);
    Require(in.good(), name, ": missing data chunk");
    uint32_t size = GetU32Le(in);
    if (std::memcmp(tag, "fmt ", 4) == 0) {
      Require(size >= 16, name, ": short fmt chunk");
      uint16_t format = GetU16Le(in);
      uint16_t channels = GetU16Le(in);
      uint32_t rate = GetU32Le(in);
      GetU32Le(in);  // byte rate
      GetU16Le(in);  // block align
      uint16_t bits = GetU16Le(in);
      Require(format == 1, name, ": only PCM supported");
      Require(channels == 1, name, ": only mono supported");
      Require(bits == 16, name, ": only 16-bit supported");
      audio.sample_rate = static_cast<int>(rate);
      in.ignore(size - 16);
      got_fmt = true;
    } else if (std::memcmp(tag, "data", 4) == 0) {
      Require(got_fmt, name, ": data chunk before fmt");
      const uint32_t count = size / 2;
      audio.samples.resize(count);
      for (uint32_t i = 0; i < count; i++) {
        int16_t v = static_cast<int16_t>(GetU16Le(in));
        audio.samples[i] = static_cast<double>(v) / 32768.0;
      }
      if (size & 1) in.ignore(1);
      return audio;
    } else {
      in.ignore(size + (size & 1));  // skip unknown chunk (word aligned)
    }
  }
}

inline AudioBuffer ReadWav(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  Require(in.good(), "cannot open '", path, "' for reading");
  return ReadWav(in, path);
}

}  // namespace tandem

#endif  // TANDEM_AUDIO_HPP_
