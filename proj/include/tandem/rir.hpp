// include/tandem/rir.hpp

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

// Rectangular-room impulse responses by the image-source method.
//
// Mirror images of the source across the walls are enumerated up to a
// reflection order; the image with n wall hits at distance d contributes
// amplitude r^n / (4 pi d) at delay d/c, where r is the amplitude
// reflection coefficient shared by all six walls, derived from the
// target reverberation time with Eyring's formula.  Fractional delays
// are realized with Blackman-windowed sinc kernels; every response
// carries kRirOnset samples of lead-in so the first kernel fits, i.e.
// the direct path peaks at round(d/c * fs) + kRirOnset.

#ifndef TANDEM_RIR_HPP_
#define TANDEM_RIR_HPP_

#include <algorithm>
#include <cmath>
#include <vector>

#include "tandem/common.hpp"

namespace tandem {

struct Vec3 {
  double x = 0.0, y = 0.0, z = 0.0;
};

inline double Distance(const Vec3 &a, const Vec3 &b) {
  double dx = a.x - b.x, dy = a.y - b.y, dz = a.z - b.z;
  return std::sqrt(dx * dx + dy * dy + dz * dz);
}

struct RoomSpec {
  double length = 0.0;  // x extent, meters
  double width = 0.0;   // y extent
  double height = 0.0;  // z extent
  double t60 = 0.0;     // seconds
  double speed_of_sound = 343.0;

  void Validate() const {
    Require(length > 0 && width > 0 && height > 0, "room: dims must be > 0");
    Require(t60 > 0, "room: t60 must be > 0");
    Require(speed_of_sound > 0, "room: speed of sound must be > 0");
  }

  double Volume() const { return length * width * height; }
  double SurfaceArea() const {
    return 2.0 * (length * width + length * height + width * height);
  }

  bool Contains(const Vec3 &p, double clearance = 0.0) const {
    return p.x >= clearance && p.x <= length - clearance && p.y >= clearance &&
           p.y <= width - clearance && p.z >= clearance &&
           p.z <= height - clearance;
  }
};

/// Amplitude reflection coefficient from Eyring's reverberation formula:
/// absorption a = 1 - exp(-0.161 V / (S t60)), r = sqrt(1 - a).
inline double EyringReflectionCoefficient(const RoomSpec &room) {
  room.Validate();
  double absorption =
      1.0 - std::exp(-0.161 * room.Volume() / (room.SurfaceArea() * room.t60));
  return std::sqrt(1.0 - absorption);
}

/// Smallest order whose omitted image energy, estimated by the geometric
/// per-order tail r^(2(o+1)) / (1 - r^2), is below -60 dB of the total;
/// capped at 30.
inline int SuggestedMaxOrder(double reflection) {
  Require(reflection >= 0.0 && reflection < 1.0,
          "max order: reflection coefficient must be in [0, 1)");
  if (reflection == 0.0) return 0;
  double r2 = reflection * reflection;
  double need = std::log(1e-6 * (1.0 - r2)) / (2.0 * std::log(reflection)) - 1.0;
  int order = static_cast<int>(std::ceil(need));
  return std::clamp(order, 0, 30);
}

inline constexpr int kSincHalfWidth = 32;
inline constexpr int kRirOnset = kSincHalfWidth + 1;

namespace rir_detail {

inline void AddWindowedSinc(std::vector<double> *h, double center,
                            double amplitude) {
  const int lo = static_cast<int>(std::ceil(center - kSincHalfWidth));
  const int hi = static_cast<int>(std::floor(center + kSincHalfWidth));
  for (int j = std::max(lo, 0);
       j <= hi && j < static_cast<int>(h->size()); j++) {
    double u = static_cast<double>(j) - center;
    double sinc = u == 0.0 ? 1.0 : std::sin(M_PI * u) / (M_PI * u);
    double x = u / kSincHalfWidth;  // in [-1, 1]
    double window = 0.42 + 0.5 * std::cos(M_PI * x) +
                    0.08 * std::cos(2.0 * M_PI * x);
    (*h)[static_cast<size_t>(j)] += amplitude * sinc * window;
  }
}

}  // namespace rir_detail

/// Image-source impulse response between two points in a rectangular
/// room, all reflections up to `max_order` wall hits included.
inline std::vector<double> RirImageMethod(const RoomSpec &room,
                                          const Vec3 &source, const Vec3 &mic,
                                          int max_order, int sample_rate) {
  room.Validate();
  Require(sample_rate > 0, "rir: bad sample rate");
  Require(max_order >= 0, "rir: max_order must be >= 0");
  Require(room.Contains(source) && room.Contains(mic),
          "rir: positions must lie inside the room");
  Require(Distance(source, mic) >= 0.05, "rir: source too near mic (",
          Distance(source, mic), " m, need >= 0.05)");

  const double r = EyringReflectionCoefficient(room);
  const double dims[3] = {room.length, room.width, room.height};
  const double src[3] = {source.x, source.y, source.z};
  const double rcv[3] = {mic.x, mic.y, mic.z};

  // |m - p| + |m| <= order implies |m| <= (order + 1) / 2
  const int m_max = (max_order + 1) / 2;

  struct Image {
    double delay;  // samples, fractional
    double amp;
  };
  std::vector<Image> images;
  double max_delay = 0.0;

  for (int mx = -m_max; mx <= m_max; mx++) {
    for (int px = 0; px < 2; px++) {
      const int ox = std::abs(mx - px) + std::abs(mx);
      if (ox > max_order) continue;
      const double ix = (1 - 2 * px) * src[0] + 2.0 * mx * dims[0];
      for (int my = -m_max; my <= m_max; my++) {
        for (int py = 0; py < 2; py++) {
          const int oy = std::abs(my - py) + std::abs(my);
          if (ox + oy > max_order) continue;
          const double iy = (1 - 2 * py) * src[1] + 2.0 * my * dims[1];
          for (int mz = -m_max; mz <= m_max; mz++) {
            for (int pz = 0; pz < 2; pz++) {
              const int order = ox + oy + std::abs(mz - pz) + std::abs(mz);
              if (order > max_order) continue;
              const double iz = (1 - 2 * pz) * src[2] + 2.0 * mz * dims[2];
              const double dx = ix - rcv[0], dy = iy - rcv[1],
                           dz = iz - rcv[2];
              const double dist = std::sqrt(dx * dx + dy * dy + dz * dz);
              const double amp =
                  std::pow(r, order) / (4.0 * M_PI * dist);
              const double delay =
                  dist / room.speed_of_sound * sample_rate + kRirOnset;
              images.push_back({delay, amp});
              max_delay = std::max(max_delay, delay);
            }
          }
        }
      }
    }
  }

  std::vector<double> h(static_cast<size_t>(std::ceil(max_delay)) +
                            kSincHalfWidth + 2,
                        0.0);
  for (const Image &img : images)
    rir_detail::AddWindowedSinc(&h, img.delay, img.amp);
  return h;
}

/// Broadband T60 from Schroeder backward integration: the energy decay
/// curve is fitted by least squares between -5 dB and -35 dB and the
/// slope extrapolated to 60 dB of decay.
inline double EstimateT60Schroeder(const std::vector<double> &rir,
                                   int sample_rate) {
  Require(rir.size() >= 2, "t60: impulse response too short");
  std::vector<double> energy(rir.size());
  double acc = 0.0;
  for (size_t i = rir.size(); i-- > 0;) {
    acc += rir[i] * rir[i];
    energy[i] = acc;
  }
  Require(acc > 0.0, "t60: silent impulse response");

  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  size_t n = 0;
  for (size_t i = 0; i < energy.size(); i++) {
    double db = 10.0 * std::log10(energy[i] / energy[0]);
    if (db > -5.0 || db < -35.0) continue;
    double t = static_cast<double>(i) / sample_rate;
    sx += t;
    sy += db;
    sxx += t * t;
    sxy += t * db;
    n++;
  }
  Require(n >= 10, "t60: decay range -5..-35 dB has too few samples (", n, ")");
  double denom = static_cast<double>(n) * sxx - sx * sx;
  Require(denom > 0.0, "t60: degenerate fit");
  double slope = (static_cast<double>(n) * sxy - sx * sy) / denom;
  Require(slope < 0.0, "t60: energy curve does not decay");
  return -60.0 / slope;
}

}  // namespace tandem

#endif  // TANDEM_RIR_HPP_
