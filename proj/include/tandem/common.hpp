// include/tandem/common.hpp

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

#ifndef TANDEM_COMMON_HPP_
#define TANDEM_COMMON_HPP_

#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>

namespace tandem {

/// Error type for every failure the toolkit reports: parse problems,
/// contract violations, I/O failures.  The message always carries the
/// context needed to act on it (file, line, trial, team, ...).
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string &msg) : std::runtime_error(msg) {}
};

namespace detail {

inline void MsgAppend(std::ostringstream &) {}

template <typename T, typename... Rest>
void MsgAppend(std::ostringstream &os, const T &v, const Rest &...rest) {
  os << v;
  MsgAppend(os, rest...);
}

}  // namespace detail

template <typename... Args>
[[noreturn]] void Fail(const Args &...args) {
  std::ostringstream os;
  detail::MsgAppend(os, args...);
  throw Error(os.str());
}

template <typename... Args>
void Require(bool cond, const Args &...args) {
  if (!cond) Fail(args...);
}

/// 64-bit FNV-1a, the hash used for config fingerprints and per-trial
/// seed derivation.  Stable across platforms and builds.
inline uint64_t Fnv1a(const void *data, size_t n,
                      uint64_t h = 0xcbf29ce484222325ull) {
  const unsigned char *p = static_cast<const unsigned char *>(data);
  for (size_t i = 0; i < n; i++) {
    h ^= p[i];
    h *= 0x100000001b3ull;
  }
  return h;
}

inline uint64_t Fnv1a(const std::string &s,
                      uint64_t h = 0xcbf29ce484222325ull) {
  return Fnv1a(s.data(), s.size(), h);
}

}  // namespace tandem

#endif  // TANDEM_COMMON_HPP_
