// include/tandem/io_util.hpp

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

// Little-endian binary encoding helpers and small file utilities.  All
// on-disk containers in this toolkit are explicitly little-endian.

#ifndef TANDEM_IO_UTIL_HPP_
#define TANDEM_IO_UTIL_HPP_

#include <cstdint>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "tandem/common.hpp"

namespace tandem {

inline void PutU16Le(std::ostream &out, uint16_t v) {
  char b[2] = {static_cast<char>(v & 0xff), static_cast<char>(v >> 8)};
  out.write(b, 2);
}

inline void PutU32Le(std::ostream &out, uint32_t v) {
  char b[4];
  for (int i = 0; i < 4; i++) b[i] = static_cast<char>((v >> (8 * i)) & 0xff);
  out.write(b, 4);
}

inline void PutF64Le(std::ostream &out, double v) {
  uint64_t bits;
  std::memcpy(&bits, &v, 8);
  char b[8];
  for (int i = 0; i < 8; i++) b[i] = static_cast<char>((bits >> (8 * i)) & 0xff);
  out.write(b, 8);
}

inline uint16_t GetU16Le(std::istream &in) {
  unsigned char b[2];
  in.read(reinterpret_cast<char *>(b), 2);
  Require(in.good(), "binary read: truncated input");
  return static_cast<uint16_t>(b[0] | (b[1] << 8));
}

inline uint32_t GetU32Le(std::istream &in) {
  unsigned char b[4];
  in.read(reinterpret_cast<char *>(b), 4);
  Require(in.good(), "binary read: truncated input");
  uint32_t v = 0;
  for (int i = 0; i < 4; i++) v |= static_cast<uint32_t>(b[i]) << (8 * i);
  return v;
}

inline double GetF64Le(std::istream &in) {
  unsigned char b[8];
  in.read(reinterpret_cast<char *>(b), 8);
  Require(in.good(), "binary read: truncated input");
  uint64_t bits = 0;
  for (int i = 0; i < 8; i++) bits |= static_cast<uint64_t>(b[i]) << (8 * i);
  double v;
  std::memcpy(&v, &bits, 8);
  return v;
}

inline std::string ReadFileToString(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  Require(in.good(), "cannot open '", path, "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void WriteStringToFile(const std::string &path,
                              const std::string &content) {
  std::ofstream out(path, std::ios::binary);
  Require(out.good(), "cannot open '", path, "' for writing");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  Require(out.good(), "write to '", path, "' failed");
}

}  // namespace tandem

#endif  // TANDEM_IO_UTIL_HPP_
