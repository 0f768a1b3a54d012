// Copyright 2026 the doco-sim authors. All rights reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef DOCO_BITSTRING_HPP
#define DOCO_BITSTRING_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "doco/errors.hpp"

namespace doco {

// Bit-exact payload. Bits are stored MSB-first within each byte, so
// append order equals wire order (big-endian packing).
class BitString {
 public:
  BitString() = default;

  size_t size() const { return nbits_; }
  bool empty() const { return nbits_ == 0; }

  void append_bit(bool bit) {
    if (nbits_ % 8 == 0) bytes_.push_back(0);
    if (bit) bytes_.back() |= static_cast<uint8_t>(1u << (7 - nbits_ % 8));
    ++nbits_;
  }

  // Appends the low `width` bits of `value`, most significant first.
  void append_bits(uint64_t value, int width) {
    for (int i = width - 1; i >= 0; --i) append_bit((value >> i) & 1u);
  }

  bool bit(size_t i) const {
    return (bytes_[i / 8] >> (7 - i % 8)) & 1u;
  }

  uint64_t read_bits(size_t pos, int width) const {
    uint64_t v = 0;
    for (int i = 0; i < width; ++i) v = (v << 1) | (bit(pos + static_cast<size_t>(i)) ? 1u : 0u);
    return v;
  }

  bool operator==(const BitString& other) const {
    return nbits_ == other.nbits_ && bytes_ == other.bytes_;
  }
  bool operator!=(const BitString& other) const { return !(*this == other); }

  // Hex form used in trace exports: "<nbits>:<hexbytes>".
  std::string to_hex() const {
    static const char* digits = "0123456789abcdef";
    std::string out = std::to_string(nbits_) + ":";
    for (uint8_t b : bytes_) {
      out.push_back(digits[b >> 4]);
      out.push_back(digits[b & 0xF]);
    }
    return out;
  }

  static BitString from_hex(const std::string& hex) {
    const auto colon = hex.find(':');
    if (colon == std::string::npos) throw ConfigError("BitString: malformed hex payload");
    BitString out;
    const size_t nbits = std::stoul(hex.substr(0, colon));
    const std::string body = hex.substr(colon + 1);
    for (size_t i = 0; i < nbits; ++i) {
      const char c = body[i / 4];
      const int nibble = (c <= '9') ? c - '0' : c - 'a' + 10;
      out.append_bit((nibble >> (3 - i % 4)) & 1);
    }
    return out;
  }

 private:
  std::vector<uint8_t> bytes_;
  size_t nbits_ = 0;
};

}  // namespace doco

#endif  // DOCO_BITSTRING_HPP
