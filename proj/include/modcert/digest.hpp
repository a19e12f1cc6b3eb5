// Copyright 2026 The modcert Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef MODCERT_DIGEST_HPP_
#define MODCERT_DIGEST_HPP_

#include <cstdint>
#include <string>
#include <string_view>

namespace modcert {

/// FNV-1a 64-bit content digest, as a fixed-width hex string. Reports embed
/// these so a bound can be traced back to the exact inputs it was computed
/// from; this is change detection, not cryptography.
inline std::string fnv1a64_hex(std::string_view bytes) {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (unsigned char byte : bytes) {
    h ^= byte;
    h *= 0x100000001B3ULL;
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[i] = kHex[h & 0xF];
    h >>= 4;
  }
  return out;
}

}  // namespace modcert

#endif  // MODCERT_DIGEST_HPP_
