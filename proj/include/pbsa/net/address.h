// Copyright 2026 The PbSA Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace pbsa {

// IPv4 host address. Octets with leading zeros ("172.56.16.06") are read as
// decimal; the canonical text form drops them.
class Ipv4Address {
 public:
  constexpr Ipv4Address() = default;
  constexpr explicit Ipv4Address(uint32_t value) : value_(value) {}

  static std::optional<Ipv4Address> Parse(std::string_view text);

  constexpr uint32_t value() const { return value_; }
  std::string ToString() const;

  friend constexpr auto operator<=>(const Ipv4Address&,
                                    const Ipv4Address&) = default;

 private:
  uint32_t value_ = 0;
};

class Cidr {
 public:
  constexpr Cidr() = default;
  // Host bits below the prefix are cleared.
  Cidr(Ipv4Address network, int prefix_len);

  // Accepts "a.b.c.d/n" or a bare address (treated as /32).
  static std::optional<Cidr> Parse(std::string_view text);

  Ipv4Address network() const { return network_; }
  int prefix_len() const { return prefix_len_; }
  uint32_t mask() const;

  bool Contains(Ipv4Address addr) const;
  bool Contains(const Cidr& other) const;
  std::string ToString() const;

  friend auto operator<=>(const Cidr&, const Cidr&) = default;

 private:
  Ipv4Address network_;
  int prefix_len_ = 0;
};

class MacAddress {
 public:
  constexpr MacAddress() = default;
  constexpr explicit MacAddress(std::array<uint8_t, 6> octets)
      : octets_(octets) {}

  // Six colon-separated hex octets; case-insensitive.
  static std::optional<MacAddress> Parse(std::string_view text);

  const std::array<uint8_t, 6>& octets() const { return octets_; }
  // Lower-case, zero-padded.
  std::string ToString() const;

  friend auto operator<=>(const MacAddress&, const MacAddress&) = default;

 private:
  std::array<uint8_t, 6> octets_{};
};

}  // namespace pbsa
