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

#include "pbsa/interdomain/token.h"

#include <openssl/crypto.h>
#include <openssl/evp.h>
#include <openssl/hmac.h>

#include <stdexcept>

namespace pbsa {

std::string HmacSha256Hex(std::string_view key, std::string_view data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (!HMAC(EVP_sha256(), key.data(), static_cast<int>(key.size()),
            reinterpret_cast<const unsigned char*>(data.data()), data.size(),
            md, &len)) {
    throw std::runtime_error("HMAC-SHA256 failed");
  }
  static const char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(len * 2);
  for (unsigned int i = 0; i < len; ++i) {
    out += kHex[md[i] >> 4];
    out += kHex[md[i] & 0xf];
  }
  return out;
}

bool TagsEqual(std::string_view a, std::string_view b) {
  return a.size() == b.size() &&
         CRYPTO_memcmp(a.data(), b.data(), a.size()) == 0;
}

std::string Handle::SigningText() const {
  std::string s = "handle\n" + flow_id + "\n" + origin_as + "\n";
  for (size_t i = 0; i < visited.size(); ++i) {
    if (i) s += ',';
    s += visited[i];
  }
  return s;
}

std::string PolicyTransferToken::SigningText() const {
  return "ptt\n" + flow_id + "\n" + origin_as + "\n" + issuer_as + "\n" +
         FormatConstraintList(constraints);
}

void SignHandle(Handle& h, std::string_view key) {
  h.tag = HmacSha256Hex(key, h.SigningText());
}

void SignToken(PolicyTransferToken& t, std::string_view key) {
  t.tag = HmacSha256Hex(key, t.SigningText());
}

bool VerifyHandleTag(const Handle& h, const Keyring& keys) {
  if (h.visited.empty()) return false;
  auto key = keys.find(h.visited.back());
  if (key == keys.end()) return false;
  return TagsEqual(h.tag, HmacSha256Hex(key->second, h.SigningText()));
}

bool VerifyTokenTag(const PolicyTransferToken& t, const Keyring& keys) {
  auto key = keys.find(t.issuer_as);
  if (key == keys.end()) return false;
  return TagsEqual(t.tag, HmacSha256Hex(key->second, t.SigningText()));
}

}  // namespace pbsa
