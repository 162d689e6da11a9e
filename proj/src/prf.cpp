// Copyright 2026 The DyNo Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "dyno/prf.h"

#include <openssl/evp.h>

#include <cstring>
#include <memory>
#include <vector>

#include "dyno/errors.h"

namespace dyno {

namespace {

constexpr std::size_t kBlockBytes = 16;
// Blocks encrypted per EVP_EncryptUpdate call; amortizes EVP call overhead
// for large expansions without a large fixed buffer.
constexpr std::size_t kBatchBlocks = 512;

struct CtxFree {
  void operator()(EVP_CIPHER_CTX* ctx) const { EVP_CIPHER_CTX_free(ctx); }
};
using CtxPtr = std::unique_ptr<EVP_CIPHER_CTX, CtxFree>;

std::array<std::uint8_t, kBlockBytes> label_digest(const Label& label) {
  std::uint8_t full[32];
  unsigned int len = 0;
  if (EVP_Digest(label.bytes().data(), label.bytes().size(), full, &len,
                 EVP_sha256(), nullptr) != 1 ||
      len != 32) {
    throw Error("SHA-256 digest failed");
  }
  std::array<std::uint8_t, kBlockBytes> out;
  std::memcpy(out.data(), full, kBlockBytes);
  return out;
}

}  // namespace

PrfKey PrfKey::random(Rng& rng) {
  PrfKey key;
  rng.fill_bytes(key.bytes.data(), key.bytes.size());
  return key;
}

Label::Label(std::string bytes) : bytes_(std::move(bytes)) {
  if (bytes_.size() > kMaxBytes) {
    throw RangeError("label exceeds 65535 bytes");
  }
}

RingVector prf_expand(const PrfKey& key, const Label& label, std::size_t m,
                      const Modulus& mod) {
  if (m == 0) throw DimensionError("prf expansion needs m >= 1");

  const std::array<std::uint8_t, kBlockBytes> digest = label_digest(label);

  CtxPtr ctx(EVP_CIPHER_CTX_new());
  if (!ctx || EVP_EncryptInit_ex(ctx.get(), EVP_aes_256_ecb(), nullptr,
                                 key.bytes.data(), nullptr) != 1) {
    throw Error("AES-256 init failed");
  }
  EVP_CIPHER_CTX_set_padding(ctx.get(), 0);

  const std::size_t elem_bytes = mod.element_bytes();
  std::vector<u128> elems(m);

  std::vector<std::uint8_t> in(kBatchBlocks * kBlockBytes);
  std::vector<std::uint8_t> out(kBatchBlocks * kBlockBytes);

  std::size_t done = 0;
  while (done < m) {
    const std::size_t batch =
        m - done < kBatchBlocks ? m - done : kBatchBlocks;
    for (std::size_t b = 0; b < batch; ++b) {
      std::uint8_t* block = in.data() + b * kBlockBytes;
      std::memcpy(block, digest.data(), kBlockBytes);
      // XOR the big-endian counter into the low-order (trailing) bytes.
      std::uint64_t j = done + b;
      for (std::size_t k = 0; j != 0; ++k, j >>= 8) {
        block[kBlockBytes - 1 - k] ^= static_cast<std::uint8_t>(j & 0xff);
      }
    }
    int out_len = 0;
    if (EVP_EncryptUpdate(ctx.get(), out.data(), &out_len, in.data(),
                          static_cast<int>(batch * kBlockBytes)) != 1 ||
        out_len != static_cast<int>(batch * kBlockBytes)) {
      throw Error("AES-256 encryption failed");
    }
    for (std::size_t b = 0; b < batch; ++b) {
      const std::uint8_t* block = out.data() + b * kBlockBytes;
      u128 v = 0;
      for (std::size_t k = 0; k < elem_bytes; ++k) {
        v = (v << 8) | block[k];
      }
      elems[done + b] = mod.reduce(v);
    }
    done += batch;
  }
  return RingVector(std::move(elems), mod);
}

}  // namespace dyno
