// Copyright 2026 The TGIN Authors.
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
#include "core/bloom_filter.hpp"

#include <algorithm>
#include <cmath>

#include "core/error.hpp"
#include "core/rng.hpp"

namespace tgin {
namespace {

inline uint64_t Reduce(uint64_t x, uint64_t range) {
  return static_cast<uint64_t>((static_cast<unsigned __int128>(x) * range) >> 64);
}

}  // namespace

BloomFilter::BloomFilter(size_t expected_keys, uint32_t bits_per_key,
                         uint32_t num_hashes)
    : num_hashes_(num_hashes) {
  if (bits_per_key == 0 || num_hashes == 0) {
    Fail(ErrorCode::kInvalidParameter,
         "bloom filter needs bits_per_key >= 1 and num_hashes >= 1");
  }
  num_bits_ = std::max<uint64_t>(64, uint64_t{bits_per_key} * expected_keys);
  words_.assign((num_bits_ + 63) / 64, 0);
}

void BloomFilter::Insert(uint64_t key) {
  const uint64_t h1 = SplitMix64(key);
  const uint64_t h2 = SplitMix64(h1 ^ 0xc2b2ae3d27d4eb4fULL) | 1;
  uint64_t h = h1;
  for (uint32_t i = 0; i < num_hashes_; ++i, h += h2) {
    const uint64_t bit = Reduce(h, num_bits_);
    words_[bit >> 6] |= uint64_t{1} << (bit & 63);
  }
  ++inserted_;
}

bool BloomFilter::MayContain(uint64_t key) const {
  if (num_bits_ == 0) return true;
  const uint64_t h1 = SplitMix64(key);
  const uint64_t h2 = SplitMix64(h1 ^ 0xc2b2ae3d27d4eb4fULL) | 1;
  uint64_t h = h1;
  for (uint32_t i = 0; i < num_hashes_; ++i, h += h2) {
    const uint64_t bit = Reduce(h, num_bits_);
    if ((words_[bit >> 6] & (uint64_t{1} << (bit & 63))) == 0) return false;
  }
  return true;
}

double BloomFilter::DesignFalsePositiveRate() const {
  if (num_bits_ == 0) return 1.0;
  const double k = num_hashes_;
  const double fill = 1.0 - std::exp(-k * static_cast<double>(inserted_) /
                                     static_cast<double>(num_bits_));
  return std::pow(fill, k);
}

}  // namespace tgin
