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
#ifndef TGIN_CORE_BLOOM_FILTER_HPP_
#define TGIN_CORE_BLOOM_FILTER_HPP_

#include <cstddef>
#include <cstdint>
#include <vector>

namespace tgin {

// Bloom filter over 64-bit keys using double hashing. Never yields a false
// negative for an inserted key.
class BloomFilter {
 public:
  BloomFilter() = default;
  BloomFilter(size_t expected_keys, uint32_t bits_per_key, uint32_t num_hashes);

  void Insert(uint64_t key);
  bool MayContain(uint64_t key) const;

  // (1 - exp(-k n / m))^k for the number of keys inserted so far.
  double DesignFalsePositiveRate() const;

  uint64_t bit_count() const { return num_bits_; }
  uint32_t num_hashes() const { return num_hashes_; }
  size_t inserted() const { return inserted_; }
  bool empty() const { return num_bits_ == 0; }

 private:
  std::vector<uint64_t> words_;
  uint64_t num_bits_ = 0;
  uint32_t num_hashes_ = 0;
  size_t inserted_ = 0;
};

}  // namespace tgin

#endif  // TGIN_CORE_BLOOM_FILTER_HPP_
