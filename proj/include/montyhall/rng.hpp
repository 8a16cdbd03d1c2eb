#pragma once

#include <cstdint>
#include <string>

namespace monty {

// Fixed pseudorandom generator used by every randomized component.
//
// Algorithm: xoshiro256++ (Blackman & Vigna), state expanded from the
// 64-bit seed with splitmix64. Both are pure integer recurrences, so the
// stream is identical on every platform and will not change between
// releases; simulation results quote kGeneratorId so a result can name
// the stream that produced it.
inline constexpr const char* kGeneratorId = "xoshiro256++(splitmix64-seeded)";

inline uint64_t splitmix64(uint64_t& state) {
  uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Seed for shard i of a sharded run: the (i+1)-th splitmix64 output of the
// master seed. Documented so sharded runs can be reproduced externally.
inline uint64_t shard_seed(uint64_t master_seed, int shard_index) {
  uint64_t s = master_seed;
  uint64_t out = 0;
  for (int i = 0; i <= shard_index; ++i) out = splitmix64(s);
  return out;
}

class Rng {
 public:
  explicit Rng(uint64_t seed) {
    uint64_t sm = seed;
    for (auto& word : state_) word = splitmix64(sm);
  }

  uint64_t next_u64() {
    const uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
    const uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  // Uniform double in [0, 1), 53 random bits.
  double next_unit() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

 private:
  static uint64_t rotl(uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
  uint64_t state_[4];
};

}  // namespace monty
