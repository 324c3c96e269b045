// Fixed 64-bit hashing used everywhere randomness must be reproducible.
// All hash-based partitioners and seed derivation go through these functions,
// so results are identical across platforms, runs and thread schedules.
#pragma once

#include <cstdint>
#include <string_view>

namespace ease {

// splitmix64 finalizer: bijective avalanche on 64 bits.
//   x += 0x9e3779b97f4a7c15
//   x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9
//   x = (x ^ (x >> 27)) * 0x94d049bb133111eb
//   x =  x ^ (x >> 31)
inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Seeded hash of a single value: mix64(x ^ mix64(seed)).
inline std::uint64_t hash_u64(std::uint64_t seed, std::uint64_t x) {
  return mix64(x ^ mix64(seed));
}

// Seeded hash of an ordered pair: chains hash_u64 over both values.
inline std::uint64_t hash_pair(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
  return hash_u64(hash_u64(seed, a), b);
}

// FNV-1a over bytes, then avalanched; used to fold string ids into seeds.
inline std::uint64_t hash_str(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return mix64(h);
}

}  // namespace ease
