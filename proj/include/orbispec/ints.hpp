#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>

namespace orbispec {

// 128-bit signed integers back the exact matrix arithmetic.  All products and
// sums are overflow-checked: at the word lengths used here entries stay far
// below the 127-bit range, so a trip means a bug or an unreasonable request.
// Overflow throws; it never wraps silently.
using i128 = __int128;

inline i128 checked_add(i128 x, i128 y) {
  i128 r;
  if (__builtin_add_overflow(x, y, &r))
    throw std::overflow_error("exact integer matrix entry overflowed 128 bits");
  return r;
}

inline i128 checked_sub(i128 x, i128 y) {
  i128 r;
  if (__builtin_sub_overflow(x, y, &r))
    throw std::overflow_error("exact integer matrix entry overflowed 128 bits");
  return r;
}

inline i128 checked_mul(i128 x, i128 y) {
  i128 r;
  if (__builtin_mul_overflow(x, y, &r))
    throw std::overflow_error("exact integer matrix entry overflowed 128 bits");
  return r;
}

inline i128 iabs(i128 v) { return v < 0 ? -v : v; }

inline std::string to_string(i128 v) {
  if (v == 0) return "0";
  bool neg = v < 0;
  unsigned __int128 u = neg ? -(unsigned __int128)v : (unsigned __int128)v;
  std::string s;
  while (u > 0) {
    s.push_back(char('0' + int(u % 10)));
    u /= 10;
  }
  if (neg) s.push_back('-');
  return std::string(s.rbegin(), s.rend());
}

// splitmix64-style mixing for hashing 128-bit entries
inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

inline std::uint64_t hash_i128(i128 v, std::uint64_t seed) {
  auto u = (unsigned __int128)v;
  seed = mix64(seed ^ (std::uint64_t)u);
  seed = mix64(seed ^ (std::uint64_t)(u >> 64));
  return seed;
}

}  // namespace orbispec
