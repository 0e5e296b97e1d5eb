#pragma once

#include <cstdint>

#include <boost/multiprecision/cpp_int.hpp>

namespace dynwidth {

using i32 = std::int32_t;
using u32 = std::uint32_t;
using i64 = std::int64_t;
using u64 = std::uint64_t;
using i128 = __int128;

using boost::multiprecision::int256_t;
using boost::multiprecision::int512_t;

// splitmix64 finalizer. Deterministic source of treap priorities and hash
// seeds; no global RNG state anywhere in the library.
constexpr u64 mix64(u64 x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace dynwidth
