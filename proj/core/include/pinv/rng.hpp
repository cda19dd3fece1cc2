#pragma once

#include <cstdint>
#include <random>

namespace pinv {

/// splitmix64 step; used to derive independent streams from (seed, ids...).
inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Deterministic stream seed from a base seed and any number of indices.
/// Results do not depend on evaluation order or scheduling.
template <typename... Ids>
std::uint64_t derive_seed(std::uint64_t seed, Ids... ids) {
  std::uint64_t state = seed ^ 0xd1b54a32d192ed03ULL;
  ((state = splitmix64(state) ^ static_cast<std::uint64_t>(ids),
    state = splitmix64(state)),
   ...);
  return splitmix64(state);
}

using Rng = std::mt19937_64;

inline Rng make_rng(std::uint64_t stream_seed) { return Rng(stream_seed); }

}  // namespace pinv
