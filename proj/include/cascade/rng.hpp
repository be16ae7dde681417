#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace cascade {

// splitmix64; used to derive independent stream seeds from one master seed.
inline uint64_t splitmix64(uint64_t& state) {
  uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline uint64_t derive_seed(uint64_t master, uint64_t stream) {
  uint64_t s = master ^ (0x9e3779b97f4a7c15ULL + stream * 0xbf58476d1ce4e5b9ULL);
  return splitmix64(s);
}

// std::uniform_*_distribution output is implementation-defined; these fixed
// mappings keep seeded runs identical on every platform and stdlib.
inline double uniform_unit(std::mt19937_64& g) {
  return static_cast<double>(g() >> 11) * 0x1.0p-53;
}

inline uint64_t uniform_below(std::mt19937_64& g, uint64_t n) {
  return static_cast<uint64_t>(
      (static_cast<unsigned __int128>(g()) * n) >> 64);
}

template <typename T>
void shuffle_deterministic(std::vector<T>& v, std::mt19937_64& g) {
  for (size_t i = v.size(); i > 1; --i) {
    const size_t j = static_cast<size_t>(uniform_below(g, i));
    std::swap(v[i - 1], v[j]);
  }
}

}  // namespace cascade
