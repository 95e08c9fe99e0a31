#pragma once
#include <cstdint>
#include <vector>

namespace gdc {

// splitmix64; self-contained so that seeded runs are reproducible across
// standard library implementations
struct Rng {
  uint64_t state;
  explicit Rng(uint64_t seed) : state(seed) {}

  uint64_t next() {
    uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // uniform in [0, n), n >= 1
  int below(int n) {
    return (int)(next() % (uint64_t)n);
  }

  bool coin() { return (next() & 1) != 0; }
  int sign() { return coin() ? 1 : -1; }

  template <class T>
  const T& pick(const std::vector<T>& v) {
    return v[below((int)v.size())];
  }
};

}
