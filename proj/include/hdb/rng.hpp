#ifndef HDB_RNG_HPP
#define HDB_RNG_HPP

#include <cstdint>
#include <random>

#include "hdb/rational.hpp"
#include "hdb/signature.hpp"

namespace hdb {

inline uint64_t splitmix64(uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

// Deterministic RNG; trial sub-seeds are derived so that parallel trial
// execution reproduces the serial stream exactly.
class Rng {
  public:
    explicit Rng(uint64_t seed) : gen_(seed) {}

    static Rng for_trial(uint64_t seed, uint64_t trial) {
        return Rng(splitmix64(seed ^ splitmix64(trial + 1)));
    }

    int uniform(int lo, int hi) {  // inclusive
        return std::uniform_int_distribution<int>(lo, hi)(gen_);
    }
    bool coin() { return uniform(0, 1) == 1; }
    // small nonzero integer coefficient
    Rational coeff() {
        int c = uniform(1, 3);
        return Rational(coin() ? c : -c);
    }
    Parity parity() { return coin() ? Parity::odd : Parity::even; }

    std::mt19937_64& raw() { return gen_; }

  private:
    std::mt19937_64 gen_;
};

}  // namespace hdb

#endif
