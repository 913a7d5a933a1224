#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "gmlab/polynomial.hpp"

namespace gmlab {

inline uint64_t splitmix64(uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Independent stream seed for item `index` under `master`.
inline uint64_t derive_seed(uint64_t master, uint64_t index) { return splitmix64(splitmix64(master) ^ splitmix64(index + 0x632be59bd9b4e019ULL)); }

class Rng {
public:
    explicit Rng(uint64_t seed) : eng_(seed) {}
    uint64_t next() { return eng_(); }
    double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    int uniform_int(int lo, int hi) { return lo + static_cast<int>(eng_() % static_cast<uint64_t>(hi - lo + 1)); }
    bool coin(double p = 0.5) { return uniform() < p; }
    double draw(const VariableDistribution& d) {
        double u = uniform(), acc = 0.0;
        const auto& s = d.support();
        for (size_t i = 0; i + 1 < s.size(); ++i) {
            acc += s[i].second;
            if (u < acc) return s[i].first;
        }
        return s.back().first;
    }
    std::mt19937_64& engine() { return eng_; }

private:
    std::mt19937_64 eng_;
};

}  // namespace gmlab
