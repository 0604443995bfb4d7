#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace envlab {

// Seeded generator with explicit distributions, so reports are reproducible
// across standard libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    double uniform() {  // [0, 1)
        return std::ldexp(static_cast<double>(gen_()), -64);
    }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    int uniform_int(int lo, int hi) {  // inclusive
        return lo + static_cast<int>(gen_() % static_cast<std::uint64_t>(hi - lo + 1));
    }
    double normal() {
        // Box-Muller; deterministic given the stream
        double u1 = uniform(), u2 = uniform();
        if (u1 <= 0) u1 = 1e-300;
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
    }

private:
    std::mt19937_64 gen_;
};

}  // namespace envlab
