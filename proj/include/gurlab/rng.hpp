// Seedable random source with a fully specified bit stream. std::mt19937_64
// output is pinned by the standard, and the uniform/normal conversions below
// are written out explicitly (std::uniform_real_distribution and
// std::normal_distribution are implementation-defined), so every sequence is
// reproducible from the seed alone, across compilers and platforms.
//
// Substreams: derived with the splitmix64 finalizer from (seed, index), so a
// sweep over indices can be partitioned across threads in any way and still
// produce identical per-index draws.

#pragma once

#include <cstdint>
#include <cmath>
#include <numbers>
#include <random>

#include "gurlab/hilbert.hpp"

namespace gurlab {

// Recorded in every output file that consumed randomness.
inline constexpr const char* kGeneratorId =
    "mt19937_64+boxmuller+splitmix64-substreams/v1";

inline std::uint64_t splitmix64(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    // Independent stream for element `index` of a sweep seeded with `seed`.
    // Results depend only on (seed, index), never on the partitioning.
    static Rng substream(std::uint64_t seed, std::uint64_t index) {
        return Rng(splitmix64(splitmix64(seed) + index));
    }

    std::uint64_t next_u64() { return engine_(); }

    // Uniform in [0, 1) with 53-bit resolution.
    double uniform() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    // Standard normal via Box-Muller; the second deviate of each pair is
    // cached so consecutive calls consume bits deterministically.
    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = uniform();
        while (u1 <= 0.0) u1 = uniform(); // log needs an open interval
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 2.0 * std::numbers::pi * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

    // Standard complex normal (independent real and imaginary parts).
    Complex complex_normal() {
        const double re = normal();
        const double im = normal();
        return Complex(re, im);
    }

    Vec gaussian_vector(Eigen::Index dim) {
        Vec v(dim);
        for (Eigen::Index i = 0; i < dim; ++i) v[i] = complex_normal();
        return v;
    }

    // Row-major fill order, part of the reproducibility contract.
    Mat gaussian_matrix(Eigen::Index rows, Eigen::Index cols) {
        Mat m(rows, cols);
        for (Eigen::Index i = 0; i < rows; ++i)
            for (Eigen::Index j = 0; j < cols; ++j)
                m(i, j) = complex_normal();
        return m;
    }

private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

} // namespace gurlab
