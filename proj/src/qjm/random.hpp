#pragma once

#include <cstdint>
#include <random>

#include "qjm/core.hpp"

namespace qjm {

// Seeded generator for all sampling in the library: std::mt19937_64 with an
// explicit Marsaglia polar transform for normals, so that streams are fully
// determined by the seed (std::normal_distribution is not portable across
// standard-library implementations).
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    // uniform in [0, 1)
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // index in [0, n)
    std::size_t index(std::size_t n) { return static_cast<std::size_t>(engine_() % n); }

    double normal();
    Complex complex_normal() { return Complex(normal(), normal()); }

    Ket haar_ket(Eigen::Index dim);
    HermitianOperator hermitian(Eigen::Index dim);  // (G + G^dag)/2, G complex Gaussian
    Mat unitary(Eigen::Index dim);                  // QR of a complex Gaussian matrix
    RealVec real_gaussian(Eigen::Index dim);
    RealVec real_unit(Eigen::Index dim);

    static const char* generator_name() { return "mt19937_64+polar"; }

  private:
    std::mt19937_64 engine_;
    bool has_spare_ = false;
    double spare_ = 0;
};

// Derive an independent per-stream seed (SplitMix64 finalizer), so sweep
// instances can be generated in any order or in parallel with identical
// results.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

}  // namespace qjm
