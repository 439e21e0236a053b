#pragma once

#include <cstdint>
#include <random>

#include "ophh/complex_matrix.hpp"

namespace ophh {

// SplitMix64 step; advances the state and returns the next word.
std::uint64_t splitmix64(std::uint64_t& state);

// Per-instance seed derived from a master seed. Distinct indices give decorrelated
// streams, so instances can run in any order or in parallel.
std::uint64_t split_seed(std::uint64_t master, std::uint64_t index);

// mt19937_64 engine with hand-rolled uniform and normal transforms. The standard
// distributions are implementation-defined, these are not, so identical seeds give
// identical draws on every toolchain.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    double uniform01();                    // [0, 1)
    double uniform(double lo, double hi);  // [lo, hi)
    double normal();                       // standard normal via Box-Muller
    cdouble complex_normal();              // independent N(0,1) real and imaginary parts

private:
    std::mt19937_64 gen_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

// Haar-distributed unitary: modified Gram-Schmidt of an i.i.d. complex Gaussian
// matrix with one reorthogonalization pass. MGS keeps the implicit R's diagonal
// real positive, which is exactly the phase convention Haar sampling needs.
ComplexMatrix haar_unitary(int n, Rng& rng);

// Uniformly distributed unit vector in C^n.
CVector random_unit_vector(int n, Rng& rng);

}  // namespace ophh
