#include "ophh/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace ophh {

std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

std::uint64_t split_seed(std::uint64_t master, std::uint64_t index) {
    std::uint64_t state = master + 0x9E3779B97F4A7C15ull * (index + 1);
    return splitmix64(state);
}

double Rng::uniform01() {
    // Top 53 bits of the engine word, the usual dyadic-in-[0,1) construction.
    return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
}

double Rng::uniform(double lo, double hi) {
    return lo + (hi - lo) * uniform01();
}

double Rng::normal() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    double u1 = uniform01();
    while (u1 <= 0.0) u1 = uniform01();
    const double u2 = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * M_PI * u2;
    spare_ = r * std::sin(a);
    has_spare_ = true;
    return r * std::cos(a);
}

cdouble Rng::complex_normal() { return {normal(), normal()}; }

ComplexMatrix haar_unitary(int n, Rng& rng) {
    if (n <= 0) throw std::invalid_argument("dimension must be positive");
    ComplexMatrix g(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) g(i, j) = rng.complex_normal();

    // Column-wise modified Gram-Schmidt, one extra orthogonalization pass per
    // column for stability at this scale.
    for (int j = 0; j < n; ++j) {
        for (int pass = 0; pass < 2; ++pass) {
            for (int k = 0; k < j; ++k) {
                cdouble proj = 0.0;
                for (int i = 0; i < n; ++i) proj += std::conj(g(i, k)) * g(i, j);
                for (int i = 0; i < n; ++i) g(i, j) -= proj * g(i, k);
            }
        }
        double nrm = 0.0;
        for (int i = 0; i < n; ++i) nrm += std::norm(g(i, j));
        nrm = std::sqrt(nrm);
        if (nrm == 0.0) throw std::runtime_error("degenerate Gaussian draw");
        for (int i = 0; i < n; ++i) g(i, j) /= nrm;
    }
    return g;
}

CVector random_unit_vector(int n, Rng& rng) {
    if (n <= 0) throw std::invalid_argument("dimension must be positive");
    CVector x(static_cast<size_t>(n));
    double nrm = 0.0;
    do {
        for (auto& v : x) v = rng.complex_normal();
        nrm = vec_norm(x);
    } while (nrm == 0.0);
    for (auto& v : x) v /= nrm;
    return x;
}

}  // namespace ophh
