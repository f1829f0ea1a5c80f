#ifndef LAXCOV_RNG_HPP
#define LAXCOV_RNG_HPP

#include <cstdint>
#include <random>

#include "laxcov/point_matrix.hpp"

namespace laxcov {

// All randomness goes through one seeded mt19937_64. Doubles are derived from
// raw bits directly (not via std distributions) so the stream is byte-stable
// across standard library implementations.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    double uniform() { // in [0, 1)
        return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    Complex complex_unit_box() { // re, im each in [-1, 1)
        double re = uniform(-1.0, 1.0);
        double im = uniform(-1.0, 1.0);
        return {re, im};
    }

    PointMatrix complex_matrix(int m) {
        PointMatrix a(m, m);
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j) a(i, j) = complex_unit_box();
        return a;
    }

    PointMatrix hermitian_matrix(int m) {
        PointMatrix a = complex_matrix(m);
        return ((a + a.adjoint()) / 2.0).eval();
    }

    std::uint64_t raw() { return gen_(); }

private:
    std::mt19937_64 gen_;
};

} // namespace laxcov

#endif
