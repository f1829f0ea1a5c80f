#ifndef LAXCOV_POINT_MATRIX_HPP
#define LAXCOV_POINT_MATRIX_HPP

#include <complex>
#include <Eigen/Dense>

namespace laxcov {

using Complex = std::complex<double>;

// Dense complex matrix value at a single evaluation point. Dimension 1 plays
// the role of the scalar (Abelian) case throughout.
using PointMatrix = Eigen::MatrixXcd;

inline PointMatrix commutator(const PointMatrix& a, const PointMatrix& b) {
    return a * b - b * a;
}

inline PointMatrix anticommutator(const PointMatrix& a, const PointMatrix& b) {
    return a * b + b * a;
}

inline double sup_abs(const PointMatrix& a) {
    return a.cwiseAbs().maxCoeff();
}

inline PointMatrix matrix_power(const PointMatrix& a, int n) {
    PointMatrix r = PointMatrix::Identity(a.rows(), a.cols());
    for (int i = 0; i < n; ++i) r = r * a;
    return r;
}

} // namespace laxcov

#endif
