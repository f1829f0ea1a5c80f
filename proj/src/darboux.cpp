#include "laxcov/darboux.hpp"

#include "laxcov/errors.hpp"

namespace laxcov {

namespace {

double binom(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

} // namespace

DressingSigma sigma_from(const MatrixField& phi) {
    DressingSigma s;
    s.sigma = phi.deriv_x(1) * inverse(phi);
    s.source = phi;
    return s;
}

DressingSigma sigma_direct(const MatrixField& sigma) {
    DressingSigma s;
    s.sigma = sigma;
    return s;
}

MatrixField dt_wavefunction(const MatrixField& psi, const DressingSigma& s) {
    if (s.source && s.source->repr() == psi.repr()) return MatrixField::zero(psi.dim());
    return psi.deriv_x(1) - s.sigma * psi;
}

MatrixField bell_poly(const DressingSigma& s, int n) {
    if (n < 0) throw UsageError("bell_poly: negative order");
    int m = s.sigma.dim();
    MatrixField b = MatrixField::identity(m);
    for (int i = 0; i < n; ++i) b = b.deriv_x(1) + b * s.sigma;
    return b;
}

MatrixField miura_r(const DiffOperator& L, const DressingSigma& s) {
    MatrixField acc = MatrixField::zero(std::max(L.dim(), s.sigma.dim()));
    for (int k = 0; k <= L.degree(); ++k) {
        MatrixField ak = L.coeff(k);
        if (ak.is_zero()) continue;
        acc = acc + ak * bell_poly(s, k);
    }
    return acc;
}

MatrixField miura_residual(const DiffOperator& L, const MatrixField& phi) {
    DressingSigma s = sigma_from(phi);
    MatrixField r = miura_r(L, s);
    return s.sigma.deriv_t() - r.deriv_x(1) - commutator(r, s.sigma);
}

std::array<MatrixField, 4> transform_coeffs_order3(const MatrixField& b0, const MatrixField& b1,
                                                   const MatrixField& b2, const MatrixField& b3,
                                                   const DressingSigma& s) {
    const MatrixField& sg = s.sigma;
    MatrixField sgp = sg.deriv_x(1);
    MatrixField b3n = b3;
    MatrixField b2n = b2 + b3.deriv_x(1);
    MatrixField b1n = b1 + b2.deriv_x(1) + (b3 * sgp).scaled(3.0);
    MatrixField b0n = b0 + b1.deriv_x(1) + sg * b2.deriv_x(1) +
                      (b3 * (sg * sgp + sg.deriv_x(2))).scaled(3.0);
    return {b0n, b1n, b2n, b3n};
}

std::array<MatrixField, 3> transform_coeffs_order2(const MatrixField& a0, const MatrixField& a1,
                                                   const MatrixField& a2, const DressingSigma& s) {
    const MatrixField& sg = s.sigma;
    MatrixField a2n = a2;
    MatrixField a1n = a1 + a2.deriv_x(1);
    MatrixField a0n = a0 + a1.deriv_x(1) + (a2 * sg.deriv_x(1)).scaled(2.0) + sg * a2.deriv_x(1);
    return {a0n, a1n, a2n};
}

DiffOperator transform_operator(const DiffOperator& L, const DressingSigma& s) {
    // Writing D for d/dx and sigma for the dressing field, the dressed
    // operator is fixed by (D - sigma) L = L[1] (D - sigma); expanding both
    // sides and matching powers of D from the top down gives, per order j,
    //   a~_{j-1} = a_{j-1} + a_j' - sigma a_j
    //              + sum_{n>=j} C(n, n-j) a~_n sigma^{(n-j)}.
    const MatrixField& sg = s.sigma;
    int N = L.degree();
    std::vector<MatrixField> out(N + 1, MatrixField::zero(std::max(L.dim(), sg.dim())));
    out[N] = L.coeff(N);
    for (int j = N; j >= 1; --j) {
        MatrixField acc = L.coeff(j - 1) + L.coeff(j).deriv_x(1) - sg * L.coeff(j);
        for (int n = j; n <= N; ++n)
            acc = acc + (out[n] * sg.deriv_x(n - j)).scaled(binom(n, n - j));
        out[j - 1] = acc;
    }
    return DiffOperator(std::move(out));
}

} // namespace laxcov
