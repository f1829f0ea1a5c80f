#ifndef LAXCOV_DARBOUX_HPP
#define LAXCOV_DARBOUX_HPP

#include <array>
#include <optional>

#include "laxcov/diffop.hpp"
#include "laxcov/field.hpp"

namespace laxcov {

// sigma = phi_x phi^{-1} for a chosen dressing function phi; sigma may also be
// supplied directly when no phi is at hand (chain residual evaluation).
struct DressingSigma {
    MatrixField sigma;
    std::optional<MatrixField> source;
};

DressingSigma sigma_from(const MatrixField& phi);
DressingSigma sigma_direct(const MatrixField& sigma);

// psi -> psi' - sigma psi.
MatrixField dt_wavefunction(const MatrixField& psi, const DressingSigma& s);

// B_0 = 1, B_{n+1} = B_n' + B_n sigma; satisfies d^n phi = B_n phi.
MatrixField bell_poly(const DressingSigma& s, int n);

// r = sum_k a_k B_k(sigma) for L = sum_k a_k d^k.
MatrixField miura_r(const DiffOperator& L, const DressingSigma& s);

// sigma_t - (r)' - [r, sigma] with sigma from phi; vanishes iff phi solves
// psi_t = L psi.
MatrixField miura_residual(const DiffOperator& L, const MatrixField& phi);

// Fixed-form coefficient transforms for operators of order 3 and 2.
// Returns lowest order first. These are the hand bookkeeping rules for
// scalar-in-x leading data; transform_operator below is the general rule.
std::array<MatrixField, 4> transform_coeffs_order3(const MatrixField& b0, const MatrixField& b1,
                                                   const MatrixField& b2, const MatrixField& b3,
                                                   const DressingSigma& s);
std::array<MatrixField, 3> transform_coeffs_order2(const MatrixField& a0, const MatrixField& a1,
                                                   const MatrixField& a2, const DressingSigma& s);

// Coefficient transform of any-order L under psi -> psi' - sigma psi, valid
// for noncommutative coefficients: the unique same-degree operator matching
// (D - sigma) L = L[1] (D - sigma) in every derivative order above zero.
// The leftover order-zero row is a constraint on sigma (the Miura identity),
// not on L[1], and is checked separately by miura_residual.
DiffOperator transform_operator(const DiffOperator& L, const DressingSigma& s);

} // namespace laxcov

#endif
