#ifndef LAXCOV_DIFFOP_HPP
#define LAXCOV_DIFFOP_HPP

#include <string>
#include <vector>

#include "laxcov/field.hpp"

namespace laxcov {

// Polynomial in the x-differentiation symbol with MatrixField coefficients.
// Coefficients are stored lowest order first: L = sum_k coeff(k) d^k/dx^k.
class DiffOperator {
public:
    DiffOperator();  // zero operator of degree 0, dim 1
    explicit DiffOperator(std::vector<MatrixField> coeffs);

    static DiffOperator identity(int dim);
    static DiffOperator d_dx(int dim, int order = 1);

    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    int dim() const;
    MatrixField coeff(int k) const;  // zero field past the degree

    MatrixField apply(const MatrixField& psi) const;
    DiffOperator deriv_t() const;  // coefficient-wise d/dt
    DiffOperator scaled(Complex c) const;
    bool is_zero() const;

private:
    std::vector<MatrixField> coeffs_;
};

DiffOperator operator+(const DiffOperator& L, const DiffOperator& M);
DiffOperator operator-(const DiffOperator& L, const DiffOperator& M);
DiffOperator compose(const DiffOperator& L, const DiffOperator& M);
DiffOperator commutator_op(const DiffOperator& L, const DiffOperator& M);

// First-order matrix pair over (x, y, t):
//   psi_y = (a0 + a1 d/dx) psi,  psi_t = (b0 + b1 d/dx) psi.
struct ZSPair {
    MatrixField a0, a1, b0, b1;
};

// Five cross-derivative residual fields for a degree-3 / degree-2 operator
// pair (L with b_0..b_3, A with a_0..a_2); all five vanish identically
// exactly when L_t = [A, L] holds and the extra top-order coefficient
// obstruction is absent.
std::vector<MatrixField> lax_compat_residual(const DiffOperator& L, const DiffOperator& A);

// Three residual fields whose simultaneous vanishing is the compatibility of
// the first-order pair above.
std::vector<MatrixField> zs_compat_residual(const ZSPair& p);

// JSON list of coefficient fields, lowest order first.
std::string operator_to_json(const DiffOperator& L);
DiffOperator operator_from_json(const std::string& text);

} // namespace laxcov

#endif
