#include "laxcov/diffop.hpp"

#include <json.hpp>

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

DiffOperator::DiffOperator() : coeffs_{MatrixField::zero(1)} {}

DiffOperator::DiffOperator(std::vector<MatrixField> coeffs) : coeffs_(std::move(coeffs)) {
    if (coeffs_.empty()) coeffs_.push_back(MatrixField::zero(1));
    int m = 1;
    for (const auto& c : coeffs_) m = std::max(m, c.dim());
    for (const auto& c : coeffs_)
        if (c.dim() != m && c.dim() != 1)
            throw ShapeError("DiffOperator: coefficient dimensions disagree");
    // drop zero leading coefficients so degree() is meaningful
    while (coeffs_.size() > 1 && coeffs_.back().is_zero()) coeffs_.pop_back();
}

DiffOperator DiffOperator::identity(int dim) {
    return DiffOperator({MatrixField::identity(dim)});
}

DiffOperator DiffOperator::d_dx(int dim, int order) {
    if (order < 0) throw UsageError("d_dx: negative order");
    std::vector<MatrixField> c(order + 1, MatrixField::zero(dim));
    c[order] = MatrixField::identity(dim);
    return DiffOperator(std::move(c));
}

int DiffOperator::dim() const {
    int m = 1;
    for (const auto& c : coeffs_) m = std::max(m, c.dim());
    return m;
}

MatrixField DiffOperator::coeff(int k) const {
    if (k < 0) throw UsageError("coeff: negative order");
    if (k >= static_cast<int>(coeffs_.size())) return MatrixField::zero(dim());
    return coeffs_[k];
}

MatrixField DiffOperator::apply(const MatrixField& psi) const {
    MatrixField acc = MatrixField::zero(std::max(dim(), psi.dim()));
    for (int k = 0; k < static_cast<int>(coeffs_.size()); ++k)
        acc = acc + coeffs_[k] * psi.deriv_x(k);
    return acc;
}

DiffOperator DiffOperator::deriv_t() const {
    std::vector<MatrixField> out;
    out.reserve(coeffs_.size());
    for (const auto& c : coeffs_) out.push_back(c.deriv_t());
    return DiffOperator(std::move(out));
}

DiffOperator DiffOperator::scaled(Complex c) const {
    std::vector<MatrixField> out;
    out.reserve(coeffs_.size());
    for (const auto& f : coeffs_) out.push_back(f.scaled(c));
    return DiffOperator(std::move(out));
}

bool DiffOperator::is_zero() const {
    for (const auto& c : coeffs_)
        if (!c.is_zero()) return false;
    return true;
}

DiffOperator operator+(const DiffOperator& L, const DiffOperator& M) {
    int n = std::max(L.degree(), M.degree());
    std::vector<MatrixField> out;
    out.reserve(n + 1);
    for (int k = 0; k <= n; ++k) out.push_back(L.coeff(k) + M.coeff(k));
    return DiffOperator(std::move(out));
}

DiffOperator operator-(const DiffOperator& L, const DiffOperator& M) {
    int n = std::max(L.degree(), M.degree());
    std::vector<MatrixField> out;
    out.reserve(n + 1);
    for (int k = 0; k <= n; ++k) out.push_back(L.coeff(k) - M.coeff(k));
    return DiffOperator(std::move(out));
}

DiffOperator compose(const DiffOperator& L, const DiffOperator& M) {
    // d^k (b psi) = sum_i C(k,i) b^{(i)} psi^{(k-i)}, so
    // (L M)_j = sum over k, l, i with k - i + l = j of C(k,i) a_k b_l^{(i)}.
    int nl = L.degree(), nm = M.degree();
    std::vector<MatrixField> out(nl + nm + 1, MatrixField::zero(std::max(L.dim(), M.dim())));
    for (int k = 0; k <= nl; ++k) {
        MatrixField ak = L.coeff(k);
        if (ak.is_zero()) continue;
        for (int l = 0; l <= nm; ++l) {
            MatrixField bl = M.coeff(l);
            if (bl.is_zero()) continue;
            for (int i = 0; i <= k; ++i) {
                int j = k - i + l;
                out[j] = out[j] + (ak * bl.deriv_x(i)).scaled(binom(k, i));
            }
        }
    }
    return DiffOperator(std::move(out));
}

DiffOperator commutator_op(const DiffOperator& L, const DiffOperator& M) {
    return compose(L, M) - compose(M, L);
}

std::vector<MatrixField> lax_compat_residual(const DiffOperator& L, const DiffOperator& A) {
    if (L.degree() != 3 || A.degree() != 2)
        throw ShapeError("lax_compat_residual: expected degrees 3 and 2");
    MatrixField b0 = L.coeff(0), b1 = L.coeff(1), b2 = L.coeff(2), b3 = L.coeff(3);
    MatrixField a0 = A.coeff(0), a1 = A.coeff(1), a2 = A.coeff(2);
    auto D = [](const MatrixField& f, int n) { return f.deriv_x(n); };
    Complex two{2, 0}, three{3, 0};

    MatrixField r0 = (a2 * D(b3, 1)).scaled(two) - (b3 * D(a2, 1)).scaled(three);

    MatrixField r1 = b3.deriv_t() -
                     (a2 * D(b3, 2) + (a2 * D(b2, 1)).scaled(two) + a1 * D(b3, 1) -
                      (b3 * D(a2, 2)).scaled(three) - (b3 * D(a1, 1)).scaled(three) -
                      (b2 * D(a2, 1)).scaled(two));

    MatrixField r2 = b2.deriv_t() -
                     (a2 * D(b2, 2) + (a2 * D(b1, 1)).scaled(two) + a1 * D(b2, 1) -
                      b3 * D(a2, 3) - b2 * D(a2, 2) - b1 * D(a2, 1) -
                      (b3 * D(a1, 2)).scaled(three) - (b2 * D(a1, 1)).scaled(two) -
                      (b3 * D(a0, 1)).scaled(three));

    MatrixField r3 = b1.deriv_t() -
                     (a2 * D(b1, 2) + a1 * D(b1, 1) - b3 * D(a1, 3) - b2 * D(a1, 2) -
                      b1 * D(a1, 1) - (b3 * D(a0, 2)).scaled(three) -
                      (b2 * D(a0, 1)).scaled(two) + (a2 * D(b0, 1)).scaled(two));

    MatrixField r4 = b0.deriv_t() -
                     (a1 * D(b0, 1) - b1 * D(a0, 1) + a2 * D(b0, 2) - b2 * D(a0, 2) -
                      b3 * D(a0, 3));

    return {r0, r1, r2, r3, r4};
}

std::vector<MatrixField> zs_compat_residual(const ZSPair& p) {
    // cross-differentiating the pair gives A_t - B_y + [A, B] = 0 with
    // A = a0 + a1 d, B = b0 + b1 d; the rows are its coefficients of d^2,
    // d^1, d^0.
    auto Dx = [](const MatrixField& f) { return f.deriv_x(1); };
    MatrixField r1 = commutator(p.a1, p.b1);
    MatrixField r2 = p.a1.deriv_t() - p.b1.deriv_y() + commutator(p.a0, p.b1) +
                     commutator(p.a1, p.b0) + p.a1 * Dx(p.b1) - p.b1 * Dx(p.a1);
    MatrixField r3 = p.a0.deriv_t() - p.b0.deriv_y() + commutator(p.a0, p.b0) +
                     p.a1 * Dx(p.b0) - p.b1 * Dx(p.a0);
    return {r1, r2, r3};
}

std::string operator_to_json(const DiffOperator& L) {
    nlohmann::json doc = nlohmann::json::array();
    for (int k = 0; k <= L.degree(); ++k)
        doc.push_back(nlohmann::json::parse(expsum_to_json(L.coeff(k))));
    return doc.dump(2);
}

DiffOperator operator_from_json(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw UsageError(std::string("operator_from_json: ") + e.what());
    }
    if (!doc.is_array() || doc.empty())
        throw UsageError("operator_from_json: expected a nonempty coefficient list");
    std::vector<MatrixField> coeffs;
    for (const auto& entry : doc) coeffs.push_back(expsum_from_json(entry.dump()));
    return DiffOperator(std::move(coeffs));
}

} // namespace laxcov
