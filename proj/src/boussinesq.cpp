#include "laxcov/boussinesq.hpp"

#include <cmath>
#include <sstream>

#include "laxcov/errors.hpp"

namespace laxcov {

namespace {

Complex scalar_at(const MatrixField& f, double x, double t) { return f.eval(x, t)(0, 0); }

// Antiderivative of f in x: the structural primitive when the field carries
// one (integration constant fixed by the construction that produced it),
// otherwise the vanish-at-x0 closed form.
MatrixField int_x(const MatrixField& f, double x0) {
    if (auto w = f.primitive_x()) return *w;
    return f.antideriv_x(x0);
}

MatrixField int_x_dt(const MatrixField& f, double x0) {
    if (auto w = f.primitive_x()) return w->deriv_t();
    return f.deriv_t().antideriv_x(x0);
}

} // namespace

BqParams BqParams::constants(double a2, double a1, double alpha, double b2, Complex lambda,
                             double x0) {
    BqParams p;
    p.a2 = MatrixField::constant_scalar(a2);
    p.a1 = MatrixField::constant_scalar(a1);
    p.alpha = MatrixField::constant_scalar(alpha);
    p.b2 = MatrixField::constant_scalar(b2);
    p.lambda = lambda;
    p.x0 = x0;
    return p;
}

MatrixField linear_coeff(const MatrixField& w, const BqParams& p) {
    MatrixField inv_a2 = inverse(p.a2);
    return (inv_a2 * w).scaled(1.5 * p.b3) + p.alpha;
}

MatrixField lowest_coeff(const MatrixField& w, const BqParams& p) {
    MatrixField inv_a2 = inverse(p.a2);
    MatrixField inv_a2_sq = inv_a2 * inv_a2;
    MatrixField g = p.b2 * inv_a2 * w;
    g = g + (inv_a2 * w.deriv_x(1)).scaled(0.75 * p.b3);
    g = g + (inv_a2_sq * int_x_dt(w, p.x0)).scaled(0.75 * p.b3);
    g = g - (inv_a2_sq * p.a1 * w).scaled(0.75 * p.b3);
    return g;
}

MatrixField lowest_coeff_alt(const MatrixField& w, const BqParams& p) {
    MatrixField inv_a2 = inverse(p.a2);
    MatrixField inv_a2_sq = inv_a2 * inv_a2;
    MatrixField g = (inv_a2 * w.deriv_x(1)).scaled(1.5 * p.b3);
    g = g + (inv_a2_sq * p.a1.deriv_x(1) * int_x(w, p.x0)).scaled(1.5 * p.b3);
    g = g + (inv_a2_sq * int_x_dt(w, p.x0)).scaled(1.5 * p.b3);
    return g;
}

std::vector<std::pair<std::string, double>> params_constraint_residuals(const BqParams& p,
                                                                        const GridSpec& g) {
    MatrixField burgers =
        p.a1.deriv_t() + p.a2 * p.a1.deriv_x(2) + p.a1 * p.a1.deriv_x(1);
    return {
        {"a1_x", sup_on_grid(p.a1.deriv_x(1), g)},
        {"a2_x", sup_on_grid(p.a2.deriv_x(1), g)},
        {"alpha_x", sup_on_grid(p.alpha.deriv_x(1), g)},
        {"b2_x", sup_on_grid(p.b2.deriv_x(1), g)},
        {"burgers", sup_on_grid(burgers, g)},
    };
}

void check_params(const BqParams& p, const GridSpec& g, double tol) {
    std::ostringstream bad;
    for (const auto& [name, value] : params_constraint_residuals(p, g)) {
        if (!(value <= tol)) bad << " " << name << "=" << value;
    }
    std::string s = bad.str();
    if (!s.empty()) throw ConstraintError("parameter constraints violated:" + s);
}

BqPair build_pair(const MatrixField& w, const BqParams& p) {
    // probe the constraints on a small fixed stencil around x0
    GridSpec probe{p.x0 - 4.0, p.x0 + 4.0, 5, 0.0, 1.0, 3};
    check_params(p, probe);
    MatrixField b3f = MatrixField::constant_scalar(p.b3);
    DiffOperator L({lowest_coeff(w, p), linear_coeff(w, p), p.b2, b3f});
    DiffOperator A({w, p.a1, p.a2});
    return BqPair{L, A, w, p};
}

MatrixField seed_wavefunction(const BqParams& p, Complex k, Complex c) {
    Complex a2 = scalar_at(p.a2, p.x0, 0.0);
    Complex a1 = scalar_at(p.a1, p.x0, 0.0);
    Complex omega = a2 * k * k + a1 * k;
    PointMatrix C(1, 1);
    C(0, 0) = c;
    return exp_sum(1, {ExpTerm{C, k, omega, Complex{0, 0}, 0}});
}

Complex seed_eigenvalue(const BqParams& p, Complex k) {
    Complex b2 = scalar_at(p.b2, p.x0, 0.0);
    Complex alpha = scalar_at(p.alpha, p.x0, 0.0);
    return p.b3 * k * k * k + b2 * k * k + alpha * k;
}

MatrixField dress_potential(const MatrixField& phi, const BqParams& p) {
    if (phi.dim() != 1) throw ShapeError("dress_potential: scalar case only");
    MatrixField num = phi.deriv_x(2) * phi - phi.deriv_x(1) * phi.deriv_x(1);
    MatrixField curvature = num * inverse(phi * phi);  // (ln phi)_xx without logs
    MatrixField ws = p.a1.deriv_x(1) + (p.a2 * curvature).scaled(2.0);
    MatrixField primitive = p.a1 + (p.a2 * (phi.deriv_x(1) * inverse(phi))).scaled(2.0);
    return ws.with_primitive_x(primitive);
}

CovarianceNorms pair_covariance_residual(const BqPair& pair, const MatrixField& phi,
                                         const MatrixField& psi, const GridSpec& g) {
    DressingSigma s = sigma_from(phi);
    MatrixField psi1 = dt_wavefunction(psi, s);

    auto tc = transform_coeffs_order2(pair.w, pair.params.a1, pair.params.a2, s);
    MatrixField w1 = tc[0];
    if (auto prim = pair.w.primitive_x())
        w1 = w1.with_primitive_x(*prim + (pair.params.a2 * s.sigma).scaled(2.0) +
                                 pair.params.a1);
    BqPair dressed = build_pair(w1, pair.params);

    // the spectral value of psi survives the transformation; read it off at
    // the grid centre
    double xc = g.x_min + (g.n_x / 2) * g.hx();
    double tc_ = g.n_t == 1 ? g.t_min : g.t_min + (g.n_t / 2) * g.ht();
    Complex psi_c = psi.eval(xc, tc_)(0, 0);
    if (std::abs(psi_c) < 1e-12)
        throw DegeneracyError("pair_covariance_residual: psi vanishes at the probe point");
    Complex lambda_psi = pair.L.apply(psi).eval(xc, tc_)(0, 0) / psi_c;

    CovarianceNorms out;
    out.lambda_psi = lambda_psi;
    MatrixField r_sp = dressed.L.apply(psi1) - psi1.scaled(lambda_psi);
    MatrixField r_ev = psi1.deriv_t() - dressed.A.apply(psi1);
    out.spectral = sup_on_grid(r_sp, g);
    out.evolution = sup_on_grid(r_ev, g);
    return out;
}

MatrixField chain_step(const MatrixField& w_n, const DressingSigma& s_n, const BqParams& p) {
    MatrixField next = w_n + (p.a2 * s_n.sigma.deriv_x(1)).scaled(2.0) + p.a1.deriv_x(1);
    if (auto prim = w_n.primitive_x())
        next = next.with_primitive_x(*prim + (p.a2 * s_n.sigma).scaled(2.0) + p.a1);
    return next;
}

MatrixField chain_residual_evolution(const DressingSigma& s_n, const DressingSigma& s_np1,
                                     const BqParams& p) {
    const MatrixField& s0 = s_n.sigma;
    const MatrixField& s1 = s_np1.sigma;
    MatrixField q0 = s0 * s0 + s0.deriv_x(1);
    MatrixField q1 = s1 * s1 + s1.deriv_x(1);
    return (s1.deriv_t() - s0.deriv_t()) - p.a2 * (q1 - q0).deriv_x(1) -
           (p.a1 * (s1 - s0)).deriv_x(1) - (p.a2 * s0.deriv_x(2)).scaled(2.0) -
           p.a1.deriv_x(2);
}

MatrixField chain_residual_evolution_variant(const DressingSigma& s_n,
                                             const DressingSigma& s_np1, const BqParams& p) {
    const MatrixField& s0 = s_n.sigma;
    const MatrixField& s1 = s_np1.sigma;
    MatrixField q0 = s0 * s0 - s0.deriv_x(1);
    MatrixField q1 = s1 * s1 - s1.deriv_x(1);
    return (s1.deriv_t() - s0.deriv_t()) - p.a2 * (q1 - q0).deriv_x(1) -
           (p.a1 * (s1 - s0)).deriv_x(1) - (p.a2 * s0.deriv_x(2)).scaled(2.0) -
           p.a1.deriv_x(2);
}

MatrixField chain_residual_spectral(const DressingSigma& s_n, const MatrixField& w_n,
                                    const BqParams& p, Complex c_n) {
    MatrixField b1 = linear_coeff(w_n, p);
    MatrixField b0 = lowest_coeff(w_n, p);
    MatrixField r = bell_poly(s_n, 3).scaled(p.b3) + p.b2 * bell_poly(s_n, 2) +
                    b1 * s_n.sigma + b0 - MatrixField::constant_scalar(c_n);
    return r;
}

} // namespace laxcov
