#include "laxcov/suites.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <limits>
#include <cmath>
#include <iomanip>
#include <sstream>

#include "json.hpp"
#include "laxcov/bdt.hpp"
#include "laxcov/boussinesq.hpp"
#include "laxcov/darboux.hpp"
#include "laxcov/diffop.hpp"
#include "laxcov/errors.hpp"
#include "laxcov/nczs.hpp"
#include "laxcov/rng.hpp"

namespace laxcov {

double tol_of(const Tolerances& t, const std::string& name, double fallback) {
    auto it = t.find(name);
    return it == t.end() ? fallback : it->second;
}

namespace {

PointMatrix unit1(Complex c) {
    PointMatrix m(1, 1);
    m(0, 0) = c;
    return m;
}

ExpTerm sterm(Complex c, Complex k, Complex omega, int p = 0) {
    return ExpTerm{unit1(c), k, omega, Complex{0.0, 0.0}, p};
}

MatrixField scalar_exp(Complex c, Complex k, Complex omega) {
    return exp_sum(1, {sterm(c, k, omega)});
}

// Random m x m exponential-sum field that stays invertible on the standard
// sample window |x| <= 1.2, t in [0, 0.6]: an identity-anchored dominant term
// plus a small second term.
MatrixField random_dominant(Rng& rng, int m, std::vector<ExpTerm>* terms_out = nullptr) {
    double k0 = rng.uniform(0.3, 0.8), k1 = rng.uniform(0.3, 0.8);
    double om0 = rng.uniform(-0.3, 0.3), om1 = rng.uniform(-0.3, 0.3);
    PointMatrix c0 = PointMatrix::Identity(m, m) + (0.15 / m) * rng.complex_matrix(m);
    PointMatrix c1 = (0.1 / m) * rng.complex_matrix(m);
    std::vector<ExpTerm> ts{ExpTerm{c0, k0, om0, {0, 0}, 0}, ExpTerm{c1, k1, om1, {0, 0}, 0}};
    if (terms_out) *terms_out = ts;
    return exp_sum(m, std::move(ts));
}

// Like random_dominant but every term obeys omega = a2 k^2 + a1 k, so the
// field solves psi_t = a2 psi'' + a1 psi'.
MatrixField random_heat_solution(Rng& rng, int m, double a2, double a1, bool dominant) {
    double k0 = rng.uniform(0.3, 0.8), k1 = rng.uniform(0.3, 0.8);
    auto om = [&](double k) { return a2 * k * k + a1 * k; };
    PointMatrix c0 = dominant
                         ? (PointMatrix::Identity(m, m) + (0.15 / m) * rng.complex_matrix(m)).eval()
                         : ((0.6 / m) * rng.complex_matrix(m)).eval();
    PointMatrix c1 = (0.1 / m) * rng.complex_matrix(m);
    return exp_sum(m, {ExpTerm{c0, k0, om(k0), {0, 0}, 0}, ExpTerm{c1, k1, om(k1), {0, 0}, 0}});
}

MatrixField random_coeff_field(Rng& rng, int m) {
    double k = rng.uniform(-0.5, 0.5), om = rng.uniform(-0.5, 0.5);
    PointMatrix c = (0.5 / m) * rng.complex_matrix(m);
    return exp_sum(m, {ExpTerm{c, k, om, {0, 0}, 0}});
}

double op_sup(const DiffOperator& L, const GridSpec& g) {
    double worst = 0.0;
    for (int k = 0; k <= L.degree(); ++k) worst = std::max(worst, sup_on_grid(L.coeff(k), g));
    return worst;
}

std::vector<Complex> sorted_eigs(const PointMatrix& m) {
    Eigen::ComplexEigenSolver<PointMatrix> es(m);
    std::vector<Complex> v(es.eigenvalues().data(),
                           es.eigenvalues().data() + es.eigenvalues().size());
    std::sort(v.begin(), v.end(), [](Complex a, Complex b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });
    return v;
}

// Best-case matching distance between two spectra. The sort in sorted_eigs
// can swap near-degenerate or axis-aligned eigenvalues on rounding noise, so
// the pairing is chosen by minimizing over permutations (dims here are <= 4).
double eig_distance(const std::vector<Complex>& a, const std::vector<Complex>& b) {
    std::vector<std::size_t> idx(a.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    double best = std::numeric_limits<double>::infinity();
    do {
        double worst = 0.0;
        for (std::size_t i = 0; i < a.size(); ++i)
            worst = std::max(worst, std::abs(a[i] - b[idx[i]]));
        best = std::min(best, worst);
    } while (std::next_permutation(idx.begin(), idx.end()));
    return best;
}

double rel_scale(const CovariantModel& m, const PointMatrix& u, const PointMatrix& sigma) {
    return sup_abs(m.apply(u)) + sup_abs(commutator(m.Y, sigma)) + 1.0;
}

} // namespace

// ---------------------------------------------------------------------------
// verify-dt: Bell polynomials, the Miura identity, and coefficient-transform
// covariance on closed-form data.

Report run_verify_dt(std::uint64_t seed, const Tolerances& tols) {
    Report rep("verify-dt", seed);
    Rng rng(seed);
    const GridSpec g{-1.2, 1.2, 25, 0.0, 0.6, 5};
    const GridSpec gwide{-3.0, 3.0, 41, 0.0, 1.0, 5};
    const double bell_tol = tol_of(tols, "bell_identity", 1e-10);
    const double miura_tol = tol_of(tols, "miura", 1e-10);
    const double cov_tol = tol_of(tols, "covariance_end_to_end", 1e-9);

    // Defining property of the Bell recursion: d^n phi = B_n(sigma) phi.
    for (int m = 1; m <= 4; ++m) {
        MatrixField phi = random_dominant(rng, m);
        DressingSigma s = sigma_from(phi);
        double worst = 0.0;
        for (int n = 0; n <= 6; ++n) {
            MatrixField r = phi.deriv_x(n) - bell_poly(s, n) * phi;
            worst = std::max(worst, sup_on_grid(r, g));
        }
        rep.require_le("bell_identity_dim" + std::to_string(m), worst, bell_tol);
    }

    // The transformation annihilates its own dressing function: once through
    // the structural shortcut, once on a freshly rebuilt copy of the data.
    {
        std::vector<ExpTerm> terms;
        MatrixField phi = random_dominant(rng, 3, &terms);
        DressingSigma s = sigma_from(phi);
        double ktol = tol_of(tols, "kernel", 1e-10);
        rep.require_le("kernel_exact", sup_on_grid(dt_wavefunction(phi, s), g), ktol);
        MatrixField rebuilt = exp_sum(3, terms);
        rep.require_le("kernel_rebuilt", sup_on_grid(dt_wavefunction(rebuilt, s), g), ktol);
    }

    // Scalar collapse of B3 and the two equivalent scalar forms of the
    // lowest-coefficient shift.
    {
        MatrixField sig = exp_sum(1, {sterm(0.4, 0.6, -0.2), sterm(0.25, -0.5, 0.3)});
        DressingSigma s = sigma_direct(sig);
        GridSpec gb{-2.0, 2.0, 100, 0.0, 1.0, 10};
        MatrixField ref = sig.deriv_x(2) + (sig * sig.deriv_x(1)).scaled(3.0) + sig * sig * sig;
        rep.require_le("abelian_b3", sup_on_grid(bell_poly(s, 3) - ref, gb),
                       tol_of(tols, "abelian_b3", 1e-12));
        MatrixField lhs = sig * sig.deriv_x(1) + sig.deriv_x(2);
        MatrixField rhs = ((sig * sig).scaled(0.5) + sig.deriv_x(1)).deriv_x(1);
        rep.require_le("b0_shift_two_forms_abelian", sup_on_grid(lhs - rhs, gb),
                       tol_of(tols, "abelian_forms", 1e-12));
    }

    // Miura identity on exact solutions of the flat second-order evolution,
    // matrix dims 1..4.
    {
        const double a2c = 1.0, a1c = 0.3;
        DiffOperator L({MatrixField::zero(1), MatrixField::constant_scalar(a1c),
                        MatrixField::constant_scalar(a2c)});
        for (int m = 1; m <= 4; ++m) {
            MatrixField phi = random_heat_solution(rng, m, a2c, a1c, true);
            rep.require_le("miura_flat_dim" + std::to_string(m),
                           sup_on_grid(miura_residual(L, phi), g), miura_tol);
        }
    }

    // Miura identity for a dressed wavefunction of a nonzero potential.
    {
        const double k0 = 0.9, k3 = -0.4;
        MatrixField phi0 = MatrixField::constant_scalar(1.0) + scalar_exp(1.0, k0, k0 * k0);
        DressingSigma s0 = sigma_from(phi0);
        MatrixField w1 = s0.sigma.deriv_x(1).scaled(2.0);
        DiffOperator L1({w1, MatrixField::zero(1), MatrixField::constant_scalar(1.0)});
        MatrixField psi1 = dt_wavefunction(scalar_exp(1.0, k3, k3 * k3), s0);
        rep.require_le("miura_dressed", sup_on_grid(miura_residual(L1, psi1), gwide), miura_tol);
    }

    // Negative control: a two-term function whose time exponent violates the
    // dispersion of the operator leaves an O(1) residual. (A single pure
    // exponential would not do: its sigma is constant and the residual
    // degenerates to zero for every omega.)
    {
        MatrixField bad = MatrixField::constant_scalar(1.0) + scalar_exp(1.0, 1.0, 5.0);
        DiffOperator L2({MatrixField::zero(1), MatrixField::zero(1),
                         MatrixField::constant_scalar(1.0)});
        rep.require_ge("miura_negative_control", sup_on_grid(miura_residual(L2, bad), gwide),
                       tol_of(tols, "miura_negative_floor", 1e-3));
    }

    // The printed second-order coefficient rule agrees with the general
    // intertwining recursion for constant scalar a2, a1 and any potential.
    {
        MatrixField phi = random_dominant(rng, 2);
        DressingSigma s = sigma_from(phi);
        MatrixField a2f = MatrixField::constant_scalar(1.3);
        MatrixField a1f = MatrixField::constant_scalar(0.4);
        MatrixField w = random_coeff_field(rng, 2);
        auto tc = transform_coeffs_order2(w, a1f, a2f, s);
        DiffOperator A({w, a1f, a2f});
        DiffOperator Ag = transform_operator(A, s);
        double worst = 0.0;
        for (int k = 0; k < 3; ++k) worst = std::max(worst, sup_on_grid(tc[k] - Ag.coeff(k), g));
        rep.require_le("transform_order2_consistency", worst,
                       tol_of(tols, "transform_consistency", 1e-10));
    }

    // End-to-end covariance, order 2 with matrix solutions: if phi and psi
    // solve the same evolution, the transformed psi solves the transformed
    // evolution.
    {
        const double a2c = 1.0, a1c = 0.3;
        MatrixField phi = random_heat_solution(rng, 2, a2c, a1c, true);
        MatrixField psi = random_heat_solution(rng, 2, a2c, a1c, false);
        DressingSigma s = sigma_from(phi);
        MatrixField psi1 = dt_wavefunction(psi, s);
        auto tc = transform_coeffs_order2(MatrixField::zero(1),
                                          MatrixField::constant_scalar(a1c),
                                          MatrixField::constant_scalar(a2c), s);
        DiffOperator A1({tc[0], tc[1], tc[2]});
        rep.require_le("covariance_order2_matrix",
                       sup_on_grid(psi1.deriv_t() - A1.apply(psi1), g), cov_tol);
    }

    // End-to-end covariance, order 3 scalar, printed coefficient rules.
    {
        const double alpha = -0.75;
        auto om3 = [&](double k) { return k * k * k + alpha * k; };
        MatrixField phi = MatrixField::constant_scalar(1.0) + scalar_exp(1.0, 1.1, om3(1.1));
        MatrixField psi = scalar_exp(1.0, 0.5, om3(0.5)) + scalar_exp(0.5, -0.7, om3(-0.7));
        DressingSigma s = sigma_from(phi);
        auto tc = transform_coeffs_order3(MatrixField::zero(1),
                                          MatrixField::constant_scalar(alpha),
                                          MatrixField::zero(1),
                                          MatrixField::constant_scalar(1.0), s);
        DiffOperator L1({tc[0], tc[1], tc[2], tc[3]});
        MatrixField psi1 = dt_wavefunction(psi, s);
        rep.require_le("covariance_order3_abelian",
                       sup_on_grid(psi1.deriv_t() - L1.apply(psi1), gwide), cov_tol);
    }

    // End-to-end covariance, order 3 with a matrix coefficient: the general
    // recursion transforms correctly; the printed scalar-case rule misses the
    // commutator terms and its gap is reported, not asserted.
    {
        const double be1 = 0.5, be2 = -0.3;
        PointMatrix B1 = PointMatrix::Zero(2, 2);
        B1(0, 0) = be1;
        B1(1, 1) = be2;
        auto eterm = [&](int i, int j, double c, double k) {
            PointMatrix C = PointMatrix::Zero(2, 2);
            C(i, j) = c;
            double beta = i == 0 ? be1 : be2;
            return ExpTerm{C, k, k * k * k + beta * k, {0, 0}, 0};
        };
        MatrixField phi =
            exp_sum(2, {eterm(0, 0, 1.0, 0.4), eterm(1, 1, 1.0, 0.6), eterm(0, 1, 0.2, -0.3)});
        MatrixField psi =
            exp_sum(2, {eterm(0, 1, 1.0, 0.7), eterm(1, 0, 1.0, -0.5), eterm(0, 0, 0.3, 0.2)});
        DressingSigma s = sigma_from(phi);
        DiffOperator L({MatrixField::zero(2), MatrixField::constant(B1), MatrixField::zero(2),
                        MatrixField::identity(2)});
        DiffOperator L1 = transform_operator(L, s);
        MatrixField psi1 = dt_wavefunction(psi, s);
        rep.require_le("covariance_order3_matrix",
                       sup_on_grid(psi1.deriv_t() - L1.apply(psi1), g), cov_tol);
        auto tv = transform_coeffs_order3(MatrixField::zero(2), MatrixField::constant(B1),
                                          MatrixField::zero(2), MatrixField::identity(2), s);
        DiffOperator L1v({tv[0], tv[1], tv[2], tv[3]});
        rep.diag("order3_matrix_scalar_rule_gap",
                 sup_on_grid(psi1.deriv_t() - L1v.apply(psi1), g));
    }

    // Operator algebra properties: compose against apply, degree additivity,
    // and the Jacobi identity for the operator commutator.
    {
        auto rnd_op = [&](int deg, int m) {
            std::vector<MatrixField> cs;
            for (int k = 0; k <= deg; ++k) cs.push_back(random_coeff_field(rng, m));
            return DiffOperator(cs);
        };
        DiffOperator L = rnd_op(2, 2), M = rnd_op(1, 2);
        MatrixField psi = random_dominant(rng, 2);
        MatrixField r = compose(L, M).apply(psi) - L.apply(M.apply(psi));
        rep.require_le("compose_apply", sup_on_grid(r, g), tol_of(tols, "compose_apply", 1e-10));
        rep.require_le("compose_degree_additivity",
                       std::abs(compose(L, M).degree() - (L.degree() + M.degree())), 0.0);
        DiffOperator A = rnd_op(2, 2), B = rnd_op(1, 2), C = rnd_op(2, 2);
        DiffOperator jac = commutator_op(commutator_op(A, B), C) +
                           commutator_op(commutator_op(B, C), A) +
                           commutator_op(commutator_op(C, A), B);
        rep.require_le("jacobi_identity", op_sup(jac, g), tol_of(tols, "jacobi", 1e-10));
    }

    return rep;
}

// ---------------------------------------------------------------------------
// verify-bq: one-soliton joint covariance, the depth-3 dressing chain, and
// the third/second order compatibility rows.

Report run_verify_bq(std::uint64_t seed, const Tolerances& tols) {
    Report rep("verify-bq", seed);
    const double cov_tol = tol_of(tols, "covariance", 1e-8);
    const double chain_tol = tol_of(tols, "chain", 1e-8);
    const double miura_tol = tol_of(tols, "miura", 1e-10);
    const double lax_tol = tol_of(tols, "lax_compat", 1e-8);

    BqParams p = BqParams::constants(1.0, 0.0, -0.75);
    const double k1 = std::sqrt(3.0) / 2.0;  // the spectral value vanishes here
    const GridSpec gsol{-10.0, 10.0, 200, 0.0, 1.0, 50};
    const GridSpec glax{-8.0, 8.0, 41, 0.0, 1.0, 9};

    MatrixField w0 = MatrixField::zero(1);
    BqPair pair0 = build_pair(w0, p);
    MatrixField phi = MatrixField::constant_scalar(1.0) +
                      seed_wavefunction(p, Complex{k1, 0.0}, Complex{1.0, 0.0});
    MatrixField psi = seed_wavefunction(p, Complex{-k1, 0.0}, Complex{1.0, 0.0}) +
                      MatrixField::constant_scalar(0.3);

    // Joint covariance of the dressed pair for a second solution.
    CovarianceNorms nrm = pair_covariance_residual(pair0, phi, psi, gsol);
    rep.require_le("soliton_spectral_residual", nrm.spectral, cov_tol);
    rep.require_le("soliton_evolution_residual", nrm.evolution, cov_tol);
    rep.require_le("soliton_lambda_inferred", std::abs(nrm.lambda_psi - p.lambda), cov_tol);

    // Dressed potential: peak value a2 k^2 / 2 at the phase origin, decay to
    // a1' (= 0) far out.
    MatrixField ws = dress_potential(phi, p);
    rep.require_le("soliton_peak", std::abs(ws.eval(0.0, 0.0)(0, 0) - Complex(k1 * k1 / 2.0, 0.0)),
                   tol_of(tols, "peak", 1e-10));
    double tail = 0.0;
    for (double x : {-40.0, 40.0})
        for (double t : {0.0, 1.0}) tail = std::max(tail, std::abs(ws.eval(x, t)(0, 0)));
    rep.require_le("soliton_decay", tail, tol_of(tols, "decay", 1e-8));

    // The dressing function itself is annihilated; both residual norms are
    // exactly zero.
    CovarianceNorms nker = pair_covariance_residual(pair0, phi, phi, gsol);
    rep.require_le("kernel_spectral", nker.spectral, tol_of(tols, "kernel", 1e-12));
    rep.require_le("kernel_evolution", nker.evolution, tol_of(tols, "kernel", 1e-12));

    // Sensitivity: corrupting the transformed potential by +0.1 must show up
    // in the spectral residual.
    DressingSigma s0 = sigma_from(phi);
    MatrixField w1 = chain_step(w0, s0, p);
    {
        MatrixField eps = MatrixField::constant_scalar(0.1).with_primitive_x(
            exp_sum(1, {sterm(0.1, 0.0, 0.0, 1)}));  // primitive 0.1 x
        MatrixField w1c = w1 + eps;
        BqPair pc = build_pair(w1c, p);
        MatrixField psi1 = dt_wavefunction(psi, s0);
        double sp = sup_on_grid(pc.L.apply(psi1) - psi1.scaled(p.lambda), glax);
        rep.require_ge("corrupt_w_sensitivity", sp, tol_of(tols, "corrupt_floor", 1e-3));
    }

    // Compatibility rows of the seed pair and of the dressed pair.
    {
        auto rows0 = lax_compat_residual(pair0.L, pair0.A);
        double worst = 0.0;
        for (const auto& r : rows0) worst = std::max(worst, sup_on_grid(r, glax));
        rep.require_le("lax_rows_seed", worst, lax_tol);
        BqPair pair1 = build_pair(w1, p);
        auto rows1 = lax_compat_residual(pair1.L, pair1.A);
        worst = 0.0;
        for (const auto& r : rows1) worst = std::max(worst, sup_on_grid(r, glax));
        rep.require_le("lax_rows_dressed", worst, lax_tol);
        rep.diag("lowest_coeff_alt_gap", sup_on_grid(lowest_coeff(w1, p) - lowest_coeff_alt(w1, p), glax));
    }

    // Depth-3 chain from exact two-exponential seeds. Each seed pair (ka, kb)
    // satisfies ka^2 + ka kb + kb^2 = 3/4, so both exponents share one
    // spectral value; the window sits left of every chain singularity.
    {
        auto pair_for_sum = [](double sum) {
            double d = std::sqrt(3.0 - 3.0 * sum * sum);
            return std::pair<double, double>{(sum + d) / 2.0, (sum - d) / 2.0};
        };
        auto seed_sum = [&](std::pair<double, double> ks) {
            return seed_wavefunction(p, Complex{ks.first, 0.0}, Complex{1.0, 0.0}) +
                   seed_wavefunction(p, Complex{ks.second, 0.0}, Complex{1.0, 0.0});
        };
        auto pr1 = pair_for_sum(k1);  // (sqrt(3)/2, 0): the one-soliton seed
        auto pr2 = pair_for_sum(0.90);
        auto pr3 = pair_for_sum(0.95);
        MatrixField u1f = seed_sum(pr1), u2f = seed_sum(pr2), u3f = seed_sum(pr3);
        Complex lam1 = seed_eigenvalue(p, Complex{pr1.first, 0.0});
        Complex lam2 = seed_eigenvalue(p, Complex{pr2.first, 0.0});
        Complex lam3 = seed_eigenvalue(p, Complex{pr3.first, 0.0});
        const GridSpec gch{-14.0, -6.0, 41, 0.0, 1.0, 9};

        DressingSigma sg0 = sigma_from(u1f);
        MatrixField w1c = chain_step(w0, sg0, p);
        MatrixField phi2 = dt_wavefunction(u2f, sg0);
        DressingSigma sg1 = sigma_from(phi2);
        MatrixField w2c = chain_step(w1c, sg1, p);
        MatrixField phi3 = dt_wavefunction(dt_wavefunction(u3f, sg0), sg1);
        DressingSigma sg2 = sigma_from(phi3);

        rep.require_le("chain_evolution_level01",
                       sup_on_grid(chain_residual_evolution(sg0, sg1, p), gch), chain_tol);
        rep.require_le("chain_evolution_level12",
                       sup_on_grid(chain_residual_evolution(sg1, sg2, p), gch), chain_tol);
        rep.diag("chain_evolution_printed_variant",
                 sup_on_grid(chain_residual_evolution_variant(sg0, sg1, p), gch));

        rep.require_le("chain_spectral_level0",
                       sup_on_grid(chain_residual_spectral(sg0, w0, p, lam1), gch), chain_tol);
        rep.require_le("chain_spectral_level1",
                       sup_on_grid(chain_residual_spectral(sg1, w1c, p, lam2), gch), chain_tol);
        rep.require_le("chain_spectral_level2",
                       sup_on_grid(chain_residual_spectral(sg2, w2c, p, lam3), gch), chain_tol);

        DiffOperator A0({w0, MatrixField::zero(1), p.a2});
        DiffOperator A1({w1c, MatrixField::zero(1), p.a2});
        DiffOperator A2({w2c, MatrixField::zero(1), p.a2});
        rep.require_le("chain_miura_level0", sup_on_grid(miura_residual(A0, u1f), gch), miura_tol);
        rep.require_le("chain_miura_level1", sup_on_grid(miura_residual(A1, phi2), gch), miura_tol);
        rep.require_le("chain_miura_level2", sup_on_grid(miura_residual(A2, phi3), gch), miura_tol);

        // Two chain steps against the direct two-fold transformation written
        // through the Wronskian of the first two seeds.
        MatrixField wr = u1f * u2f.deriv_x(1) - u1f.deriv_x(1) * u2f;
        MatrixField w2direct =
            ((wr.deriv_x(2) * wr - wr.deriv_x(1) * wr.deriv_x(1)) * inverse(wr * wr)).scaled(2.0);
        rep.require_le("chain_two_step_vs_wronskian", sup_on_grid(w2c - w2direct, gch), chain_tol);
        rep.diag("w2_sample_value", w2c.eval(-10.0, 0.3)(0, 0).real());
    }

    {
        double worst = 0.0;
        for (const auto& [name, value] : params_constraint_residuals(p, glax))
            worst = std::max(worst, value);
        rep.require_le("params_constraints", worst, tol_of(tols, "params", 1e-10));
    }

    return rep;
}

// ---------------------------------------------------------------------------
// verify-zs: covariant symmetric polynomials, the top flow, first-order pair
// compatibility along a trajectory, and the directional-derivative utilities.

Report run_verify_zs(std::uint64_t seed, const Tolerances& tols) {
    Report rep("verify-zs", seed);
    Rng rng(seed);
    const double rel_tol = tol_of(tols, "sympoly_rel", 1e-12);

    // Exact covariance of P_n with Y = H^{n+1}, J = H.
    for (int m : {2, 3, 4}) {
        double worst = 0.0;
        for (int trial = 0; trial < 100; ++trial) {
            PointMatrix H = rng.complex_matrix(m);
            PointMatrix u = rng.complex_matrix(m);
            PointMatrix sg = rng.complex_matrix(m);
            for (int n = 1; n <= 5; ++n) {
                CovariantModel mod = CovariantModel::sym_poly_model(H, n);
                double r = sup_abs(covariance_residual(mod, u, sg)) / rel_scale(mod, u, sg);
                worst = std::max(worst, r);
            }
        }
        rep.require_le("sympoly_covariance_dim" + std::to_string(m), worst, rel_tol);
    }

    // Weighted combinations with beta = [1, 2, 0.5], plus the two-polynomial
    // worked example with its cubic coupling.
    for (int m : {2, 3, 4}) {
        PointMatrix H = rng.complex_matrix(m);
        ComboReport cr = combo_covariance_check(
            {Complex{1.0, 0.0}, Complex{2.0, 0.0}, Complex{0.5, 0.0}}, H, 100, rng, rel_tol);
        rep.require_le("combo_covariance_dim" + std::to_string(m), cr.max_rel_residual, rel_tol);
        if (m == 3) rep.require_le("combo_worked_example", cr.worked_example_rel, rel_tol);
    }

    // Negative control: P_3 with Y = H^3 in place of H^4 must fail for
    // essentially every random draw.
    {
        int hits = 0;
        for (int trial = 0; trial < 100; ++trial) {
            PointMatrix H = rng.complex_matrix(3);
            PointMatrix u = rng.complex_matrix(3);
            PointMatrix sg = rng.complex_matrix(3);
            CovariantModel mod = CovariantModel::sym_poly_model(H, 3);
            mod.Y = matrix_power(H, 3);
            double r = sup_abs(covariance_residual(mod, u, sg)) / rel_scale(mod, u, sg);
            if (r >= 1e-3) ++hits;
        }
        rep.require_ge("wrong_y_control_hits", static_cast<double>(hits),
                       tol_of(tols, "wrong_y_hits", 99.0));
    }

    // Top trajectory: conserved trace powers and eigenvalues, order-4
    // self-convergence. The trajectory draws come from a dedicated
    // sub-generator so the sampled path is pinned by the seed alone, and all
    // start matrices are anti-Hermitian: the flow preserves that cone (its
    // right-hand side is anti-Hermitian there), so the isospectral orbit is
    // compact and every seed gives a bounded path. A Hermitian start leaves
    // its cone immediately and generically grows along the similarity orbit,
    // which amplifies integrator truncation past the bounds at unlucky seeds
    // even though the conservation laws themselves hold for any start.
    Rng trng(seed ^ 0x746f70ULL);
    const Complex iu{0.0, 1.0};
    PointMatrix J = PointMatrix::Zero(3, 3);
    J(0, 0) = 1.0;
    J(1, 1) = 2.0;
    J(2, 2) = 3.0;
    {
        TopState s0{iu * trng.hermitian_matrix(3), J, 0.0};
        auto traj = euler_integrate(s0, 10.0, 1e-3);
        auto tr0 = trace_powers(s0.u, 3);
        auto ev0 = sorted_eigs(s0.u);
        double tdrift = 0.0, edrift = 0.0;
        for (std::size_t i = 0; i < traj.size(); i += 200) {
            auto trk = trace_powers(traj[i].u, 3);
            for (int k = 0; k < 3; ++k) tdrift = std::max(tdrift, std::abs(trk[k] - tr0[k]));
            edrift = std::max(edrift, eig_distance(sorted_eigs(traj[i].u), ev0));
        }
        auto trn = trace_powers(traj.back().u, 3);
        for (int k = 0; k < 3; ++k) tdrift = std::max(tdrift, std::abs(trn[k] - tr0[k]));
        edrift = std::max(edrift, eig_distance(sorted_eigs(traj.back().u), ev0));
        rep.require_le("euler_trace_drift", tdrift, tol_of(tols, "trace_drift", 1e-8));
        rep.require_le("euler_eigenvalue_drift", edrift, tol_of(tols, "eig_drift", 1e-7));
    }
    {
        TopState c0{iu * trng.hermitian_matrix(3), J, 0.0};
        const double h = 0.02;
        auto t1 = euler_integrate(c0, 1.0, h);
        auto t2 = euler_integrate(c0, 1.0, h / 2.0);
        auto tr = euler_integrate(c0, 1.0, h / 8.0);
        double e1 = sup_abs(t1.back().u - tr.back().u);
        double e2 = sup_abs(t2.back().u - tr.back().u);
        double order = std::log2(e1 / e2);
        rep.diag("euler_order_estimate", order);
        rep.require_le("euler_convergence_order", std::abs(order - 4.0),
                       tol_of(tols, "order_window", 0.2));
    }

    // First-order pair compatibility along a flow trajectory, with the
    // potential wrapped as a sampled curve in the second evolution variable.
    std::vector<TopState> straj =
        euler_integrate(TopState{iu * trng.hermitian_matrix(3), J, 0.0}, 10.0, 1e-3);
    {
        std::vector<PointMatrix> samples;
        const int stride = 2;  // 2e-3 spacing keeps the stencil error far below tolerance
        for (std::size_t i = 0; i < straj.size(); i += stride) samples.push_back(straj[i].u);
        MatrixField ucurve = sampled_curve(CurveAxis::Y, 0.0, 1e-3 * stride, std::move(samples));
        MatrixField Jf = MatrixField::constant(J);
        MatrixField J2f = MatrixField::constant((J * J).eval());
        // y-equation coefficients (J u + u J, J^2), t-equation (u, J); the
        // potential sits on the t side so the residual picks up its
        // y-derivative.
        ZSPair zp{Jf * ucurve + ucurve * Jf, J2f, ucurve, Jf};
        auto rows = zs_compat_residual(zp);
        double worst = 0.0;
        for (double y = 0.5; y < 10.0; y += 0.5)
            for (const auto& r : rows) worst = std::max(worst, sup_abs(r.eval(0.0, 0.0, y)));
        rep.require_le("zs_compat_trajectory", worst, tol_of(tols, "zs_compat", 1e-7));
    }

    // Algebraic constraint rows: the identity row at J = H, the collapse of
    // the cubic commutator sum, heredity under the potential transform, and
    // the reduction of the full evolution relation to the top equation.
    {
        PointMatrix H = rng.complex_matrix(3);
        PointMatrix u = rng.complex_matrix(3);
        PointMatrix sg = rng.complex_matrix(3);
        PointMatrix Z = PointMatrix::Zero(3, 3);
        double id_tol = tol_of(tols, "identity_rows", 1e-12);
        auto res = constraint_residuals(u, H, H, Z, Z, Z);
        rep.require_le("constraint_row_j_equals_h", sup_abs(res[1]), id_tol);
        PointMatrix cu = commutator(u, H);
        rep.require_le("constraint_cubic_collapse",
                       sup_abs(cu * u + u * cu - commutator((u * u).eval(), H)), id_tol);
        auto res2 = constraint_residuals(zs_dt_potential(u, H, sg), H, H, Z, Z, Z);
        rep.require_le("dt_heredity_row", sup_abs(res2[1]), id_tol);

        std::size_t i = straj.size() / 2;
        double hfd = 1e-3;
        PointMatrix uy = (straj[i - 2].u - 8.0 * straj[i - 1].u + 8.0 * straj[i + 1].u -
                          straj[i + 2].u) /
                         (12.0 * hfd);
        auto res3 = constraint_residuals(straj[i].u, J, J, Z, Z, uy);
        rep.require_le("evolution_reduces_to_top", sup_abs(res3[2]),
                       tol_of(tols, "top_reduction", 1e-7));
        auto variants = gman2_x_term_variants(J, rng.complex_matrix(3));
        rep.diag("x_term_variant_gap", sup_abs(variants.first - variants.second));
    }

    // Directional derivative: exact for linear maps, first-order accurate for
    // the square; classification of pure-left / pure-right / two-sided action.
    {
        PointMatrix H = rng.complex_matrix(3);
        PointMatrix u = rng.complex_matrix(3);
        PointMatrix hd = rng.complex_matrix(3);
        auto flin = [&](const PointMatrix& v) { return (H * v + v * H).eval(); };
        PointMatrix d1 = frechet_directional(flin, u, hd, 1.0);
        rep.require_le("frechet_linear_exact", sup_abs(d1 - (H * hd + hd * H)),
                       tol_of(tols, "frechet_linear", 1e-12));
        auto fsq = [](const PointMatrix& v) { return (v * v).eval(); };
        PointMatrix d2 = frechet_directional(fsq, u, PointMatrix::Identity(3, 3), 1e-6);
        rep.require_le("frechet_square_step", sup_abs(d2 - 2.0 * u),
                       tol_of(tols, "frechet_step", 1e-5));

        PointMatrix Lm = rng.complex_matrix(3);
        auto cl1 = classify_linear_action(flin, 3);
        auto cl2 = classify_linear_action([&](const PointMatrix& v) { return (Lm * v).eval(); }, 3);
        auto cl3 = classify_linear_action([&](const PointMatrix& v) { return (v * Lm).eval(); }, 3);
        int bad = (cl1.side != ActionSide::TwoSided) + (cl2.side != ActionSide::Left) +
                  (cl3.side != ActionSide::Right);
        rep.require_le("action_classification", static_cast<double>(bad), 0.0);
        rep.diag("two_sided_left_fit_error", cl1.left_err);
    }

    return rep;
}

// ---------------------------------------------------------------------------
// verify-bdt: projector dressing of the density-variable pair along its flow.

namespace {

struct BdtSceneStats {
    double persistence = 0.0, idem = 0.0, tinv = 0.0, pairing_drift = 0.0;
    double trace_drift = 0.0, eig_drift = 0.0, h_commutes = 0.0;
    double dressed_spectral = 0.0, dressed_evolution = 0.0, h1_gap = 0.0, pairing_identity = 0.0;
};

BdtSceneStats bdt_scene_stats(const BdtScene& sc, const std::vector<BdtSample>& traj,
                              double h_step) {
    BdtSceneStats st;
    Complex pair0 = (sc.chi0 * sc.phi0)(0, 0);
    std::vector<Complex> tr0, ev0 = sorted_eigs(sc.rho0);
    for (int k = 1; k <= sc.dim; ++k)
        tr0.push_back(matrix_power(sc.rho0, k).trace());
    auto visit = [&](std::size_t i) {
        const auto& s = traj[i];
        st.persistence = std::max(
            st.persistence, sup_abs(s.chi * (s.rho - sc.nu * sc.H) - sc.z_nu * s.chi));
        st.persistence = std::max(
            st.persistence, sup_abs((s.rho - sc.mu * sc.H) * s.phi - sc.z_mu * s.phi));
        st.persistence = std::max(
            st.persistence, sup_abs(s.psi * (s.rho - sc.lambda * sc.H) - sc.z_lambda * s.psi));
        DressedObjects d = dress(sc, s);
        st.idem = std::max(st.idem, sup_abs(d.pd.P * d.pd.P - d.pd.P));
        st.tinv = std::max(st.tinv, sup_abs(d.pd.T * d.pd.Tinv -
                                            PointMatrix::Identity(sc.dim, sc.dim)));
        st.pairing_drift = std::max(st.pairing_drift, std::abs((s.chi * s.phi)(0, 0) - pair0));
        for (int k = 1; k <= sc.dim; ++k)
            st.trace_drift = std::max(
                st.trace_drift, std::abs(matrix_power(s.rho, k).trace() - tr0[k - 1]));
        st.eig_drift = std::max(st.eig_drift, eig_distance(sorted_eigs(s.rho), ev0));
        PointMatrix hv = sc.h.apply(s.rho);
        if (sc.h.commutes_with_argument())
            st.h_commutes = std::max(st.h_commutes, sup_abs(commutator(hv, s.rho)));
        st.dressed_spectral = std::max(
            st.dressed_spectral,
            sup_abs(d.psi1 * (d.rho1 - sc.lambda * sc.H) - sc.z_lambda * d.psi1));
        st.h1_gap = std::max(st.h1_gap, sup_abs(d.h1 - sc.h.apply(d.rho1)));
        st.pairing_identity = std::max(
            st.pairing_identity, std::abs((sc.z_nu - sc.z_mu) * (s.chi * s.phi)(0, 0) -
                                          (sc.mu - sc.nu) * (s.chi * sc.H * s.phi)(0, 0)));
    };
    for (std::size_t i = 0; i < traj.size(); i += 100) visit(i);
    visit(traj.size() - 1);
    // time derivative of the dressed solution by an order-4 stencil
    for (std::size_t i = 500; i + 2 < traj.size(); i += 500) {
        auto psi1_at = [&](std::size_t j) { return dress(sc, traj[j]).psi1; };
        PointMatrix dnum = (psi1_at(i - 2) - 8.0 * psi1_at(i - 1) + 8.0 * psi1_at(i + 1) -
                            psi1_at(i + 2)) /
                           (12.0 * h_step);
        DressedObjects di = dress(sc, traj[i]);
        PointMatrix rhs = (Complex(0.0, 1.0) / sc.lambda) * (di.psi1 * di.h1);
        st.dressed_evolution = std::max(st.dressed_evolution, sup_abs(dnum - rhs));
    }
    return st;
}

} // namespace

Report run_verify_bdt(std::uint64_t seed, const Tolerances& tols) {
    Report rep("verify-bdt", seed);
    Rng rng(seed);
    PointMatrix H = PointMatrix::Zero(3, 3);
    H(0, 0) = 1.0;
    H(1, 1) = 0.5;
    H(2, 2) = -0.3;
    PointMatrix rho0 = rng.hermitian_matrix(3);
    const Complex la{0.7, 0.0}, mu{1.3, 0.0}, nu{2.1, 0.0};

    const std::pair<const char*, HSpec> cases[] = {{"sq", HSpec::square()},
                                                   {"cube", HSpec::cube()}};
    for (const auto& [name, hs] : cases) {
        BdtScene sc = make_scene(rho0, H, hs, la, mu, nu);
        auto traj = flow_integrate(sc, 5.0, 1e-3);
        BdtSceneStats st = bdt_scene_stats(sc, traj, 1e-3);
        std::string pre(name);
        rep.require_le(pre + "_persistence", st.persistence, tol_of(tols, "persistence", 1e-7));
        rep.require_le(pre + "_projector_idempotent", st.idem, tol_of(tols, "idem", 1e-12));
        rep.require_le(pre + "_dressing_inverse", st.tinv, tol_of(tols, "dressing_inverse", 1e-12));
        rep.require_le(pre + "_pairing_drift", st.pairing_drift, tol_of(tols, "pairing", 1e-8));
        rep.require_le(pre + "_trace_drift", st.trace_drift, tol_of(tols, "trace_drift", 1e-8));
        rep.require_le(pre + "_eigenvalue_drift", st.eig_drift, tol_of(tols, "eig_drift", 1e-8));
        rep.require_le(pre + "_h_commutes", st.h_commutes, tol_of(tols, "h_commutes", 1e-12));
        rep.require_le(pre + "_dressed_spectral", st.dressed_spectral,
                       tol_of(tols, "dressed", 1e-6));
        rep.require_le(pre + "_dressed_evolution", st.dressed_evolution,
                       tol_of(tols, "dressed", 1e-6));
        rep.require_le(pre + "_conjugated_h", st.h1_gap, tol_of(tols, "conjugated_h", 1e-10));
        rep.require_le(pre + "_pairing_identity", st.pairing_identity,
                       tol_of(tols, "pairing_identity", 1e-10));
    }

    // Equal middle parameters make the dressing the identity map.
    {
        BdtScene sc = make_scene(rho0, H, HSpec::square(), la, nu, nu);
        auto traj = flow_integrate(sc, 1.0, 1e-3);
        DressedObjects d = dress(sc, traj.back());
        double r = sup_abs(d.pd.T - PointMatrix::Identity(3, 3));
        r = std::max(r, sup_abs(d.rho1 - traj.back().rho));
        r = std::max(r, sup_abs(d.psi1 - traj.back().psi));
        rep.require_le("identity_dressing", r, tol_of(tols, "identity_dressing", 1e-12));
    }

    // The two-sided evolution map XA + AX no longer commutes with rho; its
    // flow is only reported on.
    {
        HSpec hs;
        hs.two_sided = H;
        BdtScene sc = make_scene(rho0, H, hs, la, mu, nu);
        auto traj = flow_integrate(sc, 1.0, 1e-3);
        double pers = 0.0, tdrift = 0.0;
        std::vector<Complex> tr0;
        for (int k = 1; k <= 3; ++k) tr0.push_back(matrix_power(rho0, k).trace());
        for (std::size_t i = 0; i < traj.size(); i += 250) {
            const auto& s = traj[i];
            pers = std::max(pers, sup_abs(s.chi * (s.rho - sc.nu * H) - sc.z_nu * s.chi));
            for (int k = 1; k <= 3; ++k)
                tdrift = std::max(tdrift,
                                  std::abs(matrix_power(s.rho, k).trace() - tr0[k - 1]));
        }
        rep.diag("two_sided_persistence", pers);
        rep.diag("two_sided_trace_drift", tdrift);
    }

    return rep;
}

Report run_verify_all(std::uint64_t seed, const Tolerances& tols) {
    Report rep("verify-all", seed);
    rep.absorb(run_verify_dt(seed, tols), "dt");
    rep.absorb(run_verify_bq(seed, tols), "bq");
    rep.absorb(run_verify_zs(seed, tols), "zs");
    rep.absorb(run_verify_bdt(seed, tols), "bdt");
    return rep;
}

// ---------------------------------------------------------------------------
// Data emission.

std::string soliton_csv(double k, double a2, double a1, double alpha, const GridSpec& g,
                        double& peak_out) {
    BqParams p = BqParams::constants(a2, a1, alpha);
    MatrixField phi = MatrixField::constant_scalar(1.0) +
                      seed_wavefunction(p, Complex{k, 0.0}, Complex{1.0, 0.0});
    MatrixField ws = dress_potential(phi, p);
    std::ostringstream os;
    os << std::setprecision(17);
    os << "x,t,w\n";
    peak_out = -1e300;
    for (int it = 0; it < g.n_t; ++it) {
        double t = g.t_min + it * g.ht();
        for (int ix = 0; ix < g.n_x; ++ix) {
            double x = g.x_min + ix * g.hx();
            double v = ws.eval(x, t)(0, 0).real();
            peak_out = std::max(peak_out, v);
            os << x << "," << t << "," << v << "\n";
        }
    }
    return os.str();
}

std::string chain_json(int depth, const GridSpec& g) {
    if (depth < 1 || depth > 3)
        throw UsageError("chain: depth must be between 1 and 3 (three exact seed pairs)");
    BqParams p = BqParams::constants(1.0, 0.0, -0.75);
    auto pair_for_sum = [](double sum) {
        double d = std::sqrt(3.0 - 3.0 * sum * sum);
        return std::pair<double, double>{(sum + d) / 2.0, (sum - d) / 2.0};
    };
    const double sums[3] = {std::sqrt(3.0) / 2.0, 0.90, 0.95};

    std::vector<MatrixField> seeds;
    std::vector<Complex> lambdas;
    for (int n = 0; n < depth; ++n) {
        auto ks = pair_for_sum(sums[n]);
        seeds.push_back(seed_wavefunction(p, Complex{ks.first, 0.0}, Complex{1.0, 0.0}) +
                        seed_wavefunction(p, Complex{ks.second, 0.0}, Complex{1.0, 0.0}));
        lambdas.push_back(seed_eigenvalue(p, Complex{ks.first, 0.0}));
    }

    std::vector<DressingSigma> sigmas;
    std::vector<MatrixField> pots{MatrixField::zero(1)};
    for (int n = 0; n < depth; ++n) {
        MatrixField phi = seeds[n];
        for (int j = 0; j < n; ++j) phi = dt_wavefunction(phi, sigmas[j]);
        sigmas.push_back(sigma_from(phi));
        pots.push_back(chain_step(pots.back(), sigmas.back(), p));
    }

    nlohmann::json levels = nlohmann::json::array();
    for (int n = 0; n < depth; ++n) {
        nlohmann::json lv;
        lv["level"] = n;
        lv["spectral_value"] = lambdas[n].real();
        lv["spectral_residual"] =
            sup_on_grid(chain_residual_spectral(sigmas[n], pots[n], p, lambdas[n]), g);
        if (n + 1 < depth)
            lv["evolution_residual"] =
                sup_on_grid(chain_residual_evolution(sigmas[n], sigmas[n + 1], p), g);
        nlohmann::json wrows = nlohmann::json::array();
        for (int it = 0; it < g.n_t; ++it) {
            nlohmann::json row = nlohmann::json::array();
            double t = g.t_min + it * g.ht();
            for (int ix = 0; ix < g.n_x; ++ix) {
                double x = g.x_min + ix * g.hx();
                row.push_back(pots[n + 1].eval(x, t)(0, 0).real());
            }
            wrows.push_back(row);
        }
        lv["potential"] = wrows;
        levels.push_back(lv);
    }
    nlohmann::json out{{"chain_version", 1},
                       {"depth", depth},
                       {"grid",
                        {{"x_min", g.x_min},
                         {"x_max", g.x_max},
                         {"n_x", g.n_x},
                         {"t_min", g.t_min},
                         {"t_max", g.t_max},
                         {"n_t", g.n_t}}},
                       {"levels", levels}};
    return out.dump(2) + "\n";
}

std::string euler_csv(int dim, double y_end, double h, std::uint64_t seed) {
    if (dim < 2) throw UsageError("euler: dim must be at least 2");
    Rng rng(seed);
    PointMatrix J = PointMatrix::Zero(dim, dim);
    for (int i = 0; i < dim; ++i) J(i, i) = static_cast<double>(i + 1);
    TopState s0{rng.hermitian_matrix(dim), J, 0.0};
    auto traj = euler_integrate(s0, y_end, h);
    auto tr0 = trace_powers(s0.u, dim);

    std::ostringstream os;
    os << std::setprecision(17);
    os << "y";
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) os << ",re_u_" << i << "_" << j << ",im_u_" << i << "_" << j;
    for (int k = 1; k <= dim; ++k) os << ",drift_tr_" << k;
    os << "\n";
    std::size_t stride = std::max<std::size_t>(1, traj.size() / 2000);
    for (std::size_t idx = 0; idx < traj.size(); idx += stride) {
        const auto& s = traj[idx];
        os << s.y;
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j < dim; ++j)
                os << "," << s.u(i, j).real() << "," << s.u(i, j).imag();
        auto trk = trace_powers(s.u, dim);
        for (int k = 0; k < dim; ++k) os << "," << std::abs(trk[k] - tr0[k]);
        os << "\n";
    }
    return os.str();
}

std::string bdt_csv(const BdtCliConfig& cfg, const Tolerances& tols, Report& rep) {
    if (cfg.dim < 2) throw UsageError("bdt: dim must be at least 2");
    Rng rng(cfg.seed);
    PointMatrix H = PointMatrix::Zero(cfg.dim, cfg.dim);
    for (int i = 0; i < cfg.dim; ++i)
        H(i, i) = 1.0 - 1.3 * static_cast<double>(i) / static_cast<double>(cfg.dim - 1);
    PointMatrix rho0 = rng.hermitian_matrix(cfg.dim);
    BdtScene sc = make_scene(rho0, H, HSpec::polynomial(cfg.h_poly), cfg.lambda, cfg.mu, cfg.nu);
    auto traj = flow_integrate(sc, cfg.t_end, cfg.h_step);

    std::ostringstream os;
    os << std::setprecision(17);
    os << "t,res_chi,res_phi,res_psi,projector_residual,dressed_spectral,pairing_drift\n";
    Complex pair0 = (sc.chi0 * sc.phi0)(0, 0);
    double pers = 0.0, idem = 0.0, dspec = 0.0;
    std::size_t stride = std::max<std::size_t>(1, traj.size() / 200);
    for (std::size_t i = 0; i < traj.size(); i += stride) {
        const auto& s = traj[i];
        double rc = sup_abs(s.chi * (s.rho - sc.nu * H) - sc.z_nu * s.chi);
        double rp = sup_abs((s.rho - sc.mu * H) * s.phi - sc.z_mu * s.phi);
        double rs = sup_abs(s.psi * (s.rho - sc.lambda * H) - sc.z_lambda * s.psi);
        DressedObjects d = dress(sc, s);
        double ri = sup_abs(d.pd.P * d.pd.P - d.pd.P);
        double rd = sup_abs(d.psi1 * (d.rho1 - sc.lambda * H) - sc.z_lambda * d.psi1);
        double pd = std::abs((s.chi * s.phi)(0, 0) - pair0);
        pers = std::max({pers, rc, rp, rs});
        idem = std::max(idem, ri);
        dspec = std::max(dspec, rd);
        os << s.t << "," << rc << "," << rp << "," << rs << "," << ri << "," << rd << "," << pd
           << "\n";
    }
    rep.require_le("persistence", pers, tol_of(tols, "persistence", 1e-7));
    rep.require_le("projector_idempotent", idem, tol_of(tols, "idem", 1e-12));
    rep.require_le("dressed_spectral", dspec, tol_of(tols, "dressed", 1e-6));
    return os.str();
}

} // namespace laxcov
