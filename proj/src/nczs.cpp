#include "laxcov/nczs.hpp"

#include <cmath>

#include "laxcov/errors.hpp"

namespace laxcov {

namespace {

void require_square_same(const PointMatrix& a, const PointMatrix& b, const char* where) {
    if (a.rows() != a.cols() || b.rows() != b.cols() || a.rows() != b.rows())
        throw ShapeError(std::string(where) + ": dimension mismatch");
}

} // namespace

PointMatrix sym_poly(const PointMatrix& H, const PointMatrix& u, int n) {
    require_square_same(H, u, "sym_poly");
    if (n < 1) throw UsageError("sym_poly: degree must be positive");
    int m = static_cast<int>(H.rows());
    // powers H^0..H^n once, then the n+1 ordered words
    std::vector<PointMatrix> pw(n + 1);
    pw[0] = PointMatrix::Identity(m, m);
    for (int i = 1; i <= n; ++i) pw[i] = pw[i - 1] * H;
    PointMatrix acc = PointMatrix::Zero(m, m);
    for (int p = 0; p <= n; ++p) acc += pw[n - p] * u * pw[p];
    return acc;
}

CovariantModel CovariantModel::linear_pair(PointMatrix H) {
    CovariantModel m;
    m.kind = ModelKind::LinearPair;
    m.H = H;
    m.J = H;
    m.Y = H * H;
    return m;
}

CovariantModel CovariantModel::sym_poly_model(PointMatrix H, int n) {
    if (n < 1) throw UsageError("sym_poly_model: degree must be positive");
    CovariantModel m;
    m.kind = ModelKind::SymPoly;
    m.H = H;
    m.n = n;
    m.J = H;
    m.Y = matrix_power(H, n + 1);
    return m;
}

CovariantModel CovariantModel::combo(PointMatrix H, std::vector<Complex> betas) {
    if (betas.empty()) throw UsageError("combo: need at least one weight");
    CovariantModel m;
    m.kind = ModelKind::Combo;
    m.H = H;
    m.betas = std::move(betas);
    m.J = H;
    int mm = static_cast<int>(H.rows());
    m.Y = PointMatrix::Zero(mm, mm);
    for (std::size_t i = 0; i < m.betas.size(); ++i)
        m.Y += m.betas[i] * matrix_power(H, static_cast<int>(i) + 2);
    return m;
}

PointMatrix CovariantModel::apply(const PointMatrix& u) const {
    switch (kind) {
        case ModelKind::LinearPair:
            return H * u + u * H;
        case ModelKind::SymPoly:
            return sym_poly(H, u, n);
        case ModelKind::Combo: {
            PointMatrix acc = PointMatrix::Zero(H.rows(), H.cols());
            for (std::size_t i = 0; i < betas.size(); ++i)
                acc += betas[i] * sym_poly(H, u, static_cast<int>(i) + 1);
            return acc;
        }
    }
    throw UsageError("CovariantModel: unknown kind");
}

PointMatrix covariance_residual(const CovariantModel& m, const PointMatrix& u,
                                const PointMatrix& sigma) {
    require_square_same(u, sigma, "covariance_residual");
    return m.apply(u) + commutator(m.Y, sigma) - m.apply(u + commutator(m.J, sigma));
}

ComboReport combo_covariance_check(const std::vector<Complex>& beta, const PointMatrix& H,
                                   int trials, Rng& rng, double tol) {
    int m = static_cast<int>(H.rows());
    CovariantModel model = CovariantModel::combo(H, beta);
    ComboReport rep;
    rep.trials = trials;
    for (int t = 0; t < trials; ++t) {
        PointMatrix u = rng.complex_matrix(m);
        PointMatrix sigma = rng.complex_matrix(m);
        PointMatrix r = covariance_residual(model, u, sigma);
        double scale = sup_abs(model.apply(u)) + sup_abs(commutator(model.Y, sigma)) + 1.0;
        rep.max_rel_residual = std::max(rep.max_rel_residual, sup_abs(r) / scale);

        // worked combination f = Hu + uH + S^2 u + S u S + u S^2 with S = H
        // and the matching Y = H^2 + H^3 (cubic weight equal to the squared
        // linear one)
        PointMatrix S = H;
        auto f = [&](const PointMatrix& v) {
            return H * v + v * H + S * S * v + S * v * S + v * S * S;
        };
        PointMatrix Y = H * H + H * H * H;
        PointMatrix rw = f(u) + commutator(Y, sigma) - f(u + commutator(H, sigma));
        double scale_w = sup_abs(f(u)) + sup_abs(commutator(Y, sigma)) + 1.0;
        rep.worked_example_rel = std::max(rep.worked_example_rel, sup_abs(rw) / scale_w);
    }
    rep.pass = rep.max_rel_residual <= tol && rep.worked_example_rel <= tol;
    return rep;
}

std::vector<PointMatrix> constraint_residuals(const PointMatrix& u, const PointMatrix& H,
                                              const PointMatrix& J, const PointMatrix& u_x,
                                              const PointMatrix& u_t, const PointMatrix& u_y) {
    require_square_same(u, H, "constraint_residuals");
    PointMatrix row_a = commutator(J, u) * H + anticommutator(u, commutator(J, H)) +
                        commutator(u, H) * J;
    PointMatrix row_b = commutator(J, u) * H + commutator(u, H) * J;
    PointMatrix evo = u_y - anticommutator(H, u_t) + commutator(u * u, H) + J * H * u_x +
                      J * u_x * H + H * J * u_x;
    return {row_a, row_b, evo};
}

std::pair<PointMatrix, PointMatrix> gman2_x_term_variants(const PointMatrix& J,
                                                          const PointMatrix& u_x) {
    PointMatrix literal = J * J * u_x + J * u_x * J + J * J * u_x;
    PointMatrix symmetric = J * J * u_x + J * u_x * J + u_x * J * J;
    return {literal, symmetric};
}

PointMatrix euler_rhs(const TopState& s) {
    require_square_same(s.u, s.J, "euler_rhs");
    return commutator(s.J, s.u * s.u);
}

std::vector<TopState> euler_integrate(const TopState& s0, double y_end, double h) {
    if (!(h > 0.0)) throw UsageError("euler_integrate: step must be positive");
    if (!(y_end > s0.y)) throw UsageError("euler_integrate: y_end must exceed the start");
    std::vector<TopState> out;
    long n = std::lround((y_end - s0.y) / h);
    out.reserve(n + 1);
    out.push_back(s0);
    TopState s = s0;
    auto f = [&](const PointMatrix& u) {
        return commutator(s.J, PointMatrix(u * u));
    };
    for (long i = 0; i < n; ++i) {
        PointMatrix k1 = f(s.u);
        PointMatrix k2 = f(s.u + (h / 2) * k1);
        PointMatrix k3 = f(s.u + (h / 2) * k2);
        PointMatrix k4 = f(s.u + h * k3);
        s.u = s.u + (h / 6) * (k1 + 2 * k2 + 2 * k3 + k4);
        s.y += h;
        out.push_back(s);
    }
    return out;
}

std::vector<Complex> trace_powers(const PointMatrix& u, int kmax) {
    std::vector<Complex> out;
    out.reserve(kmax);
    PointMatrix p = u;
    for (int k = 1; k <= kmax; ++k) {
        out.push_back(p.trace());
        if (k < kmax) p = p * u;
    }
    return out;
}

PointMatrix zs_dt_potential(const PointMatrix& u, const PointMatrix& J,
                            const PointMatrix& sigma) {
    require_square_same(u, J, "zs_dt_potential");
    return u + commutator(J, sigma);
}

PointMatrix frechet_directional(const std::function<PointMatrix(const PointMatrix&)>& F,
                                const PointMatrix& u, const PointMatrix& hdir, double eps) {
    if (!(eps > 0.0)) throw UsageError("frechet_directional: eps must be positive");
    return (F(u + eps * hdir) - F(u)) / eps;
}

ActionClassification classify_linear_action(
    const std::function<PointMatrix(const PointMatrix&)>& F, int dim, double tol) {
    int m = dim;
    auto unit = [&](int i, int j) {
        PointMatrix e = PointMatrix::Zero(m, m);
        e(i, j) = Complex{1.0, 0.0};
        return e;
    };
    // candidate left factor: columns of L are F(E_{i0}) e_0
    PointMatrix L = PointMatrix::Zero(m, m);
    for (int i = 0; i < m; ++i) L.col(i) = F(unit(i, 0)).col(0);
    // candidate right factor: rows of R are e_0^T F(E_{0j})
    PointMatrix R = PointMatrix::Zero(m, m);
    for (int j = 0; j < m; ++j) R.row(j) = F(unit(0, j)).row(0);

    ActionClassification out;
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            PointMatrix e = unit(i, j);
            PointMatrix fe = F(e);
            out.left_err = std::max(out.left_err, sup_abs(PointMatrix(fe - L * e)));
            out.right_err = std::max(out.right_err, sup_abs(PointMatrix(fe - e * R)));
        }
    if (out.left_err <= tol)
        out.side = ActionSide::Left;
    else if (out.right_err <= tol)
        out.side = ActionSide::Right;
    else
        out.side = ActionSide::TwoSided;
    return out;
}

} // namespace laxcov
