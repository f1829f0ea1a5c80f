#include "laxcov/bdt.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <algorithm>
#include <cmath>
#include <sstream>

#include "laxcov/errors.hpp"

namespace laxcov {

namespace {

bool lex_less(Complex a, Complex b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
}

// Left eigenrow of M for the lexicographically smallest eigenvalue: solve the
// right eigenproblem of M^T and transpose back.
void left_eigcut(const PointMatrix& M, Complex& z_out, PointMatrix& row_out, const char* which) {
    Eigen::ComplexEigenSolver<PointMatrix> es(M.transpose());
    if (es.info() != Eigen::Success)
        throw DegeneracyError(std::string("eigen decomposition failed for ") + which);
    const auto& vals = es.eigenvalues();
    int best = 0;
    for (int i = 1; i < vals.size(); ++i)
        if (lex_less(vals(i), vals(best))) best = i;
    z_out = vals(best);
    PointMatrix row = es.eigenvectors().col(best).transpose();
    double scale = sup_abs(M);
    double err = sup_abs(row * M - z_out * row);
    if (err > 1e-8 * (scale + 1.0))
        throw DegeneracyError(std::string("ill-conditioned left eigenvector for ") + which);
    // Deterministic normalization: unit sup norm, first largest entry real
    // positive.
    int arg = 0;
    double mx = 0.0;
    for (int i = 0; i < row.cols(); ++i)
        if (std::abs(row(0, i)) > mx) { mx = std::abs(row(0, i)); arg = i; }
    if (mx == 0.0) throw DegeneracyError(std::string("zero eigenvector for ") + which);
    row /= row(0, arg);
    row_out = row / sup_abs(row);
}

void right_eigcut(const PointMatrix& M, Complex& z_out, PointMatrix& col_out, const char* which) {
    Eigen::ComplexEigenSolver<PointMatrix> es(M);
    if (es.info() != Eigen::Success)
        throw DegeneracyError(std::string("eigen decomposition failed for ") + which);
    const auto& vals = es.eigenvalues();
    int best = 0;
    for (int i = 1; i < vals.size(); ++i)
        if (lex_less(vals(i), vals(best))) best = i;
    z_out = vals(best);
    PointMatrix col = es.eigenvectors().col(best);
    double scale = sup_abs(M);
    double err = sup_abs(M * col - z_out * col);
    if (err > 1e-8 * (scale + 1.0))
        throw DegeneracyError(std::string("ill-conditioned eigenvector for ") + which);
    int arg = 0;
    double mx = 0.0;
    for (int i = 0; i < col.rows(); ++i)
        if (std::abs(col(i, 0)) > mx) { mx = std::abs(col(i, 0)); arg = i; }
    if (mx == 0.0) throw DegeneracyError(std::string("zero eigenvector for ") + which);
    col /= col(arg, 0);
    col_out = col / sup_abs(col);
}

} // namespace

HSpec HSpec::polynomial(std::vector<Complex> coeffs) {
    HSpec s;
    s.poly = std::move(coeffs);
    return s;
}

HSpec HSpec::square() { return polynomial({{0, 0}, {0, 0}, {1, 0}}); }

HSpec HSpec::cube() { return polynomial({{0, 0}, {0, 0}, {0, 0}, {1, 0}}); }

PointMatrix HSpec::apply(const PointMatrix& X) const {
    const int n = static_cast<int>(X.rows());
    if (two_sided) {
        const PointMatrix& A = *two_sided;
        if (A.rows() != n || A.cols() != n)
            throw ShapeError("two-sided evolution map: matrix size mismatch");
        return X * A + A * X;
    }
    PointMatrix out = PointMatrix::Zero(n, n);
    PointMatrix power = PointMatrix::Identity(n, n);
    for (std::size_t k = 0; k < poly.size(); ++k) {
        if (poly[k] != Complex(0, 0)) out += poly[k] * power;
        if (k + 1 < poly.size()) power = power * X;
    }
    if (inv_coeff != Complex(0, 0)) {
        Eigen::FullPivLU<PointMatrix> lu(X);
        if (!lu.isInvertible())
            throw SingularityError("evolution map with inverse power: singular argument");
        out += inv_coeff * lu.inverse();
    }
    return out;
}

BdtScene make_scene(const PointMatrix& rho0, const PointMatrix& H, HSpec h, Complex lambda,
                    Complex mu, Complex nu) {
    if (rho0.rows() != rho0.cols() || H.rows() != H.cols() || rho0.rows() != H.rows())
        throw ShapeError("scene construction: rho0 and H must be square and equal size");
    if (lambda == Complex(0, 0) || mu == Complex(0, 0) || nu == Complex(0, 0))
        throw DomainError("scene construction: spectral parameters must be nonzero");
    if (mu == lambda)
        throw DomainError("scene construction: mu must differ from lambda");
    BdtScene sc;
    sc.dim = static_cast<int>(rho0.rows());
    sc.rho0 = rho0;
    sc.H = H;
    sc.h = std::move(h);
    sc.lambda = lambda;
    sc.mu = mu;
    sc.nu = nu;
    left_eigcut(rho0 - nu * H, sc.z_nu, sc.chi0, "chi (parameter nu)");
    left_eigcut(rho0 - lambda * H, sc.z_lambda, sc.psi0, "psi (parameter lambda)");
    right_eigcut(rho0 - mu * H, sc.z_mu, sc.phi0, "phi (parameter mu)");
    return sc;
}

namespace {

struct FlowState {
    PointMatrix rho, chi, psi, phi;

    FlowState operator+(const FlowState& o) const { return {rho + o.rho, chi + o.chi, psi + o.psi, phi + o.phi}; }
    FlowState scaled(double s) const { return {s * rho, s * chi, s * psi, s * phi}; }
};

FlowState flow_rhs(const BdtScene& sc, const FlowState& s, double t) {
    const Complex i_unit(0.0, 1.0);
    PointMatrix hv = sc.h.apply(s.rho);
    Complex pairing = (s.chi * s.phi)(0, 0);
    if (std::abs(pairing) < 1e-12) {
        std::ostringstream os;
        os << "flow integration: chi phi pairing vanished near t=" << t;
        throw DegeneracyError(os.str());
    }
    Complex corr = -i_unit * (1.0 / sc.nu - 1.0 / sc.mu) * (s.chi * hv * s.phi)(0, 0) / pairing;
    FlowState d;
    d.rho = i_unit * commutator(hv, sc.H);
    d.chi = (i_unit / sc.nu) * (s.chi * hv);
    d.psi = (i_unit / sc.lambda) * (s.psi * hv);
    d.phi = (-i_unit / sc.mu) * (hv * s.phi) + corr * s.phi;
    return d;
}

} // namespace

std::vector<BdtSample> flow_integrate(const BdtScene& scene, double t_end, double h_step) {
    if (h_step <= 0.0) throw DomainError("flow integration: step must be positive");
    long n = std::lround(t_end / h_step);
    if (n < 0) throw DomainError("flow integration: t_end must be nonnegative");
    FlowState s{scene.rho0, scene.chi0, scene.psi0, scene.phi0};
    std::vector<BdtSample> out;
    out.reserve(static_cast<std::size_t>(n) + 1);
    out.push_back({0.0, s.rho, s.chi, s.psi, s.phi});
    for (long k = 0; k < n; ++k) {
        double t = h_step * static_cast<double>(k);
        FlowState k1 = flow_rhs(scene, s, t);
        FlowState k2 = flow_rhs(scene, s + k1.scaled(h_step / 2.0), t + h_step / 2.0);
        FlowState k3 = flow_rhs(scene, s + k2.scaled(h_step / 2.0), t + h_step / 2.0);
        FlowState k4 = flow_rhs(scene, s + k3.scaled(h_step), t + h_step);
        s = s + (k1 + k2.scaled(2.0) + k3.scaled(2.0) + k4).scaled(h_step / 6.0);
        out.push_back({h_step * static_cast<double>(k + 1), s.rho, s.chi, s.psi, s.phi});
    }
    return out;
}

PointMatrix projector(const PointMatrix& phi_col, const PointMatrix& chi_row) {
    if (phi_col.cols() != 1 || chi_row.rows() != 1 || phi_col.rows() != chi_row.cols())
        throw ShapeError("projector: need a column and a row of matching length");
    Complex pairing = (chi_row * phi_col)(0, 0);
    if (std::abs(pairing) < 1e-12)
        throw DegeneracyError("projector: chi phi pairing is numerically zero");
    return (phi_col * chi_row) / pairing;
}

ProjectorDressing make_dressing(const PointMatrix& phi_col, const PointMatrix& chi_row,
                                Complex mu, Complex nu, Complex lambda) {
    if (nu == Complex(0, 0) || mu == Complex(0, 0))
        throw DomainError("dressing: mu and nu must be nonzero");
    if (mu == lambda) throw DomainError("dressing: mu must differ from lambda");
    ProjectorDressing pd;
    pd.P = projector(phi_col, chi_row);
    const int n = static_cast<int>(pd.P.rows());
    PointMatrix I = PointMatrix::Identity(n, n);
    pd.T = I + ((mu - nu) / nu) * pd.P;
    pd.Tinv = I + ((nu - mu) / mu) * pd.P;
    pd.c = (nu - mu) / (mu - lambda);
    return pd;
}

DressedObjects dress(const BdtScene& scene, const BdtSample& sample) {
    DressedObjects d;
    d.pd = make_dressing(sample.phi, sample.chi, scene.mu, scene.nu, scene.lambda);
    const int n = scene.dim;
    d.psi1 = sample.psi * (PointMatrix::Identity(n, n) + d.pd.c * d.pd.P);
    d.rho1 = d.pd.T * sample.rho * d.pd.Tinv;
    d.h1 = d.pd.T * scene.h.apply(sample.rho) * d.pd.Tinv;
    return d;
}

} // namespace laxcov
