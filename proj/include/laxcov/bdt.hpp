#ifndef LAXCOV_BDT_HPP
#define LAXCOV_BDT_HPP

#include <optional>
#include <vector>

#include "laxcov/point_matrix.hpp"

namespace laxcov {

// Matrix function used on the evolution side. Polynomial coefficients are
// listed lowest power first; an optional X^{-1} coefficient extends the range
// to the inverse-power example; the optional two-sided mode replaces the
// whole map by X -> X A + A X (which no longer commutes with X and is only
// reported on, never asserted).
struct HSpec {
    std::vector<Complex> poly;
    Complex inv_coeff{0.0, 0.0};
    std::optional<PointMatrix> two_sided;

    static HSpec polynomial(std::vector<Complex> coeffs);
    static HSpec square();  // X^2
    static HSpec cube();    // X^3

    PointMatrix apply(const PointMatrix& X) const;
    bool commutes_with_argument() const { return !two_sided.has_value(); }
};

// One dressing setting: the density-type variable rho, the constant H, the
// evolution map h, and three spectral parameters. chi/psi are row solutions
// of z chi = chi (rho - nu H) at nu resp. lambda; phi is a column solution of
// (rho - mu H) phi = z phi. z values are picked deterministically (smallest
// eigenvalue in lexicographic (re, im) order).
struct BdtScene {
    int dim = 0;
    PointMatrix rho0;
    PointMatrix H;
    HSpec h;
    Complex lambda, mu, nu;
    Complex z_lambda, z_mu, z_nu;
    PointMatrix chi0, psi0;  // 1 x dim
    PointMatrix phi0;        // dim x 1
};

BdtScene make_scene(const PointMatrix& rho0, const PointMatrix& H, HSpec h, Complex lambda,
                    Complex mu, Complex nu);

struct BdtSample {
    double t = 0.0;
    PointMatrix rho;
    PointMatrix chi, psi;  // rows
    PointMatrix phi;       // column
};

// Co-integration of
//   rho_t = i [h(rho), H]
//   chi_t = (i/nu) chi h(rho),   psi_t = (i/lambda) psi h(rho)
//   phi_t = -(i/mu) h(rho) phi - i (1/nu - 1/mu) ((chi h(rho) phi)/(chi phi)) phi
// by fixed-step RK4; the scalar correction on phi keeps chi phi constant in t
// without disturbing the projector or the spectral relation at mu.
std::vector<BdtSample> flow_integrate(const BdtScene& scene, double t_end, double h_step);

// P = phi (chi phi)^{-1} chi.
PointMatrix projector(const PointMatrix& phi_col, const PointMatrix& chi_row);

struct ProjectorDressing {
    PointMatrix P;
    PointMatrix T;     // 1 + ((mu - nu)/nu) P
    PointMatrix Tinv;  // 1 + ((nu - mu)/mu) P
    Complex c;         // (nu - mu)/(mu - lambda)
};

ProjectorDressing make_dressing(const PointMatrix& phi_col, const PointMatrix& chi_row,
                                Complex mu, Complex nu, Complex lambda);

struct DressedObjects {
    PointMatrix psi1;  // psi (1 + c P)
    PointMatrix rho1;  // T rho T^{-1}
    PointMatrix h1;    // T h(rho) T^{-1}
    ProjectorDressing pd;
};

DressedObjects dress(const BdtScene& scene, const BdtSample& sample);

} // namespace laxcov

#endif
