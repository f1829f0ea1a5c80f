#include "test_support.hpp"

#include <cmath>
#include <complex>

#include "laxcov/bdt.hpp"
#include "laxcov/errors.hpp"
#include "laxcov/rng.hpp"

using namespace laxcov;

namespace {

PointMatrix diagm(std::initializer_list<double> d) {
    int n = static_cast<int>(d.size());
    PointMatrix m = PointMatrix::Zero(n, n);
    int i = 0;
    for (double v : d) m(i, i) = v, ++i;
    return m;
}

const Complex kLambda{0.7, 0.0}, kMu{1.3, 0.0}, kNu{2.1, 0.0};

} // namespace

TEST_CASE("rank one projector from a column and a row") {
    PointMatrix phi = PointMatrix::Zero(3, 1), chi = PointMatrix::Zero(1, 3);
    phi(0, 0) = 1.0;
    chi(0, 0) = 1.0;
    CHECK(sup_abs(projector(phi, chi) - diagm({1.0, 0.0, 0.0})) <= 1e-14);

    PointMatrix phi2 = PointMatrix::Ones(2, 1), chi2 = PointMatrix::Zero(1, 2);
    chi2(0, 0) = 1.0;
    PointMatrix expect(2, 2);
    expect << 1.0, 0.0, 1.0, 0.0;
    CHECK(sup_abs(projector(phi2, chi2) - expect) <= 1e-14);

    Rng rng(3);
    PointMatrix pr = rng.complex_matrix(3).col(0);
    PointMatrix rr = rng.complex_matrix(3).row(0);
    PointMatrix P = projector(pr, rr);
    CHECK(sup_abs(P * P - P) <= 1e-12);

    CHECK_THROWS_AS(projector(phi, chi2), ShapeError);
    PointMatrix ortho = PointMatrix::Zero(1, 3);
    ortho(0, 1) = 1.0;
    CHECK_THROWS_AS(projector(phi, ortho), DegeneracyError);
}

TEST_CASE("evolution maps on matrices") {
    Rng rng(6);
    PointMatrix X = rng.complex_matrix(3);
    CHECK(sup_abs(HSpec::square().apply(X) - X * X) <= 1e-13);
    CHECK(sup_abs(HSpec::cube().apply(X) - X * X * X) <= 1e-12);

    HSpec poly = HSpec::polynomial({{2.0, 0.0}, {0.0, 0.0}, {1.0, 0.0}});
    PointMatrix expect = 2.0 * PointMatrix::Identity(3, 3) + X * X;
    CHECK(sup_abs(poly.apply(X) - expect) <= 1e-13);
    CHECK(poly.commutes_with_argument());
    // any polynomial (and inverse-power) value commutes with its argument
    CHECK(sup_abs(commutator(poly.apply(X), X)) <= 1e-12);

    HSpec with_inv = HSpec::polynomial({{0.0, 0.0}, {1.0, 0.0}});
    with_inv.inv_coeff = Complex{1.0, 0.0};
    PointMatrix Xreg = X + 3.0 * PointMatrix::Identity(3, 3);
    CHECK(sup_abs(with_inv.apply(Xreg) - (Xreg + Xreg.inverse())) <= 1e-12);
    CHECK_THROWS_AS(with_inv.apply(PointMatrix::Zero(2, 2)), SingularityError);

    HSpec two;
    two.two_sided = rng.complex_matrix(3);
    CHECK_FALSE(two.commutes_with_argument());
    CHECK(sup_abs(two.apply(X) - (X * *two.two_sided + *two.two_sided * X)) <= 1e-13);
}

TEST_CASE("scene construction validates its inputs") {
    Rng rng(11);
    PointMatrix rho = rng.hermitian_matrix(3);
    PointMatrix H = diagm({1.0, 0.5, -0.3});
    CHECK_THROWS_AS(make_scene(rho, diagm({1.0, 2.0}), HSpec::square(), kLambda, kMu, kNu),
                    ShapeError);
    CHECK_THROWS_AS(make_scene(rho, H, HSpec::square(), Complex{0.0, 0.0}, kMu, kNu), DomainError);
    CHECK_THROWS_AS(make_scene(rho, H, HSpec::square(), kLambda, kLambda, kNu), DomainError);
}

TEST_CASE("scene seeds satisfy their spectral relations") {
    Rng rng(5);
    PointMatrix rho = rng.hermitian_matrix(3);
    PointMatrix H = diagm({1.0, 0.5, -0.3});
    BdtScene sc = make_scene(rho, H, HSpec::square(), kLambda, kMu, kNu);
    CHECK(sup_abs(sc.chi0 * (rho - kNu * H) - sc.z_nu * sc.chi0) <= 1e-10);
    CHECK(sup_abs(sc.psi0 * (rho - kLambda * H) - sc.z_lambda * sc.psi0) <= 1e-10);
    CHECK(sup_abs((rho - kMu * H) * sc.phi0 - sc.z_mu * sc.phi0) <= 1e-10);
}

TEST_CASE("diagonal data is a fixed point of the flow") {
    // entries chosen so all three eigenvector seeds select the same axis
    // and the chi phi pairing stays away from zero
    BdtScene sc = make_scene(diagm({-1.0, 0.5, 0.9}), diagm({1.0, 0.5, -0.3}), HSpec::square(),
                             kLambda, kMu, kNu);
    auto traj = flow_integrate(sc, 0.5, 1e-3);
    CHECK(sup_abs(traj.back().rho - sc.rho0) <= 1e-12);
}

TEST_CASE("the flow conserves the pairing and the spectrum") {
    Rng rng(5);
    BdtScene sc = make_scene(rng.hermitian_matrix(3), diagm({1.0, 0.5, -0.3}), HSpec::square(),
                             kLambda, kMu, kNu);
    auto traj = flow_integrate(sc, 1.0, 1e-3);
    Complex pair0 = (sc.chi0 * sc.phi0)(0, 0);
    Complex pair1 = (traj.back().chi * traj.back().phi)(0, 0);
    CHECK(std::abs(pair1 - pair0) <= 1e-8);
    // trace of rho and of rho^2 are conserved by the commutator flow
    CHECK(std::abs(traj.back().rho.trace() - sc.rho0.trace()) <= 1e-9);
    CHECK(std::abs((traj.back().rho * traj.back().rho).trace() -
                   (sc.rho0 * sc.rho0).trace()) <= 1e-9);
    // the spectral relation at mu persists along the flow
    const BdtSample& last = traj.back();
    CHECK(sup_abs((last.rho - kMu * sc.H) * last.phi - sc.z_mu * last.phi) <= 1e-7);
}

TEST_CASE("dressing factors invert each other") {
    Rng rng(14);
    PointMatrix phi = rng.complex_matrix(3).col(0);
    PointMatrix chi = rng.complex_matrix(3).row(0);
    ProjectorDressing pd = make_dressing(phi, chi, kMu, kNu, kLambda);
    CHECK(sup_abs(pd.T * pd.Tinv - PointMatrix::Identity(3, 3)) <= 1e-12);
    CHECK(std::abs(pd.c - (kNu - kMu) / (kMu - kLambda)) <= 1e-14);
    PointMatrix P = projector(phi, chi);
    CHECK(sup_abs(pd.T - (PointMatrix::Identity(3, 3) + ((kMu - kNu) / kNu) * P)) <= 1e-12);

    CHECK_THROWS_AS(make_dressing(phi, chi, Complex{0.0, 0.0}, kNu, kLambda), DomainError);
    CHECK_THROWS_AS(make_dressing(phi, chi, kMu, kNu, kMu), DomainError);
}

TEST_CASE("equal inner parameters give the identity dressing") {
    Rng rng(14);
    PointMatrix phi = rng.complex_matrix(3).col(0);
    PointMatrix chi = rng.complex_matrix(3).row(0);
    ProjectorDressing pd = make_dressing(phi, chi, kMu, kMu, kLambda);
    CHECK(sup_abs(pd.T - PointMatrix::Identity(3, 3)) <= 1e-12);
    CHECK(sup_abs(pd.Tinv - PointMatrix::Identity(3, 3)) <= 1e-12);
    CHECK(std::abs(pd.c) <= 1e-14);
}

TEST_CASE("dressed objects are conjugations and projections") {
    Rng rng(5);
    BdtScene sc = make_scene(rng.hermitian_matrix(3), diagm({1.0, 0.5, -0.3}), HSpec::square(),
                             kLambda, kMu, kNu);
    auto traj = flow_integrate(sc, 0.2, 1e-3);
    const BdtSample& s = traj.back();
    DressedObjects d = dress(sc, s);
    CHECK(sup_abs(d.rho1 - d.pd.T * s.rho * d.pd.Tinv) <= 1e-11);
    CHECK(sup_abs(d.h1 - d.pd.T * sc.h.apply(s.rho) * d.pd.Tinv) <= 1e-11);
    PointMatrix expect_psi1 = s.psi * (PointMatrix::Identity(3, 3) + d.pd.c * d.pd.P);
    CHECK(sup_abs(d.psi1 - expect_psi1) <= 1e-11);
}

TEST_CASE("bad flow parameters are rejected") {
    BdtScene sc = make_scene(diagm({-1.0, 0.5, 0.9}), diagm({1.0, 0.5, -0.3}), HSpec::square(),
                             kLambda, kMu, kNu);
    CHECK_THROWS_AS(flow_integrate(sc, 1.0, 0.0), DomainError);
    CHECK_THROWS_AS(flow_integrate(sc, 1.0, -0.5), DomainError);
    CHECK_THROWS_AS(flow_integrate(sc, -1.0, 0.1), DomainError);
}
