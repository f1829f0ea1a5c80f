#include "test_support.hpp"

#include <cmath>
#include <complex>
#include <vector>

#include "laxcov/field.hpp"
#include "laxcov/rng.hpp"

using namespace laxcov;

namespace {

MatrixField scalar_term(Complex c, Complex k, Complex omega = {0.0, 0.0}, int p = 0) {
    PointMatrix C(1, 1);
    C(0, 0) = c;
    return exp_sum(1, {ExpTerm{C, k, omega, Complex{0.0, 0.0}, p}});
}

double sup_diff_at_points(const MatrixField& f, const MatrixField& g,
                          const std::vector<Point>& pts) {
    double worst = 0.0;
    for (const auto& p : pts) {
        PointMatrix d = f.eval(p.x, p.t, p.y) - g.eval(p.x, p.t, p.y);
        worst = std::max(worst, sup_abs(d));
    }
    return worst;
}

const std::vector<Point> kProbe = {
    {0.0, 0.0, 0.0}, {0.37, 0.21, 0.0}, {-1.1, 0.8, 0.0}, {2.4, -0.6, 0.0}, {-0.05, 1.7, 0.0}};

} // namespace

TEST_CASE("exponential sum derivatives are exact") {
    Complex k{2.0, 1.0}, omega{3.0, -0.5};
    PointMatrix C(2, 2);
    C << Complex{1.0, 0.0}, Complex{0.0, 2.0}, Complex{-0.5, 0.3}, Complex{0.7, 0.0};
    MatrixField f = exp_sum(2, {ExpTerm{C, k, omega, Complex{0.0, 0.0}, 0}});
    for (const auto& p : kProbe) {
        Complex e = std::exp(k * p.x + omega * p.t);
        CHECK(sup_abs(f.eval(p.x, p.t) - e * C) <= 1e-12 * std::abs(e));
        CHECK(sup_abs(f.deriv_x(2).eval(p.x, p.t) - k * k * e * C) <= 1e-11 * std::abs(e));
        CHECK(sup_abs(f.deriv_t().eval(p.x, p.t) - omega * e * C) <= 1e-11 * std::abs(e));
        PointMatrix mixed = f.deriv(Orders{1, 1, 0}).eval(p.x, p.t);
        CHECK(sup_abs(mixed - k * omega * e * C) <= 1e-11 * std::abs(e));
    }
}

TEST_CASE("polynomial factors differentiate by the product rule") {
    // f = x^2 e^x, f' = (x^2 + 2x) e^x
    MatrixField f = scalar_term({1.0, 0.0}, {1.0, 0.0}, {0.0, 0.0}, 2);
    for (double x : {0.0, 0.7, -1.3, 2.2}) {
        double expect = (x * x + 2.0 * x) * std::exp(x);
        CHECK(std::abs(f.deriv_x().eval(x, 0.0)(0, 0) - expect) <= 1e-12 * (1.0 + std::abs(expect)));
    }
}

TEST_CASE("antiderivative of exp(2x) vanishing at zero") {
    MatrixField f = scalar_term({1.0, 0.0}, {2.0, 0.0});
    MatrixField F = f.antideriv_x(0.0);
    CHECK(std::abs(F.eval(0.0, 0.0)(0, 0)) <= 1e-14);
    for (double x : {0.5, 1.0, -0.8, 2.0}) {
        Complex expect = (std::exp(Complex{2.0, 0.0} * x) - 1.0) / 2.0;
        CHECK(std::abs(F.eval(x, 0.0)(0, 0) - expect) <= 1e-12 * (1.0 + std::abs(expect)));
    }
}

TEST_CASE("x derivative undoes the x antiderivative on exponential sums") {
    PointMatrix C1(1, 1), C2(1, 1), C3(1, 1);
    C1(0, 0) = Complex{0.8, 0.1};
    C2(0, 0) = Complex{-0.4, 0.0};
    C3(0, 0) = Complex{0.25, 0.0};
    MatrixField f = exp_sum(1, {ExpTerm{C1, {1.3, 0.4}, {0.2, 0.0}, {0.0, 0.0}, 1},
                                ExpTerm{C2, {-0.7, 0.0}, {0.0, 0.0}, {0.0, 0.0}, 0},
                                ExpTerm{C3, {0.0, 0.0}, {1.0, 0.0}, {0.0, 0.0}, 2}});
    MatrixField g = f.antideriv_x(0.3).deriv_x();
    GridSpec spec{-2.0, 2.0, 41, 0.0, 1.0, 5};
    CHECK(sup_on_grid(g - f, spec) <= 1e-10);
    // and the antiderivative really vanishes at the base point
    CHECK(sup_abs(f.antideriv_x(0.3).eval(0.3, 0.7)) <= 1e-12);
}

TEST_CASE("x derivative undoes the x antiderivative on grid samples") {
    GridSpec spec{0.0, 1.0, 1001, 0.0, 1.0, 2};
    auto fn = [](double x, double t) {
        PointMatrix v(1, 1);
        v(0, 0) = Complex{std::sin(3.0 * x) * (1.0 + 0.5 * t), std::cos(2.0 * x)};
        return v;
    };
    MatrixField f = grid_sample(spec, fn, 1);
    MatrixField g = f.antideriv_x(0.0).deriv_x();
    CHECK(sup_on_grid(g - f, spec) <= 1e-5);
}

TEST_CASE("commutator of a field with itself vanishes") {
    Rng rng(17);
    PointMatrix A = rng.complex_matrix(3), B = rng.complex_matrix(3);
    MatrixField f = exp_sum(3, {ExpTerm{A, {0.5, 0.0}, {0.1, 0.0}, {0.0, 0.0}, 0},
                                ExpTerm{B, {-0.2, 0.3}, {0.0, 0.0}, {0.0, 0.0}, 1}});
    CHECK(sup_diff_at_points(commutator(f, f), MatrixField::zero(3), kProbe) <= 1e-13);
}

TEST_CASE("commutator is bilinear and antisymmetric") {
    Rng rng(23);
    auto rnd = [&](Complex k) {
        return exp_sum(2, {ExpTerm{rng.complex_matrix(2), k, {0.0, 0.0}, {0.0, 0.0}, 0}});
    };
    MatrixField f = rnd({0.4, 0.0}), g = rnd({-0.3, 0.2}), h = rnd({0.1, 0.0});
    CHECK(sup_diff_at_points(commutator(f, g + h), commutator(f, g) + commutator(f, h), kProbe) <=
          1e-12);
    CHECK(sup_diff_at_points(commutator(f, g), -commutator(g, f), kProbe) <= 1e-12);
    Complex c{2.0, -1.0};
    CHECK(sup_diff_at_points(commutator(c * f, g), c * commutator(f, g), kProbe) <= 1e-12);
}

TEST_CASE("scalar operands broadcast through products") {
    MatrixField s = scalar_term({2.0, 1.0}, {1.0, 0.0});
    PointMatrix M(3, 3);
    M.setZero();
    M(0, 1) = Complex{1.0, 0.0};
    M(2, 2) = Complex{0.0, -3.0};
    MatrixField f = MatrixField::constant(M);
    for (const auto& p : kProbe) {
        Complex sv = s.eval(p.x, p.t)(0, 0);
        CHECK(sup_abs((s * f).eval(p.x, p.t) - sv * M) <= 1e-12 * std::abs(sv) * 3.0);
        CHECK(sup_abs((f * s).eval(p.x, p.t) - sv * M) <= 1e-12 * std::abs(sv) * 3.0);
    }
}

TEST_CASE("product rule holds for matrix products") {
    Rng rng(5);
    MatrixField f = exp_sum(2, {ExpTerm{rng.complex_matrix(2), {0.6, 0.0}, {0.3, 0.0}, {0.0, 0.0}, 0}});
    MatrixField g = exp_sum(2, {ExpTerm{rng.complex_matrix(2), {-0.2, 0.1}, {0.0, 0.4}, {0.0, 0.0}, 1}});
    MatrixField lhs = (f * g).deriv_x();
    MatrixField rhs = f.deriv_x() * g + f * g.deriv_x();
    CHECK(sup_diff_at_points(lhs, rhs, kProbe) <= 1e-11);
}

TEST_CASE("restriction freezes the x coordinate") {
    MatrixField f = scalar_term({1.0, 0.0}, {2.0, 0.0}, {1.0, 0.0});
    MatrixField r = restrict_x(f, 0.5);
    for (const auto& p : kProbe) {
        CHECK(std::abs(r.eval(p.x, p.t)(0, 0) - f.eval(0.5, p.t)(0, 0)) <= 1e-13);
        CHECK(std::abs(r.deriv_x().eval(p.x, p.t)(0, 0)) == 0.0);
    }
    // t-derivative acts on the frozen slice
    CHECK(std::abs(r.deriv_t().eval(1.0, 0.2)(0, 0) - f.deriv_t().eval(0.5, 0.2)(0, 0)) <= 1e-13);
}

TEST_CASE("coordinate field behaves as x times identity") {
    MatrixField x2 = coordinate_x(2);
    CHECK(sup_abs(x2.eval(1.7, 0.0) - 1.7 * PointMatrix::Identity(2, 2)) <= 1e-15);
    CHECK(sup_abs(x2.deriv_x().eval(0.3, 0.9) - PointMatrix::Identity(2, 2)) <= 1e-15);
    CHECK(sup_abs(x2.deriv_x(2).eval(0.3, 0.9)) == 0.0);
}

TEST_CASE("pointwise inverse satisfies the derivative identity") {
    Rng rng(31);
    PointMatrix E = 0.2 * rng.complex_matrix(2);
    MatrixField f = MatrixField::identity(2) +
                    exp_sum(2, {ExpTerm{E, {0.3, 0.0}, {0.1, 0.0}, {0.0, 0.0}, 0}});
    MatrixField finv = inverse(f);
    for (const auto& p : kProbe) {
        PointMatrix prod = f.eval(p.x, p.t) * finv.eval(p.x, p.t);
        CHECK(sup_abs(prod - PointMatrix::Identity(2, 2)) <= 1e-10);
    }
    MatrixField lhs = finv.deriv_x();
    MatrixField rhs = -(finv * f.deriv_x() * finv);
    CHECK(sup_diff_at_points(lhs, rhs, kProbe) <= 1e-9);
}

TEST_CASE("exponential sum json roundtrip is lossless") {
    Rng rng(7);
    MatrixField f = exp_sum(2, {ExpTerm{rng.complex_matrix(2), {1.25, -0.5}, {0.7, 0.1}, {0.0, 0.0}, 0},
                                ExpTerm{rng.complex_matrix(2), {0.0, 0.0}, {-0.3, 0.0}, {0.0, 0.0}, 2}});
    MatrixField g = expsum_from_json(expsum_to_json(f));
    CHECK(sup_diff_at_points(f, g, kProbe) <= 1e-13);
    CHECK(sup_diff_at_points(f.deriv_x(), g.deriv_x(), kProbe) <= 1e-12);
}

TEST_CASE("grid csv roundtrip preserves samples") {
    GridSpec spec{-1.0, 1.0, 21, 0.0, 0.5, 3};
    auto fn = [](double x, double t) {
        PointMatrix v(2, 2);
        v << Complex{x, t}, Complex{x * t, 0.0}, Complex{0.0, x - t}, Complex{1.0, 0.0};
        return v;
    };
    MatrixField f = grid_sample(spec, fn, 2);
    MatrixField g = grid_from_csv(grid_to_csv(f));
    CHECK(sup_on_grid(g - f, spec) <= 1e-13);
}

TEST_CASE("sums remember their antiderivatives") {
    MatrixField u = scalar_term({1.0, 0.0}, {1.5, 0.0}, {0.5, 0.0});
    MatrixField v = u.with_primitive_x(u.antideriv_x(0.0));
    REQUIRE(v.primitive_x().has_value());
    MatrixField s = v + v;
    REQUIRE(s.primitive_x().has_value());
    MatrixField W = s.antideriv_x(1.2);
    CHECK(sup_abs(W.eval(1.2, 0.4)) <= 1e-12);
    GridSpec spec{-1.0, 2.0, 31, 0.0, 1.0, 4};
    CHECK(sup_on_grid(W.deriv_x() - s, spec) <= 1e-10);
}

TEST_CASE("derivatives carry primitives along") {
    MatrixField u = scalar_term({1.0, 0.0}, {1.5, 0.0}, {0.5, 0.0});
    MatrixField v = u.with_primitive_x(u.antideriv_x(0.0));
    auto w = v.deriv_t().primitive_x();
    REQUIRE(w.has_value());
    GridSpec spec{-1.0, 1.0, 21, 0.0, 1.0, 3};
    CHECK(sup_on_grid(w->deriv_x() - v.deriv_t(), spec) <= 1e-10);
}

TEST_CASE("sampled curves differentiate along their axis only") {
    int n = 1001;
    double h = 1e-3;
    std::vector<PointMatrix> samples;
    samples.reserve(n);
    for (int i = 0; i < n; ++i) {
        PointMatrix v(1, 1);
        v(0, 0) = Complex{std::cos(i * h), 0.0};
        samples.push_back(v);
    }
    MatrixField c = sampled_curve(CurveAxis::T, 0.0, h, samples);
    CHECK(std::abs(c.eval(0.0, 0.5)(0, 0) - std::cos(0.5)) <= 1e-13);
    CHECK(std::abs(c.deriv_t().eval(0.0, 0.5)(0, 0) + std::sin(0.5)) <= 1e-10);
    CHECK(sup_abs(c.deriv_x().eval(0.0, 0.5)) == 0.0);

    MatrixField cy = sampled_curve(CurveAxis::Y, 0.0, h, samples);
    CHECK(std::abs(cy.deriv_y().eval(0.0, 0.0, 0.5)(0, 0) + std::sin(0.5)) <= 1e-10);
    CHECK(sup_abs(cy.deriv_t().eval(0.0, 0.0, 0.5)) == 0.0);
    CHECK_THROWS_AS((void)c.eval(0.0, 1.4), DomainError);
}

TEST_CASE("finite difference weights match the five point stencil") {
    std::vector<double> nodes = {-2.0, -1.0, 0.0, 1.0, 2.0};
    auto w = fd_weights(0.0, nodes, 1);
    std::vector<double> expect = {1.0 / 12.0, -2.0 / 3.0, 0.0, 2.0 / 3.0, -1.0 / 12.0};
    REQUIRE(w.size() == expect.size());
    for (size_t i = 0; i < w.size(); ++i) CHECK(std::abs(w[i] - expect[i]) <= 1e-13);
}

TEST_CASE("shape and usage violations are rejected") {
    PointMatrix C3 = PointMatrix::Identity(3, 3);
    CHECK_THROWS_AS(exp_sum(2, {ExpTerm{C3, {0.0, 0.0}, {0.0, 0.0}, {0.0, 0.0}, 0}}), ShapeError);
    PointMatrix C1(1, 1);
    C1(0, 0) = 1.0;
    CHECK_THROWS_AS(exp_sum(1, {ExpTerm{C1, {0.0, 0.0}, {0.0, 0.0}, {0.0, 0.0}, -1}}), UsageError);
    CHECK_THROWS_AS(MatrixField::identity(2) + MatrixField::identity(3), ShapeError);
    CHECK_THROWS_AS(expsum_from_json("not json"), UsageError);
    CHECK_THROWS_AS(expsum_from_json("{\"dim\": 1}"), UsageError);
    CHECK_THROWS_AS(grid_from_csv(""), UsageError);
    CHECK_THROWS_AS(grid_from_csv("x,t,nope\n"), UsageError);
}

TEST_CASE("capability and domain violations are rejected") {
    GridSpec spec{0.0, 1.0, 11, 0.0, 1.0, 2};
    auto fn = [](double, double) { return PointMatrix::Identity(1, 1); };
    MatrixField g = grid_sample(spec, fn, 1);
    CHECK_THROWS_AS((void)g.eval(1.5, 0.0), DomainError);
    CHECK_THROWS_AS((void)g.eval(0.5, 2.0), DomainError);
    CHECK_THROWS_AS((void)g.deriv_x(5).eval(0.5, 0.0), CapabilityError);
    CHECK_THROWS_AS(expsum_to_json(g), CapabilityError);

    MatrixField e = scalar_term({1.0, 0.0}, {1.0, 0.0});
    CHECK_THROWS_AS(grid_to_csv(e), CapabilityError);

    MatrixField cl = closure_field(1, Orders{2, 0, 0}, [](const Point& p, const Orders& d) {
        PointMatrix v(1, 1);
        // closure for sin(x): each x derivative shifts the phase by pi/2
        v(0, 0) = Complex{std::sin(p.x + d.dx * 1.5707963267948966), 0.0};
        return v;
    });
    CHECK(std::abs(cl.eval(0.3, 0.0)(0, 0) - std::sin(0.3)) <= 1e-13);
    CHECK_THROWS_AS((void)cl.deriv_x(3).eval(0.3, 0.0), CapabilityError);
    CHECK_THROWS_AS(cl.antideriv_x(0.0), CapabilityError);
}

TEST_CASE("singular pointwise inverse reports the location") {
    // f = x * identity is singular at x = 0
    MatrixField f = coordinate_x(2);
    CHECK_THROWS_AS((void)inverse(f).eval(0.0, 0.0), SingularityError);
}
