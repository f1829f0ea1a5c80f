#ifndef LAXCOV_NCZS_HPP
#define LAXCOV_NCZS_HPP

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "laxcov/point_matrix.hpp"
#include "laxcov/rng.hpp"

namespace laxcov {

// P_n(H, u) = sum_{p=0}^{n} H^{n-p} u H^p.
PointMatrix sym_poly(const PointMatrix& H, const PointMatrix& u, int n);

enum class ModelKind { LinearPair, SymPoly, Combo };

// An operator-valued map F together with the matrices (J, Y) for which
//   F(u) + [Y, sigma] - F(u + [J, sigma]) = 0
// holds identically in (u, sigma).
struct CovariantModel {
    ModelKind kind = ModelKind::LinearPair;
    PointMatrix H;
    int n = 1;                    // SymPoly degree
    std::vector<Complex> betas;   // Combo weights for P_1, P_2, ...
    PointMatrix J;
    PointMatrix Y;                // may be overridden to probe non-covariant choices

    static CovariantModel linear_pair(PointMatrix H);
    static CovariantModel sym_poly_model(PointMatrix H, int n);
    static CovariantModel combo(PointMatrix H, std::vector<Complex> betas);

    PointMatrix apply(const PointMatrix& u) const;  // F(u)
};

PointMatrix covariance_residual(const CovariantModel& m, const PointMatrix& u,
                                const PointMatrix& sigma);

struct ComboReport {
    double max_rel_residual = 0.0;
    double worked_example_rel = 0.0;  // the S = beta H example with its cubic coupling
    int trials = 0;
    bool pass = false;
};

ComboReport combo_covariance_check(const std::vector<Complex>& beta, const PointMatrix& H,
                                   int trials, Rng& rng, double tol);

// Residuals of the two algebraic constraint rows and the full evolution
// relation for caller-supplied derivative matrices:
//   [0] [J,u]H + {u,[J,H]} + [u,H]J
//   [1] [J,u]H + [u,H]J
//   [2] u_y - {H, u_t} + [u^2, H] + J H u_x + J u_x H + H J u_x
std::vector<PointMatrix> constraint_residuals(const PointMatrix& u, const PointMatrix& H,
                                              const PointMatrix& J, const PointMatrix& u_x,
                                              const PointMatrix& u_t, const PointMatrix& u_y);

// The ambiguous third-order x-term appears in two readings; both are returned
// (first: literal sum with the doubled word, second: the symmetric reading)
// so callers can report the gap without asserting either.
std::pair<PointMatrix, PointMatrix> gman2_x_term_variants(const PointMatrix& J,
                                                          const PointMatrix& u_x);

struct TopState {
    PointMatrix u;
    PointMatrix J;
    double y = 0.0;
};

// du/dy = [J, u^2].
PointMatrix euler_rhs(const TopState& s);

// Classical fixed-step RK4; returns every step including the initial state.
std::vector<TopState> euler_integrate(const TopState& s0, double y_end, double h);

// tr(u^1), ..., tr(u^kmax).
std::vector<Complex> trace_powers(const PointMatrix& u, int kmax);

// u + [J, sigma].
PointMatrix zs_dt_potential(const PointMatrix& u, const PointMatrix& J,
                            const PointMatrix& sigma);

// One-sided numerical directional derivative (F(u + eps h) - F(u)) / eps.
PointMatrix frechet_directional(const std::function<PointMatrix(const PointMatrix&)>& F,
                                const PointMatrix& u, const PointMatrix& hdir, double eps);

enum class ActionSide { Left, Right, TwoSided };

struct ActionClassification {
    ActionSide side = ActionSide::TwoSided;
    double left_err = 0.0;   // best fit error to F(h) = L h
    double right_err = 0.0;  // best fit error to F(h) = h R
};

// For a linear map F on m x m matrices, reconstructs the best pure-left and
// pure-right factors from basis directions and classifies which (if either)
// reproduces F exactly.
ActionClassification classify_linear_action(
    const std::function<PointMatrix(const PointMatrix&)>& F, int dim, double tol = 1e-10);

} // namespace laxcov

#endif
