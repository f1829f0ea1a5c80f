#ifndef LAXCOV_FIELD_HPP
#define LAXCOV_FIELD_HPP

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "laxcov/errors.hpp"
#include "laxcov/point_matrix.hpp"

namespace laxcov {

struct Point {
    double x = 0.0;
    double t = 0.0;
    double y = 0.0;
};

// Mixed derivative multi-order: d^dx/dx^dx d^dt/dt^dt d^dy/dy^dy.
struct Orders {
    int dx = 0;
    int dt = 0;
    int dy = 0;
    bool operator==(const Orders&) const = default;
    int total() const { return dx + dt + dy; }
};

class FieldRepr;

// Per-point memo shared across one evaluation tree walk. Derivative requests
// on composite fields (products, inverses, deep dressing chains) repeat the
// same sub-requests many times; caching them keeps deep chains cheap.
class EvalContext {
public:
    const PointMatrix* find(const FieldRepr* r, const Orders& d) const;
    void store(const FieldRepr* r, const Orders& d, PointMatrix value);

private:
    struct Key {
        const FieldRepr* repr;
        Orders d;
        bool operator==(const Key&) const = default;
    };
    struct KeyHash {
        std::size_t operator()(const Key& k) const {
            auto h = std::hash<const void*>{}(k.repr);
            auto mix = [&h](std::size_t v) { h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2); };
            mix(static_cast<std::size_t>(k.d.dx));
            mix(static_cast<std::size_t>(k.d.dt) << 8);
            mix(static_cast<std::size_t>(k.d.dy) << 16);
            return h;
        }
    };
    std::unordered_map<Key, PointMatrix, KeyHash> memo_;
};

class FieldRepr {
public:
    virtual ~FieldRepr() = default;
    virtual int dim() const = 0;
    // Value of the requested mixed derivative at p. Implementations may call
    // back into child fields through the same context.
    virtual PointMatrix derivative(const Point& p, const Orders& d, EvalContext& ctx) const = 0;
    virtual bool is_zero() const { return false; }
};

// One term of an exponential sum: C x^p e^{k x + omega t + eta y}.
struct ExpTerm {
    PointMatrix C;
    Complex k{0.0, 0.0};
    Complex omega{0.0, 0.0};
    Complex eta{0.0, 0.0};
    int p = 0;
};

struct GridSpec {
    double x_min = 0.0, x_max = 1.0;
    int n_x = 2;
    double t_min = 0.0, t_max = 1.0;
    int n_t = 2;
    double hx() const { return (x_max - x_min) / (n_x - 1); }
    double ht() const { return n_t > 1 ? (t_max - t_min) / (n_t - 1) : 1.0; }
};

// Value-semantics handle to an immutable field representation. A field may
// additionally carry a structural x-primitive: a field W with W' = this.
// Dressing-built potentials always know their primitive, which lets the
// Boussinesq builder evaluate d/dt of the antiderivative without picking an
// integration base point.
class MatrixField {
public:
    MatrixField(); // 1x1 zero field, so containers are easy to use
    explicit MatrixField(std::shared_ptr<const FieldRepr> repr);

    int dim() const;
    bool is_zero() const;

    PointMatrix eval(double x, double t, double y = 0.0) const;
    PointMatrix eval_at(const Point& p, const Orders& d, EvalContext& ctx) const;

    MatrixField deriv_x(int order = 1) const;
    MatrixField deriv_t() const;
    MatrixField deriv_y() const;
    MatrixField deriv(const Orders& d) const;

    // Antiderivative in x vanishing at x0 (exp-sum: exact; grid: Simpson;
    // fields with a structural primitive: W - W(x0)).
    MatrixField antideriv_x(double x0) const;

    MatrixField with_primitive_x(const MatrixField& w) const;
    std::optional<MatrixField> primitive_x() const;

    MatrixField scaled(Complex c) const;

    std::shared_ptr<const FieldRepr> repr() const { return repr_; }

    static MatrixField constant(PointMatrix value);
    static MatrixField constant_scalar(Complex value);
    static MatrixField zero(int dim);
    static MatrixField identity(int dim);

private:
    std::shared_ptr<const FieldRepr> repr_;
    std::shared_ptr<const MatrixField> primitive_;
};

MatrixField operator+(const MatrixField& f, const MatrixField& g);
MatrixField operator-(const MatrixField& f, const MatrixField& g);
MatrixField operator-(const MatrixField& f);
// Pointwise matrix product; a 1x1 operand broadcasts as a scalar factor.
MatrixField operator*(const MatrixField& f, const MatrixField& g);
MatrixField operator*(Complex c, const MatrixField& f);
MatrixField commutator(const MatrixField& f, const MatrixField& g);
// Pointwise matrix inverse, with derivatives by the Leibniz recursion.
MatrixField inverse(const MatrixField& f);
// f evaluated at fixed x = x0 (an x-constant field of t, y).
MatrixField restrict_x(const MatrixField& f, double x0);

// Constructors for the three representations plus helpers.
MatrixField exp_sum(int dim, std::vector<ExpTerm> terms);
MatrixField coordinate_x(int dim); // x * Identity
MatrixField closure_field(int dim, Orders max_orders,
                          std::function<PointMatrix(const Point&, const Orders&)> fn);
MatrixField grid_sample(const GridSpec& spec,
                        const std::function<PointMatrix(double, double)>& fn, int dim);
MatrixField grid_from_values(const GridSpec& spec, int dim, std::vector<PointMatrix> values);

enum class CurveAxis { T, Y };
// Uniformly sampled one-parameter matrix curve (a trajectory) viewed as a
// field of t or y alone; derivatives along the axis use order-4 stencils.
MatrixField sampled_curve(CurveAxis axis, double start, double step,
                          std::vector<PointMatrix> samples);

// Serialization. Exp-sum fields <-> JSON text; grid fields <-> CSV text.
std::string expsum_to_json(const MatrixField& f);
MatrixField expsum_from_json(const std::string& text);
std::string grid_to_csv(const MatrixField& f);
MatrixField grid_from_csv(const std::string& text);

// Order-4 finite-difference weights for the m-th derivative at point z given
// arbitrary node locations (Fornberg's algorithm); used by grid and curve
// representations and exposed for trajectory post-processing.
std::vector<double> fd_weights(double z, const std::vector<double>& nodes, int m);

// Largest entrywise magnitude of f over the nodes of the grid spec.
double sup_on_grid(const MatrixField& f, const GridSpec& spec);

} // namespace laxcov

#endif
