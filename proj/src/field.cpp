#include "laxcov/field.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <json.hpp>

namespace laxcov {

namespace {

double binom(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

Complex cpow(Complex z, int n) {
    Complex r{1.0, 0.0};
    for (int i = 0; i < n; ++i) r *= z;
    return r;
}

double falling(int p, int j) { // p (p-1) ... (p-j+1)
    double r = 1.0;
    for (int i = 0; i < j; ++i) r *= (p - i);
    return r;
}

PointMatrix zero_matrix(int m) { return PointMatrix::Zero(m, m); }

} // namespace

// ---------------------------------------------------------------------------
// EvalContext

const PointMatrix* EvalContext::find(const FieldRepr* r, const Orders& d) const {
    auto it = memo_.find(Key{r, d});
    return it == memo_.end() ? nullptr : &it->second;
}

void EvalContext::store(const FieldRepr* r, const Orders& d, PointMatrix value) {
    memo_.emplace(Key{r, d}, std::move(value));
}

// ---------------------------------------------------------------------------
// Representations

namespace {

class ConstRepr final : public FieldRepr {
public:
    explicit ConstRepr(PointMatrix v) : value_(std::move(v)) {}
    int dim() const override { return static_cast<int>(value_.rows()); }
    PointMatrix derivative(const Point&, const Orders& d, EvalContext&) const override {
        if (d.total() > 0) return zero_matrix(dim());
        return value_;
    }
    bool is_zero() const override { return value_.isZero(0.0); }
    const PointMatrix& value() const { return value_; }

private:
    PointMatrix value_;
};

class CoordXRepr final : public FieldRepr {
public:
    explicit CoordXRepr(int m) : m_(m) {}
    int dim() const override { return m_; }
    PointMatrix derivative(const Point& p, const Orders& d, EvalContext&) const override {
        if (d.dt > 0 || d.dy > 0 || d.dx > 1) return zero_matrix(m_);
        if (d.dx == 1) return PointMatrix::Identity(m_, m_);
        return p.x * PointMatrix::Identity(m_, m_);
    }

private:
    int m_;
};

class ExpSumRepr final : public FieldRepr {
public:
    ExpSumRepr(int m, std::vector<ExpTerm> terms) : m_(m), terms_(std::move(terms)) {
        for (const auto& t : terms_) {
            if (t.C.rows() != m_ || t.C.cols() != m_)
                throw ShapeError("exp_sum: amplitude matrix does not match dim");
            if (t.p < 0) throw UsageError("exp_sum: negative x power");
        }
    }
    int dim() const override { return m_; }
    PointMatrix derivative(const Point& p, const Orders& d, EvalContext&) const override {
        PointMatrix acc = zero_matrix(m_);
        for (const auto& term : terms_) {
            Complex scalar = cpow(term.omega, d.dt) * cpow(term.eta, d.dy) *
                             std::exp(term.k * p.x + term.omega * p.t + term.eta * p.y);
            // d^dx/dx^dx of x^p e^{kx}: sum_j C(dx,j) p!/(p-j)! x^{p-j} k^{dx-j}
            Complex xpart{0.0, 0.0};
            int jmax = std::min(term.p, d.dx);
            for (int j = 0; j <= jmax; ++j) {
                xpart += binom(d.dx, j) * falling(term.p, j) *
                         std::pow(p.x, term.p - j) * cpow(term.k, d.dx - j);
            }
            acc += (scalar * xpart) * term.C;
        }
        return acc;
    }
    bool is_zero() const override { return terms_.empty(); }
    const std::vector<ExpTerm>& terms() const { return terms_; }

private:
    int m_;
    std::vector<ExpTerm> terms_;
};

class ClosureRepr final : public FieldRepr {
public:
    ClosureRepr(int m, Orders max_orders, std::function<PointMatrix(const Point&, const Orders&)> fn)
        : m_(m), max_(max_orders), fn_(std::move(fn)) {}
    int dim() const override { return m_; }
    PointMatrix derivative(const Point& p, const Orders& d, EvalContext&) const override {
        if (d.dx > max_.dx || d.dt > max_.dt || d.dy > max_.dy)
            throw CapabilityError("closure field: derivative order beyond supplied closure");
        return fn_(p, d);
    }

private:
    int m_;
    Orders max_;
    std::function<PointMatrix(const Point&, const Orders&)> fn_;
};

class GridRepr final : public FieldRepr {
public:
    GridRepr(GridSpec spec, int m, std::vector<PointMatrix> values)
        : spec_(spec), m_(m), values_(std::move(values)) {
        if (spec_.n_x < 2 || spec_.n_t < 1)
            throw UsageError("grid field: need n_x >= 2, n_t >= 1");
        if (static_cast<int>(values_.size()) != spec_.n_x * spec_.n_t)
            throw ShapeError("grid field: sample count does not match spec");
    }
    int dim() const override { return m_; }

    int index_x(double x) const {
        double fi = (x - spec_.x_min) / spec_.hx();
        int i = static_cast<int>(std::lround(fi));
        if (i < 0 || i >= spec_.n_x || std::abs(fi - i) > 0.5 + 1e-9)
            throw DomainError("grid field: x outside sampled rectangle");
        return i;
    }
    int index_t(double t) const {
        if (spec_.n_t == 1) return 0;
        double fi = (t - spec_.t_min) / spec_.ht();
        int i = static_cast<int>(std::lround(fi));
        if (i < 0 || i >= spec_.n_t || std::abs(fi - i) > 0.5 + 1e-9)
            throw DomainError("grid field: t outside sampled rectangle");
        return i;
    }
    const PointMatrix& at(int ix, int it) const { return values_[ix * spec_.n_t + it]; }

    PointMatrix derivative(const Point& p, const Orders& d, EvalContext&) const override {
        if (d.dy > 0) return zero_matrix(m_);
        if (d.dx > 4 || d.dt > 4)
            throw CapabilityError("grid field: derivative order limited to 4");
        int ix = index_x(p.x);
        int it = index_t(p.t);
        auto window = [](int center, int want, int count) {
            int lo = std::clamp(center - want / 2, 0, std::max(0, count - want));
            return lo;
        };
        int wx = d.dx == 0 ? 1 : std::max(5, d.dx + 4);
        int wt = d.dt == 0 ? 1 : std::max(5, d.dt + 4);
        if (wx > spec_.n_x) throw CapabilityError("grid field: too few x samples for stencil");
        if (wt > spec_.n_t) throw CapabilityError("grid field: too few t samples for stencil");
        int lx = window(ix, wx, spec_.n_x);
        int lt = window(it, wt, spec_.n_t);
        std::vector<double> xw, tw;
        if (d.dx == 0) {
            xw = {1.0};
            lx = ix;
        } else {
            std::vector<double> nodes(wx);
            for (int i = 0; i < wx; ++i) nodes[i] = spec_.x_min + (lx + i) * spec_.hx();
            xw = fd_weights(p.x, nodes, d.dx);
        }
        if (d.dt == 0) {
            tw = {1.0};
            lt = it;
        } else {
            std::vector<double> nodes(wt);
            for (int i = 0; i < wt; ++i) nodes[i] = spec_.t_min + (lt + i) * spec_.ht();
            tw = fd_weights(p.t, nodes, d.dt);
        }
        PointMatrix acc = zero_matrix(m_);
        for (std::size_t i = 0; i < xw.size(); ++i)
            for (std::size_t j = 0; j < tw.size(); ++j)
                acc += (xw[i] * tw[j]) * at(lx + static_cast<int>(i), lt + static_cast<int>(j));
        return acc;
    }

    const GridSpec& spec() const { return spec_; }
    const std::vector<PointMatrix>& values() const { return values_; }

private:
    GridSpec spec_;
    int m_;
    std::vector<PointMatrix> values_;
};

class CurveRepr final : public FieldRepr {
public:
    CurveRepr(CurveAxis axis, double start, double step, std::vector<PointMatrix> samples)
        : axis_(axis), start_(start), step_(step), samples_(std::move(samples)) {
        if (samples_.empty()) throw UsageError("sampled curve: no samples");
        m_ = static_cast<int>(samples_.front().rows());
    }
    int dim() const override { return m_; }
    PointMatrix derivative(const Point& p, const Orders& d, EvalContext&) const override {
        int along = axis_ == CurveAxis::T ? d.dt : d.dy;
        int across = axis_ == CurveAxis::T ? d.dy : d.dt;
        if (d.dx > 0 || across > 0) return zero_matrix(m_);
        double coord = axis_ == CurveAxis::T ? p.t : p.y;
        double fi = (coord - start_) / step_;
        int i = static_cast<int>(std::lround(fi));
        int n = static_cast<int>(samples_.size());
        if (i < 0 || i >= n || std::abs(fi - i) > 0.5 + 1e-9)
            throw DomainError("sampled curve: coordinate outside samples");
        if (along == 0) return samples_[i];
        int w = std::max(5, along + 4);
        if (w > n) throw CapabilityError("sampled curve: too few samples for stencil");
        int lo = std::clamp(i - w / 2, 0, n - w);
        std::vector<double> nodes(w);
        for (int j = 0; j < w; ++j) nodes[j] = start_ + (lo + j) * step_;
        auto wts = fd_weights(coord, nodes, along);
        PointMatrix acc = zero_matrix(m_);
        for (int j = 0; j < w; ++j) acc += wts[j] * samples_[lo + j];
        return acc;
    }

private:
    CurveAxis axis_;
    double start_, step_;
    std::vector<PointMatrix> samples_;
    int m_;
};

class SumRepr final : public FieldRepr {
public:
    SumRepr(MatrixField a, MatrixField b, double sign) : a_(std::move(a)), b_(std::move(b)), sign_(sign) {
        if (a_.dim() != b_.dim() && a_.dim() != 1 && b_.dim() != 1)
            throw ShapeError("field add: dimension mismatch");
        m_ = std::max(a_.dim(), b_.dim());
    }
    int dim() const override { return m_; }
    PointMatrix derivative(const Point& p, const Orders& d, EvalContext& ctx) const override {
        // a 1x1 operand acts as that scalar times the identity
        auto lift = [&](const PointMatrix& v) -> PointMatrix {
            if (static_cast<int>(v.rows()) == m_) return v;
            return v(0, 0) * PointMatrix::Identity(m_, m_);
        };
        return lift(a_.eval_at(p, d, ctx)) + sign_ * lift(b_.eval_at(p, d, ctx));
    }

private:
    MatrixField a_, b_;
    double sign_;
    int m_;
};

class ScaleRepr final : public FieldRepr {
public:
    ScaleRepr(Complex c, MatrixField f) : c_(c), f_(std::move(f)) {}
    int dim() const override { return f_.dim(); }
    PointMatrix derivative(const Point& p, const Orders& d, EvalContext& ctx) const override {
        return c_ * f_.eval_at(p, d, ctx);
    }

private:
    Complex c_;
    MatrixField f_;
};

class ProdRepr final : public FieldRepr {
public:
    ProdRepr(MatrixField a, MatrixField b) : a_(std::move(a)), b_(std::move(b)) {
        if (a_.dim() != b_.dim() && a_.dim() != 1 && b_.dim() != 1)
            throw ShapeError("field mul: dimension mismatch");
        m_ = std::max(a_.dim(), b_.dim());
    }
    int dim() const override { return m_; }
    PointMatrix derivative(const Point& p, const Orders& d, EvalContext& ctx) const override {
        PointMatrix acc = zero_matrix(m_);
        for (int i = 0; i <= d.dx; ++i)
            for (int j = 0; j <= d.dt; ++j)
                for (int l = 0; l <= d.dy; ++l) {
                    double c = binom(d.dx, i) * binom(d.dt, j) * binom(d.dy, l);
                    PointMatrix fa = a_.eval_at(p, Orders{i, j, l}, ctx);
                    PointMatrix fb = b_.eval_at(p, Orders{d.dx - i, d.dt - j, d.dy - l}, ctx);
                    if (fa.rows() == 1 && fb.rows() > 1)
                        acc += (c * fa(0, 0)) * fb;
                    else if (fb.rows() == 1 && fa.rows() > 1)
                        acc += (c * fb(0, 0)) * fa;
                    else
                        acc += c * (fa * fb);
                }
        return acc;
    }

private:
    MatrixField a_, b_;
    int m_;
};

class InvRepr final : public FieldRepr {
public:
    explicit InvRepr(MatrixField f) : f_(std::move(f)) {}
    int dim() const override { return f_.dim(); }
    PointMatrix derivative(const Point& p, const Orders& d, EvalContext& ctx) const override {
        // 0 = d^alpha (f f^{-1}) gives the recursion
        // g^{(alpha)} = -g0 * sum_{0<beta<=alpha} C(alpha,beta) f^{(beta)} g^{(alpha-beta)}.
        if (const PointMatrix* hit = ctx.find(this, d)) return *hit;
        PointMatrix result;
        if (d.total() == 0) {
            PointMatrix v = f_.eval_at(p, d, ctx);
            Eigen::FullPivLU<PointMatrix> lu(v);
            if (!lu.isInvertible()) {
                std::ostringstream os;
                os << "field inverse: singular matrix at (x=" << p.x << ", t=" << p.t
                   << ", y=" << p.y << ")";
                throw SingularityError(os.str());
            }
            result = lu.inverse();
        } else {
            PointMatrix g0 = derivative(p, Orders{0, 0, 0}, ctx);
            PointMatrix acc = zero_matrix(dim());
            for (int i = 0; i <= d.dx; ++i)
                for (int j = 0; j <= d.dt; ++j)
                    for (int l = 0; l <= d.dy; ++l) {
                        if (i + j + l == 0) continue;
                        double c = binom(d.dx, i) * binom(d.dt, j) * binom(d.dy, l);
                        PointMatrix fb = f_.eval_at(p, Orders{i, j, l}, ctx);
                        PointMatrix gl = derivative(p, Orders{d.dx - i, d.dt - j, d.dy - l}, ctx);
                        acc += c * (fb * gl);
                    }
            result = -(g0 * acc);
        }
        ctx.store(this, d, result);
        return result;
    }

private:
    MatrixField f_;
};

class DerivRepr final : public FieldRepr {
public:
    DerivRepr(MatrixField f, Orders shift) : f_(std::move(f)), shift_(shift) {}
    int dim() const override { return f_.dim(); }
    PointMatrix derivative(const Point& p, const Orders& d, EvalContext& ctx) const override {
        return f_.eval_at(p, Orders{d.dx + shift_.dx, d.dt + shift_.dt, d.dy + shift_.dy}, ctx);
    }
    const MatrixField& base() const { return f_; }
    const Orders& shift() const { return shift_; }

private:
    MatrixField f_;
    Orders shift_;
};

class RestrictXRepr final : public FieldRepr {
public:
    RestrictXRepr(MatrixField f, double x0) : f_(std::move(f)), x0_(x0) {}
    int dim() const override { return f_.dim(); }
    PointMatrix derivative(const Point& p, const Orders& d, EvalContext& ctx) const override {
        if (d.dx > 0) return zero_matrix(dim());
        return f_.eval_at(Point{x0_, p.t, p.y}, d, ctx);
    }

private:
    MatrixField f_;
    double x0_;
};

} // namespace

// ---------------------------------------------------------------------------
// MatrixField

MatrixField::MatrixField() : repr_(std::make_shared<ConstRepr>(zero_matrix(1))) {}

MatrixField::MatrixField(std::shared_ptr<const FieldRepr> repr) : repr_(std::move(repr)) {
    if (!repr_) throw UsageError("MatrixField: null representation");
}

int MatrixField::dim() const { return repr_->dim(); }

bool MatrixField::is_zero() const { return repr_->is_zero(); }

PointMatrix MatrixField::eval(double x, double t, double y) const {
    EvalContext ctx;
    return eval_at(Point{x, t, y}, Orders{}, ctx);
}

PointMatrix MatrixField::eval_at(const Point& p, const Orders& d, EvalContext& ctx) const {
    if (const PointMatrix* hit = ctx.find(repr_.get(), d)) return *hit;
    PointMatrix v = repr_->derivative(p, d, ctx);
    ctx.store(repr_.get(), d, v);
    return v;
}

MatrixField MatrixField::deriv(const Orders& d) const {
    if (d.total() == 0) return *this;
    if (is_zero()) return MatrixField::zero(dim());
    if (dynamic_cast<const ConstRepr*>(repr_.get())) return MatrixField::zero(dim());
    MatrixField out;
    if (auto es = dynamic_cast<const ExpSumRepr*>(repr_.get())) {
        // exponential sums are closed under differentiation
        std::vector<ExpTerm> terms = es->terms();
        for (int step = 0; step < d.dx; ++step) {
            std::vector<ExpTerm> next;
            for (const auto& t : terms) {
                next.push_back(ExpTerm{t.k * t.C, t.k, t.omega, t.eta, t.p});
                if (t.p > 0)
                    next.push_back(ExpTerm{double(t.p) * t.C, t.k, t.omega, t.eta, t.p - 1});
            }
            terms = std::move(next);
        }
        for (auto& t : terms) t.C = (cpow(t.omega, d.dt) * cpow(t.eta, d.dy)) * t.C;
        out = exp_sum(dim(), std::move(terms));
    } else if (auto dr = dynamic_cast<const DerivRepr*>(repr_.get())) {
        Orders s{dr->shift().dx + d.dx, dr->shift().dt + d.dt, dr->shift().dy + d.dy};
        out = MatrixField(std::make_shared<DerivRepr>(dr->base(), s));
    } else {
        out = MatrixField(std::make_shared<DerivRepr>(*this, d));
    }
    // propagate the structural x-primitive where it stays meaningful
    if (d.dx > 0) {
        Orders rest{d.dx - 1, d.dt, d.dy};
        out.primitive_ = std::make_shared<const MatrixField>(this->deriv(rest));
    } else if (primitive_) {
        out.primitive_ = std::make_shared<const MatrixField>(primitive_->deriv(d));
    }
    return out;
}

MatrixField MatrixField::deriv_x(int order) const {
    if (order < 0) throw UsageError("deriv_x: negative order");
    return deriv(Orders{order, 0, 0});
}

MatrixField MatrixField::deriv_t() const { return deriv(Orders{0, 1, 0}); }

MatrixField MatrixField::deriv_y() const { return deriv(Orders{0, 0, 1}); }

MatrixField MatrixField::with_primitive_x(const MatrixField& w) const {
    MatrixField out = *this;
    out.primitive_ = std::make_shared<const MatrixField>(w);
    return out;
}

std::optional<MatrixField> MatrixField::primitive_x() const {
    if (primitive_) return *primitive_;
    if (is_zero()) return MatrixField::zero(dim());
    return std::nullopt;
}

MatrixField MatrixField::scaled(Complex c) const {
    if (c == Complex{0.0, 0.0} || is_zero()) return MatrixField::zero(dim());
    if (c == Complex{1.0, 0.0}) return *this;
    MatrixField out(std::make_shared<ScaleRepr>(c, *this));
    if (primitive_) out.primitive_ = std::make_shared<const MatrixField>(primitive_->scaled(c));
    return out;
}

MatrixField MatrixField::constant(PointMatrix value) {
    return MatrixField(std::make_shared<ConstRepr>(std::move(value)));
}

MatrixField MatrixField::constant_scalar(Complex value) {
    PointMatrix m(1, 1);
    m(0, 0) = value;
    return constant(std::move(m));
}

MatrixField MatrixField::zero(int dim) { return constant(zero_matrix(dim)); }

MatrixField MatrixField::identity(int dim) {
    return constant(PointMatrix::Identity(dim, dim));
}

MatrixField operator+(const MatrixField& f, const MatrixField& g) {
    if (f.is_zero()) return g;
    if (g.is_zero()) return f;
    MatrixField out(std::make_shared<SumRepr>(f, g, 1.0));
    auto pf = f.primitive_x();
    auto pg = g.primitive_x();
    if (pf && pg) out = out.with_primitive_x(*pf + *pg);
    return out;
}

MatrixField operator-(const MatrixField& f, const MatrixField& g) {
    if (g.is_zero()) return f;
    MatrixField out(std::make_shared<SumRepr>(f, g, -1.0));
    auto pf = f.primitive_x();
    auto pg = g.primitive_x();
    if (pf && pg) out = out.with_primitive_x(*pf - *pg);
    return out;
}

MatrixField operator-(const MatrixField& f) { return f.scaled(Complex{-1.0, 0.0}); }

MatrixField operator*(const MatrixField& f, const MatrixField& g) {
    if (f.is_zero() || g.is_zero()) return MatrixField::zero(std::max(f.dim(), g.dim()));
    return MatrixField(std::make_shared<ProdRepr>(f, g));
}

MatrixField operator*(Complex c, const MatrixField& f) { return f.scaled(c); }

MatrixField commutator(const MatrixField& f, const MatrixField& g) {
    if (f.dim() == 1 || g.dim() == 1) return MatrixField::zero(std::max(f.dim(), g.dim()));
    return f * g - g * f;
}

MatrixField inverse(const MatrixField& f) {
    return MatrixField(std::make_shared<InvRepr>(f));
}

MatrixField restrict_x(const MatrixField& f, double x0) {
    return MatrixField(std::make_shared<RestrictXRepr>(f, x0));
}

// ---------------------------------------------------------------------------
// Antiderivative

MatrixField MatrixField::antideriv_x(double x0) const {
    if (is_zero()) return MatrixField::zero(dim());
    if (primitive_) {
        const MatrixField& w = *primitive_;
        return w - restrict_x(w, x0);
    }
    if (auto es = dynamic_cast<const ExpSumRepr*>(repr_.get())) {
        std::vector<ExpTerm> out;
        for (const auto& term : es->terms()) {
            if (std::abs(term.k) > 0.0) {
                // int x^p e^{kx} = e^{kx} sum_j (-1)^j p!/(p-j)! x^{p-j} / k^{j+1}
                for (int j = 0; j <= term.p; ++j) {
                    Complex c = std::pow(-1.0, j) * falling(term.p, j) / cpow(term.k, j + 1);
                    out.push_back(ExpTerm{c * term.C, term.k, term.omega, term.eta, term.p - j});
                }
            } else {
                out.push_back(ExpTerm{term.C / double(term.p + 1), term.k, term.omega,
                                      term.eta, term.p + 1});
            }
        }
        // subtract the value at x0 term by term; each subtraction is x-constant
        std::vector<ExpTerm> shifted = out;
        for (const auto& term : out) {
            Complex v = std::pow(x0, term.p) * std::exp(term.k * x0);
            shifted.push_back(ExpTerm{(-v) * term.C, Complex{0, 0}, term.omega, term.eta, 0});
        }
        return exp_sum(dim(), std::move(shifted));
    }
    if (auto gr = dynamic_cast<const GridRepr*>(repr_.get())) {
        const GridSpec& spec = gr->spec();
        int i0 = gr->index_x(x0);
        double h = spec.hx();
        std::vector<PointMatrix> result(spec.n_x * spec.n_t, zero_matrix(dim()));
        for (int it = 0; it < spec.n_t; ++it) {
            // cumulative Simpson sweep from the left edge, then shift to x0
            std::vector<PointMatrix> F(spec.n_x, zero_matrix(dim()));
            for (int i = 0; i + 2 < spec.n_x; i += 2) {
                F[i + 1] = F[i] + (h / 12.0) * (5.0 * gr->at(i, it) + 8.0 * gr->at(i + 1, it) -
                                                gr->at(i + 2, it));
                F[i + 2] = F[i] + (h / 3.0) * (gr->at(i, it) + 4.0 * gr->at(i + 1, it) +
                                               gr->at(i + 2, it));
            }
            if (spec.n_x % 2 == 0) { // last node when the panel count is odd
                int i = spec.n_x - 3;
                F[i + 2] = F[i] + (h / 3.0) * (gr->at(i, it) + 4.0 * gr->at(i + 1, it) +
                                               gr->at(i + 2, it));
            }
            for (int i = 0; i < spec.n_x; ++i) result[i * spec.n_t + it] = F[i] - F[i0];
        }
        return grid_from_values(spec, dim(), std::move(result));
    }
    throw CapabilityError(
        "antideriv_x: representation has neither a structural primitive nor closed-form "
        "integration");
}

// ---------------------------------------------------------------------------
// Constructors

MatrixField exp_sum(int dim, std::vector<ExpTerm> terms) {
    // merge terms with identical exponents to keep sums compact
    std::vector<ExpTerm> merged;
    for (auto& t : terms) {
        bool found = false;
        for (auto& m : merged) {
            if (m.k == t.k && m.omega == t.omega && m.eta == t.eta && m.p == t.p) {
                m.C += t.C;
                found = true;
                break;
            }
        }
        if (!found) merged.push_back(std::move(t));
    }
    std::erase_if(merged, [](const ExpTerm& t) { return t.C.isZero(0.0); });
    return MatrixField(std::make_shared<ExpSumRepr>(dim, std::move(merged)));
}

MatrixField coordinate_x(int dim) {
    return MatrixField(std::make_shared<CoordXRepr>(dim));
}

MatrixField closure_field(int dim, Orders max_orders,
                          std::function<PointMatrix(const Point&, const Orders&)> fn) {
    return MatrixField(std::make_shared<ClosureRepr>(dim, max_orders, std::move(fn)));
}

MatrixField grid_from_values(const GridSpec& spec, int dim, std::vector<PointMatrix> values) {
    return MatrixField(std::make_shared<GridRepr>(spec, dim, std::move(values)));
}

MatrixField grid_sample(const GridSpec& spec,
                        const std::function<PointMatrix(double, double)>& fn, int dim) {
    std::vector<PointMatrix> values;
    values.reserve(spec.n_x * spec.n_t);
    for (int i = 0; i < spec.n_x; ++i)
        for (int j = 0; j < spec.n_t; ++j)
            values.push_back(fn(spec.x_min + i * spec.hx(),
                                spec.n_t == 1 ? spec.t_min : spec.t_min + j * spec.ht()));
    return grid_from_values(spec, dim, std::move(values));
}

MatrixField sampled_curve(CurveAxis axis, double start, double step,
                          std::vector<PointMatrix> samples) {
    return MatrixField(std::make_shared<CurveRepr>(axis, start, step, std::move(samples)));
}

// ---------------------------------------------------------------------------
// Fornberg finite-difference weights

std::vector<double> fd_weights(double z, const std::vector<double>& nodes, int m) {
    int n = static_cast<int>(nodes.size());
    if (m >= n) throw UsageError("fd_weights: need more nodes than derivative order");
    // B. Fornberg, Generation of finite difference formulas on arbitrarily
    // spaced grids, Math. Comp. 51 (1988); c[j][k] = weight of node j for the
    // k-th derivative.
    std::vector<std::vector<double>> c(n, std::vector<double>(m + 1, 0.0));
    double c1 = 1.0;
    double c4 = nodes[0] - z;
    c[0][0] = 1.0;
    for (int i = 1; i < n; ++i) {
        int mn = std::min(i, m);
        double c2 = 1.0;
        double c5 = c4;
        c4 = nodes[i] - z;
        for (int j = 0; j < i; ++j) {
            double c3 = nodes[i] - nodes[j];
            c2 *= c3;
            if (j == i - 1) {
                for (int k = mn; k >= 1; --k)
                    c[i][k] = c1 * (k * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
                c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
            }
            for (int k = mn; k >= 1; --k)
                c[j][k] = (c4 * c[j][k] - k * c[j][k - 1]) / c3;
            c[j][0] = c4 * c[j][0] / c3;
        }
        c1 = c2;
    }
    std::vector<double> w(n);
    for (int j = 0; j < n; ++j) w[j] = c[j][m];
    return w;
}

double sup_on_grid(const MatrixField& f, const GridSpec& spec) {
    if (f.is_zero()) return 0.0;
    double best = 0.0;
    for (int i = 0; i < spec.n_x; ++i) {
        double x = spec.x_min + i * spec.hx();
        for (int j = 0; j < spec.n_t; ++j) {
            double t = spec.n_t == 1 ? spec.t_min : spec.t_min + j * spec.ht();
            best = std::max(best, sup_abs(f.eval(x, t)));
        }
    }
    return best;
}

// ---------------------------------------------------------------------------
// Serialization

namespace {

nlohmann::json complex_to_json(const Complex& z) {
    return nlohmann::json::array({z.real(), z.imag()});
}

Complex complex_from_json(const nlohmann::json& j) {
    if (!j.is_array() || j.size() != 2) throw UsageError("expected [re, im] pair");
    return {j[0].get<double>(), j[1].get<double>()};
}

} // namespace

std::string expsum_to_json(const MatrixField& f) {
    std::vector<ExpTerm> terms;
    if (auto es = dynamic_cast<const ExpSumRepr*>(f.repr().get())) {
        terms = es->terms();
    } else if (auto cr = dynamic_cast<const ConstRepr*>(f.repr().get())) {
        if (!cr->is_zero())
            terms.push_back(ExpTerm{cr->value(), Complex{0, 0}, Complex{0, 0}, Complex{0, 0}, 0});
    } else {
        throw CapabilityError("expsum_to_json: field is not an exponential sum");
    }
    nlohmann::json doc;
    doc["dim"] = f.dim();
    doc["terms"] = nlohmann::json::array();
    for (const auto& term : terms) {
        if (term.eta != Complex{0.0, 0.0})
            throw CapabilityError("expsum_to_json: y-dependent terms are not serializable");
        nlohmann::json jt;
        jt["k"] = complex_to_json(term.k);
        jt["omega"] = complex_to_json(term.omega);
        nlohmann::json rows = nlohmann::json::array();
        for (int i = 0; i < term.C.rows(); ++i) {
            nlohmann::json row = nlohmann::json::array();
            for (int j = 0; j < term.C.cols(); ++j) row.push_back(complex_to_json(term.C(i, j)));
            rows.push_back(row);
        }
        jt["C"] = rows;
        if (term.p != 0) jt["p"] = term.p;
        doc["terms"].push_back(jt);
    }
    return doc.dump(2);
}

MatrixField expsum_from_json(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw UsageError(std::string("expsum_from_json: ") + e.what());
    }
    if (!doc.contains("dim") || !doc.contains("terms"))
        throw UsageError("expsum_from_json: need keys dim and terms");
    int m = doc["dim"].get<int>();
    if (m < 1) throw UsageError("expsum_from_json: dim must be positive");
    std::vector<ExpTerm> terms;
    for (const auto& jt : doc["terms"]) {
        ExpTerm term;
        term.k = complex_from_json(jt.at("k"));
        term.omega = complex_from_json(jt.at("omega"));
        term.p = jt.value("p", 0);
        const auto& rows = jt.at("C");
        if (static_cast<int>(rows.size()) != m)
            throw UsageError("expsum_from_json: C row count != dim");
        term.C = PointMatrix(m, m);
        for (int i = 0; i < m; ++i) {
            if (static_cast<int>(rows[i].size()) != m)
                throw UsageError("expsum_from_json: C col count != dim");
            for (int j = 0; j < m; ++j) term.C(i, j) = complex_from_json(rows[i][j]);
        }
        terms.push_back(std::move(term));
    }
    return exp_sum(m, std::move(terms));
}

std::string grid_to_csv(const MatrixField& f) {
    auto gr = dynamic_cast<const GridRepr*>(f.repr().get());
    if (!gr) throw CapabilityError("grid_to_csv: field is not grid-sampled");
    const GridSpec& spec = gr->spec();
    int m = f.dim();
    std::ostringstream os;
    os.precision(17);
    os << "x,t";
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) os << ",re_" << i << "_" << j << ",im_" << i << "_" << j;
    os << "\n";
    for (int ix = 0; ix < spec.n_x; ++ix)
        for (int it = 0; it < spec.n_t; ++it) {
            os << spec.x_min + ix * spec.hx() << ","
               << (spec.n_t == 1 ? spec.t_min : spec.t_min + it * spec.ht());
            const PointMatrix& v = gr->at(ix, it);
            for (int i = 0; i < m; ++i)
                for (int j = 0; j < m; ++j)
                    os << "," << v(i, j).real() << "," << v(i, j).imag();
            os << "\n";
        }
    return os.str();
}

MatrixField grid_from_csv(const std::string& text) {
    std::istringstream is(text);
    std::string line;
    if (!std::getline(is, line)) throw UsageError("grid_from_csv: empty input");
    int columns = 1 + static_cast<int>(std::count(line.begin(), line.end(), ','));
    if (columns < 4 || (columns - 2) % 2 != 0)
        throw UsageError("grid_from_csv: malformed header");
    int m = static_cast<int>(std::lround(std::sqrt((columns - 2) / 2.0)));
    if (2 * m * m != columns - 2) throw UsageError("grid_from_csv: entry count is not m*m");
    std::vector<double> xs, ts;
    std::vector<PointMatrix> values;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string cell;
        std::vector<double> nums;
        while (std::getline(ls, cell, ',')) nums.push_back(std::stod(cell));
        if (static_cast<int>(nums.size()) != columns)
            throw UsageError("grid_from_csv: row width mismatch");
        xs.push_back(nums[0]);
        ts.push_back(nums[1]);
        PointMatrix v(m, m);
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j) {
                int base = 2 + 2 * (i * m + j);
                v(i, j) = Complex{nums[base], nums[base + 1]};
            }
        values.push_back(std::move(v));
    }
    if (values.empty()) throw UsageError("grid_from_csv: no data rows");
    std::vector<double> ux = xs, ut = ts;
    std::sort(ux.begin(), ux.end());
    ux.erase(std::unique(ux.begin(), ux.end()), ux.end());
    std::sort(ut.begin(), ut.end());
    ut.erase(std::unique(ut.begin(), ut.end()), ut.end());
    GridSpec spec;
    spec.x_min = ux.front();
    spec.x_max = ux.back();
    spec.n_x = static_cast<int>(ux.size());
    spec.t_min = ut.front();
    spec.t_max = ut.back();
    spec.n_t = static_cast<int>(ut.size());
    if (static_cast<int>(values.size()) != spec.n_x * spec.n_t)
        throw UsageError("grid_from_csv: rows do not fill a rectangle");
    return grid_from_values(spec, m, std::move(values));
}

} // namespace laxcov
