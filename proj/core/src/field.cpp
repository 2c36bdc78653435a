#include "sosforge/field.hpp"

#include "sosforge/halton.hpp"

#include <cmath>
#include <memory>
#include <mutex>
#include <unordered_map>

namespace sosforge {

namespace {

// Shared cache of exact polynomial derivatives, one per polynomial field.
struct PolyDerivCache {
    Polynomial base;
    std::unordered_map<MultiIndex, Polynomial, MultiIndexHash> derivs;
    std::mutex mu;

    explicit PolyDerivCache(Polynomial p) : base(std::move(p)) {}

    const Polynomial& get(const MultiIndex& beta) {
        std::lock_guard<std::mutex> lock(mu);
        auto it = derivs.find(beta);
        if (it == derivs.end())
            it = derivs.emplace(beta, base.derivative(beta)).first;
        return it->second;
    }
};

}  // namespace

Field polynomial_field(const Polynomial& p, SmoothnessClass s) {
    if (p.dim() != s.n)
        throw std::invalid_argument("polynomial_field: dimension mismatch");
    auto cache = std::make_shared<PolyDerivCache>(p);
    auto eval = [cache](std::span<const double> x) { return cache->base.eval(x); };
    auto deriv = [cache](const MultiIndex& beta, std::span<const double> x) {
        return cache->get(beta).eval(x);
    };
    return Field(s, Field::Backend::PolynomialExact, eval, deriv);
}

namespace {

// Iterated second-order central difference, one axis at a time.
double fd_deriv(const Field::EvalFn& f, MultiIndex beta, Point x, double step) {
    for (int a = 0; a < beta.dim(); ++a) {
        if (beta[a] == 0) continue;
        beta[a] -= 1;
        Point xp = x, xm = x;
        xp[a] += step;
        xm[a] -= step;
        return (fd_deriv(f, beta, xp, step) - fd_deriv(f, beta, xm, step)) / (2.0 * step);
    }
    return f(x);
}

}  // namespace

Field finite_difference_field(Field::EvalFn f, SmoothnessClass s, double step) {
    if (step <= 0.0) throw std::invalid_argument("finite_difference_field: step <= 0");
    auto eval = f;
    auto deriv = [f, step](const MultiIndex& beta, std::span<const double> x) {
        return fd_deriv(f, beta, Point(x.begin(), x.end()), step);
    };
    return Field(s, Field::Backend::FiniteDifference, eval, deriv);
}

Field Field::derivative(int axis) const {
    Field base = *this;
    MultiIndex shift(dim());
    shift[axis] = 1;
    auto eval = [base, shift](std::span<const double> x) { return base.deriv(shift, x); };
    auto deriv = [base, shift](const MultiIndex& beta, std::span<const double> x) {
        return base.deriv(beta.plus(shift), x);
    };
    return Field(smoothness_, backend_, eval, deriv);
}

namespace {

double rotated_deriv(const Field& f, const std::vector<double>& R, int n,
                     const MultiIndex& beta, MultiIndex acc, double coef,
                     std::span<const double> mapped) {
    int axis = -1;
    for (int a = 0; a < n; ++a)
        if (beta[a] > 0) {
            axis = a;
            break;
        }
    if (axis < 0) return coef * f.deriv(acc, mapped);
    MultiIndex rest = beta;
    rest[axis] -= 1;
    double total = 0.0;
    for (int b = 0; b < n; ++b) {
        double w = R[b * n + axis];
        if (w == 0.0) continue;
        total += rotated_deriv(f, R, n, rest, acc.plus(b), coef * w, mapped);
    }
    return total;
}

}  // namespace

Field Field::rotated(const std::vector<double>& rotation) const {
    int n = dim();
    if (static_cast<int>(rotation.size()) != n * n)
        throw std::invalid_argument("rotated: matrix size mismatch");
    Field base = *this;
    auto map = [n, rotation](std::span<const double> z) {
        Point x(n, 0.0);
        for (int b = 0; b < n; ++b)
            for (int a = 0; a < n; ++a) x[b] += rotation[b * n + a] * z[a];
        return x;
    };
    auto eval = [base, map](std::span<const double> z) { return base.eval(map(z)); };
    auto deriv = [base, map, rotation, n](const MultiIndex& beta,
                                          std::span<const double> z) {
        Point x = map(z);
        return rotated_deriv(base, rotation, n, beta, MultiIndex(n), 1.0, x);
    };
    return Field(smoothness_, backend_, eval, deriv);
}

double directional_form(const Field& f, std::span<const double> x,
                        std::span<const double> xi, int j) {
    if (j == 0) return f.eval(x);
    double total = 0.0;
    for (const auto& beta : multiindices_of_order(f.dim(), j)) {
        double w = factorial(j) / multiindex_factorial(beta);
        for (int a = 0; a < f.dim(); ++a)
            for (int i = 0; i < beta[a]; ++i) w *= xi[a];
        if (w == 0.0) continue;
        total += w * f.deriv(beta, x);
    }
    return total;
}

double directional_derivative(const Field& f, std::span<const double> x,
                              std::span<const double> xi, int j) {
    if (j > f.smoothness().k)
        throw std::invalid_argument("directional_derivative: order exceeds k");
    double norm2 = 0.0;
    for (double v : xi) norm2 += v * v;
    if (std::fabs(std::sqrt(norm2) - 1.0) > 1e-12)
        throw std::invalid_argument("directional_derivative: direction not unit length");
    return directional_form(f, x, xi, j);
}

double pointwise_seminorm_estimate(const Field& f, const MultiIndex& beta, double lambda,
                                   std::span<const double> x, double radius, int samples,
                                   std::uint64_t seed) {
    if (radius <= 0.0) throw std::invalid_argument("seminorm: radius <= 0");
    if (samples < 2) throw std::invalid_argument("seminorm: need at least 2 samples");
    if (!(lambda > 0.0 && lambda <= 1.0))
        throw std::invalid_argument("seminorm: exponent must lie in (0,1]");
    int n = f.dim();
    double best = 0.0;
    Point z(n), y(n);
    for (int i = 0; i < samples; ++i) {
        // Shrinking scales approximate the limsup as the pair approaches x.
        double scale = std::pow(0.7, static_cast<double>(i % 24));
        Point a = halton_point(static_cast<std::uint64_t>(i), n, seed);
        Point b = halton_point(static_cast<std::uint64_t>(i), n, seed + 7919);
        double dist2 = 0.0;
        for (int c = 0; c < n; ++c) {
            z[c] = x[c] + radius * scale * (2.0 * a[c] - 1.0) / std::sqrt(double(n));
            y[c] = x[c] + radius * scale * (2.0 * b[c] - 1.0) / std::sqrt(double(n));
            dist2 += (z[c] - y[c]) * (z[c] - y[c]);
        }
        double dist = std::sqrt(dist2);
        if (dist < 1e-14) continue;
        double q = std::fabs(f.deriv(beta, z) - f.deriv(beta, y)) / std::pow(dist, lambda);
        best = std::max(best, q);
    }
    return best;
}

double gradient_norm(const Field& f, int ell, std::span<const double> x) {
    if (ell == 0) return std::fabs(f.eval(x));
    double sum = 0.0;
    for (const auto& beta : multiindices_of_order(f.dim(), ell)) {
        double v = f.deriv(beta, x);
        sum += factorial(ell) / multiindex_factorial(beta) * v * v;
    }
    return std::sqrt(sum);
}

}  // namespace sosforge
