#pragma once

#include "sosforge/multiindex.hpp"
#include "sosforge/polynomial.hpp"
#include "sosforge/types.hpp"

#include <functional>
#include <memory>
#include <span>

namespace sosforge {

/// A function on R^n with a derivative oracle for multi-indices up to
/// order k. Immutable after construction and safe to share across threads.
class Field {
public:
    enum class Backend { PolynomialExact, FiniteDifference, EvaluationTree };

    using EvalFn = std::function<double(std::span<const double>)>;
    using DerivFn = std::function<double(const MultiIndex&, std::span<const double>)>;

    Field() = default;
    Field(SmoothnessClass s, Backend b, EvalFn eval, DerivFn deriv)
        : smoothness_(s), backend_(b), eval_(std::move(eval)), deriv_(std::move(deriv)) {}

    const SmoothnessClass& smoothness() const { return smoothness_; }
    int dim() const { return smoothness_.n; }
    Backend backend() const { return backend_; }

    double operator()(std::span<const double> x) const { return eval_(x); }
    double eval(std::span<const double> x) const { return eval_(x); }

    double deriv(const MultiIndex& beta, std::span<const double> x) const {
        if (beta.order() == 0) return eval_(x);
        return deriv_(beta, x);
    }

    /// The field x -> d_axis f(x), sharing this field's oracle.
    Field derivative(int axis) const;

    /// This field evaluated through the linear map x -> R x (R orthogonal,
    /// given row-major), with exactly transformed derivatives.
    Field rotated(const std::vector<double>& rotation) const;

private:
    SmoothnessClass smoothness_{};
    Backend backend_ = Backend::FiniteDifference;
    EvalFn eval_;
    DerivFn deriv_;
};

Field polynomial_field(const Polynomial& p, SmoothnessClass s);
Field finite_difference_field(Field::EvalFn f, SmoothnessClass s, double step);

/// j-th order derivative of f at x in the unit direction xi.
double directional_derivative(const Field& f, std::span<const double> x,
                              std::span<const double> xi, int j);
/// Same without the unit-length requirement (homogeneity tests).
double directional_form(const Field& f, std::span<const double> x,
                        std::span<const double> xi, int j);

/// Max difference quotient |d^beta f(z) - d^beta f(y)| / |z-y|^lambda over a
/// deterministic low-discrepancy schedule of pairs in the ball around x.
double pointwise_seminorm_estimate(const Field& f, const MultiIndex& beta, double lambda,
                                   std::span<const double> x, double radius, int samples,
                                   std::uint64_t seed = 0);

/// Euclidean norm of the order-ell derivative tensor (multinomial weights).
double gradient_norm(const Field& f, int ell, std::span<const double> x);

// Combinators for assembling square terms. All results carry exact
// derivative oracles built from the children's oracles.
Field constant_field(double c, SmoothnessClass s);
Field field_sum(std::vector<Field> parts);
Field field_scale(Field a, double c);
Field field_product(Field a, Field b);
/// sqrt of the positive part; derivatives by the half-power chain recurrence,
/// reported as 0 where the child vanishes.
Field field_sqrt(Field a);
/// g on R^{n-1} viewed as a function on R^n that ignores the last axis.
Field lift_field(Field g, SmoothnessClass target);

}  // namespace sosforge
