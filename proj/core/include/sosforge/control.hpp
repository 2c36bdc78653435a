#pragma once

#include "sosforge/field.hpp"
#include "sosforge/types.hpp"

#include <optional>
#include <string>

namespace sosforge {

/// sup over unit xi of the positive part of the j-th directional derivative
/// of f at x. j must be even and at most k.
double sphere_sup_positive_part(const Field& f, std::span<const double> x, int j);

/// Largest eigenvalue of a symmetric matrix (row-major, n x n), by cyclic
/// Jacobi rotations. Exposed for the principal-direction search.
double top_eigenvalue(std::vector<double> a, int n);
/// Largest eigenvalue together with a unit eigenvector.
std::pair<double, std::vector<double>> top_eigenpair(std::vector<double> a, int n);

/// Scale function r(x) = max over even j <= k of the j-th sphere sup raised
/// to 1/(k-j+alpha). Controls cube sizes and classification thresholds.
struct ControlFunction {
    Field source;
    double nu = 0.05;
    double omega = 1.0;

    double operator()(std::span<const double> x) const;
};

double control_value(const Field& f, std::span<const double> x);

struct SlowVariationReport {
    int samples = 0;
    int usable_pairs = 0;
    int skipped = 0;
    double worst_ratio = 0.0;
    bool pass = false;

    std::string to_json() const;
};

/// Samples pairs x, y with |x-y| <= nu r(x) and reports the worst
/// |r(x)-r(y)|/r(x); passes when that never exceeds 1/4.
SlowVariationReport validate_slow_variation(const ControlFunction& r, const Box& box,
                                            int samples, std::uint64_t seed = 0);

struct RatioReport {
    int samples = 0;
    int skipped = 0;
    double fitted_C = 0.0;
    double worst_ratio = 0.0;
    bool pass = false;

    std::string to_json() const;
};

/// Fits the constant in |grad^ell f(x)| <= C r(x)^{k-ell+alpha}; passes when
/// the fit is stable under doubling the sample count (change < 10%).
RatioReport check_derivative_control(const Field& f, const ControlFunction& r,
                                     const Box& box, int ell, int samples,
                                     std::uint64_t seed = 0);

/// Checks that the scale function is dominated by its order-0 and order-2
/// branches (automatic for k in {2,3}; sampled with 1e-9 slack otherwise).
bool check_needed_condition(const Field& f, const Box& box, int samples,
                            std::uint64_t seed = 0);

/// omega = 2 * max over sampled close pairs of |f(x)-f(y)| / (nu r(x)^{k+alpha}).
double fit_omega(const Field& f, const ControlFunction& r, const Box& box, int samples,
                 std::uint64_t seed = 0);

}  // namespace sosforge
