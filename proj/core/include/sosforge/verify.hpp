#pragma once

#include "sosforge/decompose.hpp"

#include <string>
#include <vector>

namespace sosforge {

struct CheckReport {
    std::string name;
    int samples = 0;
    int skipped = 0;
    double worst = 0.0;
    double threshold = 0.0;
    double fitted_C = 0.0;
    bool pass = false;

    std::string to_json() const;
};

/// worst |sum of squares - f| over samples restricted to {r > delta_cut};
/// passes under 1e-8 * (1 + max f).
CheckReport check_reconstruction(const Decomposition& dec, const Field& f, int samples,
                                 std::uint64_t seed = 0);

/// |f^s(x) - f^s(y)| <= (1+eps) [f]_a^s / ((1+eps)^{1/(s-1)} - 1)^{s-1}
///                      * |x-y|^{s a} + eps max(f^s(x), f^s(y)).
CheckReport check_power_difference(const Field& f, double alpha, double s, double eps,
                                   const Box& box, int pairs, std::uint64_t seed = 0);

/// Derivative gap against the Taylor majorant with a sampled top-order
/// seminorm constant.
CheckReport check_taylor_gap(const Field& f, const MultiIndex& beta, const Box& box,
                             int pairs, std::uint64_t seed = 0);

/// |grad f| <= [grad f]_a^{1/(1+a)} f^{a/(1+a)} (a^{1/(1+a)} + a^{-a/(1+a)})
/// for non-negative f with k = 1.
CheckReport check_gradient_bound(const Field& f, double alpha, const Box& box,
                                 int samples, std::uint64_t seed = 0);

/// Pointwise seminorm of d^beta(term) at the half exponent for all
/// |beta| <= floor(k/2); passes when the fit is stable under doubling.
CheckReport check_half_regularity(const Field& term, SmoothnessClass s, const Box& region,
                                  int samples, std::uint64_t seed = 0);

/// Generic stability test: fitted max with m and 2m samples agree within 10%.
bool stable_fit(double c_half, double c_full);

std::string reports_to_json(const std::vector<CheckReport>& reports);

}  // namespace sosforge
