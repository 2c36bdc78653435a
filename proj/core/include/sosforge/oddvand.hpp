#pragma once

#include "sosforge/types.hpp"

#include <vector>

namespace sosforge {

/// Exact weights (eta_i, q_i) with sum_i q_i eta_i^j = 0 for odd j < ell and
/// sum_i q_i eta_i^ell = 1; all q_i >= 0.
struct RationalWeights {
    int ell = 1;
    int s = 1;
    std::vector<Rational> etas;
    std::vector<Rational> qs;
};

/// Closed form: eta_k = (-1)^{s+k} k, q_k = 1 / (eta_k prod_{i!=k}(eta_k^2 - eta_i^2)).
RationalWeights odd_moment_weights(int ell);

/// Re-evaluates all moment constraints and the sign condition exactly,
/// without reusing the closed form.
bool verify_odd_moments(const RationalWeights& w);

/// Exact Gaussian elimination solve of M q = e_s with M_{ij} = eta_j^{2i-1}.
std::vector<Rational> solve_moment_system(const std::vector<Rational>& etas);

/// det(M) for the matrix above, by exact elimination.
Rational moment_matrix_determinant(const std::vector<Rational>& etas);

/// The product formula (prod eta_i) * (prod_{i>j} (eta_i^2 - eta_j^2)).
Rational moment_determinant_product(const std::vector<Rational>& etas);

}  // namespace sosforge
