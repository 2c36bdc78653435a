#pragma once

#include "sosforge/multiindex.hpp"
#include "sosforge/types.hpp"

#include <map>
#include <span>
#include <string>
#include <vector>

namespace sosforge {

/// Sparse multivariate polynomial with exact rational coefficients.
class Polynomial {
public:
    explicit Polynomial(int dim) : dim_(dim) {
        if (dim < 1) throw std::invalid_argument("polynomial: dimension must be >= 1");
    }

    int dim() const { return dim_; }

    void add_term(const std::vector<int>& exps, const Rational& coef);

    double eval(std::span<const double> x) const;
    Rational eval_exact(const std::vector<Rational>& x) const;

    /// Exact partial derivative along one axis.
    Polynomial derivative(int axis) const;
    /// Exact multi-index derivative.
    Polynomial derivative(const MultiIndex& beta) const;

    const std::map<std::vector<int>, Rational>& terms() const { return terms_; }

    std::string to_json(int k, double alpha) const;
    static std::pair<Polynomial, SmoothnessClass> from_json(const std::string& text);

    // Convenience builders for the test corpus.
    static Polynomial from_string_terms(
        int dim, const std::vector<std::pair<std::vector<int>, std::string>>& t);

private:
    int dim_;
    std::map<std::vector<int>, Rational> terms_;
    // Rounded coefficients for fast evaluation; rebuilt when terms change.
    std::vector<std::pair<std::vector<int>, double>> flat_;
};

}  // namespace sosforge
