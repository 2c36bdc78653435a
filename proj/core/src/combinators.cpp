#include "sosforge/field.hpp"

#include <cmath>
#include <unordered_map>

namespace sosforge {

Field constant_field(double c, SmoothnessClass s) {
    auto eval = [c](std::span<const double>) { return c; };
    auto deriv = [c](const MultiIndex& beta, std::span<const double>) {
        return beta.order() == 0 ? c : 0.0;
    };
    return Field(s, Field::Backend::EvaluationTree, eval, deriv);
}

Field field_sum(std::vector<Field> parts) {
    if (parts.empty()) throw std::invalid_argument("field_sum: empty");
    SmoothnessClass s = parts.front().smoothness();
    auto shared = std::make_shared<std::vector<Field>>(std::move(parts));
    auto eval = [shared](std::span<const double> x) {
        double t = 0.0;
        for (const auto& f : *shared) t += f.eval(x);
        return t;
    };
    auto deriv = [shared](const MultiIndex& beta, std::span<const double> x) {
        double t = 0.0;
        for (const auto& f : *shared) t += f.deriv(beta, x);
        return t;
    };
    return Field(s, Field::Backend::EvaluationTree, eval, deriv);
}

Field field_scale(Field a, double c) {
    SmoothnessClass s = a.smoothness();
    auto pa = std::make_shared<Field>(std::move(a));
    auto eval = [pa, c](std::span<const double> x) { return c * pa->eval(x); };
    auto deriv = [pa, c](const MultiIndex& beta, std::span<const double> x) {
        return c * pa->deriv(beta, x);
    };
    return Field(s, Field::Backend::EvaluationTree, eval, deriv);
}

Field field_product(Field a, Field b) {
    SmoothnessClass s = a.smoothness();
    auto pa = std::make_shared<Field>(std::move(a));
    auto pb = std::make_shared<Field>(std::move(b));
    auto eval = [pa, pb](std::span<const double> x) { return pa->eval(x) * pb->eval(x); };
    auto deriv = [pa, pb](const MultiIndex& beta, std::span<const double> x) {
        double t = 0.0;
        for (const auto& gamma : multiindices_below(beta))
            t += multiindex_binomial(beta, gamma) * pa->deriv(gamma, x) *
                 pb->deriv(beta.minus(gamma), x);
        return t;
    };
    return Field(s, Field::Backend::EvaluationTree, eval, deriv);
}

namespace {

// d^gamma of u(x)^p via the chain recurrence over derivative order of the
// outer power, given all derivatives of u below beta.
struct PowerDerivs {
    const std::unordered_map<MultiIndex, double, MultiIndexHash>& u;
    double u0;
    double p;
    std::unordered_map<MultiIndex, std::unordered_map<int, double>, MultiIndexHash> memo;

    double outer(int c) const {
        double v = std::pow(u0, p - c);
        for (int m = 0; m < c; ++m) v *= p - m;
        return v;
    }

    double get(int c, const MultiIndex& gamma) {
        auto it = memo[gamma].find(c);
        if (it != memo[gamma].end()) return it->second;
        double val;
        if (gamma.order() == 0) {
            val = outer(c);
        } else {
            int axis = 0;
            while (gamma[axis] == 0) ++axis;
            MultiIndex mu = gamma;
            mu[axis] -= 1;
            val = 0.0;
            for (const auto& delta : multiindices_below(mu)) {
                double du = u.at(mu.minus(delta).plus(axis));
                if (du == 0.0) continue;
                val += multiindex_binomial(mu, delta) * get(c + 1, delta) * du;
            }
        }
        memo[gamma][c] = val;
        return val;
    }
};

}  // namespace

Field field_sqrt(Field a) {
    SmoothnessClass s = a.smoothness();
    auto pa = std::make_shared<Field>(std::move(a));
    auto eval = [pa](std::span<const double> x) {
        return std::sqrt(std::max(pa->eval(x), 0.0));
    };
    auto deriv = [pa, eval](const MultiIndex& beta, std::span<const double> x) {
        if (beta.order() == 0) return eval(x);
        std::unordered_map<MultiIndex, double, MultiIndexHash> u;
        for (const auto& gamma : multiindices_below(beta))
            u.emplace(gamma, pa->deriv(gamma, x));
        double u0 = u.at(MultiIndex(static_cast<int>(x.size())));
        if (u0 <= 1e-300) return 0.0;
        PowerDerivs pd{u, u0, 0.5, {}};
        return pd.get(0, beta);
    };
    return Field(s, Field::Backend::EvaluationTree, eval, deriv);
}

Field lift_field(Field g, SmoothnessClass target) {
    if (g.dim() != target.n - 1)
        throw std::invalid_argument("lift_field: dimension mismatch");
    auto pg = std::make_shared<Field>(std::move(g));
    int m = target.n - 1;
    auto eval = [pg, m](std::span<const double> x) { return pg->eval(x.first(m)); };
    auto deriv = [pg, m](const MultiIndex& beta, std::span<const double> x) {
        if (beta[m] > 0) return 0.0;
        MultiIndex inner(m);
        for (int a = 0; a < m; ++a) inner[a] = beta[a];
        return pg->deriv(inner, x.first(m));
    };
    return Field(target, Field::Backend::EvaluationTree, eval, deriv);
}

}  // namespace sosforge
