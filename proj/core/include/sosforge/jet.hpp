#pragma once

#include <cmath>
#include <vector>

namespace sosforge {

/// Truncated univariate Taylor series used to evaluate the smooth cutoff
/// profile and its derivatives in closed form.
struct Jet {
    std::vector<double> c;  // c[m] = f^(m)(t0)/m!

    explicit Jet(int order) : c(order + 1, 0.0) {}
    int order() const { return static_cast<int>(c.size()) - 1; }

    static Jet constant(double v, int order) {
        Jet j(order);
        j.c[0] = v;
        return j;
    }
    static Jet variable(double v, int order) {
        Jet j(order);
        j.c[0] = v;
        if (order >= 1) j.c[1] = 1.0;
        return j;
    }

    Jet operator+(const Jet& o) const {
        Jet r(order());
        for (int m = 0; m <= order(); ++m) r.c[m] = c[m] + o.c[m];
        return r;
    }
    Jet operator-(const Jet& o) const {
        Jet r(order());
        for (int m = 0; m <= order(); ++m) r.c[m] = c[m] - o.c[m];
        return r;
    }
    Jet operator*(const Jet& o) const {
        Jet r(order());
        for (int m = 0; m <= order(); ++m)
            for (int i = 0; i <= m; ++i) r.c[m] += c[i] * o.c[m - i];
        return r;
    }
    Jet scaled(double s) const {
        Jet r(order());
        for (int m = 0; m <= order(); ++m) r.c[m] = c[m] * s;
        return r;
    }

    /// 1/f, requires f(t0) != 0.
    Jet reciprocal() const {
        Jet r(order());
        r.c[0] = 1.0 / c[0];
        for (int m = 1; m <= order(); ++m) {
            double s = 0.0;
            for (int i = 1; i <= m; ++i) s += c[i] * r.c[m - i];
            r.c[m] = -s / c[0];
        }
        return r;
    }

    /// exp(f) via the standard recurrence exp(f)' = exp(f) f'.
    Jet exp() const {
        Jet r(order());
        r.c[0] = std::exp(c[0]);
        for (int m = 1; m <= order(); ++m) {
            double s = 0.0;
            for (int i = 1; i <= m; ++i) s += static_cast<double>(i) * c[i] * r.c[m - i];
            r.c[m] = s / static_cast<double>(m);
        }
        return r;
    }

    double derivative(int m) const {
        double fact = 1.0;
        for (int i = 2; i <= m; ++i) fact *= static_cast<double>(i);
        return c[m] * fact;
    }
};

/// The e^{-1/u} glue: H(u) = h(u)/(h(u)+h(1-u)) with h(u) = e^{-1/u},
/// smooth, 0 at u=0 and 1 at u=1 with all derivatives vanishing.
inline Jet smooth_step_jet(const Jet& u) {
    Jet hu = (u.reciprocal().scaled(-1.0)).exp();
    Jet one = Jet::constant(1.0, u.order());
    Jet hv = ((one - u).reciprocal().scaled(-1.0)).exp();
    return hu * (hu + hv).reciprocal();
}

/// Derivatives phi^(0..max_order)(t) of the even cutoff profile that is 1 on
/// [-plateau, plateau] and 0 outside [-support, support], glued with
/// smooth_step on the transition.
inline std::vector<double> bump_profile_derivs(double t, double plateau, double support,
                                               int max_order) {
    std::vector<double> out(max_order + 1, 0.0);
    double a = std::fabs(t);
    if (a <= plateau) {
        out[0] = 1.0;
        return out;
    }
    if (a >= support) return out;
    double w = support - plateau;
    // u = (support - a)/w in (0,1); phi = H(u).
    Jet uj(max_order);
    uj.c[0] = (support - a) / w;
    if (max_order >= 1) uj.c[1] = -1.0 / w;
    Jet H = smooth_step_jet(uj);
    double sign = (t >= 0.0) ? 1.0 : -1.0;
    double s = 1.0;
    for (int m = 0; m <= max_order; ++m) {
        out[m] = H.derivative(m) * s;
        s *= sign;  // phi is even: odd derivatives flip sign for t < 0
    }
    return out;
}

inline double bump_profile(double t, double plateau, double support) {
    return bump_profile_derivs(t, plateau, support, 0)[0];
}

}  // namespace sosforge
