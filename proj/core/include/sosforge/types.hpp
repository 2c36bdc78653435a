#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace sosforge {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

using Point = std::vector<double>;

/// Axis-aligned box given by per-axis [lo, hi] intervals.
struct Box {
    std::vector<double> lo;
    std::vector<double> hi;

    int dim() const { return static_cast<int>(lo.size()); }

    double side(int axis) const { return hi[axis] - lo[axis]; }

    double max_side() const {
        double m = 0.0;
        for (int a = 0; a < dim(); ++a) m = std::max(m, side(a));
        return m;
    }

    double volume() const {
        double v = 1.0;
        for (int a = 0; a < dim(); ++a) v *= side(a);
        return v;
    }

    bool contains(std::span<const double> x) const {
        for (int a = 0; a < dim(); ++a)
            if (x[a] < lo[a] || x[a] > hi[a]) return false;
        return true;
    }

    void validate() const {
        if (lo.size() != hi.size() || lo.empty())
            throw std::invalid_argument("box: mismatched or empty bounds");
        for (int a = 0; a < dim(); ++a)
            if (!(lo[a] < hi[a])) throw std::invalid_argument("box: degenerate axis");
    }
};

/// (n, k, alpha) metadata for a C^{k,alpha} function.
struct SmoothnessClass {
    int n = 1;
    int k = 1;
    double alpha = 1.0;

    SmoothnessClass() = default;
    SmoothnessClass(int n_, int k_, double alpha_) : n(n_), k(k_), alpha(alpha_) {
        if (n < 1) throw std::invalid_argument("smoothness: dimension must be >= 1");
        if (k < 1) throw std::invalid_argument("smoothness: k must be >= 1");
        if (!(alpha > 0.0 && alpha <= 1.0))
            throw std::invalid_argument("smoothness: alpha must lie in (0,1]");
    }
};

/// Parses "p/q" or a plain integer/decimal string into an exact rational.
Rational parse_rational(const std::string& s);
std::string rational_to_string(const Rational& r);

}  // namespace sosforge
