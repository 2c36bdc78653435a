#pragma once

#include <cstdint>
#include <functional>
#include <vector>

namespace sosforge {

/// Multi-index beta in N_0^n with the entrywise partial order.
struct MultiIndex {
    std::vector<int> e;

    MultiIndex() = default;
    explicit MultiIndex(int n) : e(n, 0) {}
    MultiIndex(std::initializer_list<int> init) : e(init) {}

    int dim() const { return static_cast<int>(e.size()); }
    int order() const {
        int s = 0;
        for (int v : e) s += v;
        return s;
    }
    int operator[](int i) const { return e[i]; }
    int& operator[](int i) { return e[i]; }

    bool operator==(const MultiIndex& o) const { return e == o.e; }

    /// Entrywise gamma <= beta.
    bool leq(const MultiIndex& beta) const {
        for (int i = 0; i < dim(); ++i)
            if (e[i] > beta.e[i]) return false;
        return true;
    }

    MultiIndex plus(int axis) const {
        MultiIndex r = *this;
        r.e[axis] += 1;
        return r;
    }
    MultiIndex minus(const MultiIndex& g) const {
        MultiIndex r = *this;
        for (int i = 0; i < dim(); ++i) r.e[i] -= g.e[i];
        return r;
    }
    MultiIndex plus(const MultiIndex& g) const {
        MultiIndex r = *this;
        for (int i = 0; i < dim(); ++i) r.e[i] += g.e[i];
        return r;
    }
};

double factorial(int m);
double multiindex_factorial(const MultiIndex& b);
/// Generalized binomial beta!/(gamma!(beta-gamma)!).
double multiindex_binomial(const MultiIndex& beta, const MultiIndex& gamma);

/// All multi-indices of dimension n with order exactly m, lexicographic order.
std::vector<MultiIndex> multiindices_of_order(int n, int m);
/// All gamma <= beta, lexicographic order (includes 0 and beta).
std::vector<MultiIndex> multiindices_below(const MultiIndex& beta);

struct MultiIndexHash {
    std::size_t operator()(const MultiIndex& m) const {
        std::size_t h = 1469598103934665603ull;
        for (int v : m.e) {
            h ^= static_cast<std::size_t>(v) + 0x9e3779b9;
            h *= 1099511628211ull;
        }
        return h;
    }
};

}  // namespace sosforge
