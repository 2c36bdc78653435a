#include "sosforge/multiindex.hpp"

namespace sosforge {

double factorial(int m) {
    double f = 1.0;
    for (int i = 2; i <= m; ++i) f *= static_cast<double>(i);
    return f;
}

double multiindex_factorial(const MultiIndex& b) {
    double f = 1.0;
    for (int v : b.e) f *= factorial(v);
    return f;
}

double multiindex_binomial(const MultiIndex& beta, const MultiIndex& gamma) {
    return multiindex_factorial(beta) /
           (multiindex_factorial(gamma) * multiindex_factorial(beta.minus(gamma)));
}

static void enumerate_order(int n, int m, int axis, MultiIndex& cur,
                            std::vector<MultiIndex>& out) {
    if (axis == n - 1) {
        cur.e[axis] = m;
        out.push_back(cur);
        return;
    }
    for (int v = 0; v <= m; ++v) {
        cur.e[axis] = v;
        enumerate_order(n, m - v, axis + 1, cur, out);
    }
}

std::vector<MultiIndex> multiindices_of_order(int n, int m) {
    std::vector<MultiIndex> out;
    MultiIndex cur(n);
    enumerate_order(n, m, 0, cur, out);
    return out;
}

std::vector<MultiIndex> multiindices_below(const MultiIndex& beta) {
    std::vector<MultiIndex> out;
    MultiIndex cur(beta.dim());
    std::size_t total = 1;
    for (int v : beta.e) total *= static_cast<std::size_t>(v + 1);
    for (std::size_t idx = 0; idx < total; ++idx) {
        std::size_t t = idx;
        for (int a = 0; a < beta.dim(); ++a) {
            cur.e[a] = static_cast<int>(t % static_cast<std::size_t>(beta.e[a] + 1));
            t /= static_cast<std::size_t>(beta.e[a] + 1);
        }
        out.push_back(cur);
    }
    return out;
}

}  // namespace sosforge
