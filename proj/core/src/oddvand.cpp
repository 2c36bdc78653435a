#include "sosforge/oddvand.hpp"

#include <stdexcept>

namespace sosforge {

namespace {

Rational rational_pow(const Rational& base, int e) {
    Rational r = 1;
    for (int i = 0; i < e; ++i) r *= base;
    return r;
}

}  // namespace

RationalWeights odd_moment_weights(int ell) {
    if (ell % 2 == 0 || ell < 1 || ell > 99)
        throw std::invalid_argument("odd_moment_weights: ell must be odd in [1, 99]");
    RationalWeights w;
    w.ell = ell;
    w.s = (ell + 1) / 2;
    for (int k = 1; k <= w.s; ++k) {
        int sign = ((w.s + k) % 2 == 0) ? 1 : -1;
        w.etas.emplace_back(sign * k);
    }
    for (int k = 0; k < w.s; ++k) {
        Rational denom = w.etas[k];
        for (int i = 0; i < w.s; ++i) {
            if (i == k) continue;
            denom *= w.etas[k] * w.etas[k] - w.etas[i] * w.etas[i];
        }
        if (denom == 0) throw std::domain_error("odd_moment_weights: singular system");
        w.qs.push_back(Rational(1) / denom);
    }
    return w;
}

bool verify_odd_moments(const RationalWeights& w) {
    if (w.s != (w.ell + 1) / 2) return false;
    if (static_cast<int>(w.etas.size()) != w.s ||
        static_cast<int>(w.qs.size()) != w.s)
        return false;
    for (const Rational& q : w.qs)
        if (q < 0) return false;
    for (int j = 1; j <= w.ell; j += 2) {
        Rational sum = 0;
        for (int i = 0; i < w.s; ++i) sum += w.qs[i] * rational_pow(w.etas[i], j);
        if (j < w.ell ? sum != 0 : sum != 1) return false;
    }
    return true;
}

namespace {

std::vector<std::vector<Rational>> moment_matrix(const std::vector<Rational>& etas) {
    int s = static_cast<int>(etas.size());
    std::vector<std::vector<Rational>> m(s, std::vector<Rational>(s));
    for (int i = 0; i < s; ++i)
        for (int j = 0; j < s; ++j) m[i][j] = rational_pow(etas[j], 2 * i + 1);
    return m;
}

}  // namespace

std::vector<Rational> solve_moment_system(const std::vector<Rational>& etas) {
    int s = static_cast<int>(etas.size());
    auto m = moment_matrix(etas);
    std::vector<Rational> rhs(s, 0);
    rhs[s - 1] = 1;
    for (int col = 0; col < s; ++col) {
        int pivot = -1;
        for (int row = col; row < s; ++row)
            if (m[row][col] != 0) {
                pivot = row;
                break;
            }
        if (pivot < 0) throw std::domain_error("solve_moment_system: singular matrix");
        std::swap(m[col], m[pivot]);
        std::swap(rhs[col], rhs[pivot]);
        for (int row = 0; row < s; ++row) {
            if (row == col || m[row][col] == 0) continue;
            Rational factor = m[row][col] / m[col][col];
            for (int c = col; c < s; ++c) m[row][c] -= factor * m[col][c];
            rhs[row] -= factor * rhs[col];
        }
    }
    std::vector<Rational> q(s);
    for (int i = 0; i < s; ++i) q[i] = rhs[i] / m[i][i];
    return q;
}

Rational moment_matrix_determinant(const std::vector<Rational>& etas) {
    int s = static_cast<int>(etas.size());
    auto m = moment_matrix(etas);
    Rational det = 1;
    for (int col = 0; col < s; ++col) {
        int pivot = -1;
        for (int row = col; row < s; ++row)
            if (m[row][col] != 0) {
                pivot = row;
                break;
            }
        if (pivot < 0) return 0;
        if (pivot != col) {
            std::swap(m[col], m[pivot]);
            det = -det;
        }
        det *= m[col][col];
        for (int row = col + 1; row < s; ++row) {
            if (m[row][col] == 0) continue;
            Rational factor = m[row][col] / m[col][col];
            for (int c = col; c < s; ++c) m[row][c] -= factor * m[col][c];
        }
    }
    return det;
}

Rational moment_determinant_product(const std::vector<Rational>& etas) {
    int s = static_cast<int>(etas.size());
    Rational p = 1;
    for (const Rational& e : etas) p *= e;
    for (int i = 0; i < s; ++i)
        for (int j = 0; j < i; ++j) p *= etas[i] * etas[i] - etas[j] * etas[j];
    return p;
}

}  // namespace sosforge
