#include "sosforge/bounds.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace sosforge {

namespace {

BigInt pow2n(int n) {
    BigInt v = 1;
    return v << n;
}

BigInt shell(int n) { return pow2n(2 * n) - pow2n(n); }  // 4^n - 2^n

}  // namespace

BigInt upper_count(int n) {
    if (n < 1 || n > 12) throw std::invalid_argument("upper_count: n must be in [1, 12]");
    if (n == 1) return 2;
    BigInt s = 27;
    for (int m = 3; m <= n; ++m) s = shell(m) * (s + 1);
    return s;
}

BigInt upper_count_iterated(int n) {
    if (n < 2) throw std::invalid_argument("upper_count_iterated: n must be >= 2");
    BigInt head = 27;
    for (int ell = 3; ell <= n; ++ell) head *= shell(ell);
    BigInt tail = 0;
    for (int j = 0; j <= n - 3; ++j) {
        BigInt prod = 1;
        for (int ell = n - j; ell <= n; ++ell) prod *= shell(ell);
        tail += prod;
    }
    return head + tail;
}

bool upper_bound_check(int n) {
    if (n < 3 || n > 12)
        throw std::invalid_argument("upper_bound_check: n must be in [3, 12]");
    using BigFloat = boost::multiprecision::cpp_bin_float_50;
    BigFloat s(upper_count(n).str());
    BigFloat e = n * n + n - BigFloat("1.3844");
    BigFloat refined = pow(BigFloat(2), e);
    BigFloat weak = pow(BigFloat(2), BigFloat(n * n + n - 1));
    return s < refined && refined < weak;
}

LowerBound lower_bound(int n, int k) {
    if (n < 1) throw std::invalid_argument("lower_bound: n must be >= 1");
    if (k < 2) throw std::invalid_argument("lower_bound: k must be >= 2");
    int keff = (k % 2 == 0) ? k : k - 1;
    Rational exact = pow2n(n - 1);
    for (int j = 1; j <= n - 1; ++j)
        exact *= Rational(j + keff, 2 * j + keff);
    double cf = std::pow(2.0, n - 1) *
                std::pow(static_cast<double>(keff) / (keff + n), n / 2.0);
    return {exact, cf};
}

std::vector<BoundsRow> bounds_table(int n_lo, int n_hi, int k_lo, int k_hi) {
    std::vector<BoundsRow> rows;
    for (int n = n_lo; n <= n_hi; ++n)
        for (int k = k_lo; k <= k_hi; ++k) {
            BoundsRow row;
            row.n = n;
            row.k = k;
            row.s_n = upper_count(n).str();
            LowerBound lb = lower_bound(n, k);
            row.lower_exact = rational_to_string(lb.exact);
            row.lower_closed_form = lb.closed_form;
            rows.push_back(std::move(row));
        }
    return rows;
}

std::string bounds_table_markdown(const std::vector<BoundsRow>& rows) {
    std::ostringstream out;
    out << "| n | k | lower (exact) | lower (closed form) | upper count |\n";
    out << "|---|---|---------------|---------------------|-------------|\n";
    for (const auto& r : rows)
        out << "| " << r.n << " | " << r.k << " | " << r.lower_exact << " | "
            << r.lower_closed_form << " | " << r.s_n << " |\n";
    return out.str();
}

std::string bounds_table_csv(const std::vector<BoundsRow>& rows) {
    std::ostringstream out;
    out << "n,k,lower_exact,lower_closed_form,upper_count\n";
    for (const auto& r : rows)
        out << r.n << "," << r.k << "," << r.lower_exact << ","
            << r.lower_closed_form << "," << r.s_n << "\n";
    return out.str();
}

}  // namespace sosforge
