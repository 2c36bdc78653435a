#pragma once

#include "sosforge/types.hpp"

#include <string>
#include <vector>

namespace sosforge {

/// Square-count recursion: s_1 = 2, s_2 = 27, s_n = (4^n - 2^n)(s_{n-1} + 1).
BigInt upper_count(int n);

/// s_n < 2^{n^2+n-1.3844} < 2^{n^2+n-1}, checked in high-precision arithmetic.
bool upper_bound_check(int n);

/// Iterated closed form of the recursion, for cross-checking upper_count.
BigInt upper_count_iterated(int n);

struct LowerBound {
    Rational exact;     // 2^{n-1} prod_{j<n} (j+k_eff)/(2j+k_eff)
    double closed_form;  // 2^{n-1} (k_eff/(k_eff+n))^{n/2}
};

/// Pythagoras-number lower bound; odd k uses k-1.
LowerBound lower_bound(int n, int k);

struct BoundsRow {
    int n = 0;
    int k = 0;
    std::string s_n;
    std::string lower_exact;
    double lower_closed_form = 0.0;
};

std::vector<BoundsRow> bounds_table(int n_lo, int n_hi, int k_lo, int k_hi);
std::string bounds_table_markdown(const std::vector<BoundsRow>& rows);
std::string bounds_table_csv(const std::vector<BoundsRow>& rows);

}  // namespace sosforge
