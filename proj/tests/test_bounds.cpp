#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "sosforge/bounds.hpp"

using namespace sosforge;

TEST_CASE("count-recursion") {
    CHECK(upper_count(1) == 2);
    CHECK(upper_count(2) == 27);
    CHECK(upper_count(3) == BigInt(56) * 28);  // (64-8)(27+1)
    for (int n = 2; n <= 10; ++n) CHECK(upper_count(n) == upper_count_iterated(n));
    for (int n = 3; n <= 10; ++n) {
        BigInt factor = 1;
        for (int i = 0; i < n; ++i) factor *= 4;
        BigInt minus = 1;
        for (int i = 0; i < n; ++i) minus *= 2;
        CHECK(upper_count(n) == (factor - minus) * (upper_count(n - 1) + 1));
    }
    CHECK_THROWS_AS(upper_count(0), std::invalid_argument);
}

TEST_CASE("count-exponent-bound") {
    for (int n = 3; n <= 12; ++n) CHECK(upper_bound_check(n));
}

TEST_CASE("lower-bound-quadratics") {
    CHECK(lower_bound(2, 2).exact == Rational(3, 2));
    CHECK(lower_bound(3, 2).exact == Rational(2));
    CHECK(lower_bound(1, 2).exact == Rational(1));
    for (int n = 1; n <= 10; ++n)
        CHECK(lower_bound(n, 2).exact >= Rational(n + 1, 2));
    for (int n = 1; n <= 3; ++n)
        CHECK(lower_bound(n, 2).exact == Rational(n + 1, 2));
    // odd smoothness order falls back to the even one below it
    CHECK(lower_bound(4, 3).exact == lower_bound(4, 2).exact);
    CHECK(lower_bound(5, 7).exact == lower_bound(5, 6).exact);
    // the closed form never exceeds the exact product
    for (int n = 1; n <= 8; ++n)
        for (int k = 2; k <= 10; ++k) {
            LowerBound lb = lower_bound(n, k);
            double exact = static_cast<double>(lb.exact);
            CHECK(lb.closed_form <= exact * (1.0 + 1e-12));
            CHECK(lb.closed_form > 0.0);
        }
}

TEST_CASE("lower-below-upper") {
    for (int n = 1; n <= 8; ++n)
        for (int k = 2; k <= 10; ++k) {
            Rational up(upper_count(n));
            CHECK(lower_bound(n, k).exact <= up);
        }
}

TEST_CASE("bounds-table-output") {
    auto rows = bounds_table(1, 3, 2, 3);
    CHECK(rows.size() == 6);
    CHECK(rows[0].s_n == "2");
    std::string md = bounds_table_markdown(rows);
    CHECK(md.find("| 2 | 2 |") != std::string::npos);
    CHECK(md.find("27") != std::string::npos);
    std::string csv = bounds_table_csv(rows);
    CHECK(csv.find("n,k,") == 0);
    CHECK(csv.find("3/2") != std::string::npos);
}
