#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "sosforge/verify.hpp"

#include <cmath>

using namespace sosforge;

namespace {

Field poly(int n, int k, const std::vector<std::pair<std::vector<int>, std::string>>& t,
           double alpha = 1.0) {
    return polynomial_field(Polynomial::from_string_terms(n, t),
                            SmoothnessClass(n, k, alpha));
}

}  // namespace

TEST_CASE("stable-fit") {
    CHECK(stable_fit(1.0, 1.05));
    CHECK(stable_fit(1.0, 1.09));
    CHECK_FALSE(stable_fit(1.0, 1.2));
    CHECK(stable_fit(0.0, 0.0));
    CHECK_FALSE(stable_fit(1.0, std::nan("")));
}

TEST_CASE("reconstruction-corpus") {
    Field f = poly(1, 2, {{{2}, "1"}});
    Box box{{-2.0}, {2.0}};
    DecomposeConfig cfg;
    cfg.max_level = 12;
    Decomposition dec = decompose(f, box, cfg);
    CheckReport rep = check_reconstruction(dec, f, 2000);
    CHECK(rep.pass);
    CHECK(rep.worst <= rep.threshold);
    CHECK(rep.samples == 2000);

    // deleting a term breaks the identity, and the check notices
    Decomposition broken = dec;
    for (auto& ts : broken.terms_by_cube)
        if (!ts.empty()) {
            ts.clear();
            break;
        }
    CheckReport bad = check_reconstruction(broken, f, 2000);
    CHECK_FALSE(bad.pass);
    CHECK(bad.worst > rep.worst);

    auto j = reports_to_json({rep, bad});
    CHECK(j.find("\"pass\": false") != std::string::npos);
    CHECK(j.find("\"checks\"") != std::string::npos);
}

TEST_CASE("power-difference") {
    Box box{{-1.0, -1.0}, {1.0, 1.0}};
    Field f = poly(2, 1, {{{2, 0}, "1"}, {{0, 2}, "1"}});
    CheckReport rep = check_power_difference(f, 1.0, 2.0, 0.5, box, 10000);
    CHECK(rep.pass);
    CHECK(rep.fitted_C > 0.0);

    Field g = poly(1, 1, {{{2}, "1"}, {{0}, "1/4"}});
    CheckReport rep2 =
        check_power_difference(g, 1.0, 1.5, 0.25, Box{{-1.0}, {1.0}}, 10000);
    CHECK(rep2.pass);

    CHECK_THROWS_AS(check_power_difference(f, 1.0, 0.5, 0.5, box, 10),
                    std::invalid_argument);
    CHECK_THROWS_AS(check_power_difference(f, 1.0, 2.0, 0.0, box, 10),
                    std::invalid_argument);
}

TEST_CASE("taylor-gap") {
    Box box{{-1.0}, {1.0}};
    Field f = poly(1, 2, {{{3}, "1"}, {{1}, "-1"}});
    CheckReport rep = check_taylor_gap(f, MultiIndex{1}, box, 10000);
    CHECK(rep.pass);
    CHECK(rep.fitted_C > 0.0);

    Box sq{{-1.0, -1.0}, {1.0, 1.0}};
    Field g = poly(2, 2, {{{2, 1}, "1"}, {{0, 2}, "1"}});
    CHECK(check_taylor_gap(g, MultiIndex{0, 1}, sq, 10000).pass);
    CHECK(check_taylor_gap(g, MultiIndex{0, 0}, sq, 4000).pass);

    CHECK_THROWS_AS(check_taylor_gap(f, MultiIndex{2}, box, 10),
                    std::invalid_argument);
}

TEST_CASE("gradient-bound") {
    Box box{{-1.0}, {1.0}};
    Field f = poly(1, 1, {{{2}, "1"}});
    CheckReport rep = check_gradient_bound(f, 1.0, box, 10000);
    CHECK(rep.pass);
    CHECK(rep.fitted_C == doctest::Approx(2.0).epsilon(0.05));

    Box sq{{-1.0, -1.0}, {1.0, 1.0}};
    Field g = poly(2, 1, {{{2, 0}, "1"}, {{0, 2}, "1"}, {{0, 0}, "1/10"}});
    CHECK(check_gradient_bound(g, 1.0, sq, 10000).pass);
}

TEST_CASE("half-regularity-stability") {
    // sqrt(x^2 + 1) is smooth, so every fitted ratio settles quickly
    Field f = poly(1, 2, {{{2}, "1"}, {{0}, "1"}});
    Field root = field_sqrt(f);
    Box box{{-1.0}, {1.0}};
    CheckReport rep = check_half_regularity(root, SmoothnessClass(1, 2, 1.0), box, 40);
    CHECK(rep.pass);
    CHECK(rep.fitted_C > 0.0);

    // |x| at the half exponent (k = 1): the 1-seminorm fit is stable too
    Field g = poly(1, 1, {{{2}, "1"}});
    CheckReport rep2 =
        check_half_regularity(field_sqrt(g), SmoothnessClass(1, 1, 1.0), box, 40);
    CHECK(rep2.pass);
}
