#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "sosforge/control.hpp"

#include <cmath>

using namespace sosforge;

namespace {

Field poly2(const std::vector<std::pair<std::vector<int>, std::string>>& terms, int k,
            double alpha = 1.0) {
    return polynomial_field(Polynomial::from_string_terms(2, terms),
                            SmoothnessClass(2, k, alpha));
}

Field poly1(const std::vector<std::pair<std::vector<int>, std::string>>& terms, int k,
            double alpha = 1.0) {
    return polynomial_field(Polynomial::from_string_terms(1, terms),
                            SmoothnessClass(1, k, alpha));
}

}  // namespace

TEST_CASE("sphere-sup-values") {
    double x[2] = {0.7, -0.3};
    // x^2 - y^2: curvature eigenvalues +-2
    Field saddle = poly2({{{2, 0}, "1"}, {{0, 2}, "-1"}}, 2);
    CHECK(sphere_sup_positive_part(saddle, x, 2) == doctest::Approx(2.0));
    // -x^2 - y^2: no positive curvature
    Field cap = poly2({{{2, 0}, "-1"}, {{0, 2}, "-1"}}, 2);
    CHECK(sphere_sup_positive_part(cap, x, 2) == doctest::Approx(0.0));
    // x^4 in one variable, order 4: fourth derivative 24
    Field quart = poly1({{{4}, "1"}}, 4);
    double t = 1.3;
    CHECK(sphere_sup_positive_part(quart, std::span<const double>(&t, 1), 4) ==
          doctest::Approx(24.0));
    // x^4 + y^4 in the plane at order 4: max of 24 cos^4 + 24 sin^4 = 24
    Field quart2 = poly2({{{4, 0}, "1"}, {{0, 4}, "1"}}, 4);
    CHECK(sphere_sup_positive_part(quart2, x, 4) == doctest::Approx(24.0));
    CHECK_THROWS_AS(sphere_sup_positive_part(saddle, x, 1), std::invalid_argument);
    CHECK_THROWS_AS(sphere_sup_positive_part(saddle, x, 4), std::invalid_argument);
}

TEST_CASE("top-eigenpair") {
    // [[2, 1], [1, 2]]: top eigenvalue 3, direction (1, 1)/sqrt(2)
    auto [lam, vec] = top_eigenpair({2.0, 1.0, 1.0, 2.0}, 2);
    CHECK(lam == doctest::Approx(3.0));
    CHECK(std::fabs(vec[0]) == doctest::Approx(std::sqrt(0.5)));
    CHECK(std::fabs(vec[1]) == doctest::Approx(std::sqrt(0.5)));
    CHECK(vec[0] * vec[1] > 0.0);
}

TEST_CASE("control-value-branches") {
    // f = x^2, k = 2, alpha = 1: branches |x|^{2/3} and 2
    Field f = poly1({{{2}, "1"}}, 2);
    double zero = 0.0, eight = 8.0;
    CHECK(control_value(f, std::span<const double>(&zero, 1)) == doctest::Approx(2.0));
    CHECK(control_value(f, std::span<const double>(&eight, 1)) == doctest::Approx(4.0));
    Field z = poly1({{{0}, "0"}}, 2);
    CHECK(control_value(z, std::span<const double>(&eight, 1)) == 0.0);

    // value branch dominates everything: r >= f^{1/(k+alpha)}
    Field g = poly2({{{2, 0}, "1"}, {{0, 2}, "1"}, {{0, 0}, "1"}}, 2);
    for (double t = -2.0; t <= 2.0; t += 0.37) {
        double p[2] = {t, 1.0 - t};
        double r = control_value(g, p);
        CHECK(r >= std::pow(g.eval(p), 1.0 / 3.0) - 1e-12);
    }
}

TEST_CASE("slow-variation") {
    Box box{{-2.0, -2.0}, {2.0, 2.0}};
    // strictly positive smooth scale: passes at small nu
    Field g = poly2({{{2, 0}, "1"}, {{0, 2}, "1"}, {{0, 0}, "1"}}, 2);
    ControlFunction r{g, 0.01, 1.0};
    auto rep = validate_slow_variation(r, box, 400);
    CHECK(rep.pass);
    CHECK(rep.usable_pairs == 400);
    CHECK(rep.worst_ratio <= 0.25);

    // huge nu breaks the variation bound for x^2 on a wide box
    Box wide{{-40.0}, {40.0}};
    Field f = poly1({{{2}, "1"}}, 2);
    ControlFunction bad{f, 10.0, 1.0};
    auto rep2 = validate_slow_variation(bad, wide, 400);
    CHECK_FALSE(rep2.pass);

    auto j = rep.to_json();
    CHECK(j.find("\"pass\":true") != std::string::npos);
}

TEST_CASE("derivative-control-fit") {
    Box box{{-20.0}, {20.0}};
    Field f = poly1({{{2}, "1"}}, 2);
    ControlFunction r{f, 0.05, 1.0};
    auto rep = check_derivative_control(f, r, box, 1, 500);
    CHECK(rep.pass);
    CHECK(rep.fitted_C <= 4.0 + 1e-9);
    CHECK(rep.fitted_C > 0.0);

    Field c = poly1({{{0}, "5"}}, 2);
    ControlFunction rc{c, 0.05, 1.0};
    auto repc = check_derivative_control(c, rc, box, 1, 200);
    CHECK(repc.fitted_C == 0.0);
}

TEST_CASE("gating-low-k") {
    Box box{{-2.0, -2.0}, {2.0, 2.0}};
    Field f = poly2({{{2, 0}, "1"}, {{0, 2}, "1"}}, 2);
    CHECK(check_needed_condition(f, box, 64));
    // quartic-flat zero: the order-4 branch of the scale function stays at 24
    // while both right-hand branches vanish at the origin, so the bound fails
    Field q = poly2({{{4, 0}, "1"}, {{0, 4}, "1"}}, 4);
    CHECK_FALSE(check_needed_condition(q, box, 200));
    // small multiple of x^2 + y^4: the curvature branch dominates everywhere
    Field ok = poly2({{{2, 0}, "1/100"}, {{0, 4}, "1/100"}}, 4);
    CHECK(check_needed_condition(ok, Box{{-1.0, -1.0}, {1.0, 1.0}}, 200));
}

TEST_CASE("omega-fit-positive") {
    Box box{{-2.0, -2.0}, {2.0, 2.0}};
    Field f = poly2({{{2, 0}, "1"}, {{0, 2}, "1"}}, 2);
    ControlFunction r{f, 0.05, 1.0};
    double w = fit_omega(f, r, box, 200);
    CHECK(w > 0.0);
    CHECK(w < 100.0);
    CHECK(fit_omega(f, r, box, 200) == w);
}
