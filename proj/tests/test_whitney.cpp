#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "sosforge/halton.hpp"
#include "sosforge/whitney.hpp"

#include <cmath>

using namespace sosforge;

namespace {

Field const_field(double c, int n) {
    return polynomial_field(
        Polynomial::from_string_terms(
            n, {{std::vector<int>(n, 0), rational_to_string(Rational(c))}}),
        SmoothnessClass(n, 2, 1.0));
}

// f = |x|^2 + 1 so the control scale is smooth and strictly positive
Field paraboloid(int n) {
    std::vector<std::pair<std::vector<int>, std::string>> terms;
    for (int a = 0; a < n; ++a) {
        std::vector<int> e(n, 0);
        e[a] = 2;
        terms.push_back({e, "1"});
    }
    terms.push_back({std::vector<int>(n, 0), "1"});
    return polynomial_field(Polynomial::from_string_terms(n, terms),
                            SmoothnessClass(n, 2, 1.0));
}

}  // namespace

TEST_CASE("partition-uniform-counts") {
    // unit control scale: every maximal cube lands at the same level
    ControlFunction r1{const_field(1.0, 1), 0.05, 1.0};
    Box seg{{0.0}, {1.0}};
    Partition p1 = build_partition(r1, seg, 0.05, 1.25, 20, 1e-6);
    CHECK(p1.cubes().size() == 64);
    for (const auto& q : p1.cubes()) CHECK(q.level == 6);
    CHECK(p1.uncovered_volume() == 0.0);
    CHECK(p1.dropped_volume() == 0.0);

    ControlFunction r2{const_field(1.0, 2), 0.05, 1.0};
    Box sq{{0.0, 0.0}, {1.0, 1.0}};
    Partition p2 = build_partition(r2, sq, 0.05, 1.25, 20, 1e-6);
    CHECK(p2.cubes().size() == 4096);
    for (const auto& q : p2.cubes()) CHECK(q.level == 6);
}

TEST_CASE("partition-size-test") {
    ControlFunction r{paraboloid(2), 0.05, 1.0};
    Box box{{-2.0, -2.0}, {2.0, 2.0}};
    Partition p = build_partition(r, box, 0.05, 1.25, 20, 1e-6);
    CHECK(p.cubes().size() > 0);
    double cap = 0.05 / (2.0 * std::sqrt(2.0));
    for (const auto& q : p.cubes()) {
        Point c = p.center(q);
        CHECK(p.side(q) <= cap * r(c) + 1e-12);
        CHECK(q.rQ > 0.0);
    }

    // a vanishing control scale leaves nothing, silently below the cutoff
    ControlFunction rz{const_field(0.0, 1), 0.05, 1.0};
    Box seg{{0.0}, {1.0}};
    Partition pz = build_partition(rz, seg, 0.05, 1.25, 6, 1e-6);
    CHECK(pz.cubes().size() == 0);
    CHECK(pz.dropped_volume() == doctest::Approx(1.0));
    CHECK(pz.uncovered_volume() == 0.0);
}

TEST_CASE("overlap-bound") {
    ControlFunction r{const_field(1.0, 2), 0.05, 1.0};
    Box sq{{0.0, 0.0}, {1.0, 1.0}};
    Partition p = build_partition(r, sq, 0.05, 1.25, 20, 1e-6);
    int worst = 0;
    for (int i = 0; i < 2000; ++i) {
        Point x = halton_in_box(i, sq);
        int c = overlap_count(p, x);
        CHECK(c >= 1);
        worst = std::max(worst, c);
        CHECK(static_cast<int>(p.active_cubes(x).size()) >= c);
    }
    CHECK(worst <= 4);
}

TEST_CASE("partition-of-unity") {
    ControlFunction r{paraboloid(2), 0.05, 1.0};
    Box box{{-1.0, -1.0}, {1.0, 1.0}};
    Partition p = build_partition(r, box, 0.05, 1.25, 20, 1e-6);
    for (int i = 0; i < 500; ++i) {
        Point x = halton_in_box(i, box);
        double s = 0.0;
        for (int j : p.active_cubes(x)) {
            double v = psi(p, j, x);
            CHECK(v >= 0.0);
            s += v * v;
        }
        CHECK(s == doctest::Approx(1.0).epsilon(1e-10));
    }
}

TEST_CASE("psi-closed-values") {
    // lone cube: normalization leaves the bare bump, 1 on the plateau
    Partition lone({0.0}, 1.0, 1.25, 0.05, Box{{0.0}, {1.0}});
    lone.add_cube({0, {0}, 1.0});
    lone.finalize();
    double mid = 0.5;
    CHECK(psi(lone, 0, std::span<const double>(&mid, 1)) == doctest::Approx(1.0));

    // two cubes meeting at a face: equal bumps give 1/sqrt(2) each
    Partition pair({0.0}, 1.0, 1.25, 0.05, Box{{0.0}, {2.0}});
    pair.add_cube({0, {0}, 1.0});
    pair.add_cube({0, {1}, 1.0});
    pair.finalize();
    double edge = 1.0;
    std::span<const double> e(&edge, 1);
    CHECK(psi(pair, 0, e) == doctest::Approx(std::sqrt(0.5)));
    CHECK(psi(pair, 1, e) == doctest::Approx(std::sqrt(0.5)));
    double q = 0.25;  // deep in the first plateau, outside the second dilate
    std::span<const double> qs(&q, 1);
    CHECK(psi(pair, 0, qs) == doctest::Approx(1.0));
    CHECK(psi(pair, 1, qs) == doctest::Approx(0.0));
}

TEST_CASE("bump-derivative-decay") {
    ControlFunction r{const_field(1.0, 2), 0.05, 1.0};
    Box sq{{0.0, 0.0}, {1.0, 1.0}};
    Partition p = build_partition(r, sq, 0.05, 1.25, 20, 1e-6);
    double x[2] = {0.517, 0.493};
    auto ids = p.active_cubes(x);
    REQUIRE(ids.size() > 0);
    int j = ids[0];
    double h = 1e-6;

    // exact derivative oracle against central differences
    for (MultiIndex beta : {MultiIndex{1, 0}, MultiIndex{0, 1}}) {
        int a = beta[0] == 1 ? 0 : 1;
        double hi[2] = {x[0], x[1]}, lo[2] = {x[0], x[1]};
        hi[a] += h;
        lo[a] -= h;
        double fd = (psi(p, j, hi) - psi(p, j, lo)) / (2.0 * h);
        CHECK(psi_derivative(p, j, beta, x) == doctest::Approx(fd).epsilon(1e-4));
    }
    double hh[2] = {x[0] + h, x[1]}, ll[2] = {x[0] - h, x[1]};
    double fd2 = (psi(p, j, hh) - 2.0 * psi(p, j, x) + psi(p, j, ll)) / (h * h);
    CHECK(psi_derivative(p, j, MultiIndex{2, 0}, x) ==
          doctest::Approx(fd2).epsilon(1e-3));

    // magnitudes grow like the inverse side per derivative order
    double side = p.side(p.cubes()[j]);
    double worst1 = 0.0;
    for (int i = 0; i < 200; ++i) {
        Point y = halton_in_box(i, p.dilated_box(p.cubes()[j]));
        worst1 = std::max(worst1,
                          std::fabs(psi_derivative(p, j, MultiIndex{1, 0}, y)));
    }
    CHECK(worst1 > 1.0 / side * 0.01);
    CHECK(worst1 < 1.0 / side * 1e3);

    // the field wrapper exposes the same oracle
    auto sp = std::make_shared<Partition>(p);
    Field pf = psi_field(sp, j, SmoothnessClass(2, 2, 1.0));
    CHECK(pf.eval(x) == doctest::Approx(psi(p, j, x)));
    CHECK(pf.deriv(MultiIndex{1, 1}, x) ==
          doctest::Approx(psi_derivative(p, j, MultiIndex{1, 1}, x)));
}

TEST_CASE("partition-json-roundtrip") {
    ControlFunction r{paraboloid(2), 0.05, 1.0};
    Box box{{-1.0, -1.0}, {1.0, 1.0}};
    Partition p = build_partition(r, box, 0.05, 1.25, 20, 1e-6);
    Partition q = Partition::from_json(p.to_json(), box, 0.05);
    REQUIRE(q.cubes().size() == p.cubes().size());
    CHECK(q.scale() == p.scale());
    CHECK(q.lambda() == p.lambda());
    for (std::size_t i = 0; i < p.cubes().size(); ++i) {
        CHECK(q.cubes()[i] == p.cubes()[i]);
        CHECK(q.cubes()[i].rQ == doctest::Approx(p.cubes()[i].rQ));
    }
    double x[2] = {0.2, -0.4};
    CHECK(psi(q, 7, x) == doctest::Approx(psi(p, 7, x)));
}

TEST_CASE("partition-svg-smoke") {
    ControlFunction r{const_field(1.0, 2), 0.2, 1.0};
    Box sq{{0.0, 0.0}, {1.0, 1.0}};
    Partition p = build_partition(r, sq, 0.2, 1.25, 20, 1e-6);
    std::string svg = partition_svg(p);
    CHECK(svg.find("<svg") != std::string::npos);
    CHECK(svg.find("<rect") != std::string::npos);
}
