#include "sosforge/verify.hpp"

#include "sosforge/halton.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>

namespace sosforge {

std::string CheckReport::to_json() const {
    nlohmann::json j{{"name", name},       {"samples", samples},
                     {"skipped", skipped}, {"worst", worst},
                     {"threshold", threshold}, {"fitted_C", fitted_C},
                     {"pass", pass}};
    return j.dump();
}

std::string reports_to_json(const std::vector<CheckReport>& reports) {
    nlohmann::json j = nlohmann::json::array();
    bool all = true;
    for (const auto& r : reports) {
        j.push_back(nlohmann::json::parse(r.to_json()));
        all = all && r.pass;
    }
    nlohmann::json doc{{"pass", all}, {"checks", j}};
    return doc.dump(2);
}

bool stable_fit(double c_half, double c_full) {
    if (!std::isfinite(c_full) || !std::isfinite(c_half)) return false;
    return std::fabs(c_full - c_half) <= 0.10 * std::max(c_half, 1e-12);
}

CheckReport check_reconstruction(const Decomposition& dec, const Field& f, int samples,
                                 std::uint64_t seed) {
    CheckReport rep;
    rep.name = "reconstruction";
    rep.samples = samples;
    double max_f = 0.0;
    for (int i = 0; i < samples; ++i) {
        Point x = halton_in_box(static_cast<std::uint64_t>(i), dec.box, seed);
        double fx = f.eval(x);
        max_f = std::max(max_f, fx);
        if (control_value(f, x) <= dec.diagnostics.delta_cut) {
            rep.skipped += 1;
            continue;
        }
        rep.worst = std::max(rep.worst, std::fabs(dec.sum_of_squares(x) - fx));
    }
    rep.threshold = 1e-8 * (1.0 + max_f);
    rep.pass = rep.worst <= rep.threshold;
    return rep;
}

namespace {

struct PairSchedule {
    const Box& box;
    std::uint64_t seed;

    std::pair<Point, Point> pair(int i) const {
        Point x = halton_in_box(static_cast<std::uint64_t>(i), box, seed);
        Point y = halton_in_box(static_cast<std::uint64_t>(i), box, seed + 7919);
        // Pull y toward x on a shrinking schedule so small separations are
        // represented alongside box-scale ones.
        double t = std::pow(0.5, i % 16);
        for (std::size_t a = 0; a < y.size(); ++a) y[a] = x[a] + t * (y[a] - x[a]);
        return {std::move(x), std::move(y)};
    }
};

double distance(const Point& x, const Point& y) {
    double d2 = 0.0;
    for (std::size_t a = 0; a < x.size(); ++a) d2 += (x[a] - y[a]) * (x[a] - y[a]);
    return std::sqrt(d2);
}

double holder_seminorm(const std::function<double(const Point&)>& g, double alpha,
                       const Box& box, int pairs, std::uint64_t seed) {
    PairSchedule sched{box, seed};
    double best = 0.0;
    for (int i = 0; i < pairs; ++i) {
        auto [x, y] = sched.pair(i);
        double d = distance(x, y);
        if (d < 1e-14) continue;
        best = std::max(best, std::fabs(g(x) - g(y)) / std::pow(d, alpha));
    }
    return best;
}

}  // namespace

CheckReport check_power_difference(const Field& f, double alpha, double s, double eps,
                                   const Box& box, int pairs, std::uint64_t seed) {
    if (!(s > 1.0) || !(eps > 0.0))
        throw std::invalid_argument("power_difference: need s > 1 and eps > 0");
    CheckReport rep;
    rep.name = "power_difference";
    rep.samples = pairs;
    double semi = holder_seminorm([&](const Point& x) { return f.eval(x); }, alpha, box,
                                  pairs, seed + 104729);
    double C = (1.0 + eps) * std::pow(semi, s) /
               std::pow(std::pow(1.0 + eps, 1.0 / (s - 1.0)) - 1.0, s - 1.0);
    rep.fitted_C = C;
    PairSchedule sched{box, seed};
    for (int i = 0; i < pairs; ++i) {
        auto [x, y] = sched.pair(i);
        double fx = std::max(f.eval(x), 0.0), fy = std::max(f.eval(y), 0.0);
        double lhs = std::fabs(std::pow(fx, s) - std::pow(fy, s));
        double rhs = C * std::pow(distance(x, y), s * alpha) +
                     eps * std::max(std::pow(fx, s), std::pow(fy, s));
        rep.worst = std::max(rep.worst, lhs - rhs);
    }
    rep.threshold = 1e-9 * (1.0 + std::pow(semi, s));
    rep.pass = rep.worst <= rep.threshold;
    return rep;
}

CheckReport check_taylor_gap(const Field& f, const MultiIndex& beta, const Box& box,
                             int pairs, std::uint64_t seed) {
    const auto& s = f.smoothness();
    if (beta.order() >= s.k)
        throw std::invalid_argument("taylor_gap: |beta| must be below k");
    CheckReport rep;
    rep.name = "taylor_gap";
    rep.samples = pairs;
    int top = s.k - beta.order();
    double C = 0.0;
    for (const auto& gamma : multiindices_of_order(s.n, top)) {
        MultiIndex bg = beta.plus(gamma);
        double semi = holder_seminorm(
            [&](const Point& x) { return f.deriv(bg, x); }, s.alpha, box,
            std::max(pairs / 4, 64), seed + 31 * MultiIndexHash{}(gamma));
        C += semi / multiindex_factorial(gamma);
    }
    rep.fitted_C = C;
    PairSchedule sched{box, seed};
    for (int i = 0; i < pairs; ++i) {
        auto [x, y] = sched.pair(i);
        double d = distance(x, y);
        double lhs = std::fabs(f.deriv(beta, x) - f.deriv(beta, y));
        double rhs = C * std::pow(d, top + s.alpha);
        for (int m = 1; m <= top; ++m)
            for (const auto& gamma : multiindices_of_order(s.n, m)) {
                MultiIndex bg = beta.plus(gamma);
                rhs += std::pow(d, m) * std::fabs(f.deriv(bg, x)) /
                       multiindex_factorial(gamma);
            }
        rep.worst = std::max(rep.worst, lhs - rhs);
    }
    rep.threshold = 1e-9 * (1.0 + C);
    rep.pass = rep.worst <= rep.threshold;
    return rep;
}

CheckReport check_gradient_bound(const Field& f, double alpha, const Box& box,
                                 int samples, std::uint64_t seed) {
    CheckReport rep;
    rep.name = "gradient_bound";
    rep.samples = samples;
    int n = f.dim();
    auto grad = [&](const Point& x) {
        Point g(n);
        for (int a = 0; a < n; ++a) {
            MultiIndex e(n);
            e[a] = 1;
            g[a] = f.deriv(e, x);
        }
        return g;
    };
    double semi = 0.0;
    PairSchedule sched{box, seed + 104729};
    for (int i = 0; i < samples; ++i) {
        auto [x, y] = sched.pair(i);
        double d = distance(x, y);
        if (d < 1e-14) continue;
        semi = std::max(semi, distance(grad(x), grad(y)) / std::pow(d, alpha));
    }
    rep.fitted_C = semi;
    double shape = std::pow(alpha, 1.0 / (1.0 + alpha)) +
                   std::pow(alpha, -alpha / (1.0 + alpha));
    for (int i = 0; i < samples; ++i) {
        Point x = halton_in_box(static_cast<std::uint64_t>(i), box, seed);
        Point g = grad(x);
        double gn = 0.0;
        for (double v : g) gn += v * v;
        gn = std::sqrt(gn);
        double rhs = std::pow(semi, 1.0 / (1.0 + alpha)) *
                     std::pow(std::max(f.eval(x), 0.0), alpha / (1.0 + alpha)) * shape;
        rep.worst = std::max(rep.worst, gn - rhs);
    }
    rep.threshold = 1e-9 * (1.0 + semi);
    rep.pass = rep.worst <= rep.threshold;
    return rep;
}

CheckReport check_half_regularity(const Field& term, SmoothnessClass s, const Box& region,
                                  int samples, std::uint64_t seed) {
    CheckReport rep;
    rep.name = "half_regularity";
    rep.samples = samples;
    int half = s.k / 2;
    double lambda = (s.k + s.alpha) / 2.0 - half;
    if (lambda <= 0.0 || lambda > 1.0) lambda = std::min(std::max(lambda, 0.25), 1.0);
    double radius = 0.05 * region.max_side();
    rep.pass = true;
    for (int order = 0; order <= half; ++order)
        for (const auto& beta : multiindices_of_order(s.n, order)) {
            double c1 = 0.0, c2 = 0.0;
            for (int i = 0; i < samples; ++i) {
                Point x = halton_in_box(static_cast<std::uint64_t>(i), region, seed);
                double e2 = pointwise_seminorm_estimate(term, beta, lambda, x, radius,
                                                        64, seed + 17);
                double e1 = pointwise_seminorm_estimate(term, beta, lambda, x, radius,
                                                        32, seed + 17);
                c1 = std::max(c1, e1);
                c2 = std::max(c2, e2);
            }
            rep.fitted_C = std::max(rep.fitted_C, c2);
            rep.worst = std::max(rep.worst, std::fabs(c2 - c1));
            if (!stable_fit(c1, c2)) rep.pass = false;
        }
    rep.threshold = 0.10 * std::max(rep.fitted_C, 1e-12);
    return rep;
}

}  // namespace sosforge
