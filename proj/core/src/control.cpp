#include "sosforge/control.hpp"

#include "sosforge/halton.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <limits>

namespace sosforge {

double top_eigenvalue(std::vector<double> a, int n) {
    return top_eigenpair(std::move(a), n).first;
}

std::pair<double, std::vector<double>> top_eigenpair(std::vector<double> a, int n) {
    std::vector<double> v(n * n, 0.0);
    for (int i = 0; i < n; ++i) v[i * n + i] = 1.0;
    for (int sweep = 0; sweep < 64; ++sweep) {
        double off = 0.0;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) off += a[p * n + q] * a[p * n + q];
        if (off < 1e-28) break;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) {
                double apq = a[p * n + q];
                if (std::fabs(apq) < 1e-300) continue;
                double theta = 0.5 * std::atan2(2.0 * apq, a[q * n + q] - a[p * n + p]);
                double c = std::cos(theta), s = std::sin(theta);
                for (int i = 0; i < n; ++i) {
                    double aip = a[i * n + p], aiq = a[i * n + q];
                    a[i * n + p] = c * aip - s * aiq;
                    a[i * n + q] = s * aip + c * aiq;
                }
                for (int i = 0; i < n; ++i) {
                    double api = a[p * n + i], aqi = a[q * n + i];
                    a[p * n + i] = c * api - s * aqi;
                    a[q * n + i] = s * api + c * aqi;
                }
                for (int i = 0; i < n; ++i) {
                    double vip = v[i * n + p], viq = v[i * n + q];
                    v[i * n + p] = c * vip - s * viq;
                    v[i * n + q] = s * vip + c * viq;
                }
            }
    }
    int best = 0;
    for (int i = 1; i < n; ++i)
        if (a[i * n + i] > a[best * n + best]) best = i;
    std::vector<double> vec(n);
    for (int i = 0; i < n; ++i) vec[i] = v[i * n + best];
    return {a[best * n + best], vec};
}

namespace {

double angular_form(const Field& f, std::span<const double> x, int j, double theta) {
    double xi[2] = {std::cos(theta), std::sin(theta)};
    return directional_form(f, x, xi, j);
}

// Golden-section maximization on [lo, hi].
double golden_max(const std::function<double(double)>& g, double lo, double hi,
                  double tol) {
    const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo, b = hi;
    double c = b - phi * (b - a), d = a + phi * (b - a);
    double fc = g(c), fd = g(d);
    while (b - a > tol) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - phi * (b - a);
            fc = g(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + phi * (b - a);
            fd = g(d);
        }
    }
    return std::max(fc, fd);
}

double sphere_sup_general(const Field& f, std::span<const double> x, int j) {
    int n = f.dim();
    int coarse = 2048;
    std::vector<double> best_xi(n);
    double best = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < coarse; ++i) {
        Point p = halton_point(static_cast<std::uint64_t>(i), n, 31);
        double norm = 0.0;
        std::vector<double> xi(n);
        for (int a = 0; a < n; ++a) {
            xi[a] = 2.0 * p[a] - 1.0;
            norm += xi[a] * xi[a];
        }
        norm = std::sqrt(norm);
        if (norm < 1e-8) continue;
        for (int a = 0; a < n; ++a) xi[a] /= norm;
        double v = directional_form(f, x, xi, j);
        if (v > best) {
            best = v;
            best_xi = xi;
        }
    }
    // Local refinement: shrinking coordinate perturbations, renormalized.
    double step = 0.25;
    std::vector<double> cand(n);
    while (step > 1e-9) {
        bool improved = false;
        for (int a = 0; a < n; ++a)
            for (double s : {step, -step}) {
                cand = best_xi;
                cand[a] += s;
                double norm = 0.0;
                for (double v : cand) norm += v * v;
                norm = std::sqrt(norm);
                for (double& v : cand) v /= norm;
                double val = directional_form(f, x, cand, j);
                if (val > best) {
                    best = val;
                    best_xi = cand;
                    improved = true;
                }
            }
        if (!improved) step *= 0.5;
    }
    return best;
}

}  // namespace

double sphere_sup_positive_part(const Field& f, std::span<const double> x, int j) {
    if (j % 2 != 0) throw std::invalid_argument("sphere_sup: order must be even");
    if (j > f.smoothness().k) throw std::invalid_argument("sphere_sup: order exceeds k");
    int n = f.dim();
    if (j == 0) return std::max(f.eval(x), 0.0);
    if (j == 2) {
        std::vector<double> hess(n * n);
        for (int a = 0; a < n; ++a)
            for (int b = a; b < n; ++b) {
                MultiIndex beta(n);
                beta[a] += 1;
                beta[b] += 1;
                hess[a * n + b] = hess[b * n + a] = f.deriv(beta, x);
            }
        if (n == 1) return std::max(hess[0], 0.0);
        return std::max(top_eigenvalue(std::move(hess), n), 0.0);
    }
    if (n == 1) {
        MultiIndex beta{j};
        return std::max(f.deriv(beta, x), 0.0);
    }
    if (n == 2) {
        const int grid = 720;
        const double pi = std::acos(-1.0);
        double best = -std::numeric_limits<double>::infinity();
        int argmax = 0;
        for (int i = 0; i < grid; ++i) {
            double v = angular_form(f, x, j, pi * i / grid);
            if (v > best) {
                best = v;
                argmax = i;
            }
        }
        double lo = pi * (argmax - 1) / grid, hi = pi * (argmax + 1) / grid;
        double refined =
            golden_max([&](double t) { return angular_form(f, x, j, t); }, lo, hi, 1e-10);
        return std::max(std::max(best, refined), 0.0);
    }
    return std::max(sphere_sup_general(f, x, j), 0.0);
}

double control_value(const Field& f, std::span<const double> x) {
    const auto& s = f.smoothness();
    double best = 0.0;
    for (int j = 0; j <= s.k; j += 2) {
        double sup = sphere_sup_positive_part(f, x, j);
        if (sup <= 0.0) continue;
        best = std::max(best, std::pow(sup, 1.0 / (s.k - j + s.alpha)));
    }
    return best;
}

double ControlFunction::operator()(std::span<const double> x) const {
    return control_value(source, x);
}

std::string SlowVariationReport::to_json() const {
    nlohmann::json j{{"pass", pass},
                     {"worst_ratio", worst_ratio},
                     {"samples", samples},
                     {"usable_pairs", usable_pairs},
                     {"skipped", skipped}};
    return j.dump();
}

std::string RatioReport::to_json() const {
    nlohmann::json j{{"pass", pass},
                     {"worst_ratio", worst_ratio},
                     {"fitted_C", fitted_C},
                     {"samples", samples},
                     {"skipped", skipped}};
    return j.dump();
}

namespace {

// A nearby point y with |x - y| <= nu r(x), drawn from the pair schedule.
Point offset_point(std::span<const double> x, double radius, std::uint64_t i,
                   std::uint64_t seed) {
    int n = static_cast<int>(x.size());
    Point d = halton_point(i, n, seed + 104729);
    double norm = 0.0;
    for (int a = 0; a < n; ++a) {
        d[a] = 2.0 * d[a] - 1.0;
        norm += d[a] * d[a];
    }
    norm = std::sqrt(norm);
    Point y(n);
    double t = radical_inverse(i + 1 + seed, 23);
    for (int a = 0; a < n; ++a)
        y[a] = x[a] + (norm < 1e-12 ? 0.0 : radius * t * d[a] / norm);
    return y;
}

}  // namespace

SlowVariationReport validate_slow_variation(const ControlFunction& r, const Box& box,
                                            int samples, std::uint64_t seed) {
    if (samples < 1) throw std::invalid_argument("slow_variation: samples must be >= 1");
    SlowVariationReport rep;
    rep.samples = samples;
    for (int i = 0; i < samples; ++i) {
        Point x = halton_in_box(static_cast<std::uint64_t>(i), box, seed);
        double rx = r(x);
        if (rx < 1e-300) {
            rep.skipped += 1;
            continue;
        }
        Point y = offset_point(x, r.nu * rx, static_cast<std::uint64_t>(i), seed);
        double ratio = std::fabs(rx - r(y)) / rx;
        rep.worst_ratio = std::max(rep.worst_ratio, ratio);
        rep.usable_pairs += 1;
    }
    rep.pass = rep.worst_ratio <= 0.25;
    return rep;
}

namespace {

double derivative_ratio_max(const Field& f, const ControlFunction& r, const Box& box,
                            int ell, int samples, std::uint64_t seed, int& skipped) {
    const auto& s = f.smoothness();
    double worst = 0.0;
    for (int i = 0; i < samples; ++i) {
        Point x = halton_in_box(static_cast<std::uint64_t>(i), box, seed);
        double rx = r(x);
        if (rx < 1e-300) {
            skipped += 1;
            continue;
        }
        double num = gradient_norm(f, ell, x);
        worst = std::max(worst, num / std::pow(rx, s.k - ell + s.alpha));
    }
    return worst;
}

}  // namespace

RatioReport check_derivative_control(const Field& f, const ControlFunction& r,
                                     const Box& box, int ell, int samples,
                                     std::uint64_t seed) {
    if (ell > f.smoothness().k)
        throw std::invalid_argument("derivative_control: order exceeds k");
    RatioReport rep;
    rep.samples = samples;
    int skipped_half = 0;
    double c1 = derivative_ratio_max(f, r, box, ell, samples, seed, skipped_half);
    rep.skipped = 0;
    double c2 = derivative_ratio_max(f, r, box, ell, 2 * samples, seed, rep.skipped);
    rep.fitted_C = c2;
    rep.worst_ratio = c2;
    rep.pass = std::isfinite(c2) && (c2 - c1) <= 0.10 * std::max(c1, 1e-12);
    return rep;
}

bool check_needed_condition(const Field& f, const Box& box, int samples,
                            std::uint64_t seed) {
    const auto& s = f.smoothness();
    if (s.k <= 3) return true;
    for (int i = 0; i < samples; ++i) {
        Point x = halton_in_box(static_cast<std::uint64_t>(i), box, seed);
        double rx = control_value(f, x);
        double b0 = std::pow(std::max(f.eval(x), 0.0), 1.0 / (s.k + s.alpha));
        double s2 = sphere_sup_positive_part(f, x, 2);
        double b2 = s2 > 0.0 ? std::pow(s2, 1.0 / (s.k - 2 + s.alpha)) : 0.0;
        if (rx > std::max(b0, b2) + 1e-9) return false;
    }
    return true;
}

double fit_omega(const Field& f, const ControlFunction& r, const Box& box, int samples,
                 std::uint64_t seed) {
    const auto& s = f.smoothness();
    double worst = 0.0;
    for (int i = 0; i < samples; ++i) {
        Point x = halton_in_box(static_cast<std::uint64_t>(i), box, seed);
        double rx = r(x);
        if (rx < 1e-300) continue;
        Point y = offset_point(x, r.nu * rx, static_cast<std::uint64_t>(i), seed);
        double ratio = std::fabs(f.eval(x) - f.eval(y)) / (r.nu * std::pow(rx, s.k + s.alpha));
        worst = std::max(worst, ratio);
    }
    return 2.0 * worst;
}

}  // namespace sosforge
