#include "sosforge/decompose.hpp"

#include "sosforge/halton.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace sosforge {

Branch classify_cube(const Field& f, const ControlFunction& r, const Partition& p,
                     int cube) {
    const auto& s = f.smoothness();
    const DyadicCube& q = p.cubes()[cube];
    Point c = p.center(q);
    double threshold = r.omega * r.nu * std::pow(q.rQ, s.k + s.alpha);
    return f.eval(c) >= threshold ? Branch::Root : Branch::Min;
}

std::vector<double> principal_direction(const Field& f, std::span<const double> x) {
    int n = f.dim();
    std::vector<double> hess(n * n);
    for (int a = 0; a < n; ++a)
        for (int b = a; b < n; ++b) {
            MultiIndex beta(n);
            beta[a] += 1;
            beta[b] += 1;
            hess[a * n + b] = hess[b * n + a] = f.deriv(beta, x);
        }
    auto [lam, xi] = top_eigenpair(std::move(hess), n);
    if (lam <= 0.0)
        throw std::domain_error("principal_direction: top curvature not positive");
    if (xi[n - 1] < 0.0)
        for (double& v : xi) v = -v;

    // Complete xi to an orthonormal basis; xi is the last column.
    std::vector<std::vector<double>> cols;
    int drop = 0;
    for (int a = 1; a < n; ++a)
        if (std::fabs(xi[a]) > std::fabs(xi[drop])) drop = a;
    for (int a = 0; a < n; ++a) {
        if (a == drop) continue;
        std::vector<double> v(n, 0.0);
        v[a] = 1.0;
        double d = 0.0;
        for (int i = 0; i < n; ++i) d += v[i] * xi[i];
        for (int i = 0; i < n; ++i) v[i] -= d * xi[i];
        for (const auto& prev : cols) {
            double dp = 0.0;
            for (int i = 0; i < n; ++i) dp += v[i] * prev[i];
            for (int i = 0; i < n; ++i) v[i] -= dp * prev[i];
        }
        double norm = 0.0;
        for (double w : v) norm += w * w;
        norm = std::sqrt(norm);
        for (double& w : v) w /= norm;
        cols.push_back(std::move(v));
    }
    cols.push_back(xi);
    std::vector<double> r(n * n);
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) r[i * n + j] = cols[j][i];
    return r;
}

MinBranchData::MinBranchData(Field f_rot, SmoothnessClass s, Point center_frame,
                             double cube_side, double rQ, double omega, double nu,
                             double lambda)
    : f_(std::move(f_rot)), s_(s), center_(std::move(center_frame)), side_(cube_side),
      rQ_(rQ), lambda_(lambda) {
    window_ = std::sqrt(6.0 * std::max(omega, 1e-8) * nu) * rQ;
    window_ = std::max(window_, lambda * cube_side);
}

double MinBranchData::solve(std::span<const double> y_prime) const {
    int n = s_.n;
    MultiIndex en(n);
    en[n - 1] = 1;
    MultiIndex enn(n);
    enn[n - 1] = 2;
    Point y(n);
    for (int a = 0; a < n - 1; ++a) y[a] = y_prime[a];
    auto slope = [&](double t) {
        y[n - 1] = t;
        return f_.deriv(en, y);
    };
    double lo = center_[n - 1] - window_, hi = center_[n - 1] + window_;
    double glo = slope(lo), ghi = slope(hi);
    double t;
    if (glo > 0.0 || ghi < 0.0) {
        // No bracketing slope change: fall back to a direct fiber scan.
        failures_ += 1;
        double best_t = lo, best_v = std::numeric_limits<double>::infinity();
        for (int i = 0; i <= 64; ++i) {
            double u = lo + (hi - lo) * i / 64.0;
            y[n - 1] = u;
            double v = f_.eval(y);
            if (v < best_v) {
                best_v = v;
                best_t = u;
            }
        }
        t = best_t;
    } else {
        double a = lo, b = hi;
        for (int i = 0; i < 60; ++i) {
            double m = 0.5 * (a + b);
            (slope(m) <= 0.0 ? a : b) = m;
        }
        t = 0.5 * (a + b);
    }
    double tol = 1e-13 * (1.0 + std::pow(rQ_, s_.k - 1 + s_.alpha));
    for (int i = 0; i < 12; ++i) {
        double g = slope(t);
        if (std::fabs(g) <= tol) break;
        y[n - 1] = t;
        double g2 = f_.deriv(enn, y);
        if (std::fabs(g2) < 1e-300) break;
        double next = t - g / g2;
        if (next < lo || next > hi) break;
        t = next;
    }
    return t;
}

double MinBranchData::minimizer(std::span<const double> y_prime) const {
    Point key(y_prime.begin(), y_prime.end());
    {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = cache_.find(key);
        if (it != cache_.end()) return it->second;
    }
    double t = solve(y_prime);
    std::lock_guard<std::mutex> lock(mu_);
    // Bound the memoization footprint; recomputing on a miss is cheap.
    if (cache_.size() >= 16384) cache_.clear();
    cache_.emplace(std::move(key), t);
    return t;
}

double MinBranchData::remainder_raw(std::span<const double> y_prime) const {
    int n = s_.n;
    Point y(n);
    for (int a = 0; a < n - 1; ++a) y[a] = y_prime[a];
    y[n - 1] = minimizer(y_prime);
    return f_.eval(y);
}

double MinBranchData::remainder_deriv(const MultiIndex& beta,
                                      std::span<const double> y_prime,
                                      int fd_budget) const {
    int n = s_.n;
    int order = beta.order();
    if (order == 0) return remainder_raw(y_prime);
    if (order > 2 || fd_budget <= 0) {
        int axis = 0;
        while (beta[axis] == 0) ++axis;
        MultiIndex rest = beta;
        rest[axis] -= 1;
        double h = 1e-3 * side_;
        Point yp(y_prime.begin(), y_prime.end());
        Point ym = yp;
        yp[axis] += h;
        ym[axis] -= h;
        return (remainder_deriv(rest, yp, fd_budget - 1) -
                remainder_deriv(rest, ym, fd_budget - 1)) /
               (2.0 * h);
    }
    Point u(n);
    for (int a = 0; a < n - 1; ++a) u[a] = y_prime[a];
    u[n - 1] = minimizer(y_prime);
    auto d = [&](std::initializer_list<int> axes) {
        MultiIndex b(n);
        for (int a : axes) b[a] += 1;
        return f_.deriv(b, u);
    };
    if (order == 1) {
        int i = 0;
        while (beta[i] == 0) ++i;
        return d({i});  // d_n f vanishes at the minimizer
    }
    int i = 0;
    while (beta[i] == 0) ++i;
    int j = (beta[i] == 2) ? i : i + 1;
    while (beta[j] == 0 || (j == i && beta[i] < 2)) ++j;
    double fnn = d({n - 1, n - 1});
    double xj = std::fabs(fnn) < 1e-300 ? 0.0 : -d({j, n - 1}) / fnn;
    return d({i, j}) + d({i, n - 1}) * xj;
}

double MinBranchData::extension_value(std::span<const double> y_prime) const {
    double phi = 1.0;
    for (int a = 0; a < s_.n - 1; ++a) {
        phi *= bump_profile((y_prime[a] - center_[a]) / side_, 0.75, 1.0);
        if (phi == 0.0) return 0.0;
    }
    return phi * remainder_raw(y_prime);
}

double MinBranchData::extension_deriv(const MultiIndex& beta,
                                      std::span<const double> y_prime) const {
    int m = s_.n - 1;
    // Outside the cutoff support everything vanishes.
    for (int a = 0; a < m; ++a)
        if (std::fabs(y_prime[a] - center_[a]) >= side_) return 0.0;
    std::vector<std::vector<double>> axis(m);
    for (int a = 0; a < m; ++a)
        axis[a] = bump_profile_derivs((y_prime[a] - center_[a]) / side_, 0.75, 1.0,
                                      beta[a]);
    double total = 0.0;
    for (const auto& gamma : multiindices_below(beta)) {
        double phi = 1.0;
        for (int a = 0; a < m; ++a)
            phi *= axis[a][gamma[a]] * std::pow(1.0 / side_, gamma[a]);
        if (phi == 0.0) continue;
        total += multiindex_binomial(beta, gamma) * phi *
                 remainder_deriv(beta.minus(gamma), y_prime, 4);
    }
    return total;
}

double MinBranchData::curvature_factor(std::span<const double> y_frame) const {
    int n = s_.n;
    static const double kNodes[8] = {0.0950125098376374, 0.2816035507792589,
                                     0.4580167776572274, 0.6178762444026438,
                                     0.7554044083550030, 0.8656312023878318,
                                     0.9445750230732326, 0.9894009349916499};
    static const double kWeights[8] = {0.1894506104550685, 0.1826034150449236,
                                       0.1691565193950025, 0.1495959888165767,
                                       0.1246289712555339, 0.0951585116824928,
                                       0.0622535239386479, 0.0271524594117541};
    Point yp(y_frame.begin(), y_frame.end() - 1);
    double X = minimizer(yp);
    double yn = y_frame[n - 1];
    MultiIndex enn(n);
    enn[n - 1] = 2;
    Point u(y_frame.begin(), y_frame.end());
    double total = 0.0;
    for (int i = 0; i < 8; ++i)
        for (double sgn : {-1.0, 1.0}) {
            double t = 0.5 + sgn * 0.5 * kNodes[i];
            u[n - 1] = X + t * (yn - X);
            total += 0.5 * kWeights[i] * (1.0 - t) * f_.deriv(enn, u);
        }
    return total;
}

Box MinBranchData::extension_box() const {
    Box b;
    int m = s_.n - 1;
    b.lo.resize(m);
    b.hi.resize(m);
    for (int a = 0; a < m; ++a) {
        b.lo[a] = center_[a] - side_;
        b.hi[a] = center_[a] + side_;
    }
    return b;
}

Field remainder_field(std::shared_ptr<const MinBranchData> data, SmoothnessClass s) {
    auto eval = [data](std::span<const double> y) { return data->extension_value(y); };
    auto deriv = [data](const MultiIndex& beta, std::span<const double> y) {
        return data->extension_deriv(beta, y);
    };
    return Field(s, Field::Backend::EvaluationTree, eval, deriv);
}

SquareTerm sqrt_field(const Field& f, const Box& box) {
    for (int i = 0; i < 2000; ++i) {
        Point x = halton_in_box(static_cast<std::uint64_t>(i), box);
        if (f.eval(x) < -1e-12)
            throw std::domain_error("sqrt_field: negative value sampled");
    }
    SquareTerm t;
    t.g = field_sqrt(f);
    t.branch = "sqrt";
    return t;
}

namespace {

std::vector<double> transpose(const std::vector<double>& r, int n) {
    std::vector<double> t(n * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) t[i * n + j] = r[j * n + i];
    return t;
}

// 1-D fiber minimum over the dilated interval, for the base case.
double argmin_on_interval(const Field& f, double lo, double hi) {
    double best_t = lo, best_v = std::numeric_limits<double>::infinity();
    for (int i = 0; i <= 128; ++i) {
        double t = lo + (hi - lo) * i / 128.0;
        double v = f.eval(std::span<const double>(&t, 1));
        if (v < best_v) {
            best_v = v;
            best_t = t;
        }
    }
    double step = (hi - lo) / 128.0;
    double a = std::max(lo, best_t - step), b = std::min(hi, best_t + step);
    const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - phi * (b - a), d = a + phi * (b - a);
    auto ev = [&](double t) { return f.eval(std::span<const double>(&t, 1)); };
    double fc = ev(c), fd = ev(d);
    while (b - a > 1e-12 * (1.0 + std::fabs(best_t))) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - phi * (b - a);
            fc = ev(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + phi * (b - a);
            fd = ev(d);
        }
    }
    return 0.5 * (a + b);
}

}  // namespace

double Decomposition::sum_of_squares(std::span<const double> x) const {
    double total = 0.0;
    for (int t : global_terms) {
        double v = terms[t].g.eval(x);
        total += v * v;
    }
    if (!partition) return total;
    for (int cube : partition->active_cubes(x))
        for (int t : terms_by_cube[cube]) {
            double v = terms[t].g.eval(x);
            total += v * v;
        }
    return total;
}

double Decomposition::class_value(int cls, std::span<const double> x) const {
    double total = 0.0;
    if (!partition) {
        for (int t : classes[cls]) total += terms[t].g.eval(x);
        return total;
    }
    for (int cube : partition->active_cubes(x))
        for (int t : terms_by_cube[cube])
            if (terms[t].color == cls) total += terms[t].g.eval(x);
    for (int t : global_terms)
        if (terms[t].color == cls) total += terms[t].g.eval(x);
    return total;
}

Field Decomposition::class_field(int cls) const {
    struct Members {
        std::shared_ptr<const Partition> part;
        std::vector<std::vector<std::pair<bool, Field>>> by_cube;  // (present, g)
        std::vector<Field> global;
    };
    auto m = std::make_shared<Members>();
    m->part = partition;
    if (partition) {
        m->by_cube.resize(terms_by_cube.size());
        for (std::size_t cube = 0; cube < terms_by_cube.size(); ++cube)
            for (int t : terms_by_cube[cube])
                if (terms[t].color == cls)
                    m->by_cube[cube].emplace_back(true, terms[t].g);
    }
    for (int t : global_terms)
        if (terms[t].color == cls) m->global.push_back(terms[t].g);

    auto eval = [m](std::span<const double> x) {
        double total = 0.0;
        for (const auto& g : m->global) total += g.eval(x);
        if (m->part)
            for (int cube : m->part->active_cubes(x))
                for (const auto& [_, g] : m->by_cube[cube]) total += g.eval(x);
        return total;
    };
    auto deriv = [m](const MultiIndex& beta, std::span<const double> x) {
        double total = 0.0;
        for (const auto& g : m->global) total += g.deriv(beta, x);
        if (m->part)
            for (int cube : m->part->active_cubes(x))
                for (const auto& [_, g] : m->by_cube[cube]) total += g.deriv(beta, x);
        return total;
    };
    return Field(smoothness, Field::Backend::EvaluationTree, eval, deriv);
}

std::string Decomposition::manifest_json() const {
    nlohmann::json j;
    j["n"] = smoothness.n;
    j["k"] = smoothness.k;
    j["alpha"] = smoothness.alpha;
    j["classes"] = nlohmann::json::array();
    for (std::size_t c = 0; c < classes.size(); ++c) {
        nlohmann::json cls;
        cls["color"] = c;
        cls["terms"] = nlohmann::json::array();
        for (int t : classes[c])
            cls["terms"].push_back({{"cube", terms[t].cube},
                                    {"branch", terms[t].branch},
                                    {"depth", terms[t].depth}});
        j["classes"].push_back(std::move(cls));
    }
    j["diagnostics"] = {{"omega", diagnostics.omega},
                        {"nu", diagnostics.nu},
                        {"delta_cut", diagnostics.delta_cut},
                        {"uncovered_volume", diagnostics.uncovered_volume},
                        {"dropped_volume", diagnostics.dropped_volume},
                        {"minimizer_failures", diagnostics.minimizer_failures},
                        {"root_cubes", diagnostics.root_cubes},
                        {"min_cubes", diagnostics.min_cubes},
                        {"term_count", terms.size()}};
    return j.dump();
}

std::string Decomposition::samples_csv(int count, std::uint64_t seed) const {
    std::ostringstream out;
    for (int a = 0; a < smoothness.n; ++a) out << "x" << a << ",";
    for (std::size_t c = 0; c < classes.size(); ++c)
        out << "g" << c << (c + 1 < classes.size() ? "," : "");
    out << "\n";
    for (int i = 0; i < count; ++i) {
        Point x = halton_in_box(static_cast<std::uint64_t>(i), box, seed);
        for (int a = 0; a < smoothness.n; ++a) out << x[a] << ",";
        for (std::size_t c = 0; c < classes.size(); ++c)
            out << class_value(static_cast<int>(c), x)
                << (c + 1 < classes.size() ? "," : "");
        out << "\n";
    }
    return out.str();
}

namespace {

void recombine(Decomposition& dec, const CubeGraph& cube_graph) {
    int count = static_cast<int>(dec.terms.size());
    std::vector<std::pair<int, int>> conflicts;
    // Terms of one cube overlap; terms of adjacent cubes may overlap.
    for (std::size_t cube = 0; cube < dec.terms_by_cube.size(); ++cube) {
        const auto& ts = dec.terms_by_cube[cube];
        for (std::size_t a = 0; a < ts.size(); ++a)
            for (std::size_t b = a + 1; b < ts.size(); ++b)
                conflicts.emplace_back(ts[a], ts[b]);
    }
    for (auto [ci, cj] : cube_graph.edges)
        for (int a : dec.terms_by_cube[ci])
            for (int b : dec.terms_by_cube[cj]) conflicts.emplace_back(a, b);
    for (int g : dec.global_terms)
        for (int t = 0; t < count; ++t)
            if (t != g) conflicts.emplace_back(g, t);
    CubeGraph tg = CubeGraph::from_edges(count, std::move(conflicts));
    // Terms cluster into near-cliques around each cube, where the saturation
    // heuristic stays close to the clique number; the degree sweep does not.
    Coloring col = dsatur_color(tg);
    dec.classes.assign(col.classes, {});
    for (int t = 0; t < count; ++t) {
        dec.terms[t].color = col.color[t];
        dec.classes[col.color[t]].push_back(t);
    }
}

}  // namespace

Decomposition decompose(const Field& f, const Box& box, const DecomposeConfig& cfg) {
    box.validate();
    const SmoothnessClass s = f.smoothness();
    if (s.n > 3) throw std::invalid_argument("decompose: dimensions above 3 unsupported");
    if (s.k >= 4) {
        if (s.n != 2 || !check_needed_condition(f, box, 256, cfg.seed))
            throw std::invalid_argument(
                "decompose: k >= 4 needs n = 2 and the gating scale condition");
    }
    Decomposition dec;
    dec.smoothness = s;
    dec.box = box;
    dec.diagnostics.nu = cfg.nu;

    if (s.k == 1) {
        SquareTerm t = sqrt_field(f, box);
        t.depth = cfg.depth;
        dec.terms.push_back(std::move(t));
        dec.global_terms.push_back(0);
        dec.terms[0].color = 0;
        dec.classes.push_back({0});
        return dec;
    }

    ControlFunction r{f, cfg.nu, cfg.omega};
    if (cfg.omega <= 0.0) {
        r.omega = 1.0;
        double fitted = fit_omega(f, r, box, cfg.fit_samples, cfg.seed);
        r.omega = std::max(fitted, 1e-6);
    }
    dec.diagnostics.omega = r.omega;
    double delta_cut = cfg.delta_cut >= 0.0 ? cfg.delta_cut : 1e-6 * box.max_side();
    dec.diagnostics.delta_cut = delta_cut;

    auto part = std::make_shared<Partition>(
        build_partition(r, box, cfg.nu, cfg.lambda, cfg.max_level, delta_cut));
    dec.partition = part;
    dec.diagnostics.uncovered_volume = part->uncovered_volume();
    dec.diagnostics.dropped_volume = part->dropped_volume();

    CubeGraph cg = adjacency_graph(*part);
    dec.cube_colors = welsh_powell_color(cg);

    int cube_count = static_cast<int>(part->cubes().size());
    dec.terms_by_cube.resize(cube_count);
    Field sqrt_f = field_sqrt(f);
    std::vector<std::shared_ptr<const MinBranchData>> min_data;

    for (int j = 0; j < cube_count; ++j) {
        const DyadicCube& q = part->cubes()[j];
        Field psi_j = psi_field(part, j, s);
        Branch branch = classify_cube(f, r, *part, j);
        auto push = [&](Field g, const char* tag, int slot) {
            SquareTerm t;
            t.g = std::move(g);
            t.cube = j;
            t.branch = tag;
            t.depth = cfg.depth;
            t.slot = slot;
            int id = static_cast<int>(dec.terms.size());
            dec.terms.push_back(std::move(t));
            dec.terms_by_cube[j].push_back(id);
        };
        if (branch == Branch::Root) {
            dec.diagnostics.root_cubes += 1;
            push(field_product(psi_j, sqrt_f), "root", 0);
            continue;
        }
        dec.diagnostics.min_cubes += 1;
        Point c = part->center(q);
        double side = part->side(q);

        if (s.n == 1) {
            double half = cfg.lambda * 0.5 * side;
            double X = argmin_on_interval(f, c[0] - half, c[0] + half);
            double F = std::max(f.eval(std::span<const double>(&X, 1)), 0.0);
            Field shifted = field_sum({f, constant_field(-F, s)});
            push(field_product(psi_j, field_sqrt(shifted)), "min", 0);
            if (F > 0.0)
                push(field_product(psi_j, constant_field(std::sqrt(F), s)), "base", 1);
            continue;
        }

        std::vector<double> rot;
        try {
            rot = principal_direction(f, c);
        } catch (const std::domain_error&) {
            // Degenerate curvature: treat as a root cube and note it.
            dec.diagnostics.minimizer_failures += 1;
            push(field_product(psi_j, sqrt_f), "root", 0);
            continue;
        }
        std::vector<double> rot_t = transpose(rot, s.n);
        Field f_rot = f.rotated(rot);
        Point c_frame(s.n, 0.0);
        for (int i = 0; i < s.n; ++i)
            for (int a = 0; a < s.n; ++a) c_frame[i] += rot_t[i * s.n + a] * c[a];
        auto data = std::make_shared<MinBranchData>(f_rot, s, c_frame, side, q.rQ,
                                                    r.omega, cfg.nu, cfg.lambda);
        min_data.push_back(data);
        SmoothnessClass s_low(s.n - 1, s.k, s.alpha);
        Field ext = remainder_field(data, s_low);

        Field diff = field_sum({f_rot, field_scale(lift_field(ext, s), -1.0)});
        push(field_product(psi_j, field_sqrt(diff).rotated(rot_t)), "min", 0);

        DecomposeConfig sub_cfg = cfg;
        sub_cfg.depth = cfg.depth + 1;
        sub_cfg.omega = 0.0;  // refit at the inner scale
        sub_cfg.delta_cut = -1.0;
        sub_cfg.fit_samples = std::max(50, cfg.fit_samples / 4);
        sub_cfg.seed = cfg.seed + 7919 * (j + 1);
        Decomposition sub = decompose(ext, data->extension_box(), sub_cfg);
        dec.diagnostics.minimizer_failures += sub.diagnostics.minimizer_failures;
        for (std::size_t sc = 0; sc < sub.classes.size(); ++sc) {
            if (sub.classes[sc].empty()) continue;
            Field lifted = lift_field(sub.class_field(static_cast<int>(sc)), s)
                               .rotated(rot_t);
            push(field_product(psi_j, lifted), "recursive", 1 + static_cast<int>(sc));
        }
    }

    recombine(dec, cg);
    for (const auto& d : min_data)
        dec.diagnostics.minimizer_failures += d->failures();
    return dec;
}

}  // namespace sosforge
