#include "sosforge/whitney.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>

namespace sosforge {

Box Partition::cube_box(const DyadicCube& q) const {
    double s = side(q);
    Box b;
    b.lo.resize(dim());
    b.hi.resize(dim());
    for (int a = 0; a < dim(); ++a) {
        b.lo[a] = origin_[a] + s * static_cast<double>(q.index[a]);
        b.hi[a] = b.lo[a] + s;
    }
    return b;
}

Box Partition::dilated_box(const DyadicCube& q) const {
    Box b = cube_box(q);
    double pad = (lambda_ - 1.0) / 2.0;
    for (int a = 0; a < dim(); ++a) {
        double s = b.hi[a] - b.lo[a];
        b.lo[a] -= pad * s;
        b.hi[a] += pad * s;
    }
    return b;
}

Point Partition::center(const DyadicCube& q) const {
    double s = side(q);
    Point c(dim());
    for (int a = 0; a < dim(); ++a)
        c[a] = origin_[a] + s * (static_cast<double>(q.index[a]) + 0.5);
    return c;
}

void Partition::add_cube(DyadicCube q) {
    int id = static_cast<int>(cubes_.size());
    if (q.level >= static_cast<int>(by_level_.size())) by_level_.resize(q.level + 1);
    if (by_level_[q.level].empty()) levels_.push_back(q.level);
    by_level_[q.level].emplace(q.index, id);
    cubes_.push_back(std::move(q));
}

void Partition::finalize() { std::sort(levels_.begin(), levels_.end()); }

std::vector<int> Partition::active_cubes(std::span<const double> x) const {
    int n = dim();
    std::vector<int> out;
    std::vector<std::int64_t> cell(n), probe(n);
    for (int level : levels_) {
        double s = scale_ * std::pow(0.5, level);
        for (int a = 0; a < n; ++a)
            cell[a] = static_cast<std::int64_t>(std::floor((x[a] - origin_[a]) / s));
        // lambda < 3/2, so a dilate containing x sits within one cell of x.
        std::size_t total = 1;
        for (int a = 0; a < n; ++a) total *= 3;
        for (std::size_t m = 0; m < total; ++m) {
            std::size_t t = m;
            for (int a = 0; a < n; ++a) {
                probe[a] = cell[a] + static_cast<std::int64_t>(t % 3) - 1;
                t /= 3;
            }
            auto it = by_level_[level].find(probe);
            if (it == by_level_[level].end()) continue;
            if (dilated_box(cubes_[it->second]).contains(x)) out.push_back(it->second);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::string Partition::to_json() const {
    nlohmann::json j;
    j["scale"] = scale_;
    j["lambda"] = lambda_;
    j["origin"] = origin_;
    j["cubes"] = nlohmann::json::array();
    for (const auto& q : cubes_)
        j["cubes"].push_back({{"level", q.level}, {"index", q.index}, {"rQ", q.rQ}});
    j["uncovered_volume"] = uncovered_volume_;
    return j.dump();
}

Partition Partition::from_json(const std::string& text, Box box, double nu) {
    nlohmann::json j = nlohmann::json::parse(text);
    Point origin = j.at("origin").get<Point>();
    Partition p(origin, j.at("scale").get<double>(), j.at("lambda").get<double>(), nu,
                std::move(box));
    for (const auto& c : j.at("cubes")) {
        DyadicCube q;
        q.level = c.at("level").get<int>();
        q.index = c.at("index").get<std::vector<std::int64_t>>();
        q.rQ = c.at("rQ").get<double>();
        p.add_cube(std::move(q));
    }
    p.uncovered_volume_ = j.at("uncovered_volume").get<double>();
    p.finalize();
    return p;
}

namespace {

double boxes_overlap_volume(const Box& a, const Box& b) {
    double v = 1.0;
    for (int i = 0; i < a.dim(); ++i) {
        double w = std::min(a.hi[i], b.hi[i]) - std::max(a.lo[i], b.lo[i]);
        if (w <= 0.0) return 0.0;
        v *= w;
    }
    return v;
}

bool boxes_intersect(const Box& a, const Box& b) {
    for (int i = 0; i < a.dim(); ++i)
        if (a.hi[i] < b.lo[i] || b.hi[i] < a.lo[i]) return false;
    return true;
}

// Min and max of r over corners, center, face midpoints and a 3^n grid.
std::pair<double, double> sampled_range(const ControlFunction& r, const Box& cube) {
    int n = cube.dim();
    double lo = std::numeric_limits<double>::infinity();
    double hi = 0.0;
    auto probe = [&](std::span<const double> y) {
        double v = r(y);
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    };
    Point x(n);
    std::size_t corners = std::size_t{1} << n;
    for (std::size_t m = 0; m < corners; ++m) {
        for (int a = 0; a < n; ++a) x[a] = (m >> a) & 1 ? cube.hi[a] : cube.lo[a];
        probe(x);
    }
    for (int a = 0; a < n; ++a) x[a] = 0.5 * (cube.lo[a] + cube.hi[a]);
    probe(x);
    for (int a = 0; a < n; ++a)
        for (double v : {cube.lo[a], cube.hi[a]}) {
            Point y = x;
            y[a] = v;
            probe(y);
        }
    std::size_t grid = 1;
    for (int a = 0; a < n; ++a) grid *= 3;
    for (std::size_t m = 0; m < grid; ++m) {
        std::size_t t = m;
        for (int a = 0; a < n; ++a) {
            x[a] = cube.lo[a] + cube.side(a) * (0.5 + static_cast<double>(t % 3)) / 3.0;
            t /= 3;
        }
        probe(x);
    }
    return {lo, hi};
}

}  // namespace

Partition build_partition(const ControlFunction& r, const Box& box, double nu,
                          double lambda, int max_level, double delta_cut) {
    box.validate();
    if (!(lambda > 1.0 && lambda < 1.5))
        throw std::invalid_argument("partition: lambda must lie in (1, 3/2)");
    if (max_level < 0) throw std::invalid_argument("partition: max_level < 0");
    if (delta_cut < 0.0) throw std::invalid_argument("partition: delta_cut < 0");
    int n = box.dim();
    double scale = box.max_side();
    Partition p(box.lo, scale, lambda, nu, box);
    double size_factor = nu / (2.0 * std::sqrt(static_cast<double>(n)));
    double safety = 1.0 - nu / 4.0;

    struct Pending {
        int level;
        std::vector<std::int64_t> index;
    };
    std::deque<Pending> work;
    work.push_back({0, std::vector<std::int64_t>(n, 0)});
    while (!work.empty()) {
        Pending cur = std::move(work.front());
        work.pop_front();
        DyadicCube q{cur.level, cur.index, 0.0};
        Box cb = p.cube_box(q);
        if (!boxes_intersect(cb, box)) continue;
        auto [inf_raw, sup_raw] = sampled_range(r, cb);
        double r_est = inf_raw * safety;
        double side = scale * std::pow(0.5, cur.level);
        if (side <= size_factor * r_est) {
            q.rQ = r_est;
            p.add_cube(std::move(q));
            continue;
        }
        if (sup_raw <= delta_cut) {
            // The scale function is below the cutoff across the whole sample
            // grid: the region carries no mass at the working resolution, so
            // drop it now instead of expanding every dyadic descendant.
            p.add_dropped(boxes_overlap_volume(cb, box));
            continue;
        }
        if (cur.level == max_level) {
            double vol = boxes_overlap_volume(cb, box);
            if (inf_raw > delta_cut)
                p.add_uncovered(vol);
            else
                p.add_dropped(vol);
            continue;
        }
        std::size_t children = std::size_t{1} << n;
        for (std::size_t m = 0; m < children; ++m) {
            Pending child;
            child.level = cur.level + 1;
            child.index.resize(n);
            for (int a = 0; a < n; ++a)
                child.index[a] = 2 * cur.index[a] + static_cast<std::int64_t>((m >> a) & 1);
            work.push_back(std::move(child));
        }
    }
    p.finalize();
    return p;
}

namespace {

double raw_bump(const Partition& p, const DyadicCube& q, std::span<const double> x) {
    BumpSpec spec = p.bump();
    Point c = p.center(q);
    double s = p.side(q);
    double v = 1.0;
    for (int a = 0; a < p.dim(); ++a) {
        v *= bump_profile((x[a] - c[a]) / s, spec.plateau, spec.support);
        if (v == 0.0) return 0.0;
    }
    return v;
}

using DerivMap = std::unordered_map<MultiIndex, double, MultiIndexHash>;

// d^gamma psi_Q for every gamma <= beta, from per-axis profile derivatives.
DerivMap bump_derivs(const Partition& p, const DyadicCube& q, const MultiIndex& beta,
                     std::span<const double> x) {
    BumpSpec spec = p.bump();
    Point c = p.center(q);
    double s = p.side(q);
    int n = p.dim();
    std::vector<std::vector<double>> axis(n);
    for (int a = 0; a < n; ++a)
        axis[a] = bump_profile_derivs((x[a] - c[a]) / s, spec.plateau, spec.support,
                                      beta[a]);
    DerivMap out;
    for (const auto& gamma : multiindices_below(beta)) {
        double v = 1.0;
        for (int a = 0; a < n; ++a) v *= axis[a][gamma[a]] * std::pow(1.0 / s, gamma[a]);
        out.emplace(gamma, v);
    }
    return out;
}

struct InvSqrtDerivs {
    const DerivMap& S;
    double S0;
    std::unordered_map<MultiIndex, std::unordered_map<int, double>, MultiIndexHash> memo;

    // c-th derivative of u -> u^{-1/2} evaluated at S0.
    double g(int c) const {
        double v = std::pow(S0, -0.5 - c);
        for (int m = 0; m < c; ++m) v *= -0.5 - m;
        return v;
    }

    double get(int c, const MultiIndex& gamma) {
        auto& slot = memo[gamma];
        auto it = slot.find(c);
        if (it != slot.end()) return it->second;
        double val;
        if (gamma.order() == 0) {
            val = g(c);
        } else {
            int axis = 0;
            while (gamma[axis] == 0) ++axis;
            MultiIndex mu = gamma;
            mu[axis] -= 1;
            val = 0.0;
            for (const auto& delta : multiindices_below(mu)) {
                MultiIndex rest = mu.minus(delta).plus(axis);
                auto s_it = S.find(rest);
                if (s_it == S.end() || s_it->second == 0.0) continue;
                val += multiindex_binomial(mu, delta) * get(c + 1, delta) * s_it->second;
            }
        }
        memo[gamma][c] = val;
        return val;
    }
};

}  // namespace

double psi(const Partition& p, int j, std::span<const double> x) {
    std::vector<int> active = p.active_cubes(x);
    double num = raw_bump(p, p.cubes()[j], x);
    if (num == 0.0) return 0.0;
    double S = 0.0;
    for (int i : active) {
        double v = raw_bump(p, p.cubes()[i], x);
        S += v * v;
    }
    return num / std::sqrt(S);
}

double psi_derivative(const Partition& p, int j, const MultiIndex& beta,
                      std::span<const double> x) {
    if (beta.order() == 0) return psi(p, j, x);
    std::vector<int> active = p.active_cubes(x);
    if (std::find(active.begin(), active.end(), j) == active.end()) return 0.0;

    std::vector<DerivMap> bumps;
    bumps.reserve(active.size());
    int j_pos = -1;
    for (std::size_t i = 0; i < active.size(); ++i) {
        if (active[i] == j) j_pos = static_cast<int>(i);
        bumps.push_back(bump_derivs(p, p.cubes()[active[i]], beta, x));
    }

    DerivMap S;
    for (const auto& gamma : multiindices_below(beta)) {
        double total = 0.0;
        for (const auto& b : bumps)
            for (const auto& delta : multiindices_below(gamma))
                total += multiindex_binomial(gamma, delta) * b.at(delta) *
                         b.at(gamma.minus(delta));
        S.emplace(gamma, total);
    }
    double S0 = S.at(MultiIndex(p.dim()));
    if (S0 <= 1e-300) return 0.0;

    InvSqrtDerivs inv{S, S0, {}};
    const DerivMap& own = bumps[j_pos];
    double result = 0.0;
    for (const auto& gamma : multiindices_below(beta))
        result += multiindex_binomial(beta, gamma) * own.at(gamma) *
                  inv.get(0, beta.minus(gamma));
    return result;
}

Field psi_field(std::shared_ptr<const Partition> p, int j, SmoothnessClass s) {
    auto eval = [p, j](std::span<const double> x) { return psi(*p, j, x); };
    auto deriv = [p, j](const MultiIndex& beta, std::span<const double> x) {
        return psi_derivative(*p, j, beta, x);
    };
    return Field(s, Field::Backend::EvaluationTree, eval, deriv);
}

int overlap_count(const Partition& p, std::span<const double> x) {
    return static_cast<int>(p.active_cubes(x).size());
}

std::string partition_svg(const Partition& p, const std::vector<int>* colors) {
    if (p.dim() != 2) throw std::invalid_argument("svg: only 2-D partitions");
    static const char* palette[] = {"#4c72b0", "#dd8452", "#55a868", "#c44e52",
                                    "#8172b3", "#937860", "#da8bc3", "#8c8c8c",
                                    "#ccb974", "#64b5cd", "#a1c9f4", "#ffb482"};
    const Box& b = p.box();
    double w = b.side(0), h = b.side(1);
    double px = 800.0 / std::max(w, h);
    std::string out = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
                      std::to_string(w * px) + "\" height=\"" + std::to_string(h * px) +
                      "\">\n";
    for (std::size_t i = 0; i < p.cubes().size(); ++i) {
        Box cb = p.cube_box(p.cubes()[i]);
        std::string fill = "none";
        if (colors && i < colors->size()) fill = palette[(*colors)[i] % 12];
        out += "<rect x=\"" + std::to_string((cb.lo[0] - b.lo[0]) * px) + "\" y=\"" +
               std::to_string((b.hi[1] - cb.hi[1]) * px) + "\" width=\"" +
               std::to_string(cb.side(0) * px) + "\" height=\"" +
               std::to_string(cb.side(1) * px) + "\" fill=\"" + fill +
               "\" stroke=\"black\" stroke-width=\"0.5\"/>\n";
    }
    out += "</svg>\n";
    return out;
}

}  // namespace sosforge
