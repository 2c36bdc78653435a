#pragma once

#include "sosforge/control.hpp"
#include "sosforge/field.hpp"
#include "sosforge/jet.hpp"
#include "sosforge/types.hpp"

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

namespace sosforge {

/// Dyadic cube on the lattice anchored at the partition origin: side
/// scale*2^{-level}, corner origin + side*index.
struct DyadicCube {
    int level = 0;
    std::vector<std::int64_t> index;
    double rQ = 0.0;

    bool operator==(const DyadicCube& o) const {
        return level == o.level && index == o.index;
    }
};

/// Shape of the smooth cutoff: plateau on [-1/2,1/2] in cube units, support
/// [-lambda/2, lambda/2], e^{-1/u} glue on the transition.
struct BumpSpec {
    double plateau = 0.5;
    double support = 0.625;
};

class Partition {
public:
    Partition(Point origin, double scale, double lambda, double nu, Box box)
        : origin_(std::move(origin)), scale_(scale), lambda_(lambda), nu_(nu),
          box_(std::move(box)) {}

    int dim() const { return static_cast<int>(origin_.size()); }
    double scale() const { return scale_; }
    double lambda() const { return lambda_; }
    double nu() const { return nu_; }
    const Box& box() const { return box_; }
    const Point& origin() const { return origin_; }
    const std::vector<DyadicCube>& cubes() const { return cubes_; }
    double uncovered_volume() const { return uncovered_volume_; }
    double dropped_volume() const { return dropped_volume_; }
    BumpSpec bump() const { return {0.5, lambda_ / 2.0}; }

    double side(const DyadicCube& q) const { return scale_ * std::pow(0.5, q.level); }
    Box cube_box(const DyadicCube& q) const;
    Box dilated_box(const DyadicCube& q) const;
    Point center(const DyadicCube& q) const;

    /// Ids of cubes whose dilate contains x (candidate support set).
    std::vector<int> active_cubes(std::span<const double> x) const;

    void add_cube(DyadicCube q);
    void add_uncovered(double volume) { uncovered_volume_ += volume; }
    void add_dropped(double volume) { dropped_volume_ += volume; }
    void finalize();

    std::string to_json() const;
    static Partition from_json(const std::string& text, Box box, double nu);

private:
    Point origin_;
    double scale_;
    double lambda_;
    double nu_;
    Box box_;
    std::vector<DyadicCube> cubes_;
    double uncovered_volume_ = 0.0;
    double dropped_volume_ = 0.0;

    struct IndexHash {
        std::size_t operator()(const std::vector<std::int64_t>& v) const {
            std::size_t h = 1469598103934665603ull;
            for (auto x : v) {
                h ^= static_cast<std::size_t>(x) + 0x9e3779b97f4a7c15ull;
                h *= 1099511628211ull;
            }
            return h;
        }
    };
    std::vector<std::unordered_map<std::vector<std::int64_t>, int, IndexHash>> by_level_;
    std::vector<int> levels_;
};

/// Maximal dyadic cubes with side <= (nu/(2 sqrt n)) * (estimated inf of r on
/// the cube), built by top-down refinement. Regions where the size test still
/// fails at max_level are reported as uncovered when r exceeds delta_cut and
/// dropped silently otherwise.
Partition build_partition(const ControlFunction& r, const Box& box, double nu,
                          double lambda, int max_level, double delta_cut);

/// The normalized bump psi_j = psi_{Q_j} / sqrt(sum_i psi_{Q_i}^2).
double psi(const Partition& p, int j, std::span<const double> x);

/// Exact multi-index derivative of psi_j at x.
double psi_derivative(const Partition& p, int j, const MultiIndex& beta,
                      std::span<const double> x);

/// Number of dilated cubes containing x.
int overlap_count(const Partition& p, std::span<const double> x);

/// psi_j wrapped as a Field with the exact derivative oracle.
Field psi_field(std::shared_ptr<const Partition> p, int j, SmoothnessClass s);

/// 2-D outline drawing; colors (optional, per cube id) pick the fill class.
std::string partition_svg(const Partition& p, const std::vector<int>* colors = nullptr);

}  // namespace sosforge
