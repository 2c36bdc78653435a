#pragma once

#include "sosforge/graph.hpp"
#include "sosforge/whitney.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace sosforge {

struct DecomposeConfig {
    double nu = 0.05;
    double lambda = 1.25;
    double omega = 0.0;      // <= 0: fitted from sampled pairs
    int max_level = 20;
    double delta_cut = -1.0;  // < 0: 1e-6 * box max side
    int fit_samples = 400;
    std::uint64_t seed = 0;
    int depth = 0;  // recursion depth, for bookkeeping only
};

enum class Branch { Root, Min };

struct SquareTerm {
    Field g;
    int cube = -1;
    std::string branch;  // "sqrt" | "root" | "min" | "base" | "recursive"
    int depth = 0;
    int slot = 0;  // index of the originating recursion class
    int color = -1;
};

struct Diagnostics {
    double omega = 0.0;
    double nu = 0.0;
    double delta_cut = 0.0;
    double uncovered_volume = 0.0;
    double dropped_volume = 0.0;
    int minimizer_failures = 0;
    int root_cubes = 0;
    int min_cubes = 0;
};

struct Decomposition {
    SmoothnessClass smoothness;
    Box box;
    std::shared_ptr<const Partition> partition;  // null for the k=1 path
    Coloring cube_colors;
    std::vector<SquareTerm> terms;
    std::vector<std::vector<int>> classes;        // class -> term indices
    std::vector<std::vector<int>> terms_by_cube;  // cube -> term indices
    std::vector<int> global_terms;                // terms not tied to a cube
    Diagnostics diagnostics;

    /// Sum of g^2 over all terms, via the active-cube index.
    double sum_of_squares(std::span<const double> x) const;
    /// Sum of g over the members of one class (disjoint supports).
    double class_value(int cls, std::span<const double> x) const;
    /// The class as a Field with the combined derivative oracle.
    Field class_field(int cls) const;

    std::string manifest_json() const;
    std::string samples_csv(int count, std::uint64_t seed = 0) const;
};

Branch classify_cube(const Field& f, const ControlFunction& r, const Partition& p,
                     int cube);

/// Orthogonal matrix (row-major) whose last column is the top Hessian
/// eigendirection at x, last entry made non-negative.
std::vector<double> principal_direction(const Field& f, std::span<const double> x);

/// Per-cube minimum-branch state: the rotated frame, the fiber minimizer
/// X(y') with its cache, and the extended remainder field on n-1 variables.
class MinBranchData {
public:
    MinBranchData(Field f_rot, SmoothnessClass s, Point center_frame, double cube_side,
                  double rQ, double omega, double nu, double lambda);

    /// Unique zero of t -> d_n f(y', t) in the fiber window; bisection plus
    /// Newton polish, cached per y'.
    double minimizer(std::span<const double> y_prime) const;
    /// f(y', X(y')) without the cutoff.
    double remainder_raw(std::span<const double> y_prime) const;
    /// Derivative oracle for the extension: analytic to order 2 via the
    /// implicit-function recursion, finite differences beyond.
    double extension_deriv(const MultiIndex& beta, std::span<const double> y_prime) const;
    double extension_value(std::span<const double> y_prime) const;
    /// Quadrature of the curvature factor H with f - F = (y_n - X)^2 H.
    double curvature_factor(std::span<const double> y_frame) const;

    double window_halfwidth() const { return window_; }
    const Point& center_frame() const { return center_; }
    int failures() const { return failures_; }
    Box extension_box() const;

private:
    Field f_;  // already rotated; last axis is the principal direction
    SmoothnessClass s_;
    Point center_;
    double side_;
    double rQ_;
    double window_;
    double lambda_;
    mutable std::map<Point, double> cache_;
    mutable std::mutex mu_;
    mutable int failures_ = 0;

    double solve(std::span<const double> y_prime) const;
    double remainder_deriv(const MultiIndex& beta, std::span<const double> y_prime,
                           int fd_budget) const;
};

/// The cutoff extension of data's remainder, on n-1 variables; equal to the
/// remainder near the projected cube and zero outside twice the cube. Keeps
/// data alive through the returned field.
Field remainder_field(std::shared_ptr<const MinBranchData> data, SmoothnessClass s);

/// Square-root term for the k = 1 path.
SquareTerm sqrt_field(const Field& f, const Box& box);

Decomposition decompose(const Field& f, const Box& box, const DecomposeConfig& cfg);

}  // namespace sosforge
