#include "sosforge/trace.hpp"

#include <sstream>

namespace sosforge {

const std::vector<TraceRow>& trace_rows() {
    static const std::vector<TraceRow> rows = {
        {"Scale function takes the max over even-order sphere suprema",
         "control.control_value", "control-value-branches"},
        {"Positive-part sphere suprema (top curvature, quartic directional forms)",
         "control.sphere_sup_positive_part", "sphere-sup-values"},
        {"Scale function varies by at most 1/4 over scale-nu separations",
         "control.validate_slow_variation", "slow-variation"},
        {"Derivatives are controlled by powers of the scale function",
         "control.check_derivative_control", "derivative-control-fit"},
        {"Gating condition holds automatically for smoothness order 2 and 3",
         "control.check_needed_condition", "gating-low-k"},
        {"Kept cubes satisfy the size test against the sampled scale infimum",
         "whitney.build_partition", "partition-size-test"},
        {"Constant scale on the unit square yields 4096 level-6 cubes",
         "whitney.build_partition", "partition-uniform-counts"},
        {"At most 2^n dilated cubes overlap any point", "whitney.overlap_count",
         "overlap-bound"},
        {"Squared cutoffs sum to one over covered points", "whitney.psi",
         "partition-of-unity"},
        {"Cutoff derivatives scale with inverse cube size", "whitney.psi_derivative",
         "bump-derivative-decay"},
        {"Adjacency degree never exceeds 4^n - 2^n", "graph.degree_certificate",
         "degree-bound"},
        {"Greedy sweep coloring is proper and meets its class bound",
         "graph.welsh_powell_color", "greedy-coloring"},
        {"Nine classes suffice for planar partition graphs", "graph.welsh_powell_color",
         "nine-color-planar"},
        {"Saturation-guided coloring stays near the clique number on clustered graphs",
         "graph.dsatur_color", "saturation-coloring"},
        {"Absence of the blocking vertex pattern forces few classes",
         "graph.alpha_s_structure_present", "structure-absence-chromatic"},
        {"Odd-power moment weights from the closed form satisfy all constraints",
         "oddvand.odd_moment_weights", "odd-moment-weights"},
        {"Independent exact linear solve reproduces the weights",
         "oddvand.solve_moment_system", "odd-moment-solve"},
        {"Moment matrix determinant equals its factored product",
         "oddvand.moment_matrix_determinant", "moment-determinant-identity"},
        {"Square-count recursion matches its iterated closed form",
         "bounds.upper_count", "count-recursion"},
        {"Counts stay below both exponent bounds", "bounds.upper_bound_check",
         "count-exponent-bound"},
        {"Lower bound at quadratics equals (n+1)/2", "bounds.lower_bound",
         "lower-bound-quadratics"},
        {"Cubes split into large-value and near-minimum branches by threshold",
         "decompose.classify_cube", "branch-classification"},
        {"Rotation aligns the last axis with the top curvature direction",
         "decompose.principal_direction", "principal-direction"},
        {"Fiber minimizer is the unique critical point in the window",
         "decompose.MinBranchData::minimizer", "implicit-minimizer"},
        {"Extended remainder equals the fiber minimum near the cube",
         "decompose.remainder_field", "remainder-extension"},
        {"Sum of emitted squares reconstructs the input on the certified region",
         "verify.check_reconstruction", "reconstruction-corpus"},
        {"Members of one class have pairwise disjoint supports",
         "decompose.decompose", "class-disjointness"},
        {"Class counts stay within budget (4 on the line, 27 in the plane)",
         "decompose.decompose", "class-count-budget"},
        {"Square root of a once-differentiable non-negative function is half-regular",
         "decompose.sqrt_field", "sqrt-half-regularity"},
        {"Power-difference inequality for non-negative Hoelder functions",
         "verify.check_power_difference", "power-difference"},
        {"Derivative gaps are bounded by the Taylor majorant",
         "verify.check_taylor_gap", "taylor-gap"},
        {"Gradient of a non-negative function is bounded via its own value",
         "verify.check_gradient_bound", "gradient-bound"},
        {"Half-regularity seminorms of emitted squares are finite and stable",
         "verify.check_half_regularity", "half-regularity-stability"},
    };
    return rows;
}

std::string emit_trace_matrix() {
    std::ostringstream out;
    out << "# Claims-to-tests matrix\n\n";
    out << "Each row names a mathematical claim the library relies on, the\n";
    out << "operation that implements it, and the test that exercises it.\n\n";
    out << "| Claim | Operation | Test |\n";
    out << "|-------|-----------|------|\n";
    for (const auto& r : trace_rows())
        out << "| " << r.claim << " | `" << r.operation << "` | `" << r.test_id
            << "` |\n";
    out << "\n# Out of scope\n\n";
    out << "**Whole-space constructions.** The library works on box truncations "
           "with an explicit uncovered-volume report. The limiting argument that "
           "extends a locally finite family of squares to all of space is a "
           "compactness statement with no finite witness, so there is nothing "
           "falsifiable to test; the per-box checks cover every quantitative "
           "ingredient it uses.\n\n";
    out << "**Polynomial impossibility results.** Classical examples show that a "
           "non-negative polynomial need not be a sum of squares of polynomials. "
           "They motivate working with half-regular functions instead of "
           "polynomials but play no computational role here, so they are "
           "documented rather than mechanized.\n\n";
    out << "**Finite-to-infinite coloring transfer.** The compactness principle "
           "that a bound on the chromatic number of every finite subgraph "
           "extends to the infinite graph is not mechanized; all built graphs "
           "are finite, and the finite certificates are tested directly.\n\n";
    out << "**Sharpness of constants.** Whether the class-count bounds or the "
           "lower bounds are optimal is open; the code reports fitted constants "
           "and exact counts but makes no optimality claims.\n";
    return out.str();
}

}  // namespace sosforge
