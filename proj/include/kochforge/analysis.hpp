#pragma once

#include <cstdint>
#include <limits>
#include <vector>

#include "kochforge/curves.hpp"

namespace kochforge {

/// Least-squares fit of log(box count) against log(1/scale) over a fixed
/// grid anchored at the sample cloud's bounding-box corner.
struct DimensionFit {
    std::vector<double> scales;        ///< as given, strictly decreasing
    std::vector<std::uint64_t> counts; ///< occupied boxes per scale
    double slope = 0.0;                ///< box-dimension estimate
    double r2 = 0.0;                   ///< coefficient of determination
    double theoretical = 0.0;          ///< caller-supplied reference, NaN if none
};

/// Similarity dimension log 4 / log(1/p) of one decorated curve.
double curve_dimension(const KochParams& params);

/// Similarity dimension log 6 / log(1/p) of the two-sided construction.
double double_sided_dimension(const KochParams& params);

/// Box-counting dimension estimate. Input segments are subdivided internally
/// so sample spacing stays below a quarter of the smallest scale; callers
/// pass plain polylines. Requires >= 3 strictly decreasing positive scales
/// and at least one vertex; throws std::domain_error when every scale sees
/// the same count (no slope to fit).
DimensionFit box_dimension(
    const std::vector<Polyline>& polylines, const std::vector<double>& scales,
    double theoretical = std::numeric_limits<double>::quiet_NaN());

/// Bounded-turning constant of the closed figure: 12 at p = 1/3, otherwise
/// (8 / (1 - p)) / (1 - sqrt(3 (4p - 1))).
double turning_constant(const KochParams& params);

/// Worst sampled arc-diameter / endpoint-distance quotient.
struct TurningReport {
    double k_theoretical = 0.0;
    double max_ratio_observed = 0.0; ///< >= 1: arcs include their endpoints
    double t_i = 0.0;                ///< chain parameters of the worst pair
    double t_j = 0.0;
};

/// Samples vertex pairs of the level-k chain and reports the worst ratio
/// min(diam arc1, diam arc2) / |endpoint difference|, arcs taken both ways
/// around the closed chain and subsampled to at most ~128 vertices (an
/// under-estimate, so observed ratios never exceed the true ones). Refuses
/// specs that jordan_classify finds self-touching with std::domain_error.
TurningReport turning_ratio(const SnowflakeSpec& spec, int k, int samples,
                            std::uint64_t seed);

enum class JordanClass {
    jordan_quasicircle,     ///< no touches; simple closed curve expected
    self_touching,          ///< certified touch pairs found
    undetermined_at_depth,  ///< probe budget exhausted before certification
};

/// Two chain cells whose descendants stay within tolerance of each other
/// down to diameter < 1e-8, and the point they pinch together at.
struct TouchWitness {
    CellPath a, b;
    Point2 point;
};

struct JordanVerdict {
    JordanClass verdict = JordanClass::undetermined_at_depth;
    int depth = 0; ///< chain depth that was swept
    std::vector<TouchWitness> witnesses; ///< non-empty iff self_touching
};

/// Sweeps all non-adjacent level-k cell pairs for contact within tol,
/// refining every candidate until the pair either separates or survives to
/// cells of diameter < 1e-8 (a certified touch). Junctions of consecutive
/// cells that share a boundary segment (possible only near p = 1/3) are
/// probed a further 8 levels for non-junction approaches before the curve
/// is declared a quasicircle. Requires 1 <= k <= kMaxDepth and tol > 0.
JordanVerdict jordan_classify(const SnowflakeSpec& spec, int k, double tol);

/// Rhombus of a chain cell addressed by a (possibly refined) path, reading
/// choice bits through the spec's fill rule beyond the stored depth.
Rhombus path_cell(const MapFamily& fam, const SnowflakeSpec& spec,
                  const CellPath& path);

/// One level of the covering-area bound for the two-sided figure.
struct CoverageRow {
    int level = 0;
    std::uint64_t boxes = 0;     ///< boxes of side p^level hit
    double covered = 0.0;        ///< boxes * p^(2 level)
    double ratio_to_prev = 0.0;  ///< NaN on the first row
};

struct CoverageReport {
    std::vector<CoverageRow> rows;   ///< levels 1..k
    double theoretical_ratio = 0.0;  ///< 6 p^2, the limit decay rate
};

/// Covers the union of the two-sided figure and its two corner rotations by
/// boxes of side p^level for level = 1..k and reports the covered-area
/// bound per level. The bound shrinks geometrically, witnessing a
/// measure-zero limit. Requires 2 <= k <= 8.
CoverageReport measure_zero_probe(const MapFamily& fam, int k);

} // namespace kochforge
