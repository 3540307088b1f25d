#pragma once

#include <string>
#include <vector>

#include "kochforge/geometry.hpp"

namespace kochforge {

/// Validated curve parameter. p is the contraction ratio of the eight
/// generator maps and must lie in (1/4, 1/3]; w = sqrt(4p - 1) is the short
/// diagonal of the base rhombus (the long diagonal is 1).
struct KochParams {
    double p = 1.0 / 3.0;
    double w = 0.0;
};

/// Builds params, rejecting p outside (1/4, 1/3] with std::domain_error.
KochParams make_params(double p);

/// Label of one generator map: digit selects the quarter of the base segment,
/// flip selects which side the two middle quarters bump toward (flip = 1
/// mirrors the bump below the axis). Digits 0 and 3 ignore flip.
struct MapLabel {
    int digit = 0; ///< 0..3
    int flip = 0;  ///< 0..1
};

/// The eight generator similarities, the base rhombus and its four vertices,
/// and the two isometries that assemble three curve copies into the closed
/// snowflake (rotations by -+120 degrees about the triangle centroid).
struct MapFamily {
    KochParams params;
    Point2 p_minus, p_plus; ///< (-1/2, 0), (1/2, 0)
    Point2 q_minus, q_plus; ///< (0, -w/2), (0, w/2)
    Rhombus cell;           ///< base rhombus V, vertices (P-, Q-, P+, Q+) ccw
    Similarity2 phi[4][2];  ///< phi[digit][flip]
    Similarity2 f1, f2;
};

MapFamily build_family(KochParams params);
MapFamily build_family(double p);

/// Outcome of the nesting / open-set-condition check. nested means every
/// generator maps the base rhombus into itself; interiors_disjoint means each
/// image lies in its own open strip of the rhombus (the strips partition V,
/// so images of the interior cannot overlap). failures lists every violated
/// inequality with the offending map, vertex and value.
struct NestingReport {
    bool nested = false;
    bool interiors_disjoint = false;
    std::vector<std::string> failures;
    bool ok() const { return nested && interiors_disjoint; }
};

NestingReport verify_nesting_and_osc(const MapFamily& fam, double tol = 1e-9);

} // namespace kochforge
