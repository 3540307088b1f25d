#pragma once

#include <vector>

#include "kochforge/choices.hpp"
#include "kochforge/ifs.hpp"

namespace kochforge {

/// Level-k polygonal approximation of one decorated curve: 4^k + 1 vertices
/// running from (-1/2, 0) to (1/2, 0), every edge of length p^k.
struct CurveApprox {
    int depth = 0;
    Polyline pts;
};

/// Closed level-k chain around the filled figure: 3 * 4^k vertices starting
/// at (1/2, 0), positively oriented, the closing edge left implicit.
struct SnowflakeApprox {
    int depth = 0;
    Polyline pts;
};

struct Segment {
    Point2 a, b;
};

/// Address of one chain cell. side 0 walks the axis curve, side 1 its copy
/// under the corner rotation f2, side 2 the copy under f1; word is the
/// digit word of the cell inside that side's curve.
struct CellPath {
    int side = 0;
    DigitWord word;
};

/// A chain cell together with the composed similarity that produced it.
struct CellRecord {
    CellPath path;
    Similarity2 map;
};

/// Centre of the level-k cell holding parameter t, plus a radius that is
/// guaranteed to cover the limit point.
struct RhoPoint {
    Point2 point;
    double error_bound = 0.0;
};

/// Vertices of the level-k approximation. Bits are read through the view's
/// fill rule, so k may exceed the stored depth (up to kMaxDepth). Throws
/// std::logic_error if consecutive pieces fail to chain within 1e-9.
CurveApprox curve_polyline(const MapFamily& fam, const ChoiceView& s, int k);

/// Same, but bounded by the stored sequence: requires 0 <= k <= s.depth().
CurveApprox curve_polyline(const MapFamily& fam, const ChoiceSequence& s,
                           int k);

/// Closed chain of the three decorated sides in traversal order: the axis
/// curve reversed, then the f2 copy reversed, then the f1 copy reversed.
SnowflakeApprox snowflake_polyline(const MapFamily& fam,
                                   const SnowflakeSpec& spec, int k);

/// All 6^k level-k edges of the two-sided construction, which applies the
/// six maps {(0,0),(1,0),(1,1),(2,0),(2,1),(3,0)} in every slot instead of
/// consulting choice bits. Segments come unmerged, in lexicographic order
/// of the label word.
std::vector<Segment> double_sided_polylines(const MapFamily& fam, int k);

/// Point of the parametrised curve at t in [0, 1], located to level k via
/// the base-4 expansion of t (the terminating expansion at dyadic t, all
/// digits 3 at t = 1). error_bound = p^k.
RhoPoint rho(const MapFamily& fam, const ChoiceView& s, double t, int k);
RhoPoint rho(const MapFamily& fam, const ChoiceSequence& s, double t, int k);

/// The 4^k level-k cells of one decorated curve in lexicographic word
/// order; cell i contains the curve's segment i.
std::vector<Rhombus> cells(const MapFamily& fam, const ChoiceView& s, int k);
std::vector<Rhombus> cells(const MapFamily& fam, const ChoiceSequence& s,
                           int k);

/// The 3 * 4^k level-k cells around the closed figure in chain order: cell
/// i covers the edge from vertex i to vertex i + 1 of snowflake_polyline.
std::vector<CellRecord> snowflake_cells(const MapFamily& fam,
                                        const SnowflakeSpec& spec, int k);

/// Image of the base rhombus under a composed map.
Rhombus cell_shape(const MapFamily& fam, const Similarity2& map);

} // namespace kochforge
