#pragma once

#include <array>
#include <cmath>
#include <vector>

namespace kochforge {

/// Planar point, also used as a displacement vector.
struct Point2 {
    double x = 0.0;
    double y = 0.0;
};

inline Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
inline Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
inline Point2 operator-(Point2 a) { return {-a.x, -a.y}; }
inline Point2 operator*(double s, Point2 a) { return {s * a.x, s * a.y}; }

inline double dot(Point2 a, Point2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Point2 a, Point2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Point2 a) { return std::hypot(a.x, a.y); }
inline double dist(Point2 a, Point2 b) { return norm(a - b); }

/// Open chain of vertices. Closure (last joins first) is decided by the
/// consumer: signed_area treats the chain cyclically, rendering closes paths
/// on request.
using Polyline = std::vector<Point2>;

/// Orientation-preserving affine map x -> L x + t with L = [[m00 m01],[m10 m11]].
/// The maps used here are similarities: L^T L = r^2 I for the contraction
/// ratio r, so angles are preserved and every segment scales by r.
struct Similarity2 {
    double m00 = 1.0, m01 = 0.0;
    double m10 = 0.0, m11 = 1.0;
    double tx = 0.0, ty = 0.0;

    Point2 apply(Point2 q) const {
        return {m00 * q.x + m01 * q.y + tx, m10 * q.x + m11 * q.y + ty};
    }

    /// Contraction ratio sqrt(det L); valid for orientation-preserving maps.
    double ratio() const { return std::sqrt(m00 * m11 - m01 * m10); }
};

/// compose(a, b) applies b first, then a: compose(a, b)(x) = a(b(x)).
Similarity2 compose(const Similarity2& a, const Similarity2& b);

/// Inverse map; requires det L != 0.
Similarity2 inverse(const Similarity2& s);

/// Max-norm deviation of L^T L from ratio^2 * I; 0 for an exact similarity.
double similarity_defect(const Similarity2& s);

/// Convex quadrilateral with vertices in counter-clockwise order.
struct Rhombus {
    std::array<Point2, 4> v{};

    /// True if q lies inside or within distance tol of the boundary.
    bool contains(Point2 q, double tol) const;

    /// Longest vertex-to-vertex distance (the long diagonal).
    double diameter() const;

    Point2 centroid() const;
};

/// Signed enclosed area of the cyclically-closed chain by the shoelace rule
/// (counter-clockwise positive), accumulated with compensated summation.
/// Consecutive duplicate vertices (and a repeated final vertex) collapse;
/// throws std::invalid_argument if fewer than 3 distinct vertices remain.
double signed_area(const Polyline& poly);

enum class SegmentRelation {
    disjoint, ///< minimal distance exceeds tol
    touch,    ///< intersection is a single shared point within tol
    cross,    ///< transversal interior crossing, or collinear overlap of positive length
};

/// Classifies the intersection of segments [a0,a1] and [b0,b1]. tol is a
/// distance in plane units.
SegmentRelation segments_intersect(Point2 a0, Point2 a1, Point2 b0, Point2 b1,
                                   double tol);

} // namespace kochforge
