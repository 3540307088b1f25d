#include "kochforge/geometry.hpp"

#include <algorithm>
#include <stdexcept>

namespace kochforge {

Similarity2 compose(const Similarity2& a, const Similarity2& b) {
    Similarity2 c;
    c.m00 = a.m00 * b.m00 + a.m01 * b.m10;
    c.m01 = a.m00 * b.m01 + a.m01 * b.m11;
    c.m10 = a.m10 * b.m00 + a.m11 * b.m10;
    c.m11 = a.m10 * b.m01 + a.m11 * b.m11;
    Point2 t = a.apply({b.tx, b.ty});
    c.tx = t.x;
    c.ty = t.y;
    return c;
}

Similarity2 inverse(const Similarity2& s) {
    double det = s.m00 * s.m11 - s.m01 * s.m10;
    if (det == 0.0) throw std::invalid_argument("inverse: singular linear part");
    Similarity2 r;
    r.m00 = s.m11 / det;
    r.m01 = -s.m01 / det;
    r.m10 = -s.m10 / det;
    r.m11 = s.m00 / det;
    r.tx = -(r.m00 * s.tx + r.m01 * s.ty);
    r.ty = -(r.m10 * s.tx + r.m11 * s.ty);
    return r;
}

double similarity_defect(const Similarity2& s) {
    double r2 = s.m00 * s.m11 - s.m01 * s.m10;
    // L^T L entries.
    double g00 = s.m00 * s.m00 + s.m10 * s.m10;
    double g01 = s.m00 * s.m01 + s.m10 * s.m11;
    double g11 = s.m01 * s.m01 + s.m11 * s.m11;
    return std::max({std::abs(g00 - r2), std::abs(g11 - r2), std::abs(g01)});
}

bool Rhombus::contains(Point2 q, double tol) const {
    for (int i = 0; i < 4; ++i) {
        Point2 e = v[(i + 1) & 3] - v[i];
        double len = norm(e);
        if (len == 0.0) continue;
        // Signed distance of q left of edge i; negative means outside (ccw hull).
        if (cross(e, q - v[i]) / len < -tol) return false;
    }
    return true;
}

double Rhombus::diameter() const {
    double d = 0.0;
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) d = std::max(d, dist(v[i], v[j]));
    return d;
}

Point2 Rhombus::centroid() const {
    return {(v[0].x + v[1].x + v[2].x + v[3].x) / 4.0,
            (v[0].y + v[1].y + v[2].y + v[3].y) / 4.0};
}

double signed_area(const Polyline& poly) {
    // Collapse consecutive duplicates, treating the chain cyclically.
    Polyline pts;
    pts.reserve(poly.size());
    for (const Point2& q : poly) {
        if (pts.empty() || pts.back().x != q.x || pts.back().y != q.y)
            pts.push_back(q);
    }
    while (pts.size() > 1 && pts.front().x == pts.back().x &&
           pts.front().y == pts.back().y)
        pts.pop_back();
    if (pts.size() < 3)
        throw std::invalid_argument("signed_area: fewer than 3 distinct vertices");

    // Shoelace about the first vertex with Kahan compensation; anchoring at a
    // polygon vertex keeps the summands small for far-from-origin polygons.
    const Point2 o = pts.front();
    double sum = 0.0, comp = 0.0;
    for (std::size_t i = 1; i + 1 < pts.size(); ++i) {
        double term = cross(pts[i] - o, pts[i + 1] - o);
        double y = term - comp;
        double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    return sum / 2.0;
}

namespace {

double point_segment_distance(Point2 q, Point2 a, Point2 b) {
    Point2 ab = b - a;
    double len2 = dot(ab, ab);
    if (len2 == 0.0) return dist(q, a);
    double t = std::clamp(dot(q - a, ab) / len2, 0.0, 1.0);
    return dist(q, a + t * ab);
}

} // namespace

SegmentRelation segments_intersect(Point2 a0, Point2 a1, Point2 b0, Point2 b1,
                                   double tol) {
    const double la = dist(a0, a1);
    const double lb = dist(b0, b1);

    // Signed point-line distances (positive side = left of the directed line).
    auto line_dist = [](Point2 p, Point2 q, Point2 r, double len) {
        return len == 0.0 ? dist(r, p) : cross(q - p, r - p) / len;
    };
    double d_b0 = line_dist(a0, a1, b0, la);
    double d_b1 = line_dist(a0, a1, b1, la);
    double d_a0 = line_dist(b0, b1, a0, lb);
    double d_a1 = line_dist(b0, b1, a1, lb);

    bool b_split = (d_b0 > tol && d_b1 < -tol) || (d_b0 < -tol && d_b1 > tol);
    bool a_split = (d_a0 > tol && d_a1 < -tol) || (d_a0 < -tol && d_a1 > tol);
    if (a_split && b_split) return SegmentRelation::cross;

    double gap = std::min({point_segment_distance(b0, a0, a1),
                           point_segment_distance(b1, a0, a1),
                           point_segment_distance(a0, b0, b1),
                           point_segment_distance(a1, b0, b1)});
    if (gap > tol) return SegmentRelation::disjoint;

    // Within tol of contact. Collinear arrangements may overlap in a segment.
    if (std::abs(d_b0) <= tol && std::abs(d_b1) <= tol && std::abs(d_a0) <= tol &&
        std::abs(d_a1) <= tol && la > 0.0) {
        Point2 dir = (1.0 / la) * (a1 - a0);
        double s0 = dot(b0 - a0, dir), s1 = dot(b1 - a0, dir);
        double lo = std::max(0.0, std::min(s0, s1));
        double hi = std::min(la, std::max(s0, s1));
        if (hi - lo > tol) return SegmentRelation::cross;
    }
    return SegmentRelation::touch;
}

} // namespace kochforge
