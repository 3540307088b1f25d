#include "kochforge/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <set>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "kochforge/parallel.hpp"

namespace kochforge {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Witness refinement digs until cells are smaller than this.
constexpr double kLeafDiameter = 1e-8;
// Beam width of the pair refinement: wide enough that kept leaves cover a
// touch locus to well under 1e-6 even when survivors double per level.
constexpr std::size_t kRefineBeam = 4096;
// Hard bound on the merged witness list. Per-pair quotas plus round-robin
// merging keep every touching pair represented well before this trips.
constexpr std::size_t kWitnessCap = 65536;
// Junction probes look this many levels below the sweep depth.
constexpr int kProbeExtraDepth = 8;
constexpr std::size_t kProbeNodeBudget = 20000;
constexpr std::size_t kProbeCandCap = 64;

// ---------------------------------------------------------------- box count

void densify_into(const Polyline& poly, double spacing,
                  std::vector<Point2>& out) {
    if (poly.empty()) return;
    out.push_back(poly.front());
    for (std::size_t i = 1; i < poly.size(); ++i) {
        Point2 a = poly[i - 1], b = poly[i];
        double len = dist(a, b);
        int n = len > 0.0 ? static_cast<int>(std::ceil(len / spacing)) : 1;
        for (int j = 1; j <= n; ++j) {
            double u = static_cast<double>(j) / n;
            out.push_back(a + u * (b - a));
        }
    }
}

std::uint64_t pack_box(double dx, double dy, double scale) {
    auto ix = static_cast<std::int64_t>(std::floor(dx / scale));
    auto iy = static_cast<std::int64_t>(std::floor(dy / scale));
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(ix)) << 32) |
           static_cast<std::uint32_t>(iy);
}

std::uint64_t count_boxes(const std::vector<Point2>& pts, Point2 anchor,
                          double scale) {
    // Closed-box convention: samples landing exactly on a grid seam count
    // toward the lower box, so a segment spanning m boxes reports m, not
    // m + 1. The relative nudge only moves seam-exact coordinates.
    auto index = [&](double d) {
        return static_cast<std::int64_t>(std::floor((d / scale) *
                                                    (1.0 - 1e-12)));
    };
    std::unordered_set<std::uint64_t> boxes;
    boxes.reserve(pts.size() / 4 + 16);
    for (Point2 q : pts) {
        auto ix = index(q.x - anchor.x);
        auto iy = index(q.y - anchor.y);
        boxes.insert(
            (static_cast<std::uint64_t>(static_cast<std::uint32_t>(ix))
             << 32) |
            static_cast<std::uint32_t>(iy));
    }
    return boxes.size();
}

// ------------------------------------------------------------ cell geometry

/// CellPath.side -> which stored sequence drives that side's bits.
constexpr int kSideViewTag[3] = {0, 2, 1};

/// A chain cell mid-refinement: the composed map plus the data needed to
/// read deeper choice bits (the word's base-4 value indexes the bit slot).
struct CellNode {
    Similarity2 map;
    DigitWord word;
    std::uint64_t prefix = 0;
    int side = 0;
};

std::uint64_t prefix_of(const DigitWord& word) {
    std::uint64_t v = 0;
    for (int d : word) v = v * 4 + static_cast<std::uint64_t>(d);
    return v;
}

CellNode child_of(const MapFamily& fam, const SnowflakeSpec& spec,
                  const CellNode& n, int digit) {
    const int level = static_cast<int>(n.word.size());
    const int bit = spec.view(kSideViewTag[n.side]).bit(level, n.prefix);
    CellNode c;
    c.map = compose(n.map, fam.phi[digit][bit]);
    c.word = n.word;
    c.word.push_back(digit);
    c.prefix = n.prefix * 4 + static_cast<std::uint64_t>(digit);
    c.side = n.side;
    return c;
}

void project(const Rhombus& r, Point2 axis, double& lo, double& hi) {
    lo = hi = dot(r.v[0], axis);
    for (std::size_t i = 1; i < 4; ++i) {
        double d = dot(r.v[i], axis);
        lo = std::min(lo, d);
        hi = std::max(hi, d);
    }
}

/// Largest separation (a distance lower bound) over the edge normals of
/// both rhombi plus the centroid axis. <= 0 certifies intersection; > tol
/// certifies the true distance exceeds tol.
double sat_gap(const Rhombus& a, const Rhombus& b) {
    double gap = -std::numeric_limits<double>::infinity();
    auto axis_gap = [&](Point2 axis) {
        double n2 = dot(axis, axis);
        if (n2 < 1e-300) return;
        double alo, ahi, blo, bhi;
        project(a, axis, alo, ahi);
        project(b, axis, blo, bhi);
        gap = std::max(gap, std::max(blo - ahi, alo - bhi) / std::sqrt(n2));
    };
    for (const Rhombus* r : {&a, &b})
        for (std::size_t i = 0; i < 4; ++i) {
            Point2 e = r->v[(i + 1) & 3] - r->v[i];
            axis_gap({-e.y, e.x});
        }
    axis_gap(b.centroid() - a.centroid());
    return gap;
}

bool rhombi_within(const Rhombus& a, const Rhombus& b, double tol) {
    return sat_gap(a, b) <= tol;
}

double point_seg_dist(Point2 p, Point2 a, Point2 b) {
    Point2 ab = b - a;
    double n2 = dot(ab, ab);
    double t = n2 > 0.0 ? std::clamp(dot(p - a, ab) / n2, 0.0, 1.0) : 0.0;
    return dist(p, a + t * ab);
}

double seg_seg_dist(Point2 a0, Point2 a1, Point2 b0, Point2 b1) {
    double d1 = cross(a1 - a0, b0 - a0);
    double d2 = cross(a1 - a0, b1 - a0);
    double d3 = cross(b1 - b0, a0 - b0);
    double d4 = cross(b1 - b0, a1 - b0);
    if (((d1 > 0.0) != (d2 > 0.0)) && ((d3 > 0.0) != (d4 > 0.0))) return 0.0;
    return std::min(std::min(point_seg_dist(b0, a0, a1),
                             point_seg_dist(b1, a0, a1)),
                    std::min(point_seg_dist(a0, b0, b1),
                             point_seg_dist(a1, b0, b1)));
}

double rhombus_segment_dist(const Rhombus& r, Point2 s0, Point2 s1) {
    if (r.contains(s0, 0.0)) return 0.0;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < 4; ++i)
        best = std::min(best, seg_seg_dist(r.v[i], r.v[(i + 1) & 3], s0, s1));
    return best;
}

/// Sutherland-Hodgman clip of rhombus a against rhombus b (both ccw), with
/// the inside test loosened by tol so exact shared boundary survives.
std::vector<Point2> clip_convex(const Rhombus& a, const Rhombus& b,
                                double tol) {
    std::vector<Point2> poly(a.v.begin(), a.v.end());
    for (std::size_t i = 0; i < 4 && !poly.empty(); ++i) {
        Point2 b0 = b.v[i], b1 = b.v[(i + 1) & 3];
        double elen = dist(b0, b1);
        if (elen <= 0.0) continue;
        std::vector<Point2> next;
        next.reserve(poly.size() + 2);
        for (std::size_t j = 0; j < poly.size(); ++j) {
            Point2 p = poly[j], q = poly[(j + 1) % poly.size()];
            double dp = cross(b1 - b0, p - b0) / elen;
            double dq = cross(b1 - b0, q - b0) / elen;
            bool inp = dp >= -tol, inq = dq >= -tol;
            if (inp) next.push_back(p);
            if (inp != inq) next.push_back(p + (dp / (dp - dq)) * (q - p));
        }
        poly.swap(next);
    }
    return poly;
}

// ------------------------------------------------------------- refinement

struct RefineOutcome {
    bool touched = false;
    std::vector<TouchWitness> witnesses;
};

/// Beam refinement of one candidate pair: expand both cells' children,
/// keep child pairs still within tol, subsample evenly when the frontier
/// exceeds the beam. Survivors at leaf depth certify a touch; their
/// midpoints witness the touch locus.
RefineOutcome refine_pair(const MapFamily& fam, const SnowflakeSpec& spec,
                          const CellNode& a, const CellNode& b, double tol,
                          int leaf_depth) {
    using Pair = std::pair<CellNode, CellNode>;
    std::vector<Pair> frontier{{a, b}};
    for (int level = static_cast<int>(a.word.size());
         level < leaf_depth && !frontier.empty(); ++level) {
        std::vector<Pair> next;
        next.reserve(std::min(frontier.size() * 16, kRefineBeam * 16));
        for (const Pair& pr : frontier) {
            CellNode ca[4], cb[4];
            Rhombus ra[4], rb[4];
            for (int d = 0; d < 4; ++d) {
                ca[d] = child_of(fam, spec, pr.first, d);
                cb[d] = child_of(fam, spec, pr.second, d);
                ra[d] = cell_shape(fam, ca[d].map);
                rb[d] = cell_shape(fam, cb[d].map);
            }
            for (int i = 0; i < 4; ++i)
                for (int j = 0; j < 4; ++j)
                    if (rhombi_within(ra[i], rb[j], tol))
                        next.push_back({ca[i], cb[j]});
        }
        if (next.size() > kRefineBeam) {
            // Quantile subsampling over the spatially sorted frontier keeps
            // the surviving pairs spread across the whole touch locus, so
            // dropped pairs always have a kept neighbour close by.
            std::sort(next.begin(), next.end(),
                      [](const Pair& lhs, const Pair& rhs) {
                          Point2 a = lhs.first.map.apply({0.0, 0.0});
                          Point2 b = rhs.first.map.apply({0.0, 0.0});
                          return a.x != b.x ? a.x < b.x : a.y < b.y;
                      });
            std::vector<Pair> kept;
            kept.reserve(kRefineBeam);
            for (std::size_t i = 0; i < kRefineBeam; ++i)
                kept.push_back(std::move(next[i * next.size() / kRefineBeam]));
            next.swap(kept);
        }
        frontier.swap(next);
    }
    RefineOutcome out;
    out.touched = !frontier.empty();
    out.witnesses.reserve(frontier.size());
    for (const Pair& pr : frontier) {
        Point2 pa = cell_shape(fam, pr.first.map).centroid();
        Point2 pb = cell_shape(fam, pr.second.map).centroid();
        out.witnesses.push_back({{pr.first.side, pr.first.word},
                                 {pr.second.side, pr.second.word},
                                 0.5 * (pa + pb)});
    }
    return out;
}

/// Thin one pair's witnesses to quota by spatial quantiles, so the kept
/// points still span that pair's stretch of the touch locus.
void quota_subsample(std::vector<TouchWitness>& wit, std::size_t quota) {
    if (wit.size() <= quota) return;
    std::sort(wit.begin(), wit.end(),
              [](const TouchWitness& a, const TouchWitness& b) {
                  return a.point.x != b.point.x ? a.point.x < b.point.x
                                                : a.point.y < b.point.y;
              });
    std::vector<TouchWitness> kept;
    kept.reserve(quota);
    for (std::size_t i = 0; i < quota; ++i)
        kept.push_back(std::move(wit[i * wit.size() / quota]));
    wit.swap(kept);
}

/// Later pairs get smaller quotas: the full list stays bounded while the
/// first few hundred touching pairs keep dense locus coverage.
std::size_t quota_for(std::size_t pair_index) {
    if (pair_index < 64) return 1024;
    if (pair_index < 512) return 128;
    return 16;
}

/// Descendants of root at the probe depth that stay within tol of the
/// contact segment [s0, s1], excluding the single chain of cells that keep
/// the junction point as a corner (those converge to the legitimate shared
/// endpoint). Sets *exhausted when a budget stops the search early.
std::vector<CellNode> spoke_descendants(const MapFamily& fam,
                                        const SnowflakeSpec& spec,
                                        const CellNode& root, Point2 s0,
                                        Point2 s1, Point2 junction, double tol,
                                        int target_depth, bool* exhausted) {
    std::vector<CellNode> out;
    std::vector<CellNode> stack{root};
    std::size_t visited = 0;
    const std::size_t root_len = root.word.size();
    while (!stack.empty()) {
        if (++visited > kProbeNodeBudget) {
            *exhausted = true;
            break;
        }
        CellNode nd = std::move(stack.back());
        stack.pop_back();
        Rhombus shape = cell_shape(fam, nd.map);
        if (nd.word.size() > root_len) {
            bool at_junction = false;
            for (Point2 v : shape.v)
                if (dist(v, junction) < 1e-10) at_junction = true;
            if (at_junction) continue;
            if (rhombus_segment_dist(shape, s0, s1) > tol) continue;
        }
        if (static_cast<int>(nd.word.size()) >= target_depth) {
            out.push_back(std::move(nd));
            if (out.size() >= kProbeCandCap) {
                *exhausted = true;
                break;
            }
            continue;
        }
        for (int d = 0; d < 4; ++d) stack.push_back(child_of(fam, spec, nd, d));
    }
    return out;
}

CellNode node_of(const CellRecord& rec) {
    return {rec.map, rec.path.word, prefix_of(rec.path.word), rec.path.side};
}

} // namespace

// --------------------------------------------------------------- dimension

double curve_dimension(const KochParams& params) {
    return std::log(4.0) / std::log(1.0 / params.p);
}

double double_sided_dimension(const KochParams& params) {
    return std::log(6.0) / std::log(1.0 / params.p);
}

DimensionFit box_dimension(const std::vector<Polyline>& polylines,
                           const std::vector<double>& scales,
                           double theoretical) {
    if (scales.size() < 3)
        throw std::invalid_argument("box_dimension needs at least 3 scales");
    for (std::size_t i = 0; i < scales.size(); ++i) {
        if (!(scales[i] > 0.0))
            throw std::invalid_argument("scales must be positive");
        if (i > 0 && !(scales[i] < scales[i - 1]))
            throw std::invalid_argument("scales must be strictly decreasing");
    }
    std::vector<Point2> pts;
    for (const Polyline& poly : polylines)
        densify_into(poly, scales.back() / 4.0, pts);
    if (pts.empty())
        throw std::invalid_argument("box_dimension needs at least one vertex");

    Point2 anchor = pts.front();
    for (Point2 q : pts) {
        anchor.x = std::min(anchor.x, q.x);
        anchor.y = std::min(anchor.y, q.y);
    }

    DimensionFit fit;
    fit.scales = scales;
    fit.counts.assign(scales.size(), 0);
    fit.theoretical = theoretical;
    parallel_chunks(scales.size(),
                    [&](std::size_t b, std::size_t e, std::size_t) {
                        for (std::size_t i = b; i < e; ++i)
                            fit.counts[i] = count_boxes(pts, anchor, scales[i]);
                    });

    bool varies = false;
    for (std::uint64_t c : fit.counts)
        if (c != fit.counts.front()) varies = true;
    if (!varies)
        throw std::domain_error("box counts do not vary across scales");

    double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
    const double n = static_cast<double>(scales.size());
    for (std::size_t i = 0; i < scales.size(); ++i) {
        double x = std::log(1.0 / scales[i]);
        double y = std::log(static_cast<double>(fit.counts[i]));
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        syy += y * y;
    }
    double vxx = sxx - sx * sx / n;
    double vxy = sxy - sx * sy / n;
    double vyy = syy - sy * sy / n;
    fit.slope = vxy / vxx;
    fit.r2 = (vxy * vxy) / (vxx * vyy);
    return fit;
}

// ----------------------------------------------------------------- turning

double turning_constant(const KochParams& params) {
    if (std::abs(params.p - 1.0 / 3.0) <= 1e-9) return 12.0;
    return 8.0 / ((1.0 - params.p) *
                  (1.0 - std::sqrt(3.0 * (4.0 * params.p - 1.0))));
}

namespace {

JordanVerdict classify_impl(const SnowflakeSpec& spec, int k, double tol,
                            bool want_witnesses);

/// Diameter of the forward arc from vertex a to vertex b inclusive,
/// subsampled to about 128 vertices. Endpoints always participate, so the
/// result is at least the endpoint distance.
double arc_diameter(const Polyline& chain, std::size_t a, std::size_t b) {
    const std::size_t n = chain.size();
    const std::size_t len = (b + n - a) % n + 1;
    const std::size_t stride = (len + 127) / 128;
    std::vector<Point2> buf;
    buf.reserve(len / stride + 2);
    for (std::size_t off = 0; off < len; off += stride)
        buf.push_back(chain[(a + off) % n]);
    if ((len - 1) % stride != 0) buf.push_back(chain[b]);
    double best = 0.0;
    for (std::size_t i = 0; i < buf.size(); ++i)
        for (std::size_t j = i + 1; j < buf.size(); ++j)
            best = std::max(best, dist(buf[i], buf[j]));
    return best;
}

} // namespace

TurningReport turning_ratio(const SnowflakeSpec& spec, int k, int samples,
                            std::uint64_t seed) {
    if (k < 1 || k > kMaxDepth)
        throw std::invalid_argument("depth must lie in 1..14");
    if (samples < 1)
        throw std::invalid_argument("samples must be positive");
    JordanVerdict pre = classify_impl(spec, std::min(k, 5), 1e-9, false);
    if (pre.verdict == JordanClass::self_touching)
        throw std::domain_error(
            "turning ratio undefined: the spec self-touches");

    MapFamily fam = build_family(spec.params);
    const Polyline chain = snowflake_polyline(fam, spec, k).pts;
    const std::size_t n = chain.size();

    // One sequential draw keeps the pair stream independent of scheduling.
    std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
    pairs.reserve(static_cast<std::size_t>(samples));
    std::mt19937_64 rng(seed);
    for (int s = 0; s < samples; ++s) {
        std::uint64_t a, b;
        do {
            a = rng() % n;
            b = rng() % n;
        } while (a == b);
        pairs.push_back({static_cast<std::uint32_t>(a),
                         static_cast<std::uint32_t>(b)});
    }

    std::vector<double> ratios(pairs.size());
    parallel_chunks(pairs.size(),
                    [&](std::size_t lo, std::size_t hi, std::size_t) {
                        for (std::size_t i = lo; i < hi; ++i) {
                            auto [a, b] = pairs[i];
                            double d = dist(chain[a], chain[b]);
                            double arcs = std::min(arc_diameter(chain, a, b),
                                                   arc_diameter(chain, b, a));
                            ratios[i] = arcs / d;
                        }
                    });

    std::size_t arg = 0;
    for (std::size_t i = 1; i < ratios.size(); ++i)
        if (ratios[i] > ratios[arg]) arg = i;

    TurningReport rep;
    rep.k_theoretical = turning_constant(spec.params);
    rep.max_ratio_observed = ratios[arg];
    rep.t_i = static_cast<double>(pairs[arg].first) / static_cast<double>(n);
    rep.t_j = static_cast<double>(pairs[arg].second) / static_cast<double>(n);
    return rep;
}

// ------------------------------------------------------------------ jordan

Rhombus path_cell(const MapFamily& fam, const SnowflakeSpec& spec,
                  const CellPath& path) {
    if (path.side < 0 || path.side > 2)
        throw std::invalid_argument("cell path side must lie in 0..2");
    Similarity2 T;
    if (path.side == 1) T = fam.f2;
    if (path.side == 2) T = fam.f1;
    std::uint64_t prefix = 0;
    for (std::size_t j = 0; j < path.word.size(); ++j) {
        int d = path.word[j];
        if (d < 0 || d > 3)
            throw std::invalid_argument("cell path digit outside 0..3");
        int bit = spec.view(kSideViewTag[path.side])
                      .bit(static_cast<int>(j), prefix);
        T = compose(T, fam.phi[d][bit]);
        prefix = prefix * 4 + static_cast<std::uint64_t>(d);
    }
    return cell_shape(fam, T);
}

namespace {

/// Shared classifier. want_witnesses = false returns at the first certified
/// touch with a single witness; the full sweep collects witnesses from every
/// touching pair, merged round-robin so each pair keeps locus coverage.
JordanVerdict classify_impl(const SnowflakeSpec& spec, int k, double tol,
                            bool want_witnesses) {
    if (k < 1 || k > kMaxDepth)
        throw std::invalid_argument("depth must lie in 1..14");
    if (!(tol > 0.0)) throw std::invalid_argument("tol must be positive");

    const MapFamily fam = build_family(spec.params);
    const double p = spec.params.p;

    const std::vector<CellRecord> recs = snowflake_cells(fam, spec, k);
    const std::size_t n = recs.size();
    std::vector<Rhombus> shapes(n);
    std::vector<Point2> centers(n);
    for (std::size_t i = 0; i < n; ++i) {
        shapes[i] = cell_shape(fam, recs[i].map);
        centers[i] = shapes[i].centroid();
    }

    int leaf_depth = k;
    for (double diam = std::pow(p, k); diam >= kLeafDiameter && leaf_depth < 40;
         diam *= p)
        ++leaf_depth;

    // Bucket cells by centroid; any two cells within tol of each other sit
    // in the same or adjacent buckets (bucket size >= cell diameter + tol).
    const double h = std::pow(p, k) + tol;
    auto bucket_key = [&](double x, double y) {
        return pack_box(x + 2.0, y + 2.0, h);
    };
    std::unordered_map<std::uint64_t, std::vector<std::uint32_t>> grid;
    for (std::size_t i = 0; i < n; ++i)
        grid[bucket_key(centers[i].x, centers[i].y)].push_back(
            static_cast<std::uint32_t>(i));

    std::vector<std::pair<std::uint32_t, std::uint32_t>> candidates;
    for (std::size_t i = 0; i < n; ++i) {
        for (int dx = -1; dx <= 1; ++dx)
            for (int dy = -1; dy <= 1; ++dy) {
                auto it = grid.find(bucket_key(centers[i].x + dx * h,
                                               centers[i].y + dy * h));
                if (it == grid.end()) continue;
                for (std::uint32_t j : it->second) {
                    if (j <= i) continue;
                    if (j == i + 1) continue;
                    if (i == 0 && j == n - 1) continue;
                    if (rhombi_within(shapes[i], shapes[j], tol))
                        candidates.push_back(
                            {static_cast<std::uint32_t>(i), j});
                }
            }
    }

    std::vector<std::vector<TouchWitness>> per_pair;
    for (auto [i, j] : candidates) {
        RefineOutcome r = refine_pair(fam, spec, node_of(recs[i]),
                                      node_of(recs[j]), tol, leaf_depth);
        if (!r.touched) continue;
        if (!want_witnesses)
            return {JordanClass::self_touching,
                    k,
                    {std::move(r.witnesses.front())}};
        quota_subsample(r.witnesses, quota_for(per_pair.size()));
        per_pair.push_back(std::move(r.witnesses));
    }

    // No non-adjacent contact. Consecutive cells sharing more than their
    // junction point (possible near p = 1/3 only) may still hide touches of
    // the limit arcs: probe below each such junction for descendants that
    // hug the contact segment without converging to the junction itself.
    bool exhausted = false;
    const double extent_floor = std::pow(p, k) * 1e-4;
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t j = (i + 1) % n;
        std::vector<Point2> overlap = clip_convex(shapes[i], shapes[j], tol);
        if (overlap.size() < 2) continue;
        Point2 s0 = overlap[0], s1 = overlap[0];
        double extent = 0.0;
        for (std::size_t u = 0; u < overlap.size(); ++u)
            for (std::size_t v = u + 1; v < overlap.size(); ++v)
                if (double d = dist(overlap[u], overlap[v]); d > extent) {
                    extent = d;
                    s0 = overlap[u];
                    s1 = overlap[v];
                }
        if (extent <= extent_floor) continue;

        // The legitimate shared point is the chain vertex between the two
        // cells: the closest pair among the four arc endpoints.
        Point2 ea[2] = {recs[i].map.apply(fam.p_minus),
                        recs[i].map.apply(fam.p_plus)};
        Point2 eb[2] = {recs[j].map.apply(fam.p_minus),
                        recs[j].map.apply(fam.p_plus)};
        Point2 junction = ea[0];
        double best = std::numeric_limits<double>::infinity();
        for (Point2 va : ea)
            for (Point2 vb : eb)
                if (double d = dist(va, vb); d < best) {
                    best = d;
                    junction = 0.5 * (va + vb);
                }

        const int probe_depth = std::min(k + kProbeExtraDepth, leaf_depth);
        std::vector<CellNode> ca =
            spoke_descendants(fam, spec, node_of(recs[i]), s0, s1, junction,
                              tol, probe_depth, &exhausted);
        if (ca.empty()) continue;
        std::vector<CellNode> cb =
            spoke_descendants(fam, spec, node_of(recs[j]), s0, s1, junction,
                              tol, probe_depth, &exhausted);
        for (const CellNode& a : ca)
            for (const CellNode& b : cb) {
                if (!rhombi_within(cell_shape(fam, a.map),
                                   cell_shape(fam, b.map), tol))
                    continue;
                RefineOutcome r = refine_pair(fam, spec, a, b, tol, leaf_depth);
                if (!r.touched) continue;
                if (!want_witnesses)
                    return {JordanClass::self_touching,
                            k,
                            {std::move(r.witnesses.front())}};
                quota_subsample(r.witnesses, quota_for(per_pair.size()));
                per_pair.push_back(std::move(r.witnesses));
            }
    }

    if (!per_pair.empty()) {
        // Merge round-robin so every touching pair contributes coverage even
        // when the cap truncates; dedup on a nanometre grid.
        std::vector<TouchWitness> witnesses;
        std::set<std::pair<long long, long long>> seen;
        for (std::size_t round = 0; true; ++round) {
            bool any = false;
            for (std::vector<TouchWitness>& list : per_pair) {
                if (round >= list.size()) continue;
                any = true;
                TouchWitness& w = list[round];
                auto key = std::make_pair(std::llround(w.point.x * 1e9),
                                          std::llround(w.point.y * 1e9));
                if (!seen.insert(key).second) continue;
                witnesses.push_back(std::move(w));
                if (witnesses.size() >= kWitnessCap)
                    return {JordanClass::self_touching, k,
                            std::move(witnesses)};
            }
            if (!any) break;
        }
        return {JordanClass::self_touching, k, std::move(witnesses)};
    }
    if (exhausted) return {JordanClass::undetermined_at_depth, k, {}};
    return {JordanClass::jordan_quasicircle, k, {}};
}

}  // namespace

JordanVerdict jordan_classify(const SnowflakeSpec& spec, int k, double tol) {
    return classify_impl(spec, k, tol, true);
}

// ------------------------------------------------------------ measure zero

CoverageReport measure_zero_probe(const MapFamily& fam, int k) {
    if (k < 2 || k > 8) throw std::invalid_argument("k must lie in 2..8");
    CoverageReport rep;
    rep.theoretical_ratio = 6.0 * fam.params.p * fam.params.p;
    const Similarity2 id{};
    const Similarity2* copies[3] = {&id, &fam.f1, &fam.f2};
    for (int level = 1; level <= k; ++level) {
        const double scale = std::pow(fam.params.p, level);
        const std::vector<Segment> segs = double_sided_polylines(fam, level);
        std::unordered_set<std::uint64_t> boxes;
        boxes.reserve(segs.size() * 4);
        for (const Similarity2* T : copies)
            for (const Segment& s : segs) {
                Point2 a = T->apply(s.a), b = T->apply(s.b);
                for (int m = 0; m <= 4; ++m) {
                    Point2 q = a + (m / 4.0) * (b - a);
                    boxes.insert(pack_box(q.x + 2.0, q.y + 2.0, scale));
                }
            }
        CoverageRow row;
        row.level = level;
        row.boxes = boxes.size();
        row.covered = static_cast<double>(boxes.size()) * scale * scale;
        row.ratio_to_prev =
            rep.rows.empty() ? kNaN : row.covered / rep.rows.back().covered;
        rep.rows.push_back(row);
    }
    return rep;
}

} // namespace kochforge
