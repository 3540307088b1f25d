#include "kochforge/curves.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace kochforge {

namespace {

void check_level(int k) {
    if (k < 0 || k > kMaxDepth)
        throw std::invalid_argument("level must lie in 0..14");
}

void check_stored(const ChoiceSequence& s, int k) {
    check_level(k);
    if (k > s.depth())
        throw std::invalid_argument("level exceeds the stored choice depth");
}

/// Depth-first walk over digit words. All four children of one node read
/// the same bit: the slot is indexed by the node's prefix, not the digit
/// chosen under it.
template <class Leaf>
void walk(const MapFamily& fam, const ChoiceView& s, const Similarity2& T,
          int level, int k, std::uint64_t prefix, Leaf&& leaf) {
    if (level == k) {
        leaf(T, prefix);
        return;
    }
    const int bit = s.bit(level, prefix);
    for (int d = 0; d < 4; ++d)
        walk(fam, s, compose(T, fam.phi[d][bit]), level + 1, k, prefix * 4 + d,
             std::forward<Leaf>(leaf));
}

} // namespace

CurveApprox curve_polyline(const MapFamily& fam, const ChoiceView& s, int k) {
    check_level(k);
    CurveApprox out{k, {}};
    out.pts.reserve((std::size_t{1} << (2 * k)) + 1);
    walk(fam, s, Similarity2{}, 0, k, 0,
         [&](const Similarity2& T, std::uint64_t) {
             Point2 start = T.apply(fam.p_minus);
             if (out.pts.empty())
                 out.pts.push_back(start);
             else if (dist(out.pts.back(), start) > 1e-9)
                 throw std::logic_error("curve pieces failed to chain");
             out.pts.push_back(T.apply(fam.p_plus));
         });
    return out;
}

CurveApprox curve_polyline(const MapFamily& fam, const ChoiceSequence& s,
                           int k) {
    check_stored(s, k);
    return curve_polyline(fam, ChoiceView{&s}, k);
}

SnowflakeApprox snowflake_polyline(const MapFamily& fam,
                                   const SnowflakeSpec& spec, int k) {
    check_level(k);
    SnowflakeApprox out{k, {}};
    out.pts.reserve(std::size_t{3} << (2 * k));
    // Each side is walked against its native direction, so we take the
    // reversed vertex list and drop its last entry: that point reappears
    // as the first of the next side (f2 and f1 swap the two endpoints).
    auto add_side = [&](const ChoiceView& v, const Similarity2* corner) {
        CurveApprox c = curve_polyline(fam, v, k);
        for (std::size_t i = c.pts.size(); i-- > 1;)
            out.pts.push_back(corner ? corner->apply(c.pts[i]) : c.pts[i]);
    };
    add_side(spec.view(0), nullptr);
    add_side(spec.view(2), &fam.f2);
    add_side(spec.view(1), &fam.f1);
    return out;
}

std::vector<Segment> double_sided_polylines(const MapFamily& fam, int k) {
    check_level(k);
    static constexpr MapLabel kSix[6] = {{0, 0}, {1, 0}, {1, 1},
                                         {2, 0}, {2, 1}, {3, 0}};
    std::vector<Segment> out;
    std::size_t count = 1;
    for (int j = 0; j < k; ++j) count *= 6;
    out.reserve(count);
    auto recurse = [&](auto&& self, const Similarity2& T, int level) -> void {
        if (level == k) {
            out.push_back({T.apply(fam.p_minus), T.apply(fam.p_plus)});
            return;
        }
        for (const MapLabel& l : kSix)
            self(self, compose(T, fam.phi[l.digit][l.flip]), level + 1);
    };
    recurse(recurse, Similarity2{}, 0);
    return out;
}

RhoPoint rho(const MapFamily& fam, const ChoiceView& s, double t, int k) {
    check_level(k);
    if (!(t >= 0.0 && t <= 1.0))
        throw std::invalid_argument("curve parameter must lie in [0, 1]");
    DigitWord u(static_cast<std::size_t>(k));
    if (t == 1.0) {
        std::fill(u.begin(), u.end(), 3);
    } else {
        double x = t;
        for (int j = 0; j < k; ++j) {
            double scaled = 4.0 * x;
            int d = std::min(3, static_cast<int>(scaled));
            u[static_cast<std::size_t>(j)] = d;
            x = scaled - d;
        }
    }
    Similarity2 T;
    for (const MapLabel& l : omega_encode(u, s))
        T = compose(T, fam.phi[l.digit][l.flip]);
    return {T.apply(fam.cell.centroid()), std::pow(fam.params.p, k)};
}

RhoPoint rho(const MapFamily& fam, const ChoiceSequence& s, double t, int k) {
    check_stored(s, k);
    return rho(fam, ChoiceView{&s}, t, k);
}

std::vector<Rhombus> cells(const MapFamily& fam, const ChoiceView& s, int k) {
    check_level(k);
    std::vector<Rhombus> out;
    out.reserve(std::size_t{1} << (2 * k));
    walk(fam, s, Similarity2{}, 0, k, 0,
         [&](const Similarity2& T, std::uint64_t) {
             out.push_back(cell_shape(fam, T));
         });
    return out;
}

std::vector<Rhombus> cells(const MapFamily& fam, const ChoiceSequence& s,
                           int k) {
    check_stored(s, k);
    return cells(fam, ChoiceView{&s}, k);
}

std::vector<CellRecord> snowflake_cells(const MapFamily& fam,
                                        const SnowflakeSpec& spec, int k) {
    check_level(k);
    const std::size_t per_side = std::size_t{1} << (2 * k);
    std::vector<CellRecord> out;
    out.reserve(3 * per_side);
    // Chain order mirrors snowflake_polyline: sides s, r, t, each side's
    // cells in reversed lexicographic word order.
    struct Side {
        int view;
        const Similarity2* corner;
    };
    const Side sides[3] = {{0, nullptr}, {2, &fam.f2}, {1, &fam.f1}};
    for (int side = 0; side < 3; ++side) {
        Similarity2 prefix =
            sides[side].corner ? *sides[side].corner : Similarity2{};
        std::vector<CellRecord> native;
        native.reserve(per_side);
        DigitWord word(static_cast<std::size_t>(k));
        auto record = [&](const Similarity2& T, std::uint64_t leaf) {
            std::uint64_t rest = leaf;
            for (int j = k; j-- > 0;) {
                word[static_cast<std::size_t>(j)] = static_cast<int>(rest & 3);
                rest >>= 2;
            }
            native.push_back({{side, word}, T});
        };
        walk(fam, spec.view(sides[side].view), prefix, 0, k, 0, record);
        out.insert(out.end(), std::make_move_iterator(native.rbegin()),
                   std::make_move_iterator(native.rend()));
    }
    return out;
}

Rhombus cell_shape(const MapFamily& fam, const Similarity2& map) {
    Rhombus r;
    for (std::size_t i = 0; i < 4; ++i) r.v[i] = map.apply(fam.cell.v[i]);
    return r;
}

} // namespace kochforge
