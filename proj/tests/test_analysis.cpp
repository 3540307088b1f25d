#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <set>
#include <stdexcept>
#include <vector>

#include "kochforge/analysis.hpp"

using namespace kochforge;

namespace {

std::vector<double> powers_of_third(int first, int last) {
    std::vector<double> scales;
    for (int m = first; m <= last; ++m) scales.push_back(std::pow(3.0, -m));
    return scales;
}

/// Horizontal lines spaced finely enough to hit every row of the finest
/// grid, kept strictly inside [0, 1) to avoid far-boundary boxes.
std::vector<Polyline> square_patch(int lines) {
    std::vector<Polyline> out;
    for (int i = 0; i < lines; ++i) {
        double y = static_cast<double>(i) / lines;
        out.push_back({{0.0, y}, {0.999, y}});
    }
    return out;
}

SnowflakeSpec all_one_spec(int depth) {
    SnowflakeSpec spec = make_uniform_spec(1.0 / 3.0, "1/3", depth, 1);
    spec.fill = Fill::one;
    return spec;
}

} // namespace

TEST_CASE("box_dimension: straight segment fits slope 1") {
    std::vector<Polyline> segment{{{-0.5, 0.0}, {0.5, 0.0}}};
    DimensionFit fit = box_dimension(segment, powers_of_third(1, 6));
    REQUIRE(fit.scales.size() == 6);
    REQUIRE(fit.counts.size() == 6);
    CHECK(std::abs(fit.slope - 1.0) < 0.02);
    CHECK(fit.r2 > 0.999);
    CHECK(std::isnan(fit.theoretical));
    // Grids at 3^-m share the bbox anchor, so counts refine monotonically.
    for (std::size_t i = 1; i < fit.counts.size(); ++i) {
        CHECK(fit.counts[i] >= fit.counts[i - 1]);
    }
    CHECK(fit.counts.front() >= 3);
}

TEST_CASE("box_dimension: filled square patch fits slope 2") {
    DimensionFit fit = box_dimension(square_patch(486), powers_of_third(1, 5));
    CHECK(std::abs(fit.slope - 2.0) < 0.05);
    CHECK(fit.r2 > 0.999);
}

TEST_CASE("box_dimension: p = 1/3 curve fits log4/log3 regardless of spec") {
    MapFamily fam = build_family(1.0 / 3.0);
    const double expected = 1.2618595071429148;
    CHECK(std::abs(curve_dimension(fam.params) - expected) < 1e-12);

    std::vector<double> scales = powers_of_third(2, 7);
    SUBCASE("uniform-0 curve") {
        CurveApprox c = curve_polyline(fam, ChoiceView{}, 7);
        DimensionFit fit =
            box_dimension({c.pts}, scales, curve_dimension(fam.params));
        CHECK(std::abs(fit.slope - expected) < 0.05);
        CHECK(fit.theoretical == curve_dimension(fam.params));
        CHECK(fit.r2 > 0.99);
    }
    SUBCASE("random specs share the dimension") {
        for (std::uint64_t seed : {11u, 12u}) {
            SnowflakeSpec spec = make_random_spec(1.0 / 3.0, "1/3", 7, seed);
            CurveApprox c = curve_polyline(fam, spec.view(0), 7);
            DimensionFit fit = box_dimension({c.pts}, scales);
            CHECK(std::abs(fit.slope - expected) < 0.05);
        }
    }
}

TEST_CASE("box_dimension: double-sided level 6 fits log6/log3") {
    MapFamily fam = build_family(1.0 / 3.0);
    const double expected = 1.6309297535714573;
    CHECK(std::abs(double_sided_dimension(fam.params) - expected) < 1e-12);

    std::vector<Polyline> polys;
    for (const Segment& s : double_sided_polylines(fam, 6))
        polys.push_back({s.a, s.b});
    DimensionFit fit = box_dimension(polys, powers_of_third(2, 6),
                                     double_sided_dimension(fam.params));
    CHECK(std::abs(fit.slope - expected) < 0.08);
    CHECK(fit.theoretical == expected);
}

TEST_CASE("box_dimension: rejects bad scale lists and degenerate fits") {
    std::vector<Polyline> segment{{{0.0, 0.0}, {1.0, 0.0}}};
    CHECK_THROWS_AS(box_dimension(segment, {0.5, 0.25}), std::invalid_argument);
    CHECK_THROWS_AS(box_dimension(segment, {0.5, 0.5, 0.25}),
                    std::invalid_argument);
    CHECK_THROWS_AS(box_dimension(segment, {0.5, 0.25, 0.0}),
                    std::invalid_argument);
    CHECK_THROWS_AS(box_dimension({}, {0.5, 0.25, 0.125}),
                    std::invalid_argument);
    // A single point occupies one box at every scale: no slope to fit.
    std::vector<Polyline> point{{{0.2, 0.7}}};
    CHECK_THROWS_AS(box_dimension(point, {0.5, 0.25, 0.125}),
                    std::domain_error);
}

TEST_CASE("turning_constant: frozen values at the pinned parameters") {
    CHECK(turning_constant(make_params(1.0 / 3.0)) == 12.0);
    CHECK(std::abs(turning_constant(make_params(0.3)) - 50.70276197832808) <
          1e-9);
    CHECK(std::abs(turning_constant(make_params(0.26)) - 16.540665374862108) <
          1e-9);
}

TEST_CASE("turning_ratio: classical snowflake stays below the bound") {
    SnowflakeSpec spec = make_uniform_spec(1.0 / 3.0, "1/3", 6, 0);
    TurningReport rep = turning_ratio(spec, 6, 2000, 2026);
    CHECK(rep.k_theoretical == 12.0);
    CHECK(rep.max_ratio_observed >= 1.0);
    CHECK(rep.max_ratio_observed > 1.05);
    CHECK(rep.max_ratio_observed <= rep.k_theoretical + 1e-9);
    CHECK(rep.t_i >= 0.0);
    CHECK(rep.t_i < 1.0);
    CHECK(rep.t_j >= 0.0);
    CHECK(rep.t_j < 1.0);
    CHECK(rep.t_i != rep.t_j);

    TurningReport again = turning_ratio(spec, 6, 2000, 2026);
    CHECK(again.max_ratio_observed == rep.max_ratio_observed);
    CHECK(again.t_i == rep.t_i);
    CHECK(again.t_j == rep.t_j);
}

TEST_CASE("turning_ratio: uniform-0 spec at p = 0.3 stays below the bound") {
    SnowflakeSpec spec = make_uniform_spec(0.3, "0.3", 6, 0);
    TurningReport rep = turning_ratio(spec, 6, 2000, 9);
    CHECK(std::abs(rep.k_theoretical - 50.70276197832808) < 1e-9);
    CHECK(rep.max_ratio_observed >= 1.0);
    CHECK(rep.max_ratio_observed <= rep.k_theoretical + 1e-9);
}

TEST_CASE("turning_ratio: refuses self-touching specs") {
    CHECK_THROWS_AS(turning_ratio(all_one_spec(2), 2, 10, 1),
                    std::domain_error);
}

TEST_CASE("jordan_classify: p = 0.3 random spec is a quasicircle") {
    SnowflakeSpec spec = make_random_spec(0.3, "0.3", 4, 77);
    JordanVerdict v = jordan_classify(spec, 4, 1e-9);
    CHECK(v.verdict == JordanClass::jordan_quasicircle);
    CHECK(v.depth == 4);
    CHECK(v.witnesses.empty());
}

TEST_CASE("jordan_classify: classical snowflake at depth 6 has no touches") {
    SnowflakeSpec spec = make_uniform_spec(1.0 / 3.0, "1/3", 6, 0);
    JordanVerdict v = jordan_classify(spec, 6, 1e-9);
    CHECK(v.verdict == JordanClass::jordan_quasicircle);
    CHECK(v.witnesses.empty());
}

TEST_CASE("jordan_classify: anti-snowflake touches itself on the spokes") {
    SnowflakeSpec spec = all_one_spec(2);
    MapFamily fam = build_family(spec.params);
    JordanVerdict v = jordan_classify(spec, 2, 1e-9);
    REQUIRE(v.verdict == JordanClass::self_touching);
    REQUIRE(!v.witnesses.empty());

    // Every witness point sits in both named cells (refined words may be
    // longer than the sweep depth), and points are pairwise distinct.
    std::set<std::pair<long long, long long>> keys;
    for (const TouchWitness& w : v.witnesses) {
        CHECK(w.a.side >= 0);
        CHECK(w.a.side < 3);
        CHECK(w.b.side >= 0);
        CHECK(w.b.side < 3);
        CHECK(w.a.word.size() >= 2);
        CHECK(w.b.word.size() == w.a.word.size());
        Rhombus ra = path_cell(fam, spec, w.a);
        Rhombus rb = path_cell(fam, spec, w.b);
        CHECK(ra.contains(w.point, 1e-7));
        CHECK(rb.contains(w.point, 1e-7));
        keys.insert({std::llround(w.point.x * 1e9),
                     std::llround(w.point.y * 1e9)});
    }
    CHECK(keys.size() == v.witnesses.size());

    // The lower spoke's touch point at (0, -sqrt(3)/4) must be witnessed.
    double best = 1e30;
    for (const TouchWitness& w : v.witnesses)
        best = std::min(best, dist(w.point, {0.0, -0.4330127018922193}));
    CHECK(best < 1e-6);
}

TEST_CASE("jordan_classify: rejects bad depths and tolerances") {
    SnowflakeSpec spec = make_uniform_spec(0.3, "0.3", 2, 0);
    CHECK_THROWS_AS(jordan_classify(spec, 0, 1e-9), std::invalid_argument);
    CHECK_THROWS_AS(jordan_classify(spec, kMaxDepth + 1, 1e-9),
                    std::invalid_argument);
    CHECK_THROWS_AS(jordan_classify(spec, 2, 0.0), std::invalid_argument);
}

TEST_CASE("measure_zero_probe: covered area decays at rate 6 p^2") {
    MapFamily fam = build_family(1.0 / 3.0);
    CoverageReport rep = measure_zero_probe(fam, 6);
    REQUIRE(rep.rows.size() == 6);
    CHECK(std::abs(rep.theoretical_ratio - 2.0 / 3.0) < 1e-12);
    CHECK(std::isnan(rep.rows.front().ratio_to_prev));
    for (std::size_t i = 0; i < rep.rows.size(); ++i) {
        CHECK(rep.rows[i].level == static_cast<int>(i) + 1);
        CHECK(rep.rows[i].boxes > 0);
        if (i > 0) {
            CHECK(rep.rows[i].covered < rep.rows[i - 1].covered);
            CHECK(rep.rows[i].ratio_to_prev ==
                  rep.rows[i].covered / rep.rows[i - 1].covered);
        }
    }
    for (const CoverageRow& row : rep.rows) {
        if (row.level < 3) continue;
        CHECK(row.ratio_to_prev > 0.9 * rep.theoretical_ratio);
        CHECK(row.ratio_to_prev < 1.1 * rep.theoretical_ratio);
    }
}

TEST_CASE("measure_zero_probe: decreasing for p below 1/3; validates k") {
    MapFamily fam = build_family(0.29);
    CoverageReport rep = measure_zero_probe(fam, 5);
    for (std::size_t i = 1; i < rep.rows.size(); ++i)
        CHECK(rep.rows[i].covered < rep.rows[i - 1].covered);
    CHECK(std::abs(rep.theoretical_ratio - 6 * 0.29 * 0.29) < 1e-12);
    CHECK_THROWS_AS(measure_zero_probe(fam, 1), std::invalid_argument);
    CHECK_THROWS_AS(measure_zero_probe(fam, 9), std::invalid_argument);
}
