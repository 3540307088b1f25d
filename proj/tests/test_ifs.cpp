#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "kochforge/ifs.hpp"

using namespace kochforge;

namespace {

void check_close(Point2 got, Point2 want, double tol = 1e-12) {
    CHECK(std::abs(got.x - want.x) <= tol);
    CHECK(std::abs(got.y - want.y) <= tol);
}

void check_entries(const Similarity2& got, double m00, double m01, double m10,
                   double m11, double tx, double ty, double tol = 1e-12) {
    CHECK(std::abs(got.m00 - m00) <= tol);
    CHECK(std::abs(got.m01 - m01) <= tol);
    CHECK(std::abs(got.m10 - m10) <= tol);
    CHECK(std::abs(got.m11 - m11) <= tol);
    CHECK(std::abs(got.tx - tx) <= tol);
    CHECK(std::abs(got.ty - ty) <= tol);
}

} // namespace

TEST_CASE("build_family: parameter domain is (1/4, 1/3]") {
    CHECK_THROWS_AS(build_family(0.25), std::domain_error);
    CHECK_THROWS_AS(build_family(0.2), std::domain_error);
    CHECK_THROWS_AS(build_family(1.0 / 3.0 + 1e-9), std::domain_error);
    CHECK_THROWS_AS(build_family(0.5), std::domain_error);
    CHECK_NOTHROW(build_family(1.0 / 3.0));
    CHECK_NOTHROW(build_family(0.2500001));
    CHECK_NOTHROW(build_family(7.0 / 24.0));
}

TEST_CASE("build_family: matrix and translation entries match the closed forms") {
    for (double p : {7.0 / 24.0, 0.3, 1.0 / 3.0}) {
        CAPTURE(p);
        MapFamily fam = build_family(p);
        const double w = std::sqrt(4.0 * p - 1.0);
        const double s3 = std::sqrt(3.0);

        check_entries(fam.phi[0][0], p, 0, 0, p, (p - 1) / 2, 0);
        check_entries(fam.phi[3][0], p, 0, 0, p, (1 - p) / 2, 0);
        check_entries(fam.phi[1][0], (1 - 2 * p) / 2, -w / 2, w / 2,
                      (1 - 2 * p) / 2, (2 * p - 1) / 4, w / 4);
        check_entries(fam.phi[2][0], (1 - 2 * p) / 2, w / 2, -w / 2,
                      (1 - 2 * p) / 2, (1 - 2 * p) / 4, w / 4);
        check_entries(fam.phi[1][1], (1 - 2 * p) / 2, w / 2, -w / 2,
                      (1 - 2 * p) / 2, (2 * p - 1) / 4, -w / 4);
        check_entries(fam.phi[2][1], (1 - 2 * p) / 2, -w / 2, w / 2,
                      (1 - 2 * p) / 2, (1 - 2 * p) / 4, -w / 4);
        check_entries(fam.f1, -0.5, s3 / 2, -s3 / 2, -0.5, 0.25, -s3 / 4);
        check_entries(fam.f2, -0.5, -s3 / 2, s3 / 2, -0.5, -0.25, -s3 / 4);

        // Straight digits ignore the flip bit entirely.
        check_entries(fam.phi[0][1], fam.phi[0][0].m00, fam.phi[0][0].m01,
                      fam.phi[0][0].m10, fam.phi[0][0].m11, fam.phi[0][0].tx,
                      fam.phi[0][0].ty, 0.0);
        check_entries(fam.phi[3][1], fam.phi[3][0].m00, fam.phi[3][0].m01,
                      fam.phi[3][0].m10, fam.phi[3][0].m11, fam.phi[3][0].tx,
                      fam.phi[3][0].ty, 0.0);

        // The flipped middle maps are the transpose-linear partners.
        CHECK(fam.phi[1][1].m01 == doctest::Approx(fam.phi[1][0].m10).epsilon(1e-15));
        CHECK(fam.phi[2][1].m01 == doctest::Approx(fam.phi[2][0].m10).epsilon(1e-15));
    }
}

TEST_CASE("build_family: every map is an orientation-preserving p-similarity") {
    for (double p : {0.2501, 0.26, 7.0 / 24.0, 0.3, 1.0 / 3.0}) {
        CAPTURE(p);
        MapFamily fam = build_family(p);
        for (int a = 0; a < 4; ++a)
            for (int b = 0; b < 2; ++b) {
                const Similarity2& m = fam.phi[a][b];
                CHECK(m.ratio() == doctest::Approx(p).epsilon(1e-13));
                CHECK(similarity_defect(m) < 1e-14);
                CHECK(m.m00 * m.m11 - m.m01 * m.m10 > 0.0);
            }
        CHECK(fam.f1.ratio() == doctest::Approx(1.0).epsilon(1e-15));
        CHECK(fam.f2.ratio() == doctest::Approx(1.0).epsilon(1e-15));
    }
}

TEST_CASE("endpoint identities at p in {7/24, 0.3, 1/3}") {
    for (double p : {7.0 / 24.0, 0.3, 1.0 / 3.0}) {
        CAPTURE(p);
        MapFamily fam = build_family(p);
        const double w = std::sqrt(4.0 * p - 1.0);
        const Point2 pm = fam.p_minus, pp = fam.p_plus;
        const Point2 qp = fam.q_plus, qm = fam.q_minus;

        check_close(pm, {-0.5, 0.0});
        check_close(pp, {0.5, 0.0});
        check_close(qp, {0.0, w / 2});
        check_close(qm, {0.0, -w / 2});

        // Chain of shared endpoints along the base segment.
        check_close(fam.phi[0][0].apply(pm), pm);
        check_close(fam.phi[0][0].apply(pp), {p - 0.5, 0.0});
        check_close(fam.phi[1][0].apply(pm), {p - 0.5, 0.0});
        check_close(fam.phi[1][1].apply(pm), {p - 0.5, 0.0});
        check_close(fam.phi[1][0].apply(pp), qp);
        check_close(fam.phi[2][0].apply(pm), qp);
        check_close(fam.phi[1][1].apply(pp), qm);
        check_close(fam.phi[2][1].apply(pm), qm);
        check_close(fam.phi[2][0].apply(pp), {0.5 - p, 0.0});
        check_close(fam.phi[2][1].apply(pp), {0.5 - p, 0.0});
        check_close(fam.phi[3][0].apply(pm), {0.5 - p, 0.0});
        check_close(fam.phi[3][0].apply(pp), pp);

        // Images of the off-axis rhombus vertices.
        check_close(fam.phi[0][0].apply(qp), {(p - 1) / 2, p * w / 2});
        check_close(fam.phi[0][0].apply(qm), {(p - 1) / 2, -p * w / 2});
        check_close(fam.phi[1][0].apply(qp), {-p / 2, (1 - p) * w / 2});
        check_close(fam.phi[1][0].apply(qm), {(3 * p - 1) / 2, p * w / 2});
        check_close(fam.phi[1][1].apply(qp), {(3 * p - 1) / 2, -p * w / 2});
        check_close(fam.phi[1][1].apply(qm), {-p / 2, -(1 - p) * w / 2});
        check_close(fam.phi[2][0].apply(qp), {p / 2, (1 - p) * w / 2});
        check_close(fam.phi[2][0].apply(qm), {(1 - 3 * p) / 2, p * w / 2});
        check_close(fam.phi[2][1].apply(qp), {(1 - 3 * p) / 2, -p * w / 2});
        check_close(fam.phi[2][1].apply(qm), {p / 2, -(1 - p) * w / 2});
        check_close(fam.phi[3][0].apply(qp), {(1 - p) / 2, p * w / 2});
        check_close(fam.phi[3][0].apply(qm), {(1 - p) / 2, -p * w / 2});
    }
}

TEST_CASE("corner isometries rotate the three sides onto each other") {
    MapFamily fam = build_family(0.3);
    const double s3 = std::sqrt(3.0);
    check_close(fam.f1.apply(fam.p_plus), {0.0, -s3 / 2});
    check_close(fam.f1.apply(fam.p_minus), fam.p_plus);
    check_close(fam.f2.apply(fam.p_plus), fam.p_minus);
    check_close(fam.f2.apply(fam.p_minus), {0.0, -s3 / 2});
    // Both are rotations about the triangle centroid.
    Point2 centroid{0.0, -s3 / 6};
    check_close(fam.f1.apply(centroid), centroid);
    check_close(fam.f2.apply(centroid), centroid);
}

TEST_CASE("verify_nesting_and_osc: holds across the parameter range") {
    std::mt19937_64 rng(2026);
    for (int i = 0; i < 50; ++i) {
        double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
        double p = 0.2501 + u * (1.0 / 3.0 - 0.2501);
        CAPTURE(p);
        NestingReport rep = verify_nesting_and_osc(build_family(p), 1e-9);
        CHECK(rep.nested);
        CHECK(rep.interiors_disjoint);
        CHECK(rep.failures.empty());
    }
    NestingReport boundary = verify_nesting_and_osc(build_family(1.0 / 3.0), 1e-9);
    CHECK(boundary.nested);
    CHECK(boundary.interiors_disjoint);
}

TEST_CASE("verify_nesting_and_osc: detects a corrupted family") {
    MapFamily fam = build_family(0.3);
    fam.phi[1][0].ty += 0.05; // push the first bump map out of its strip
    NestingReport rep = verify_nesting_and_osc(fam, 1e-9);
    CHECK_FALSE(rep.failures.empty());
    bool clean = rep.nested && rep.interiors_disjoint;
    CHECK_FALSE(clean);
}
