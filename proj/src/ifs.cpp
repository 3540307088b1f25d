#include "kochforge/ifs.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace kochforge {

KochParams make_params(double p) {
    if (!(p > 0.25 && p <= 1.0 / 3.0))
        throw std::domain_error("p must lie in (1/4, 1/3], got " + std::to_string(p));
    return {p, std::sqrt(4.0 * p - 1.0)};
}

MapFamily build_family(KochParams params) {
    const double p = params.p;
    const double w = params.w;
    const double s3 = std::sqrt(3.0);

    MapFamily fam;
    fam.params = params;
    fam.p_minus = {-0.5, 0.0};
    fam.p_plus = {0.5, 0.0};
    fam.q_minus = {0.0, -w / 2};
    fam.q_plus = {0.0, w / 2};
    fam.cell = Rhombus{{fam.p_minus, fam.q_minus, fam.p_plus, fam.q_plus}};

    const double c = (1 - 2 * p) / 2; // cos of the bump rotation, scaled by p
    const double s = w / 2;           // sin of the bump rotation, scaled by p

    fam.phi[0][0] = {p, 0, 0, p, (p - 1) / 2, 0};
    fam.phi[3][0] = {p, 0, 0, p, (1 - p) / 2, 0};
    fam.phi[1][0] = {c, -s, s, c, (2 * p - 1) / 4, w / 4};
    fam.phi[2][0] = {c, s, -s, c, (1 - 2 * p) / 4, w / 4};
    fam.phi[1][1] = {c, s, -s, c, (2 * p - 1) / 4, -w / 4};
    fam.phi[2][1] = {c, -s, s, c, (1 - 2 * p) / 4, -w / 4};
    fam.phi[0][1] = fam.phi[0][0];
    fam.phi[3][1] = fam.phi[3][0];

    fam.f1 = {-0.5, s3 / 2, -s3 / 2, -0.5, 0.25, -s3 / 4};
    fam.f2 = {-0.5, -s3 / 2, s3 / 2, -0.5, -0.25, -s3 / 4};
    return fam;
}

MapFamily build_family(double p) { return build_family(make_params(p)); }

namespace {

std::string describe(const char* what, int digit, int flip, int vertex,
                     double value, double lo, double hi) {
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "phi(%d,%d) vertex %d: %s = %.17g outside [%.17g, %.17g]",
                  digit, flip, vertex, what, value, lo, hi);
    return buf;
}

} // namespace

NestingReport verify_nesting_and_osc(const MapFamily& fam, double tol) {
    NestingReport rep;
    rep.nested = true;
    rep.interiors_disjoint = true;
    const double p = fam.params.p;
    const double h = fam.params.w / 2; // half of the short diagonal

    for (int a = 0; a < 4; ++a) {
        for (int b = 0; b < 2; ++b) {
            const Similarity2& m = fam.phi[a][b];

            // Strip of the open set owned by this map: an x-interval for the
            // straight quarters, an x-interval and a y half for the bumps.
            double xlo = 0, xhi = 0, ylo = -h, yhi = h;
            switch (a) {
            case 0: xlo = -0.5; xhi = p - 0.5; break;
            case 1: xlo = p - 0.5; xhi = 0.0; break;
            case 2: xlo = 0.0; xhi = 0.5 - p; break;
            case 3: xlo = 0.5 - p; xhi = 0.5; break;
            }
            if (a == 1 || a == 2) {
                if (b == 0) ylo = 0.0;
                else yhi = 0.0;
            }

            for (int i = 0; i < 4; ++i) {
                Point2 q = m.apply(fam.cell.v[i]);
                if (!fam.cell.contains(q, tol)) {
                    rep.nested = false;
                    rep.failures.push_back(
                        describe("cell coordinate", a, b, i, q.x, -0.5, 0.5));
                }
                if (q.x < xlo - tol || q.x > xhi + tol) {
                    rep.interiors_disjoint = false;
                    rep.failures.push_back(describe("x", a, b, i, q.x, xlo, xhi));
                }
                if (q.y < ylo - tol || q.y > yhi + tol) {
                    rep.interiors_disjoint = false;
                    rep.failures.push_back(describe("y", a, b, i, q.y, ylo, yhi));
                }
            }
        }
    }
    return rep;
}

} // namespace kochforge
