#pragma once

#include <cstdint>
#include <vector>

#include "kochforge/choices.hpp"
#include "kochforge/ifs.hpp"

namespace kochforge {

/// Per-level outward-bump counts: taus[k] counts the zero bits at level k
/// across the three decorated sides, so 0 <= taus[k] <= 3 * 4^k. Together
/// with p these determine the enclosed area completely.
struct TauSeries {
    double p = 0.0;
    std::vector<std::uint64_t> taus;
};

/// Enclosed areas of the chain polygons, with the bracketing they come with.
///
/// a[k] is the exact area at level k (a[0] = sqrt(3)/4, each level adds
/// (2 tau_k - 3*4^k) p^(2k) (1-2p) w / 4). a_lower/a_upper bracket every
/// continuation of the first k levels, pinching by the factor 4p^2 per
/// level: a_upper[k] - a_lower[k] = 3 (4p^2)^k * w/2. x_p and y_p are the
/// closed-form extremes over all choices. residual_bound is the largest
/// possible tail beyond the last computed level, and limit_estimate =
/// a.back() - residual_bound, which is the exact limit when every bit past
/// that level is one (the convention realised solver specs declare via
/// fill = "one").
struct AreaReport {
    std::vector<double> a;
    std::vector<double> a_lower;
    std::vector<double> a_upper;
    double x_p = 0.0;
    double y_p = 0.0;
    double residual_bound = 0.0;
    double limit_estimate = 0.0;
};

/// Closed-form area extremes: x_p with every bit one (inward bumps), y_p
/// with every bit zero (outward bumps); x_p + y_p = sqrt(3)/2.
struct AreaBounds {
    double x_p = 0.0;
    double y_p = 0.0;
};

/// Zero-bit counts of the stored levels (k = 0..depth-1).
TauSeries tau_of_spec(const SnowflakeSpec& spec);

/// Zero-bit counts for k = 0..K-1, reading levels past the stored depth
/// through the spec's fill rule. Requires 0 <= K <= kMaxDepth.
TauSeries tau_of_spec(const SnowflakeSpec& spec, int K);

/// Runs the area recursion through taus[0..K-1]. Requires K <= taus size
/// and every taus[k] within its cap.
AreaReport area_series(const TauSeries& taus, int K);

/// Convenience: area recursion on a spec's fill-extended counts.
AreaReport area_series(const SnowflakeSpec& spec, int K);

AreaBounds closed_forms(const KochParams& params);

/// Level-k area computed both ways: by the recursion and by the shoelace
/// rule on the closed chain polygon. The two agree up to rounding.
struct ShoelaceCheck {
    double recursion_area = 0.0;
    double shoelace_area = 0.0;
    double diff = 0.0;
};

/// Requires 0 <= k <= spec.depth.
ShoelaceCheck shoelace_check(const SnowflakeSpec& spec, int k);

} // namespace kochforge
