#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "kochforge/area.hpp"

namespace kochforge {

/// The inverse area problem in digit form. An enclosed area y maps to
/// z = (y - x_p) / ((1-2p) w / 2), and the per-level counts become digits
/// of a base-beta expansion of z with level-dependent caps 3 * 4^k.
struct BetaProblem {
    double p = 0.0;
    double beta = 0.0;  ///< p^-2, always in [9, 16)
    double z = 0.0;     ///< rescaled target, in [0, z_max]
    double z_max = 0.0; ///< 3 / (1 - 4p^2)
};

/// One constructed figure hitting a target area: the counts, a spec
/// realising them (fill = "one", so its limit area is exactly achieved),
/// and the guaranteed shortfall. achieved <= target always, and
/// residual = target - achieved is at most the geometric tail of the
/// truncation depth.
struct Realisation {
    TauSeries taus;
    SnowflakeSpec spec;
    double achieved = 0.0;
    double residual = 0.0;
};

/// Throws std::domain_error unless x_p <= y <= y_p.
BetaProblem rescale(const KochParams& params, double y);

/// Greedy digit extraction: tau_k = min(3*4^k, floor(z_k beta^k)), then
/// z_{k+1} = z_k - tau_k beta^-k. The remainder never goes negative and
/// stays below the remaining levels' capacity; after K digits the
/// expansion undershoots z by at most tail(K) = 3 (4p^2)^K / (1 - 4p^2).
/// Requires K >= 2.
TauSeries solve_tau(const BetaProblem& problem, int K);

/// How counts become bits. Area only depends on the per-level totals, so
/// the slot placement is a free, deterministic choice: `lex` zeroes the
/// first tau_k slots in curve-major order (s, then t, then r), `balanced`
/// deals zeros round-robin across the three curves, `seeded` picks a
/// uniform random subset driven by layout_seed.
enum class Layout { lex, balanced, seeded };

/// Builds a spec of depth taus.size() whose per-level zero counts equal
/// taus exactly and whose fill rule is "one" (so deeper levels add no
/// area). p_literal, when given, is carried into the spec for reports;
/// otherwise the numeric value is formatted round-trip-exactly.
SnowflakeSpec realise_spec(const TauSeries& taus, Layout layout,
                           std::uint64_t layout_seed = 0,
                           const std::string& p_literal = "");

/// Smallest stride k >= 2 whose multiples are sparse enough to leave the
/// other levels covering: (4p^2)^k / (1-(4p^2)^k) < 4p^2/(1-4p^2) - 1/3.
int ejk_feasible_k(const KochParams& params);

/// `count` distinct digit sequences that all hit the same area y, built by
/// choosing the digits at multiples of a feasible stride freely and
/// filling the remaining levels greedily. Requires y strictly between the
/// closed-form bounds with enough margin for the stride to fit below K;
/// throws std::domain_error otherwise, naming the representable window.
std::vector<Realisation> ejk_witnesses(const KochParams& params, double y,
                                       int count, std::uint64_t seed, int K);

/// rescale + solve_tau + realise_spec in one call.
Realisation solve_area(const KochParams& params, double y, int K,
                       Layout layout, std::uint64_t layout_seed = 0,
                       const std::string& p_literal = "");

} // namespace kochforge
