#include "kochforge/area.hpp"

#include <cmath>
#include <stdexcept>

#include "kochforge/curves.hpp"

namespace kochforge {

namespace {

void check_levels(int K) {
    if (K < 0 || K > kMaxDepth)
        throw std::invalid_argument("level count must lie in 0..14");
}

std::uint64_t zeros_at(const ChoiceView& v, int k) {
    if (v.seq && k < v.seq->depth()) return v.seq->zeros_at_level(k);
    const std::uint64_t n = ChoiceSequence::level_size(k);
    switch (v.fill) {
    case Fill::zero: return n;
    case Fill::one: return 0;
    default: break;
    }
    std::uint64_t zeros = 0;
    for (std::uint64_t i = 0; i < n; ++i)
        if (v.bit(k, i) == 0) ++zeros;
    return zeros;
}

} // namespace

TauSeries tau_of_spec(const SnowflakeSpec& spec) {
    return tau_of_spec(spec, spec.depth);
}

TauSeries tau_of_spec(const SnowflakeSpec& spec, int K) {
    check_levels(K);
    TauSeries series{spec.params.p, std::vector<std::uint64_t>(K)};
    for (int k = 0; k < K; ++k)
        for (int which : {0, 1, 2})
            series.taus[static_cast<std::size_t>(k)] +=
                zeros_at(spec.view(which), k);
    return series;
}

AreaReport area_series(const TauSeries& taus, int K) {
    if (K < 0 || static_cast<std::size_t>(K) > taus.taus.size())
        throw std::invalid_argument("level count exceeds the given counts");
    const KochParams params = make_params(taus.p);
    const double p = params.p;
    const double w = params.w;
    const double q = 4 * p * p;

    AreaReport rep;
    const AreaBounds bounds = closed_forms(params);
    rep.x_p = bounds.x_p;
    rep.y_p = bounds.y_p;

    rep.a.reserve(static_cast<std::size_t>(K) + 1);
    rep.a.push_back(std::sqrt(3.0) / 4);
    double slots = 3.0; // 3 * 4^k
    double scale = 1.0; // p^(2k)
    for (int k = 0; k < K; ++k) {
        const double tau = static_cast<double>(taus.taus[static_cast<std::size_t>(k)]);
        if (tau > slots)
            throw std::invalid_argument("bump count exceeds its level cap");
        rep.a.push_back(rep.a.back() +
                        (2.0 * tau - slots) * scale * (1 - 2 * p) * w / 4);
        slots *= 4;
        scale *= p * p;
    }

    double slack = 0.75 * w; // (3/4)(4p^2)^k w
    for (double ak : rep.a) {
        rep.a_lower.push_back(ak - slack);
        rep.a_upper.push_back(ak + slack);
        slack *= q;
    }

    rep.residual_bound =
        3 * (1 - 2 * p) * w / 4 * std::pow(q, K) / (1 - q);
    rep.limit_estimate = rep.a.back() - rep.residual_bound;
    return rep;
}

AreaReport area_series(const SnowflakeSpec& spec, int K) {
    return area_series(tau_of_spec(spec, K), K);
}

AreaBounds closed_forms(const KochParams& params) {
    const double core = std::sqrt(3.0) / 4;
    const double bump = 3 * params.w / 4 / (1 + 2 * params.p);
    return {core - bump, core + bump};
}

ShoelaceCheck shoelace_check(const SnowflakeSpec& spec, int k) {
    if (k < 0 || k > spec.depth)
        throw std::invalid_argument("level exceeds the stored choice depth");
    ShoelaceCheck chk;
    chk.recursion_area = area_series(spec, k).a.back();
    chk.shoelace_area =
        signed_area(snowflake_polyline(build_family(spec.params), spec, k).pts);
    chk.diff = chk.shoelace_area - chk.recursion_area;
    return chk;
}

} // namespace kochforge
