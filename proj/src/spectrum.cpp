#include "kochforge/spectrum.hpp"

#include <cmath>
#include <cstdio>
#include <random>
#include <set>
#include <stdexcept>

namespace kochforge {

namespace {

std::string format_p(double p) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", p);
    return buf;
}

/// Bytes of one level with the first `zeros` slots zero, the rest one,
/// and the padding bits past n kept zero.
std::vector<std::uint8_t> prefix_zero_level(std::uint64_t n,
                                            std::uint64_t zeros) {
    std::vector<std::uint8_t> bytes((n + 7) / 8, 0xff);
    const std::size_t full = static_cast<std::size_t>(zeros / 8);
    std::fill(bytes.begin(), bytes.begin() + static_cast<std::ptrdiff_t>(full),
              std::uint8_t{0});
    if (zeros % 8)
        bytes[full] = static_cast<std::uint8_t>(0xffu << (zeros % 8));
    if (n % 8)
        bytes.back() &= static_cast<std::uint8_t>((1u << (n % 8)) - 1);
    return bytes;
}

void check_caps(const TauSeries& taus) {
    std::uint64_t cap = 3;
    for (std::uint64_t tau : taus.taus) {
        if (tau > cap)
            throw std::invalid_argument("bump count exceeds its level cap");
        cap *= 4;
    }
}

long double sparse_tail(long double q, int k) {
    const long double qk = std::pow(q, k);
    return 3 * qk / (1 - qk);
}

} // namespace

BetaProblem rescale(const KochParams& params, double y) {
    const AreaBounds bounds = closed_forms(params);
    const double tol = 1e-12;
    if (!(y >= bounds.x_p - tol && y <= bounds.y_p + tol)) {
        char msg[128];
        std::snprintf(msg, sizeof msg,
                      "target area %.6f outside attainable [x_p, y_p] = "
                      "[%.6f, %.6f]",
                      y, bounds.x_p, bounds.y_p);
        throw std::domain_error(msg);
    }
    BetaProblem prob;
    prob.p = params.p;
    prob.beta = 1.0 / (params.p * params.p);
    prob.z_max = 3.0 / (1 - 4 * params.p * params.p);
    const double c = (1 - 2 * params.p) * params.w / 2;
    prob.z = std::min(prob.z_max, std::max(0.0, (y - bounds.x_p) / c));
    return prob;
}

TauSeries solve_tau(const BetaProblem& problem, int K) {
    if (K < 2)
        throw std::invalid_argument("need at least two digit levels");
    make_params(problem.p);
    if (!(problem.z >= 0.0 && problem.z <= problem.z_max * (1 + 1e-12)))
        throw std::invalid_argument("rescaled target outside [0, z_max]");

    const long double beta = static_cast<long double>(problem.beta);
    const long double q = 4.0L * problem.p * problem.p;
    long double rem = static_cast<long double>(problem.z);
    long double bk = 1.0L; // beta^k

    TauSeries series{problem.p, {}};
    series.taus.reserve(static_cast<std::size_t>(K));
    std::uint64_t cap = 3;
    for (int k = 0; k < K; ++k) {
        long double digit = std::floor(rem * bk);
        if (digit < 0) digit = 0;
        if (digit > static_cast<long double>(cap))
            digit = static_cast<long double>(cap);
        rem -= digit / bk;
        if (rem < 0) {
            if (rem < -1e-9L / bk)
                throw std::logic_error("digit remainder went negative");
            rem = 0;
        }
        // The covering argument keeps the remainder inside the capacity of
        // the levels still to come; a breach here is an implementation bug.
        const long double capacity = sparse_tail(q, 1) * std::pow(q, k);
        if (rem > capacity * (1 + 1e-9L) + 1e-15L)
            throw std::logic_error("digit remainder exceeds remaining capacity");
        series.taus.push_back(static_cast<std::uint64_t>(digit));
        bk *= beta;
        cap *= 4;
    }
    return series;
}

SnowflakeSpec realise_spec(const TauSeries& taus, Layout layout,
                           std::uint64_t layout_seed,
                           const std::string& p_literal) {
    const int K = static_cast<int>(taus.taus.size());
    if (K > kMaxDepth)
        throw std::invalid_argument("count series deeper than the depth cap");
    check_caps(taus);

    SnowflakeSpec spec;
    spec.params = make_params(taus.p);
    spec.p_literal = p_literal.empty() ? format_p(taus.p) : p_literal;
    spec.depth = K;
    spec.fill = Fill::one;
    spec.s.levels.resize(static_cast<std::size_t>(K));
    spec.t.levels.resize(static_cast<std::size_t>(K));
    spec.r.levels.resize(static_cast<std::size_t>(K));

    ChoiceSequence* curves[3] = {&spec.s, &spec.t, &spec.r};
    for (int k = 0; k < K; ++k) {
        const std::uint64_t n = ChoiceSequence::level_size(k);
        const std::uint64_t tau = taus.taus[static_cast<std::size_t>(k)];
        if (layout == Layout::lex || layout == Layout::balanced) {
            for (int j = 0; j < 3; ++j) {
                std::uint64_t zeros;
                if (layout == Layout::lex) {
                    const std::uint64_t before = static_cast<std::uint64_t>(j) * n;
                    zeros = tau <= before ? 0 : std::min(n, tau - before);
                } else {
                    zeros = tau / 3 + (tau % 3 > static_cast<std::uint64_t>(j) ? 1 : 0);
                }
                curves[j]->levels[static_cast<std::size_t>(k)] =
                    prefix_zero_level(n, zeros);
            }
        } else {
            // Exact-count random subset: walk the 3*4^k flattened slots and
            // zero each with probability (zeros still needed)/(slots left).
            for (int j = 0; j < 3; ++j)
                curves[j]->levels[static_cast<std::size_t>(k)] =
                    prefix_zero_level(n, 0);
            std::mt19937_64 rng(layout_seed ^
                                (0x9e3779b97f4a7c15ull *
                                 (static_cast<std::uint64_t>(k) + 1)));
            std::uint64_t need = tau;
            std::uint64_t left = 3 * n;
            for (std::uint64_t slot = 0; slot < 3 * n && need > 0; ++slot, --left)
                if (rng() % left < need) {
                    curves[slot / n]->set(k, slot % n, 0);
                    --need;
                }
        }
    }
    return spec;
}

int ejk_feasible_k(const KochParams& params) {
    const double q = 4 * params.p * params.p;
    const double rhs = q / (1 - q) - 1.0 / 3.0;
    for (int k = 2; k < 4096; ++k) {
        const double qk = std::pow(q, k);
        if (qk / (1 - qk) < rhs) return k;
    }
    throw std::logic_error("no feasible stride found");
}

std::vector<Realisation> ejk_witnesses(const KochParams& params, double y,
                                       int count, std::uint64_t seed, int K) {
    if (count <= 0)
        throw std::invalid_argument("witness count must be positive");
    if (K < 2 || K > kMaxDepth)
        throw std::invalid_argument("depth must lie in 2..14");

    const AreaBounds bounds = closed_forms(params);
    if (!(y > bounds.x_p && y < bounds.y_p))
        throw std::domain_error("target area must lie strictly between the bounds");
    const BetaProblem prob = rescale(params, y);
    const long double p = params.p;
    const long double q = 4 * p * p;
    const long double z_total = prob.z;

    // Leading digit by the greedy strict rule; the rest of the target then
    // lies strictly inside (0, 12p^2/(1-4p^2)), the window the sparse
    // construction needs.
    const int nu0 =
        std::min(3, std::max(0, static_cast<int>(std::ceil(prob.z)) - 1));
    const long double yprime = z_total - nu0;
    const long double whole = 3 * q / (1 - q); // capacity of levels >= 1

    // Find a stride whose multiples are light enough to choose freely while
    // the other levels can still absorb the leftovers.
    int k = ejk_feasible_k(params);
    while (true) {
        if (k >= K) {
            char msg[160];
            const double c = (1 - 2 * params.p) * params.w / 2;
            const long double lo = sparse_tail(q, K - 1);
            std::snprintf(msg, sizeof msg,
                          "margins too tight at this depth; representable "
                          "areas near this leading digit span (%.9g, %.9g)",
                          static_cast<double>(bounds.x_p + c * (nu0 + lo)),
                          static_cast<double>(bounds.x_p +
                                              c * (nu0 + whole - lo)));
            throw std::domain_error(msg);
        }
        const long double cut = sparse_tail(q, k);
        if (cut < yprime && yprime < whole - cut) break;
        ++k;
    }
    const int M = (K - 1) / k; // free levels k, 2k, ..., Mk

    std::mt19937_64 rng(seed);
    std::set<std::vector<std::uint64_t>> chosen;
    std::vector<Realisation> out;
    out.reserve(static_cast<std::size_t>(count));
    int attempts = 0;
    while (out.size() < static_cast<std::size_t>(count)) {
        if (++attempts > 64 * count + 64)
            throw std::runtime_error("witness sampling kept colliding");

        // Any digits at the free levels stay inside the window, so sample
        // them uniformly and only reject repeats.
        std::vector<std::uint64_t> delta(static_cast<std::size_t>(M));
        for (int m = 1; m <= M; ++m) {
            std::uint64_t cap = 3ull << (2 * m * k);
            delta[static_cast<std::size_t>(m - 1)] = rng() % (cap + 1);
        }
        if (!chosen.insert(delta).second) continue;

        long double z = yprime;
        for (int m = 1; m <= M; ++m)
            z -= static_cast<long double>(delta[static_cast<std::size_t>(m - 1)]) *
                 std::pow(p, 2.0L * m * k);

        TauSeries taus{params.p, std::vector<std::uint64_t>(
                                     static_cast<std::size_t>(K))};
        taus.taus[0] = static_cast<std::uint64_t>(nu0);
        long double acc = 0.0L;
        for (int m = 1; m < K; ++m) {
            if (m % k == 0) {
                taus.taus[static_cast<std::size_t>(m)] =
                    delta[static_cast<std::size_t>(m / k - 1)];
                continue;
            }
            const long double scale = std::pow(p, 2.0L * m);
            const std::uint64_t cap = 3ull << (2 * m);
            long double eta_f = std::floor((z - acc) / scale);
            if (eta_f > static_cast<long double>(cap))
                eta_f = static_cast<long double>(cap);
            if (eta_f < 0) eta_f = 0;
            std::uint64_t eta = static_cast<std::uint64_t>(eta_f);
            // Strictly-below rule, robust to rounding at the boundary.
            while (eta > 0 &&
                   static_cast<long double>(eta) * scale + acc >= z)
                --eta;
            if (acc >= z)
                throw std::logic_error("greedy fill lost its strict margin");
            taus.taus[static_cast<std::size_t>(m)] = eta;
            acc += static_cast<long double>(eta) * scale;
        }

        Realisation real;
        real.taus = taus;
        real.spec = realise_spec(taus, Layout::lex, 0, "");
        real.achieved = area_series(taus, K).limit_estimate;
        real.residual = y - real.achieved;
        if (real.residual < -1e-9)
            throw std::logic_error("witness overshot its target area");
        out.push_back(std::move(real));
    }
    return out;
}

Realisation solve_area(const KochParams& params, double y, int K,
                       Layout layout, std::uint64_t layout_seed,
                       const std::string& p_literal) {
    Realisation real;
    real.taus = solve_tau(rescale(params, y), K);
    real.spec = realise_spec(real.taus, layout, layout_seed, p_literal);
    real.achieved = area_series(real.taus, K).limit_estimate;
    real.residual = y - real.achieved;
    return real;
}

} // namespace kochforge
