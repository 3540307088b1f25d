#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "kochforge/analysis.hpp"
#include "kochforge/area.hpp"
#include "kochforge/choices.hpp"
#include "kochforge/curves.hpp"
#include "kochforge/ifs.hpp"
#include "kochforge/render.hpp"
#include "kochforge/spectrum.hpp"

using nlohmann::json;
using namespace kochforge;

namespace {

std::string g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::invalid_argument("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::invalid_argument("cannot write " + path);
    out << content;
    if (!out) throw std::invalid_argument("write failed on " + path);
}

/// Primary outputs go to the --out path, or stdout when none is given.
void emit(const std::string& path, const std::string& content) {
    if (path.empty() || path == "-")
        std::cout << content;
    else
        write_file(path, content);
}

/// Every run echoes its fully-resolved configuration on the error stream,
/// keeping stdout clean for piped primary output.
void echo_config(const json& cfg) {
    std::cerr << "config: " << cfg.dump() << "\n";
}

json spec_json(const SnowflakeSpec& spec) {
    return json::parse(serialize_spec(spec));
}

SnowflakeSpec load_spec(const std::string& path) {
    return parse_spec(read_file(path));
}

std::string report_text(const json& j) { return j.dump(2) + "\n"; }

json taus_json(const TauSeries& taus) {
    json arr = json::array();
    for (std::uint64_t t : taus.taus) arr.push_back(t);
    return arr;
}

std::string points_text(const std::vector<Polyline>& polys, const json& cfg) {
    std::string out = "# kochforge polyline export, one \"x y\" pair per line\n";
    out += "# config " + cfg.dump() + "\n";
    for (std::size_t i = 0; i < polys.size(); ++i) {
        if (polys.size() > 1)
            out += "# path " + std::to_string(i) + ", " +
                   std::to_string(polys[i].size()) + " vertices\n";
        for (const Point2& q : polys[i])
            out += g17(q.x) + " " + g17(q.y) + "\n";
    }
    return out;
}

Fill fill_of(const std::string& name) {
    if (name == "zero") return Fill::zero;
    if (name == "one") return Fill::one;
    return Fill::seeded;
}

Layout layout_of(const std::string& name) {
    if (name == "lex") return Layout::lex;
    if (name == "balanced") return Layout::balanced;
    return Layout::seeded;
}

const char* verdict_name(JordanClass v) {
    switch (v) {
    case JordanClass::jordan_quasicircle: return "jordan_quasicircle";
    case JordanClass::self_touching: return "self_touching";
    default: return "undetermined_at_depth";
    }
}

int resolve_depth(int flag_depth, int spec_depth, int lo, int hi) {
    int k = flag_depth < 0 ? spec_depth : flag_depth;
    return std::max(lo, std::min(k, hi));
}

/// Strictly decreasing scales p^m for m = lo..hi; the natural dyadic of
/// this geometry. Needs at least three levels for a fit.
std::vector<double> level_scales(double p, int lo, int hi) {
    if (lo < 1 || hi - lo < 2)
        throw std::invalid_argument(
            "need min-level >= 1 and at least 3 levels");
    std::vector<double> scales;
    for (int m = lo; m <= hi; ++m) scales.push_back(std::pow(p, m));
    return scales;
}

std::string fit_csv(const DimensionFit& fit) {
    std::string csv = "scale,count\n";
    for (std::size_t i = 0; i < fit.scales.size(); ++i)
        csv += g17(fit.scales[i]) + "," + std::to_string(fit.counts[i]) + "\n";
    return csv;
}

json fit_json(const DimensionFit& fit) {
    json j;
    j["scales"] = fit.scales;
    j["counts"] = fit.counts;
    j["slope"] = fit.slope;
    j["r2"] = fit.r2;
    j["theoretical"] = fit.theoretical;
    return j;
}

// ------------------------------------------------------------- subcommands

struct GenerateArgs {
    std::string p, fill = "zero", out;
    int depth = 0;
    std::uint64_t seed = 0;
};

void run_generate(const GenerateArgs& a) {
    ParsedP pp = parse_p_literal(a.p);
    SnowflakeSpec spec =
        a.fill == "seeded"
            ? make_random_spec(pp.value, pp.literal, a.depth, a.seed)
            : make_uniform_spec(pp.value, pp.literal, a.depth,
                                a.fill == "one" ? 1 : 0);
    spec.fill = fill_of(a.fill);
    spec.fill_seed = a.seed;

    json cfg = {{"subcommand", "generate"}, {"p", pp.value},
                {"p_literal", pp.literal},  {"depth", a.depth},
                {"fill", a.fill},           {"seed", a.seed},
                {"out", a.out}};
    echo_config(cfg);
    emit(a.out, serialize_spec(spec));
}

struct RenderArgs {
    std::string spec, what = "snowflake", fill_rule = "nonzero", out, points;
    int depth = -1, width = 800, height = 800;
    double stroke = 1.0, margin = 0.05;
    bool fill = false;
};

void run_render(const RenderArgs& a) {
    SnowflakeSpec spec = load_spec(a.spec);
    const int k = resolve_depth(a.depth, spec.depth, 0, kMaxDepth);
    MapFamily fam = build_family(spec.params);

    std::vector<RenderPath> scene;
    if (a.what == "snowflake")
        scene.push_back({snowflake_polyline(fam, spec, k).pts, true});
    else
        scene.push_back({curve_polyline(fam, spec.view(0), k).pts, false});

    RenderOptions opts;
    opts.width_px = a.width;
    opts.height_px = a.height;
    opts.stroke_width = a.stroke;
    opts.fill = a.fill;
    opts.fill_rule =
        a.fill_rule == "evenodd" ? FillRule::evenodd : FillRule::nonzero;
    opts.margin_fraction = a.margin;

    json cfg = {{"subcommand", "render"},
                {"spec", a.spec},
                {"p", spec.params.p},
                {"p_literal", spec.p_literal},
                {"depth", k},
                {"what", a.what},
                {"width_px", a.width},
                {"height_px", a.height},
                {"stroke_width", a.stroke},
                {"fill", a.fill},
                {"fill_rule", a.fill_rule},
                {"margin_fraction", a.margin},
                {"out", a.out},
                {"points", a.points}};
    echo_config(cfg);

    emit(a.out, to_svg(scene, opts));
    if (!a.points.empty()) {
        std::vector<Polyline> polys;
        for (const RenderPath& path : scene) polys.push_back(path.pts);
        write_file(a.points, points_text(polys, cfg));
    }
}

struct AreaArgs {
    std::string spec, out, csv;
    int depth = -1;
};

void run_area(const AreaArgs& a) {
    SnowflakeSpec spec = load_spec(a.spec);
    const int K = resolve_depth(a.depth, spec.depth, 0, kMaxDepth);
    const TauSeries taus = tau_of_spec(spec, K);
    const AreaReport rep = area_series(taus, K);

    json cfg = {{"subcommand", "area"}, {"spec", a.spec},
                {"p", spec.params.p},   {"p_literal", spec.p_literal},
                {"depth", K},           {"out", a.out},
                {"csv", a.csv}};
    echo_config(cfg);

    json j;
    j["config"] = cfg;
    j["x_p"] = rep.x_p;
    j["y_p"] = rep.y_p;
    j["taus"] = taus_json(taus);
    j["a"] = rep.a;
    j["a_lower"] = rep.a_lower;
    j["a_upper"] = rep.a_upper;
    j["residual_bound"] = rep.residual_bound;
    j["limit_estimate"] = rep.limit_estimate;
    j["convention"] = "signed-shoelace";
    j["winding_caveat"] = std::abs(spec.params.p - 1.0 / 3.0) <= 1e-12;
    emit(a.out, report_text(j));

    if (!a.csv.empty()) {
        std::string csv = "k,tau_k,a_k,a_k_minus,a_k_plus\n";
        for (std::size_t k = 0; k < rep.a.size(); ++k) {
            const std::string tau =
                k < taus.taus.size() ? std::to_string(taus.taus[k]) : "";
            csv += std::to_string(k) + "," + tau + "," + g17(rep.a[k]) + "," +
                   g17(rep.a_lower[k]) + "," + g17(rep.a_upper[k]) + "\n";
        }
        write_file(a.csv, csv);
    }
}

struct SolveAreaArgs {
    std::string p, layout = "lex", out;
    double target = 0.0;
    int depth = 12;
    std::uint64_t layout_seed = 0;
};

void run_solve_area(const SolveAreaArgs& a) {
    ParsedP pp = parse_p_literal(a.p);
    const KochParams params = make_params(pp.value);
    const AreaBounds bounds = closed_forms(params);
    const Realisation sol = solve_area(params, a.target, a.depth,
                                       layout_of(a.layout), a.layout_seed,
                                       pp.literal);

    json cfg = {{"subcommand", "solve-area"}, {"p", pp.value},
                {"p_literal", pp.literal},    {"target", a.target},
                {"depth", a.depth},           {"layout", a.layout},
                {"layout_seed", a.layout_seed}, {"out", a.out}};
    echo_config(cfg);

    json j;
    j["config"] = cfg;
    j["x_p"] = bounds.x_p;
    j["y_p"] = bounds.y_p;
    j["target"] = a.target;
    j["achieved"] = sol.achieved;
    j["residual"] = sol.residual;
    j["taus"] = taus_json(sol.taus);

    if (a.out.empty()) {
        j["spec"] = spec_json(sol.spec);
        emit("", report_text(j));
    } else {
        std::filesystem::create_directories(a.out);
        const std::filesystem::path dir(a.out);
        write_file((dir / "spec.json").string(), serialize_spec(sol.spec));
        write_file((dir / "report.json").string(), report_text(j));
    }
}

struct WitnessArgs {
    std::string p, out;
    double target = 0.0;
    bool target_given = false;
    int count = 5, depth = 14;
    std::uint64_t seed = 0;
};

void run_witnesses(const WitnessArgs& a) {
    ParsedP pp = parse_p_literal(a.p);
    const KochParams params = make_params(pp.value);
    const AreaBounds bounds = closed_forms(params);
    const double y =
        a.target_given ? a.target : 0.5 * (bounds.x_p + bounds.y_p);
    const int feasible = ejk_feasible_k(params);
    const std::vector<Realisation> wits =
        ejk_witnesses(params, y, a.count, a.seed, a.depth);

    json cfg = {{"subcommand", "witnesses"}, {"p", pp.value},
                {"p_literal", pp.literal},   {"target", y},
                {"count", a.count},          {"seed", a.seed},
                {"depth", a.depth},          {"out", a.out}};
    echo_config(cfg);

    json j;
    j["config"] = cfg;
    j["x_p"] = bounds.x_p;
    j["y_p"] = bounds.y_p;
    j["feasible_k"] = feasible;
    j["witnesses"] = json::array();
    for (const Realisation& w : wits) {
        json one;
        one["taus"] = taus_json(w.taus);
        one["achieved"] = w.achieved;
        one["residual"] = w.residual;
        one["spec"] = spec_json(w.spec);
        j["witnesses"].push_back(one);
    }
    emit(a.out, report_text(j));
}

struct ClassifyArgs {
    std::string spec, out;
    int depth = -1, max_witnesses = 16;
    double tol = 1e-9;
};

void run_classify(const ClassifyArgs& a) {
    SnowflakeSpec spec = load_spec(a.spec);
    const int k = resolve_depth(a.depth, spec.depth, 1, kMaxDepth);
    const JordanVerdict v = jordan_classify(spec, k, a.tol);

    json cfg = {{"subcommand", "classify"},
                {"spec", a.spec},
                {"p", spec.params.p},
                {"p_literal", spec.p_literal},
                {"depth", k},
                {"tol", a.tol},
                {"max_witnesses", a.max_witnesses},
                {"out", a.out}};
    echo_config(cfg);

    json j;
    j["config"] = cfg;
    j["verdict"] = verdict_name(v.verdict);
    j["depth"] = v.depth;
    j["witness_count"] = v.witnesses.size();
    j["witnesses"] = json::array();
    const std::size_t shown =
        std::min(v.witnesses.size(),
                 static_cast<std::size_t>(std::max(a.max_witnesses, 0)));
    for (std::size_t i = 0; i < shown; ++i) {
        const TouchWitness& w = v.witnesses[i];
        json one;
        one["a"] = {{"side", w.a.side}, {"word", w.a.word}};
        one["b"] = {{"side", w.b.side}, {"word", w.b.word}};
        one["point"] = {w.point.x, w.point.y};
        j["witnesses"].push_back(one);
    }
    emit(a.out, report_text(j));
}

struct TurningArgs {
    std::string spec, out;
    int depth = -1, samples = 2000;
    std::uint64_t seed = 0;
};

void run_turning(const TurningArgs& a) {
    SnowflakeSpec spec = load_spec(a.spec);
    const int k = resolve_depth(a.depth, spec.depth, 1, kMaxDepth);
    const TurningReport rep = turning_ratio(spec, k, a.samples, a.seed);

    json cfg = {{"subcommand", "turning"}, {"spec", a.spec},
                {"p", spec.params.p},      {"p_literal", spec.p_literal},
                {"depth", k},              {"samples", a.samples},
                {"seed", a.seed},          {"out", a.out}};
    echo_config(cfg);

    json j;
    j["config"] = cfg;
    j["k_theoretical"] = rep.k_theoretical;
    j["max_ratio_observed"] = rep.max_ratio_observed;
    j["t_i"] = rep.t_i;
    j["t_j"] = rep.t_j;
    emit(a.out, report_text(j));
}

struct DimensionArgs {
    std::string spec, what = "curve", out, csv;
    int min_level = 2, max_level = 7;
};

void run_dimension(const DimensionArgs& a) {
    SnowflakeSpec spec = load_spec(a.spec);
    const int k = std::min(a.max_level, kMaxDepth);
    MapFamily fam = build_family(spec.params);

    Polyline poly = a.what == "snowflake"
                        ? snowflake_polyline(fam, spec, k).pts
                        : curve_polyline(fam, spec.view(0), k).pts;
    const std::vector<double> scales =
        level_scales(spec.params.p, a.min_level, k);
    const DimensionFit fit =
        box_dimension({poly}, scales, curve_dimension(spec.params));

    json cfg = {{"subcommand", "dimension"},
                {"spec", a.spec},
                {"p", spec.params.p},
                {"p_literal", spec.p_literal},
                {"what", a.what},
                {"min_level", a.min_level},
                {"max_level", k},
                {"out", a.out},
                {"csv", a.csv}};
    echo_config(cfg);

    json j = fit_json(fit);
    j["config"] = cfg;
    emit(a.out, report_text(j));
    if (!a.csv.empty()) write_file(a.csv, fit_csv(fit));
}

struct DoubleSidedArgs {
    std::string p, out, points, report;
    int depth = 5, min_level = 2, width = 800, height = 800;
    double stroke = 1.0, margin = 0.05;
};

void run_double_sided(const DoubleSidedArgs& a) {
    ParsedP pp = parse_p_literal(a.p);
    const KochParams params = make_params(pp.value);
    MapFamily fam = build_family(params);
    const std::vector<Segment> segs = double_sided_polylines(fam, a.depth);

    json cfg = {{"subcommand", "double-sided"},
                {"p", pp.value},
                {"p_literal", pp.literal},
                {"depth", a.depth},
                {"min_level", a.min_level},
                {"width_px", a.width},
                {"height_px", a.height},
                {"stroke_width", a.stroke},
                {"margin_fraction", a.margin},
                {"out", a.out},
                {"points", a.points},
                {"report", a.report}};
    echo_config(cfg);

    std::vector<RenderPath> scene;
    scene.reserve(segs.size());
    for (const Segment& s : segs) scene.push_back({{s.a, s.b}, false});
    RenderOptions opts;
    opts.width_px = a.width;
    opts.height_px = a.height;
    opts.stroke_width = a.stroke;
    opts.margin_fraction = a.margin;
    emit(a.out, to_svg(scene, opts));

    if (!a.points.empty()) {
        std::vector<Polyline> polys;
        for (const Segment& s : segs) polys.push_back({s.a, s.b});
        write_file(a.points, points_text(polys, cfg));
    }
    if (!a.report.empty()) {
        std::vector<Polyline> polys;
        for (const Segment& s : segs) polys.push_back({s.a, s.b});
        const std::vector<double> scales =
            level_scales(params.p, a.min_level, a.depth);
        const DimensionFit fit =
            box_dimension(polys, scales, double_sided_dimension(params));
        json j = fit_json(fit);
        j["config"] = cfg;
        write_file(a.report, report_text(j));
    }
}

struct VerifyArgs {
    std::string p, out;
    double tol = 1e-9;
};

int run_verify_ifs(const VerifyArgs& a) {
    ParsedP pp = parse_p_literal(a.p);
    const KochParams params = make_params(pp.value);
    MapFamily fam = build_family(params);
    const NestingReport rep = verify_nesting_and_osc(fam, a.tol);

    json cfg = {{"subcommand", "verify-ifs"}, {"p", pp.value},
                {"p_literal", pp.literal},    {"tol", a.tol},
                {"out", a.out}};
    echo_config(cfg);

    json j;
    j["config"] = cfg;
    j["p"] = params.p;
    j["w"] = params.w;
    j["nested"] = rep.nested;
    j["interiors_disjoint"] = rep.interiors_disjoint;
    j["ok"] = rep.ok();
    j["failures"] = rep.failures;
    emit(a.out, report_text(j));
    if (!rep.ok()) {
        std::cerr << "domain error: IFS verification failed at p = "
                  << pp.literal << "\n";
        return 2;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Generalised p-Koch snowflake toolkit"};
    app.require_subcommand(1);
    int exit_code = 0;

    auto* gen = app.add_subcommand("generate", "Write a snowflake spec file");
    auto ga = std::make_shared<GenerateArgs>();
    gen->add_option("--p", ga->p, "p as decimal or rational, e.g. 1/3")
        ->required();
    gen->add_option("--depth", ga->depth, "stored choice levels")->required();
    gen->add_option("--fill", ga->fill, "bits: zero, one, or seeded")
        ->check(CLI::IsMember({"zero", "one", "seeded"}));
    gen->add_option("--seed", ga->seed, "seed for seeded fill");
    gen->add_option("--out", ga->out, "spec JSON path (default stdout)");
    gen->callback([ga] { run_generate(*ga); });

    auto* ren = app.add_subcommand("render", "Render a spec to SVG");
    auto ra = std::make_shared<RenderArgs>();
    ren->add_option("--spec", ra->spec, "spec JSON path")->required();
    ren->add_option("--depth", ra->depth, "approximation level");
    ren->add_option("--what", ra->what, "snowflake or curve")
        ->check(CLI::IsMember({"snowflake", "curve"}));
    ren->add_option("--width", ra->width, "viewport width in px");
    ren->add_option("--height", ra->height, "viewport height in px");
    ren->add_option("--stroke-width", ra->stroke, "stroke width in px");
    ren->add_flag("--fill", ra->fill, "fill the region");
    ren->add_option("--fill-rule", ra->fill_rule, "nonzero or evenodd")
        ->check(CLI::IsMember({"nonzero", "evenodd"}));
    ren->add_option("--margin", ra->margin, "margin fraction in [0, 0.5)");
    ren->add_option("--out", ra->out, "SVG path (default stdout)");
    ren->add_option("--points", ra->points, "also write x-y text here");
    ren->callback([ra] { run_render(*ra); });

    auto* ar = app.add_subcommand("area", "Area series of a spec");
    auto aa = std::make_shared<AreaArgs>();
    ar->add_option("--spec", aa->spec, "spec JSON path")->required();
    ar->add_option("--depth", aa->depth, "series length");
    ar->add_option("--out", aa->out, "report JSON path (default stdout)");
    ar->add_option("--csv", aa->csv, "per-level CSV path");
    ar->callback([aa] { run_area(*aa); });

    auto* sa = app.add_subcommand("solve-area",
                                  "Realise a target enclosed area");
    auto sargs = std::make_shared<SolveAreaArgs>();
    sa->add_option("--p", sargs->p, "p as decimal or rational")->required();
    sa->add_option("--target", sargs->target, "target area")->required();
    sa->add_option("--depth", sargs->depth, "expansion levels");
    sa->add_option("--layout", sargs->layout, "lex, balanced, or seeded")
        ->check(CLI::IsMember({"lex", "balanced", "seeded"}));
    sa->add_option("--layout-seed", sargs->layout_seed,
                   "seed for the seeded layout");
    sa->add_option("--out", sargs->out,
                   "output directory for spec.json and report.json");
    sa->callback([sargs] { run_solve_area(*sargs); });

    auto* wi = app.add_subcommand(
        "witnesses", "Distinct digit sequences hitting one area");
    auto wa = std::make_shared<WitnessArgs>();
    wi->add_option("--p", wa->p, "p as decimal or rational")->required();
    auto* wtarget =
        wi->add_option("--target", wa->target,
                       "target area (default midpoint of [x_p, y_p])");
    wi->add_option("--count", wa->count, "number of witnesses");
    wi->add_option("--seed", wa->seed, "sampling seed");
    wi->add_option("--depth", wa->depth, "expansion levels");
    wi->add_option("--out", wa->out, "report JSON path (default stdout)");
    wi->callback([wa, wtarget] {
        wa->target_given = wtarget->count() > 0;
        run_witnesses(*wa);
    });

    auto* cl = app.add_subcommand("classify",
                                  "Jordan/self-touching classification");
    auto ca = std::make_shared<ClassifyArgs>();
    cl->add_option("--spec", ca->spec, "spec JSON path")->required();
    cl->add_option("--depth", ca->depth, "sweep level");
    cl->add_option("--tol", ca->tol, "contact tolerance");
    cl->add_option("--max-witnesses", ca->max_witnesses,
                   "witnesses listed in the report");
    cl->add_option("--out", ca->out, "report JSON path (default stdout)");
    cl->callback([ca] { run_classify(*ca); });

    auto* tu = app.add_subcommand("turning", "Sampled turning-ratio bound");
    auto ta = std::make_shared<TurningArgs>();
    tu->add_option("--spec", ta->spec, "spec JSON path")->required();
    tu->add_option("--depth", ta->depth, "approximation level");
    tu->add_option("--samples", ta->samples, "vertex pairs sampled");
    tu->add_option("--seed", ta->seed, "sampling seed");
    tu->add_option("--out", ta->out, "report JSON path (default stdout)");
    tu->callback([ta] { run_turning(*ta); });

    auto* di = app.add_subcommand("dimension", "Box-counting dimension fit");
    auto da = std::make_shared<DimensionArgs>();
    di->add_option("--spec", da->spec, "spec JSON path")->required();
    di->add_option("--what", da->what, "curve or snowflake")
        ->check(CLI::IsMember({"curve", "snowflake"}));
    di->add_option("--min-level", da->min_level, "coarsest scale p^m");
    di->add_option("--max-level", da->max_level, "finest scale p^m");
    di->add_option("--out", da->out, "report JSON path (default stdout)");
    di->add_option("--csv", da->csv, "scale,count CSV path");
    di->callback([da] { run_dimension(*da); });

    auto* ds = app.add_subcommand("double-sided",
                                  "Render the two-sided construction");
    auto dsa = std::make_shared<DoubleSidedArgs>();
    ds->add_option("--p", dsa->p, "p as decimal or rational")->required();
    ds->add_option("--depth", dsa->depth, "subdivision level");
    ds->add_option("--min-level", dsa->min_level,
                   "coarsest scale of the dimension fit");
    ds->add_option("--width", dsa->width, "viewport width in px");
    ds->add_option("--height", dsa->height, "viewport height in px");
    ds->add_option("--stroke-width", dsa->stroke, "stroke width in px");
    ds->add_option("--margin", dsa->margin, "margin fraction in [0, 0.5)");
    ds->add_option("--out", dsa->out, "SVG path (default stdout)");
    ds->add_option("--points", dsa->points, "also write x-y text here");
    ds->add_option("--report", dsa->report,
                   "also write a dimension-fit report here");
    ds->callback([dsa] { run_double_sided(*dsa); });

    auto* vf = app.add_subcommand("verify-ifs",
                                  "Check cell nesting and open-set disjointness");
    auto va = std::make_shared<VerifyArgs>();
    vf->add_option("--p", va->p, "p as decimal or rational")->required();
    vf->add_option("--tol", va->tol, "geometric tolerance");
    vf->add_option("--out", va->out, "report JSON path (default stdout)");
    vf->callback([va, &exit_code] { exit_code = run_verify_ifs(*va); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    } catch (const std::domain_error& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return exit_code;
}
