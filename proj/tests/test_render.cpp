#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cctype>
#include <random>
#include <string>
#include <vector>

#include "kochforge/curves.hpp"
#include "kochforge/render.hpp"

using namespace kochforge;

namespace {

/// Minimal XML well-formedness check for documents without text content:
/// optional declaration, then properly nested elements with double-quoted
/// attributes, exactly one root. Collects every element name seen.
bool xml_well_formed(const std::string& s, std::vector<std::string>* tags) {
    std::size_t i = 0;
    const std::size_t n = s.size();
    std::vector<std::string> stack;
    bool seen_root = false;
    auto skip_ws = [&] {
        while (i < n && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    };
    auto name_char = [&](char c) {
        return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == ':' ||
               c == '-';
    };
    skip_ws();
    if (s.compare(i, 5, "<?xml") == 0) {
        std::size_t e = s.find("?>", i);
        if (e == std::string::npos) return false;
        i = e + 2;
    }
    while (true) {
        skip_ws();
        if (i >= n) break;
        if (seen_root && stack.empty()) return false;
        if (s[i] != '<') return false;
        if (s.compare(i, 2, "</") == 0) {
            i += 2;
            std::size_t e = s.find('>', i);
            if (e == std::string::npos) return false;
            if (stack.empty()) return false;
            if (stack.back() != s.substr(i, e - i)) return false;
            stack.pop_back();
            if (stack.empty()) seen_root = true;
            i = e + 1;
            continue;
        }
        ++i;
        std::size_t start = i;
        while (i < n && name_char(s[i])) ++i;
        if (i == start) return false;
        std::string name = s.substr(start, i - start);
        if (tags) tags->push_back(name);
        while (true) {
            skip_ws();
            if (i >= n) return false;
            if (s[i] == '>') {
                stack.push_back(name);
                ++i;
                break;
            }
            if (s.compare(i, 2, "/>") == 0) {
                i += 2;
                if (stack.empty()) seen_root = true;
                break;
            }
            std::size_t as = i;
            while (i < n && name_char(s[i])) ++i;
            if (i == as) return false;
            if (i >= n) return false;
            if (s[i] != '=') return false;
            ++i;
            if (i >= n) return false;
            if (s[i] != '"') return false;
            std::size_t e = s.find('"', i + 1);
            if (e == std::string::npos) return false;
            i = e + 1;
        }
    }
    if (!stack.empty()) return false;
    return seen_root;
}

/// The d attribute of every path element, in document order.
std::vector<std::string> path_data(const std::string& svg) {
    std::vector<std::string> out;
    std::size_t pos = 0;
    while ((pos = svg.find("<path", pos)) != std::string::npos) {
        std::size_t d = svg.find("d=\"", pos);
        if (d == std::string::npos) return out;
        std::size_t end = svg.find('"', d + 3);
        if (end == std::string::npos) return out;
        out.push_back(svg.substr(d + 3, end - d - 3));
        pos = end;
    }
    return out;
}

int count_char(const std::string& s, char c) {
    int n = 0;
    for (char x : s)
        if (x == c) ++n;
    return n;
}

/// Every numeric token in a path's data carries exactly six decimals.
bool six_decimal_coords(const std::string& d) {
    std::size_t i = 0;
    while (i < d.size()) {
        while (i < d.size() && d[i] == ' ') ++i;
        std::size_t start = i;
        while (i < d.size() && d[i] != ' ') ++i;
        if (i == start) break;
        std::string tok = d.substr(start, i - start);
        if (tok == "M" || tok == "L" || tok == "Z") continue;
        std::size_t dot = tok.find('.');
        if (dot == std::string::npos) return false;
        if (tok.size() - dot - 1 != 6) return false;
    }
    return true;
}

std::vector<RenderPath> triangle_scene() {
    return {{{{0.0, 0.0}, {1.0, 0.0}, {0.5, 0.8660254037844386}}, true}};
}

}  // namespace

TEST_CASE("triangle renders as one closed three vertex path") {
    std::string svg = to_svg(triangle_scene(), RenderOptions{});
    std::vector<std::string> d = path_data(svg);
    REQUIRE(d.size() == 1);
    CHECK(count_char(d[0], 'M') == 1);
    CHECK(count_char(d[0], 'L') == 2);
    CHECK(count_char(d[0], 'Z') == 1);
    CHECK(six_decimal_coords(d[0]));
}

TEST_CASE("svg is well formed xml restricted to path g and rect") {
    MapFamily fam = build_family(make_params(0.3));
    SnowflakeSpec spec = make_random_spec(0.3, "0.3", 4, 7);
    std::vector<RenderPath> scene = {
        {snowflake_polyline(fam, spec, 3).pts, true}};
    std::string svg = to_svg(scene, RenderOptions{});

    std::vector<std::string> tags;
    CHECK(xml_well_formed(svg, &tags));
    for (const std::string& t : tags) {
        bool allowed = t == "svg" || t == "g" || t == "rect" || t == "path";
        CHECK(allowed);
    }
    CHECK(svg.find("xmlns=\"http://www.w3.org/2000/svg\"") !=
          std::string::npos);
    CHECK(svg.find("version=\"1.1\"") != std::string::npos);
    CHECK(svg.find("href") == std::string::npos);
    CHECK(svg.find("script") == std::string::npos);
}

TEST_CASE("path vertex count equals input vertex count") {
    MapFamily fam = build_family(make_params(1.0 / 3.0));
    SnowflakeSpec spec = make_uniform_spec(1.0 / 3.0, "1/3", 4, 0);

    SUBCASE("closed snowflake chain") {
        Polyline chain = snowflake_polyline(fam, spec, 3).pts;
        std::string svg = to_svg({{chain, true}}, RenderOptions{});
        std::vector<std::string> d = path_data(svg);
        REQUIRE(d.size() == 1);
        const int verts = count_char(d[0], 'M') + count_char(d[0], 'L');
        CHECK(verts == static_cast<int>(chain.size()));
        CHECK(count_char(d[0], 'Z') == 1);
    }
    SUBCASE("double sided segments as open two vertex paths") {
        std::vector<Segment> segs = double_sided_polylines(fam, 2);
        REQUIRE(segs.size() == 36);
        std::vector<RenderPath> scene;
        for (const Segment& s : segs) scene.push_back({{s.a, s.b}, false});
        std::string svg = to_svg(scene, RenderOptions{});
        std::vector<std::string> d = path_data(svg);
        REQUIRE(d.size() == 36);
        std::size_t verts = 0;
        for (const std::string& one : d) {
            verts += static_cast<std::size_t>(count_char(one, 'M') +
                                              count_char(one, 'L'));
            CHECK(count_char(one, 'Z') == 0);
        }
        CHECK(verts == 72);
    }
}

TEST_CASE("viewport round trip is identity within 1e-6 relative") {
    RenderOptions opts;
    opts.width_px = 640;
    opts.height_px = 480;
    opts.margin_fraction = 0.08;

    std::mt19937_64 rng(404);
    Polyline pts;
    for (int i = 0; i < 200; ++i) {
        double x = -3.0 + 6.0 * (static_cast<double>(rng() % 100000) / 1e5);
        double y = -2.0 + 4.0 * (static_cast<double>(rng() % 100000) / 1e5);
        pts.push_back({x, y});
    }
    Viewport vp = fit_viewport({{pts, false}}, opts);
    for (const Point2& w : pts) {
        Point2 back = vp.to_world(vp.to_pixel(w));
        CHECK(dist(back, w) <= 1e-6 * std::max(1.0, norm(w)));
    }

    SUBCASE("horizontal segment has a usable viewport") {
        Polyline seg = {{0.0, 1.0}, {5.0, 1.0}};
        Viewport flat = fit_viewport({{seg, false}}, opts);
        for (const Point2& w : seg) {
            Point2 px = flat.to_pixel(w);
            Point2 back = flat.to_world(px);
            CHECK(dist(back, w) <= 1e-6 * std::max(1.0, norm(w)));
            CHECK(px.x >= 0.0);
            CHECK(px.x <= 640.0);
        }
    }
}

TEST_CASE("viewport preserves aspect ratio and honours margins") {
    RenderOptions opts;
    opts.width_px = 400;
    opts.height_px = 300;
    opts.margin_fraction = 0.1;

    std::vector<RenderPath> scene = triangle_scene();
    Viewport vp = fit_viewport(scene, opts);

    // Bounding box corners in pixels.
    Point2 tl = vp.to_pixel({0.0, 0.8660254037844386});
    Point2 br = vp.to_pixel({1.0, 0.0});
    const double w = br.x - tl.x;
    const double h = br.y - tl.y;
    // Aspect ratio of the world bbox survives the mapping.
    CHECK(w / h == doctest::Approx(1.0 / 0.8660254037844386).epsilon(1e-9));
    // The tight dimension sits exactly at the margin, the loose one inside.
    const double mx = 0.1 * 400.0, my = 0.1 * 300.0;
    CHECK(tl.x >= mx - 1e-9);
    CHECK(tl.y >= my - 1e-9);
    CHECK(br.x <= 400.0 - mx + 1e-9);
    CHECK(br.y <= 300.0 - my + 1e-9);
    const bool tight_x = std::abs(tl.x - mx) < 1e-9;
    const bool tight_y = std::abs(tl.y - my) < 1e-9;
    CHECK((tight_x || tight_y));
    // Content is centred: symmetric slack on both sides.
    CHECK(tl.x - 0.0 == doctest::Approx(400.0 - br.x).epsilon(1e-9));
    CHECK(tl.y - 0.0 == doctest::Approx(300.0 - br.y).epsilon(1e-9));
}

TEST_CASE("y axis is flipped") {
    std::vector<RenderPath> scene = {
        {{{0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}}, false}};
    Viewport vp = fit_viewport(scene, RenderOptions{});
    Point2 lo = vp.to_pixel({0.0, 0.0});
    Point2 hi = vp.to_pixel({0.0, 1.0});
    CHECK(hi.y < lo.y);
    CHECK(hi.x == doctest::Approx(lo.x).epsilon(1e-12));
}

TEST_CASE("identical inputs give identical bytes") {
    MapFamily fam = build_family(make_params(0.29));
    SnowflakeSpec spec = make_random_spec(0.29, "0.29", 4, 123);
    std::vector<RenderPath> scene = {
        {snowflake_polyline(fam, spec, 4).pts, true}};
    RenderOptions opts;
    opts.fill = true;
    opts.fill_rule = FillRule::evenodd;
    std::string a = to_svg(scene, opts);
    std::string b = to_svg(scene, opts);
    CHECK(a == b);
}

TEST_CASE("fill options surface in the output") {
    std::vector<RenderPath> scene = triangle_scene();

    RenderOptions line;
    std::string stroked = to_svg(scene, line);
    CHECK(stroked.find("fill=\"none\"") != std::string::npos);
    CHECK(stroked.find("fill-rule") == std::string::npos);

    RenderOptions filled;
    filled.fill = true;
    std::string nz = to_svg(scene, filled);
    CHECK(nz.find("fill-rule=\"nonzero\"") != std::string::npos);
    filled.fill_rule = FillRule::evenodd;
    std::string eo = to_svg(scene, filled);
    CHECK(eo.find("fill-rule=\"evenodd\"") != std::string::npos);

    // Classical snowflake at depth 5: one filled closed path, 3 * 4^5 vertices.
    MapFamily fam = build_family(make_params(1.0 / 3.0));
    SnowflakeSpec spec = make_uniform_spec(1.0 / 3.0, "1/3", 5, 0);
    std::string snow =
        to_svg({{snowflake_polyline(fam, spec, 5).pts, true}}, filled);
    std::vector<std::string> d = path_data(snow);
    REQUIRE(d.size() == 1);
    CHECK(count_char(d[0], 'M') + count_char(d[0], 'L') == 3072);
    CHECK(count_char(d[0], 'Z') == 1);
}

TEST_CASE("single point scene still renders") {
    std::vector<RenderPath> scene = {{{{2.0, -1.0}}, false}};
    std::string svg = to_svg(scene, RenderOptions{});
    std::vector<std::string> d = path_data(svg);
    REQUIRE(d.size() == 1);
    CHECK(count_char(d[0], 'M') == 1);
    CHECK(count_char(d[0], 'L') == 0);
    Viewport vp = fit_viewport(scene, RenderOptions{});
    Point2 back = vp.to_world(vp.to_pixel({2.0, -1.0}));
    CHECK(dist(back, {2.0, -1.0}) <= 1e-6);
}

TEST_CASE("validation rejects bad inputs") {
    std::vector<RenderPath> scene = triangle_scene();
    CHECK_THROWS_AS(to_svg({}, RenderOptions{}), std::invalid_argument);
    CHECK_THROWS_AS(to_svg({{Polyline{}, false}}, RenderOptions{}),
                    std::invalid_argument);

    RenderOptions bad;
    bad.width_px = 0;
    CHECK_THROWS_AS(to_svg(scene, bad), std::invalid_argument);
    bad = RenderOptions{};
    bad.height_px = -5;
    CHECK_THROWS_AS(to_svg(scene, bad), std::invalid_argument);
    bad = RenderOptions{};
    bad.margin_fraction = 0.5;
    CHECK_THROWS_AS(to_svg(scene, bad), std::invalid_argument);
    bad = RenderOptions{};
    bad.margin_fraction = -0.01;
    CHECK_THROWS_AS(to_svg(scene, bad), std::invalid_argument);
    bad = RenderOptions{};
    bad.stroke_width = -1.0;
    CHECK_THROWS_AS(to_svg(scene, bad), std::invalid_argument);

    RenderOptions edge;
    edge.margin_fraction = 0.0;
    CHECK_NOTHROW(to_svg(scene, edge));
}
