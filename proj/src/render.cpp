#include "kochforge/render.hpp"

#include <cstdio>
#include <limits>
#include <stdexcept>

namespace kochforge {

namespace {

void validate(const std::vector<RenderPath>& paths,
              const RenderOptions& opts) {
    if (paths.empty()) throw std::invalid_argument("nothing to render");
    for (const RenderPath& path : paths)
        if (path.pts.empty()) throw std::invalid_argument("empty polyline");
    if (opts.width_px < 1 || opts.height_px < 1)
        throw std::invalid_argument("viewport dimensions must be positive");
    if (!(opts.margin_fraction >= 0.0 && opts.margin_fraction < 0.5))
        throw std::invalid_argument("margin_fraction must lie in [0, 0.5)");
    if (!(opts.stroke_width >= 0.0))
        throw std::invalid_argument("stroke_width must be non-negative");
}

void append_coord(std::string& out, double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    out += buf;
}

}  // namespace

Viewport fit_viewport(const std::vector<RenderPath>& paths,
                      const RenderOptions& opts) {
    validate(paths, opts);

    constexpr double inf = std::numeric_limits<double>::infinity();
    double x0 = inf, x1 = -inf, y0 = inf, y1 = -inf;
    for (const RenderPath& path : paths)
        for (const Point2& q : path.pts) {
            x0 = std::min(x0, q.x);
            x1 = std::max(x1, q.x);
            y0 = std::min(y0, q.y);
            y1 = std::max(y1, q.y);
        }
    const double dx = x1 - x0, dy = y1 - y0;
    const double w = static_cast<double>(opts.width_px);
    const double h = static_cast<double>(opts.height_px);
    const double avail_w = w * (1.0 - 2.0 * opts.margin_fraction);
    const double avail_h = h * (1.0 - 2.0 * opts.margin_fraction);

    double scale = 1.0;
    if (dx > 0.0 && dy > 0.0)
        scale = std::min(avail_w / dx, avail_h / dy);
    else if (dx > 0.0)
        scale = avail_w / dx;
    else if (dy > 0.0)
        scale = avail_h / dy;

    Viewport vp;
    vp.scale = scale;
    vp.world_x0 = x0;
    vp.world_y1 = y1;
    vp.px_left = (w - dx * scale) / 2.0;
    vp.px_top = (h - dy * scale) / 2.0;
    return vp;
}

std::string to_svg(const std::vector<RenderPath>& paths,
                   const RenderOptions& opts) {
    const Viewport vp = fit_viewport(paths, opts);

    std::size_t verts = 0;
    for (const RenderPath& path : paths) verts += path.pts.size();

    std::string out;
    out.reserve(320 + 32 * verts);
    char buf[256];
    std::snprintf(buf, sizeof buf,
                  "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
                  "<svg xmlns=\"http://www.w3.org/2000/svg\" "
                  "version=\"1.1\" width=\"%d\" height=\"%d\" "
                  "viewBox=\"0 0 %d %d\">\n",
                  opts.width_px, opts.height_px, opts.width_px,
                  opts.height_px);
    out += buf;
    std::snprintf(buf, sizeof buf,
                  "<rect width=\"%d\" height=\"%d\" fill=\"#ffffff\"/>\n",
                  opts.width_px, opts.height_px);
    out += buf;

    out += "<g ";
    if (opts.stroke_width > 0.0) {
        char sw[48];
        std::snprintf(sw, sizeof sw, "%.6g", opts.stroke_width);
        out += "stroke=\"#1a1a1a\" stroke-width=\"";
        out += sw;
        out += "\" stroke-linejoin=\"round\" stroke-linecap=\"round\" ";
    } else {
        out += "stroke=\"none\" ";
    }
    if (opts.fill) {
        out += "fill=\"#9ecae1\" fill-rule=\"";
        out += opts.fill_rule == FillRule::evenodd ? "evenodd" : "nonzero";
        out += "\">\n";
    } else {
        out += "fill=\"none\">\n";
    }

    for (const RenderPath& path : paths) {
        out += "<path d=\"";
        for (std::size_t i = 0; i < path.pts.size(); ++i) {
            const Point2 px = vp.to_pixel(path.pts[i]);
            out += i == 0 ? "M " : " L ";
            append_coord(out, px.x);
            out += ' ';
            append_coord(out, px.y);
        }
        if (path.closed) out += " Z";
        out += "\"/>\n";
    }

    out += "</g>\n</svg>\n";
    return out;
}

}  // namespace kochforge
