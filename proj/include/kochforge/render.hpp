#pragma once

#include <string>
#include <vector>

#include "kochforge/geometry.hpp"

namespace kochforge {

enum class FillRule { nonzero, evenodd };

/// Options for SVG emission. Dimensions are the pixel viewport; margin is a
/// fraction of each dimension kept clear on every side, in [0, 0.5).
struct RenderOptions {
    int width_px = 800;
    int height_px = 800;
    double stroke_width = 1.0;
    bool fill = false;
    FillRule fill_rule = FillRule::nonzero;
    double margin_fraction = 0.05;
};

/// One drawable path. Closedness is per-path data so mixed scenes (closed
/// snowflakes over open arcs, cell outlines) render correctly; a closed path
/// must not repeat its first vertex, the closure is implicit.
struct RenderPath {
    Polyline pts;
    bool closed = false;
};

/// Affine world-to-pixel map: uniform scale, centred, y axis flipped so
/// figures appear with +y up.
struct Viewport {
    double scale = 1.0;
    double world_x0 = 0.0;
    double world_y1 = 0.0;
    double px_left = 0.0;
    double px_top = 0.0;

    Point2 to_pixel(const Point2& w) const {
        return {px_left + (w.x - world_x0) * scale,
                px_top + (world_y1 - w.y) * scale};
    }
    Point2 to_world(const Point2& px) const {
        return {world_x0 + (px.x - px_left) / scale,
                world_y1 - (px.y - px_top) / scale};
    }
};

/// Aspect-preserving map from the joint bounding box of the paths onto the
/// margin-inset viewport, content centred. Degenerate boxes (single point,
/// axis-aligned segment) fall back to the non-degenerate extent, or unit
/// scale when both extents vanish. Throws invalid_argument on empty input
/// or options violating their invariants.
Viewport fit_viewport(const std::vector<RenderPath>& paths,
                      const RenderOptions& opts);

/// Standalone SVG 1.1 document (elements: svg, rect background, g, path)
/// drawing the paths under fit_viewport's transform. Closed paths end in Z
/// and, when opts.fill is set, are filled with the chosen fill rule.
/// Coordinates carry six decimals; output bytes are deterministic in the
/// inputs. Throws invalid_argument on empty input or an empty polyline.
std::string to_svg(const std::vector<RenderPath>& paths,
                   const RenderOptions& opts);

}  // namespace kochforge
