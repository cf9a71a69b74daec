#pragma once

// Deterministic SVG output of an arrangement under three coloring schemes:
// by side count, by shape-graded palettes (darker = more irregular), and by
// binned distance from the picture center with seeded random hues.  Floating
// point appears here only; it never feeds back into any count.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "chordgrid/arrangement.hpp"
#include "chordgrid/prng.hpp"

namespace chordgrid {

struct Rgb {
    int r = 0, g = 0, b = 0;

    std::string hex() const {
        char buf[8];
        std::snprintf(buf, sizeof buf, "#%02x%02x%02x", r, g, b);
        return buf;
    }
    bool operator==(const Rgb&) const = default;
};

inline Rgb hsv_to_rgb(double h, double s, double v) {
    h = std::fmod(std::fmod(h, 360.0) + 360.0, 360.0) / 60.0;
    const int i = static_cast<int>(h);
    const double f = h - i;
    const double p = v * (1 - s), q = v * (1 - s * f), t = v * (1 - s * (1 - f));
    double r = 0, g = 0, b = 0;
    switch (i % 6) {
        case 0: r = v, g = t, b = p; break;
        case 1: r = q, g = v, b = p; break;
        case 2: r = p, g = v, b = t; break;
        case 3: r = p, g = q, b = v; break;
        case 4: r = t, g = p, b = v; break;
        case 5: r = v, g = p, b = q; break;
    }
    auto byte = [](double x) { return static_cast<int>(std::lround(x * 255.0)); };
    return {byte(r), byte(g), byte(b)};
}

enum class ColorSchemeKind { BySides, Palette, RadialRandom };

struct ColorScheme {
    ColorSchemeKind kind = ColorSchemeKind::BySides;
    std::uint64_t seed = 1;
    int bins = 1000;                  // RadialRandom
    bool restricted_palette = false;  // RadialRandom: reds/greens/blues only

    static ColorScheme by_sides(std::uint64_t seed) { return {ColorSchemeKind::BySides, seed}; }
    static ColorScheme palette() { return {ColorSchemeKind::Palette, 0}; }
    static ColorScheme radial(std::uint64_t seed, int bins = 1000) {
        ColorScheme s{ColorSchemeKind::RadialRandom, seed};
        s.bins = bins;
        return s;
    }
};

// Palette gradient endpoints (dark -> light) per side count.
struct PaletteEndpoints {
    Rgb dark;
    Rgb light;
};

inline const PaletteEndpoints* palette_for_sides(int sides) {
    static const PaletteEndpoints kTriangle{{150, 95, 0}, {255, 255, 0}};
    static const PaletteEndpoints kQuadrilateral{{100, 0, 0}, {255, 0, 0}};
    static const PaletteEndpoints kPentagon{{30, 30, 100}, {30, 30, 255}};
    switch (sides) {
        case 3: return &kTriangle;
        case 4: return &kQuadrilateral;
        case 5: return &kPentagon;
        default: return nullptr;
    }
}

namespace detail {

inline double rational_to_double(const Rational& r) { return mpq_get_d(r.get_mpq_t()); }

inline Point vertex_average(const Arrangement& arr, const FaceRecord& f) {
    Rational sx(0), sy(0);
    for (int v : f.vertex_cycle) {
        sx += arr.nodes[v].point.x;
        sy += arr.nodes[v].point.y;
    }
    const Rational k(static_cast<unsigned long>(f.vertex_cycle.size()));
    return Point(sx / k, sy / k);
}

}  // namespace detail

/// Shape parameter of a 3-5 sided cell: exact cell area divided by the area
/// of a regular polygon with the same side count and circumradius, where the
/// circumradius is taken as the largest distance from the vertex-average
/// centroid to a vertex.  1 for regular cells, toward 0 for slivers.
inline double shape_parameter(const FaceRecord& cell, const Arrangement& arr) {
    if (!cell.bounded || cell.side_count < 3 || cell.side_count > 5)
        throw std::invalid_argument("shape_parameter: bounded 3-5 sided cells only");
    const Point c = detail::vertex_average(arr, cell);
    Rational max_r2(0);
    for (int v : cell.vertex_cycle) {
        const Rational dx = arr.nodes[v].point.x - c.x;
        const Rational dy = arr.nodes[v].point.y - c.y;
        Rational r2 = dx * dx + dy * dy;
        if (compare(r2, max_r2) > 0) max_r2 = r2;
    }
    const double rr = detail::rational_to_double(max_r2);
    const double regular =
        0.5 * cell.side_count * rr * std::sin(2.0 * M_PI / cell.side_count);
    const double lambda = detail::rational_to_double(cell.area) / regular;
    return std::min(lambda, 1.0);
}

inline Rgb lerp(const Rgb& a, const Rgb& b, double t) {
    auto mix = [t](int x, int y) { return static_cast<int>(std::lround(x + (y - x) * t)); };
    return {mix(a.r, b.r), mix(a.g, b.g), mix(a.b, b.b)};
}

namespace detail {

inline Rgb by_sides_color(int sides, std::uint64_t seed) {
    // Triangles red, quadrilaterals yellow, pentagons blue; anything larger
    // gets a seeded hue.
    switch (sides) {
        case 3: return {217, 0, 0};
        case 4: return {240, 214, 0};
        case 5: return {30, 30, 220};
        default: {
            SplitMix64 rng(seed * 0x9e3779b97f4a7c15ull + static_cast<std::uint64_t>(sides));
            return hsv_to_rgb(rng.next_unit_double() * 360.0, 0.85, 0.9);
        }
    }
}

// Picture center: midpoint of the bounding polygon's bounding box.
inline std::pair<double, double> picture_center(const Arrangement& arr) {
    Rational minx = arr.bounding_polygon[0].x, maxx = minx;
    Rational miny = arr.bounding_polygon[0].y, maxy = miny;
    for (const Point& p : arr.bounding_polygon) {
        if (compare(p.x, minx) < 0) minx = p.x;
        if (compare(p.x, maxx) > 0) maxx = p.x;
        if (compare(p.y, miny) < 0) miny = p.y;
        if (compare(p.y, maxy) > 0) maxy = p.y;
    }
    return {(rational_to_double(minx) + rational_to_double(maxx)) / 2.0,
            (rational_to_double(miny) + rational_to_double(maxy)) / 2.0};
}

inline double mean_vertex_distance(const Arrangement& arr, const FaceRecord& f, double cx,
                                   double cy) {
    double sum = 0;
    for (int v : f.vertex_cycle) {
        const double dx = rational_to_double(arr.nodes[v].point.x) - cx;
        const double dy = rational_to_double(arr.nodes[v].point.y) - cy;
        sum += std::sqrt(dx * dx + dy * dy);
    }
    return sum / static_cast<double>(f.vertex_cycle.size());
}

}  // namespace detail

/// Distance bin of every bounded face (index order = face order), over
/// [min, max] of the mean vertex distance from the picture center.
inline std::vector<int> radial_bins(const Arrangement& arr, int bins) {
    if (bins < 1) throw std::invalid_argument("radial_bins: bins must be >= 1");
    const auto [cx, cy] = detail::picture_center(arr);
    std::vector<double> dist;
    dist.reserve(arr.faces.size());
    double lo = 0, hi = 0;
    bool first = true;
    for (const FaceRecord& f : arr.faces) {
        if (!f.bounded) {
            dist.push_back(-1);
            continue;
        }
        const double d = detail::mean_vertex_distance(arr, f, cx, cy);
        dist.push_back(d);
        if (first) {
            lo = hi = d;
            first = false;
        } else {
            lo = std::min(lo, d);
            hi = std::max(hi, d);
        }
    }
    std::vector<int> out(arr.faces.size(), -1);
    for (std::size_t i = 0; i < arr.faces.size(); ++i) {
        if (dist[i] < 0) continue;
        if (hi == lo) {
            out[i] = 0;
        } else {
            const int b = static_cast<int>((dist[i] - lo) / (hi - lo) * bins);
            out[i] = std::min(b, bins - 1);
        }
    }
    return out;
}

/// Hue assignment for the radial scheme: each nonempty bin receives a color
/// from the red-to-violet sweep (hue 0..270), shuffled by the seed; with the
/// restricted flag, hues come from narrow red/green/blue bands instead.
inline std::map<int, Rgb> radial_bin_colors(const std::vector<int>& bins_of_face,
                                            std::uint64_t seed, bool restricted) {
    std::vector<int> nonempty;
    for (int b : bins_of_face) {
        if (b >= 0) nonempty.push_back(b);
    }
    std::sort(nonempty.begin(), nonempty.end());
    nonempty.erase(std::unique(nonempty.begin(), nonempty.end()), nonempty.end());

    std::vector<int> slot(nonempty.size());
    for (std::size_t i = 0; i < slot.size(); ++i) slot[i] = static_cast<int>(i);
    SplitMix64 rng(seed);
    shuffle(slot, rng);

    std::map<int, Rgb> colors;
    const int k = static_cast<int>(nonempty.size());
    for (std::size_t i = 0; i < nonempty.size(); ++i) {
        double hue;
        if (restricted) {
            static const double kBands[] = {0.0, 125.0, 235.0};
            const int band = slot[i] % 3;
            const int within = slot[i] / 3;
            const int per_band = (k + 2) / 3;
            hue = kBands[band] + (per_band <= 1 ? 0.0 : 20.0 * within / (per_band - 1));
        } else {
            hue = k <= 1 ? 0.0 : 270.0 * slot[i] / (k - 1);
        }
        colors[nonempty[i]] = hsv_to_rgb(hue, 1.0, 1.0);
    }
    return colors;
}

/// Color of one cell under the radial scheme.
inline Rgb radial_color_index(std::size_t face_index, const Arrangement& arr, int bins,
                              std::uint64_t seed, bool restricted = false) {
    const std::vector<int> b = radial_bins(arr, bins);
    if (face_index >= b.size() || b[face_index] < 0)
        throw std::invalid_argument("radial_color_index: not a bounded face");
    return radial_bin_colors(b, seed, restricted).at(b[face_index]);
}

struct RenderOptions {
    int width_px = 800;
    double stroke_width = 1.0;
};

/// Emits an SVG 1.1 document with one filled path per bounded cell (class
/// "cell", in canonical face order) and an outline of the bounding polygon.
/// Byte-identical output for identical inputs; coordinates are printed with
/// fixed 6-decimal formatting.
inline std::string render_svg(const Arrangement& arr, const ColorScheme& scheme,
                              const RenderOptions& opt = {}) {
    if (opt.width_px < 16) throw std::invalid_argument("render_svg: width too small");

    Rational minx = arr.bounding_polygon[0].x, maxx = minx;
    Rational miny = arr.bounding_polygon[0].y, maxy = miny;
    for (const Point& p : arr.bounding_polygon) {
        if (compare(p.x, minx) < 0) minx = p.x;
        if (compare(p.x, maxx) > 0) maxx = p.x;
        if (compare(p.y, miny) < 0) miny = p.y;
        if (compare(p.y, maxy) > 0) maxy = p.y;
    }
    const double wx = detail::rational_to_double(maxx - minx);
    const double wy = detail::rational_to_double(maxy - miny);
    const double margin = 4.0 + opt.stroke_width;
    const double scale = (opt.width_px - 2 * margin) / wx;
    const double height_px = wy * scale + 2 * margin;
    const double x0 = detail::rational_to_double(minx);
    const double y1 = detail::rational_to_double(maxy);

    auto fmt = [&](double v) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.6f", v);
        return std::string(buf);
    };
    auto sx = [&](const Rational& x) { return (detail::rational_to_double(x) - x0) * scale + margin; };
    auto sy = [&](const Rational& y) { return (y1 - detail::rational_to_double(y)) * scale + margin; };

    // Precompute per-face colors.
    std::vector<int> bins_of_face;
    std::map<int, Rgb> bin_colors;
    if (scheme.kind == ColorSchemeKind::RadialRandom) {
        bins_of_face = radial_bins(arr, scheme.bins);
        bin_colors = radial_bin_colors(bins_of_face, scheme.seed, scheme.restricted_palette);
    }

    std::string svg;
    svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt(opt.width_px) +
           "\" height=\"" + fmt(height_px) + "\" viewBox=\"0 0 " + fmt(opt.width_px) + " " +
           fmt(height_px) + "\">\n";

    for (std::size_t fi = 0; fi < arr.faces.size(); ++fi) {
        const FaceRecord& f = arr.faces[fi];
        if (!f.bounded) continue;
        Rgb color;
        switch (scheme.kind) {
            case ColorSchemeKind::BySides: color = detail::by_sides_color(f.side_count, scheme.seed); break;
            case ColorSchemeKind::Palette: {
                const PaletteEndpoints* pal = palette_for_sides(f.side_count);
                if (pal == nullptr) {
                    color = detail::by_sides_color(f.side_count, scheme.seed);
                } else {
                    color = lerp(pal->dark, pal->light, std::sqrt(shape_parameter(f, arr)));
                }
                break;
            }
            case ColorSchemeKind::RadialRandom:
                color = bin_colors.at(bins_of_face[fi]);
                break;
        }
        // Start each path at the cell's smallest node index for stable text.
        const std::vector<int>& cyc = f.vertex_cycle;
        const std::size_t start = static_cast<std::size_t>(
            std::min_element(cyc.begin(), cyc.end()) - cyc.begin());
        svg += "<path class=\"cell\" d=\"";
        for (std::size_t k = 0; k < cyc.size(); ++k) {
            const Point& p = arr.nodes[cyc[(start + k) % cyc.size()]].point;
            svg += (k == 0 ? "M " : " L ") + fmt(sx(p.x)) + " " + fmt(sy(p.y));
        }
        svg += " Z\" fill=\"" + color.hex() + "\" stroke=\"#000000\" stroke-width=\"" +
               fmt(opt.stroke_width) + "\"/>\n";
    }

    svg += "<path class=\"outline\" d=\"";
    for (std::size_t k = 0; k < arr.bounding_polygon.size(); ++k) {
        const Point& p = arr.bounding_polygon[k];
        svg += (k == 0 ? "M " : " L ") + fmt(sx(p.x)) + " " + fmt(sy(p.y));
    }
    svg += " Z\" fill=\"none\" stroke=\"#000000\" stroke-width=\"" + fmt(2 * opt.stroke_width) +
           "\"/>\n</svg>\n";
    return svg;
}

}  // namespace chordgrid
