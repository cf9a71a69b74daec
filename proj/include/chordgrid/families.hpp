#pragma once

// Chord-set generation for the five families:
//
//   bc(m,n)  - every pair of the 2(m+n) boundary nodes of an m x n
//              reticulated rectangle (corners (0,0) and (n,m));
//   ac(m,n)  - every pair of the (m+1)(n+1) grid points;
//   lc(m,n)  - each ac chord extended until it reaches the rectangle
//              boundary (one maximal chord per distinct line);
//   it(n)    - right triangle (0,0),(1,0),(0,1) with leg nodes at
//              heights/offsets 1/2, 1/3, ..., 1/(n+1), all boundary
//              pairs joined;
//   bcgp(m,n) - bc(m,n) with the non-vertex boundary nodes displaced by
//              small seeded rational amounts along their sides, redrawn
//              until no interior point lies on three or more lines.

#include <map>
#include <set>
#include <stdexcept>
#include <vector>

#include "chordgrid/arrangement.hpp"
#include "chordgrid/chordset.hpp"
#include "chordgrid/prng.hpp"

namespace chordgrid {

namespace detail {

inline void all_pairs_chords(ChordSet& cs, const std::vector<Point>& pts) {
    cs.chords.reserve(pts.size() * (pts.size() - 1) / 2);
    for (std::size_t i = 0; i < pts.size(); ++i) {
        for (std::size_t j = i + 1; j < pts.size(); ++j) {
            cs.chords.emplace_back(pts[i], pts[j]);
        }
    }
}

inline std::vector<Point> rectangle_corners(int m, int n) {
    return {Point(0, 0), Point(n, 0), Point(n, m), Point(0, m)};
}

// Boundary nodes counterclockwise from (0,0); positions may later be
// perturbed but the traversal order is fixed.
inline std::vector<Point> rectangle_boundary_nodes(int m, int n) {
    std::vector<Point> pts;
    pts.reserve(2 * (m + n));
    for (int i = 0; i <= n; ++i) pts.emplace_back(i, 0);
    for (int j = 1; j <= m; ++j) pts.emplace_back(n, j);
    for (int i = n - 1; i >= 0; --i) pts.emplace_back(i, m);
    for (int j = m - 1; j >= 1; --j) pts.emplace_back(0, j);
    return pts;
}

inline std::vector<Point> grid_points(int m, int n) {
    std::vector<Point> pts;
    pts.reserve((m + 1) * (n + 1));
    for (int i = 0; i <= n; ++i) {
        for (int j = 0; j <= m; ++j) pts.emplace_back(i, j);
    }
    return pts;
}

// The two points where a line crosses the boundary of [0,n] x [0,m].
// Requires the line to actually cross the rectangle in a segment.
inline Segment clip_line_to_rectangle(const Line& line, int m, int n) {
    std::vector<Point> hits;
    auto push = [&](Point p) {
        for (const Point& q : hits) {
            if (q == p) return;
        }
        hits.push_back(std::move(p));
    };
    const Rational zero(0);
    if (sign(line.b) != 0) {
        // y at x = 0 and x = n
        Rational y0 = make_rational(line.c, line.b);
        if (compare(y0, zero) >= 0 && compare(y0, Rational(m)) <= 0) push(Point(zero, y0));
        Rational yn = make_rational(line.c - line.a * n, line.b);
        if (compare(yn, zero) >= 0 && compare(yn, Rational(m)) <= 0) push(Point(Rational(n), yn));
    }
    if (sign(line.a) != 0) {
        Rational x0 = make_rational(line.c, line.a);
        if (compare(x0, zero) >= 0 && compare(x0, Rational(n)) <= 0) push(Point(x0, zero));
        Rational xm = make_rational(line.c - line.b * m, line.a);
        if (compare(xm, zero) >= 0 && compare(xm, Rational(n)) <= 0) push(Point(xm, Rational(m)));
    }
    if (hits.size() != 2)
        throw std::logic_error("clip_line_to_rectangle: line does not span the rectangle");
    return Segment(hits[0], hits[1]);
}

inline ChordSet generate_bc(const FamilySpec& spec) {
    ChordSet cs;
    cs.spec = spec;
    cs.bounding_polygon = rectangle_corners(spec.m, spec.n);
    cs.boundary_nodes = rectangle_boundary_nodes(spec.m, spec.n);
    all_pairs_chords(cs, cs.boundary_nodes);
    return cs;
}

inline ChordSet generate_ac(const FamilySpec& spec) {
    ChordSet cs;
    cs.spec = spec;
    cs.bounding_polygon = rectangle_corners(spec.m, spec.n);
    cs.boundary_nodes = rectangle_boundary_nodes(spec.m, spec.n);
    all_pairs_chords(cs, grid_points(spec.m, spec.n));
    return cs;
}

inline ChordSet generate_lc(const FamilySpec& spec) {
    ChordSet cs;
    cs.spec = spec;
    cs.bounding_polygon = rectangle_corners(spec.m, spec.n);
    cs.boundary_nodes = rectangle_boundary_nodes(spec.m, spec.n);
    const std::vector<Point> pts = grid_points(spec.m, spec.n);
    std::set<Line> lines;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        for (std::size_t j = i + 1; j < pts.size(); ++j) {
            lines.insert(line_through(pts[i], pts[j]));
        }
    }
    cs.chords.reserve(lines.size());
    for (const Line& line : lines) {
        cs.chords.push_back(clip_line_to_rectangle(line, spec.m, spec.n));
    }
    return cs;
}

inline ChordSet generate_it(const FamilySpec& spec) {
    ChordSet cs;
    cs.spec = spec;
    cs.bounding_polygon = {Point(0, 0), Point(1, 0), Point(0, 1)};
    std::vector<Point>& pts = cs.boundary_nodes;
    // Counterclockwise: along the bottom leg, then the hypotenuse endpoint,
    // then down the vertical leg.
    pts.emplace_back(0, 0);
    for (int k = spec.n; k >= 1; --k) pts.emplace_back(make_rational(1, k + 1), Rational(0));
    pts.emplace_back(1, 0);
    pts.emplace_back(0, 1);
    for (int k = 1; k <= spec.n; ++k) pts.emplace_back(Rational(0), make_rational(1, k + 1));
    all_pairs_chords(cs, pts);
    return cs;
}

// One perturbation draw.  A node at fraction i/j along its side moves to
// i/j + u/S with u uniform over {-D,...,-1,1,...,D}, D = S / (4*max(m,n)*j),
// which preserves the node order along the side.  Draw order: bottom, top,
// left, right, each in increasing coordinate.
inline ChordSet draw_gp(const FamilySpec& spec, SplitMix64& rng) {
    const int m = spec.m, n = spec.n;
    const long s = spec.perturbation.scale_denominator;
    const long mx = std::max(m, n);
    auto displaced = [&](int i, int j) -> Rational {
        const long d = s / (4 * mx * j);
        if (d < 1) throw std::invalid_argument("bcgp: scale denominator too small for grid");
        const long u = rng.next_nonzero_in(d);
        // side-length * (i/j + u/s) with side length j
        return Rational(i) + make_rational(Integer(j) * u, Integer(s));
    };

    ChordSet cs;
    cs.spec = spec;
    cs.bounding_polygon = rectangle_corners(m, n);
    std::map<std::pair<int, int>, Point> moved;  // (i, j) grid position -> point
    for (int i = 1; i <= n - 1; ++i) moved[{i, 0}] = Point(displaced(i, n), Rational(0));
    for (int i = 1; i <= n - 1; ++i) moved[{i, m}] = Point(displaced(i, n), Rational(m));
    for (int j = 1; j <= m - 1; ++j) moved[{0, j}] = Point(Rational(0), displaced(j, m));
    for (int j = 1; j <= m - 1; ++j) moved[{n, j}] = Point(Rational(n), displaced(j, m));

    for (const Point& p : rectangle_boundary_nodes(m, n)) {
        const auto key = std::make_pair(static_cast<int>(p.x.get_num().get_si()),
                                        static_cast<int>(p.y.get_num().get_si()));
        auto it = moved.find(key);
        cs.boundary_nodes.push_back(it == moved.end() ? p : it->second);
    }
    all_pairs_chords(cs, cs.boundary_nodes);
    return cs;
}

// General position: no two chords collinear except along the rectangle
// sides, and no interior node on three or more distinct lines.
inline bool in_general_position(const ChordSet& cs, const Arrangement& arr) {
    const int m = cs.spec.m, n = cs.spec.n;
    const std::size_t b = cs.boundary_nodes.size();
    const std::size_t side_chords = static_cast<std::size_t>(n + 1) * n / 2 * 2 +
                                    static_cast<std::size_t>(m + 1) * m / 2 * 2;
    const std::size_t expected_lines = b * (b - 1) / 2 - side_chords + 4;
    if (arr.line_supports.size() != expected_lines) return false;
    for (const NodeRecord& node : arr.nodes) {
        if (!node.on_boundary && node.line_multiplicity >= 3) return false;
    }
    return true;
}

inline ChordSet generate_bc_gp(const FamilySpec& spec) {
    SplitMix64 rng(spec.perturbation.seed);
    for (int attempt = 0; attempt < 64; ++attempt) {
        ChordSet cs = draw_gp(spec, rng);
        if (in_general_position(cs, build(cs))) return cs;
    }
    throw std::runtime_error("bcgp: no general-position draw within 64 attempts");
}

}  // namespace detail

/// Deterministic chord set for a family instance; identical specs (including
/// the seed) give identical output.
inline ChordSet generate(const FamilySpec& spec) {
    spec.validate();
    switch (spec.kind) {
        case Family::BoundaryChords: return detail::generate_bc(spec);
        case Family::AllChords: return detail::generate_ac(spec);
        case Family::LongChords: return detail::generate_lc(spec);
        case Family::IsoscelesTriangle: return detail::generate_it(spec);
        case Family::BoundaryChordsGP: return detail::generate_bc_gp(spec);
    }
    throw std::invalid_argument("generate: unknown family");
}

/// Projective correspondence mapping bc(1,n) onto it(n) minus the cell at
/// the origin: (x, y) -> ((1-y)/(x+1), y/(x+1)).  Undefined at x = -1.
inline Point bc1_to_it_map(const Point& p) {
    if (compare(p.x, Rational(-1)) == 0)
        throw std::domain_error("bc1_to_it_map: pole at x = -1");
    const Rational d = p.x + 1;
    return Point((Rational(1) - p.y) / d, p.y / d);
}

struct ItOffsetReport {
    long long node_diff = 0;
    long long edge_diff = 0;
    long long cell_diff = 0;
    bool passes() const { return node_diff == 1 && edge_diff == 2 && cell_diff == 1; }
};

/// Builds it(n) and bc(1,n) and reports the count differences, expected to
/// be exactly (1, 2, 1).
inline ItOffsetReport verify_it_offsets(int n) {
    if (n < 1) throw std::invalid_argument("verify_it_offsets: n must be >= 1");
    const Arrangement it = build(generate(FamilySpec::it(n)));
    const Arrangement bc = build(generate(FamilySpec::bc(1, n)));
    ItOffsetReport r;
    r.node_diff = static_cast<long long>(it.node_count()) - static_cast<long long>(bc.node_count());
    r.edge_diff = static_cast<long long>(it.edge_count()) - static_cast<long long>(bc.edge_count());
    r.cell_diff = static_cast<long long>(it.bounded_face_count()) -
                  static_cast<long long>(bc.bounded_face_count());
    return r;
}

}  // namespace chordgrid
