#pragma once

// Exact planar subdivision of a chord set.
//
// Pipeline: group chords by canonical line and merge overlapping collinear
// spans (merge_collinear), intersect support pairs and deduplicate nodes by
// exact point equality, split each support at its nodes into edges, sort the
// half-edges around every node by exact angular order, and read the faces off
// the rotation system (next = rotational predecessor of the twin).  Bounded
// faces come out counterclockwise; the single clockwise cycle is the
// unbounded face.  Euler's relation  nodes - edges + bounded cells = 1  is
// asserted on every build.
//
// Node collection runs on one of two interchangeable exact backends: an
// int64/int128 fast path used when every line coefficient and span endpoint
// is small (all unperturbed families), and a GMP rational path for arbitrary
// inputs (perturbed instances).  Both produce identical canonical output.

#include <algorithm>
#include <array>
#include <atomic>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <unordered_map>
#include <utility>
#include <vector>

#include "chordgrid/chordset.hpp"
#include "chordgrid/geom.hpp"

namespace chordgrid {

struct LineSupport {
    Line line;
    std::vector<Segment> covered_span;  // disjoint maximal sub-segments, sorted along the line
    std::vector<int> nodes_on_line;     // sorted along the line; filled by build()
};

struct NodeRecord {
    Point point;
    bool on_boundary = false;
    int line_multiplicity = 0;  // distinct lines through the node
    int degree = 0;
};

struct HalfEdge {
    int origin = -1;
    int next_around_face = -1;
    int support = -1;  // index into line_supports
    // twin is index ^ 1
};

struct FaceRecord {
    std::vector<int> vertex_cycle;  // counterclockwise for bounded faces
    int side_count = 0;
    Rational area;  // positive; the unbounded face stores its cycle's magnitude
    bool bounded = false;
};

class Arrangement {
public:
    std::vector<NodeRecord> nodes;
    std::vector<HalfEdge> half_edges;
    std::vector<FaceRecord> faces;
    std::vector<LineSupport> line_supports;
    std::vector<Point> bounding_polygon;

    int twin(int h) const { return h ^ 1; }
    std::size_t node_count() const { return nodes.size(); }
    std::size_t edge_count() const { return half_edges.size() / 2; }
    std::size_t bounded_face_count() const { return bounded_faces_; }
    int unbounded_face_index() const { return unbounded_face_; }

    std::vector<Point> face_points(const FaceRecord& f) const {
        std::vector<Point> pts;
        pts.reserve(f.vertex_cycle.size());
        for (int v : f.vertex_cycle) pts.push_back(nodes[v].point);
        return pts;
    }

    // Filled by build().
    std::size_t bounded_faces_ = 0;
    int unbounded_face_ = -1;
};

// Process-wide tally so a test run can assert that every arrangement built
// anywhere satisfied Euler's relation.
struct ArrangementStats {
    static std::atomic<long long>& builds() {
        static std::atomic<long long> v{0};
        return v;
    }
    static std::atomic<long long>& euler_violations() {
        static std::atomic<long long> v{0};
        return v;
    }
};

namespace detail {

// Order along a line: by x unless the line is vertical.
inline bool position_less(const Point& p, const Point& q, bool by_x) {
    return by_x ? compare(p.x, q.x) < 0 : compare(p.y, q.y) < 0;
}

inline const Rational& position_of(const Point& p, bool by_x) { return by_x ? p.x : p.y; }

}  // namespace detail

/// Groups the chords by canonical line and unions overlapping or touching
/// collinear chords into maximal covered sub-segments, one LineSupport per
/// distinct line, sorted by line coefficients.
inline std::vector<LineSupport> merge_collinear(const ChordSet& chords) {
    std::unordered_map<Line, std::vector<const Segment*>, LineHash> by_line;
    by_line.reserve(chords.chords.size());
    for (const Segment& s : chords.chords) {
        by_line[line_through(s.a, s.b)].push_back(&s);
    }

    std::vector<LineSupport> supports;
    supports.reserve(by_line.size());
    for (auto& [line, segs] : by_line) {
        const bool by_x = !line.is_vertical();
        std::sort(segs.begin(), segs.end(), [&](const Segment* a, const Segment* b) {
            return detail::position_less(a->a, b->a, by_x);
        });
        LineSupport sup;
        sup.line = line;
        Point lo = segs.front()->a;
        Point hi = segs.front()->b;
        for (std::size_t i = 1; i < segs.size(); ++i) {
            const Segment& s = *segs[i];
            if (!detail::position_less(hi, s.a, by_x)) {
                if (detail::position_less(hi, s.b, by_x)) hi = s.b;
            } else {
                sup.covered_span.emplace_back(lo, hi);
                lo = s.a;
                hi = s.b;
            }
        }
        sup.covered_span.emplace_back(lo, hi);
        supports.push_back(std::move(sup));
    }
    std::sort(supports.begin(), supports.end(),
              [](const LineSupport& a, const LineSupport& b) { return a.line < b.line; });
    return supports;
}

/// n - e + c - 1 for the bounded cell count c; zero for every valid build.
inline long long euler_residual(const Arrangement& arr) {
    return static_cast<long long>(arr.node_count()) - static_cast<long long>(arr.edge_count()) +
           static_cast<long long>(arr.bounded_face_count()) - 1;
}

namespace detail {

// Node-collection output shared by both backends.
struct BuildData {
    std::vector<Point> points;                    // canonical (x, y) order
    std::vector<char> on_boundary;                // parallel to points
    std::vector<std::vector<int>> support_nodes;  // final ids, sorted along each line
    std::vector<std::array<int, 3>> edges;        // (u, v, support), u before v along the line
    // Forward direction of each support as small integers when the fast
    // backend ran; empty otherwise.
    std::vector<std::pair<long long, long long>> fast_dirs;
};

// ---------------------------------------------------------------------------
// Fast backend: exact rationals over int64 with int128 cross products.
// Eligible when all line coefficients are below 2^24 and all span endpoints
// have numerators/denominators below 2^31; the bounds keep every product in
// this file within int128.

struct FastRat {
    long long n = 0;
    long long d = 1;
};

inline FastRat reduce_fast(long long n, long long d) {
    long long g = std::gcd(n < 0 ? -n : n, d < 0 ? -d : d);
    if (g == 0) g = 1;
    n /= g;
    d /= g;
    if (d < 0) {
        n = -n;
        d = -d;
    }
    return {n, d};
}

inline int cmp_fast(const FastRat& a, const FastRat& b) {
    const __int128 lhs = static_cast<__int128>(a.n) * b.d;
    const __int128 rhs = static_cast<__int128>(b.n) * a.d;
    return lhs < rhs ? -1 : lhs > rhs ? 1 : 0;
}

struct FastPoint {
    FastRat x, y;
    bool operator==(const FastPoint& o) const {
        return x.n == o.x.n && x.d == o.x.d && y.n == o.y.n && y.d == o.y.d;
    }
};

inline bool fast_point_less(const FastPoint& a, const FastPoint& b) {
    const int cx = cmp_fast(a.x, b.x);
    if (cx != 0) return cx < 0;
    return cmp_fast(a.y, b.y) < 0;
}

struct FastPointHash {
    static std::uint64_t mix(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }
    std::size_t operator()(const FastPoint& p) const {
        std::uint64_t h = mix(static_cast<std::uint64_t>(p.x.n) + 0x9e3779b97f4a7c15ull);
        h = mix(h ^ static_cast<std::uint64_t>(p.x.d));
        h = mix(h ^ static_cast<std::uint64_t>(p.y.n));
        h = mix(h ^ static_cast<std::uint64_t>(p.y.d));
        return h;
    }
};

constexpr long long kFastCoeffBound = 1ll << 24;
constexpr long long kFastEndpointBound = 1ll << 31;
constexpr long long kFastCornerBound = 1ll << 20;

inline bool fits_fast(const Integer& z, long long bound, long long& out) {
    if (!mpz_fits_slong_p(z.get_mpz_t())) return false;
    const long long v = mpz_get_si(z.get_mpz_t());
    if (v <= -bound || v >= bound) return false;
    out = v;
    return true;
}

inline bool fits_fast(const Rational& r, long long bound, FastRat& out) {
    return fits_fast(r.get_num(), bound, out.n) && fits_fast(r.get_den(), bound, out.d);
}

struct FastSupport {
    long long a = 0, b = 0, c = 0;
    bool by_x = false;
    long long fwd_x = 0, fwd_y = 0;  // direction of increasing position
    std::vector<std::pair<FastRat, FastRat>> intervals;
    std::vector<std::pair<FastPoint, FastPoint>> interval_points;

    bool contains_position(const FastRat& pos) const {
        for (const auto& [lo, hi] : intervals) {
            if (cmp_fast(pos, hi) > 0) continue;
            return cmp_fast(pos, lo) >= 0;
        }
        return false;
    }
};

struct FastSide {
    long long a, b, c;          // side line, small integers
    FastRat lo_x, hi_x, lo_y, hi_y;  // bounding box of the side
};

inline Point to_point(const FastPoint& p) {
    Rational x, y;
    mpq_set_si(x.get_mpq_t(), p.x.n, static_cast<unsigned long>(p.x.d));
    mpq_set_si(y.get_mpq_t(), p.y.n, static_cast<unsigned long>(p.y.d));
    return Point(std::move(x), std::move(y));
}

inline bool collect_fast(const std::vector<LineSupport>& supports,
                         const std::vector<Point>& bounding_polygon, BuildData& data) {
    const std::size_t num_supports = supports.size();
    std::vector<FastSupport> fast(num_supports);
    for (std::size_t i = 0; i < num_supports; ++i) {
        FastSupport& fs = fast[i];
        if (!fits_fast(supports[i].line.a, kFastCoeffBound, fs.a) ||
            !fits_fast(supports[i].line.b, kFastCoeffBound, fs.b) ||
            !fits_fast(supports[i].line.c, kFastCoeffBound, fs.c))
            return false;
        fs.by_x = fs.b != 0;
        if (fs.b > 0) {
            fs.fwd_x = fs.b;
            fs.fwd_y = -fs.a;
        } else {
            fs.fwd_x = -fs.b;
            fs.fwd_y = fs.a;
        }
        for (const Segment& seg : supports[i].covered_span) {
            FastPoint pa, pb;
            if (!fits_fast(seg.a.x, kFastEndpointBound, pa.x) ||
                !fits_fast(seg.a.y, kFastEndpointBound, pa.y) ||
                !fits_fast(seg.b.x, kFastEndpointBound, pb.x) ||
                !fits_fast(seg.b.y, kFastEndpointBound, pb.y))
                return false;
            fs.intervals.emplace_back(fs.by_x ? pa.x : pa.y, fs.by_x ? pb.x : pb.y);
            fs.interval_points.emplace_back(pa, pb);
        }
    }

    std::vector<FastSide> sides;
    {
        const std::size_t c = bounding_polygon.size();
        for (std::size_t k = 0; k < c; ++k) {
            const Point& p = bounding_polygon[k];
            const Point& q = bounding_polygon[(k + 1) % c];
            const Line line = line_through(p, q);
            FastSide side;
            if (!fits_fast(line.a, kFastCornerBound, side.a) ||
                !fits_fast(line.b, kFastCornerBound, side.b) ||
                !fits_fast(line.c, kFastCornerBound, side.c))
                return false;
            FastRat px, py, qx, qy;
            if (!fits_fast(p.x, kFastCornerBound, px) || !fits_fast(p.y, kFastCornerBound, py) ||
                !fits_fast(q.x, kFastCornerBound, qx) || !fits_fast(q.y, kFastCornerBound, qy))
                return false;
            side.lo_x = cmp_fast(px, qx) <= 0 ? px : qx;
            side.hi_x = cmp_fast(px, qx) <= 0 ? qx : px;
            side.lo_y = cmp_fast(py, qy) <= 0 ? py : qy;
            side.hi_y = cmp_fast(py, qy) <= 0 ? qy : py;
            sides.push_back(side);
        }
    }

    // --- node collection --------------------------------------------------
    std::unordered_map<FastPoint, int, FastPointHash> index;
    index.reserve(1 << 12);
    std::vector<FastPoint> pts;
    std::vector<std::vector<int>> support_nodes(num_supports);

    auto intern = [&](const FastPoint& p) -> int {
        auto [it, inserted] = index.try_emplace(p, -1);
        if (inserted) {
            it->second = static_cast<int>(pts.size());
            pts.push_back(p);
        }
        return it->second;
    };

    for (std::size_t i = 0; i < num_supports; ++i) {
        for (const auto& [pa, pb] : fast[i].interval_points) {
            support_nodes[i].push_back(intern(pa));
            support_nodes[i].push_back(intern(pb));
        }
    }

    for (std::size_t i = 0; i < num_supports; ++i) {
        const FastSupport& si = fast[i];
        for (std::size_t j = i + 1; j < num_supports; ++j) {
            const FastSupport& sj = fast[j];
            const long long det = si.a * sj.b - sj.a * si.b;
            if (det == 0) continue;  // parallel
            const long long xn = si.c * sj.b - sj.c * si.b;
            const long long yn = si.a * sj.c - sj.a * si.c;
            FastPoint p{reduce_fast(xn, det), reduce_fast(yn, det)};
            if (!si.contains_position(si.by_x ? p.x : p.y)) continue;
            if (!sj.contains_position(sj.by_x ? p.x : p.y)) continue;
            const int id = intern(p);
            support_nodes[i].push_back(id);
            support_nodes[j].push_back(id);
        }
    }

    // --- canonical numbering, boundary flags, edges ------------------------
    const std::size_t num_nodes = pts.size();
    std::vector<int> order(num_nodes);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return fast_point_less(pts[a], pts[b]); });
    std::vector<int> remap(num_nodes);
    std::vector<FastPoint> sorted_pts(num_nodes);
    data.points.resize(num_nodes);
    data.on_boundary.assign(num_nodes, 0);
    for (std::size_t k = 0; k < num_nodes; ++k) {
        remap[order[k]] = static_cast<int>(k);
        sorted_pts[k] = pts[order[k]];
        data.points[k] = to_point(sorted_pts[k]);
    }

    for (std::size_t k = 0; k < num_nodes; ++k) {
        const FastPoint& p = sorted_pts[k];
        for (const FastSide& s : sides) {
            // On the side line: a*x + b*y == c, cross-multiplied.
            const __int128 lhs = static_cast<__int128>(s.a) * p.x.n * p.y.d +
                                 static_cast<__int128>(s.b) * p.y.n * p.x.d;
            const __int128 rhs = static_cast<__int128>(s.c) * p.x.d * p.y.d;
            if (lhs != rhs) continue;
            if (cmp_fast(p.x, s.lo_x) < 0 || cmp_fast(p.x, s.hi_x) > 0) continue;
            if (cmp_fast(p.y, s.lo_y) < 0 || cmp_fast(p.y, s.hi_y) > 0) continue;
            data.on_boundary[k] = 1;
            break;
        }
    }

    data.support_nodes.resize(num_supports);
    data.fast_dirs.resize(num_supports);
    for (std::size_t i = 0; i < num_supports; ++i) {
        data.fast_dirs[i] = {fast[i].fwd_x, fast[i].fwd_y};
        std::vector<int>& ids = support_nodes[i];
        for (int& id : ids) id = remap[id];
        const bool by_x = fast[i].by_x;
        std::sort(ids.begin(), ids.end(), [&](int a, int b) {
            return cmp_fast(by_x ? sorted_pts[a].x : sorted_pts[a].y,
                            by_x ? sorted_pts[b].x : sorted_pts[b].y) < 0;
        });
        ids.erase(std::unique(ids.begin(), ids.end()), ids.end());

        std::size_t at = 0;
        for (const auto& [lo, hi] : fast[i].intervals) {
            const std::size_t first = at;
            while (at < ids.size() &&
                   cmp_fast(by_x ? sorted_pts[ids[at]].x : sorted_pts[ids[at]].y, hi) <= 0) {
                ++at;
            }
            for (std::size_t k = first; k + 1 < at; ++k) {
                data.edges.push_back({ids[k], ids[k + 1], static_cast<int>(i)});
            }
        }
        if (at != ids.size())
            throw std::logic_error("build: node outside covered span on its line");
        data.support_nodes[i] = std::move(ids);
    }
    return true;
}

// ---------------------------------------------------------------------------
// Exact backend: the same algorithm over GMP rationals, for inputs with
// large coordinates (perturbed families).

struct ExactSupport {
    bool by_x = false;
    std::vector<std::pair<Rational, Rational>> intervals;

    bool contains_position(const Rational& pos) const {
        for (const auto& [lo, hi] : intervals) {
            if (compare(pos, hi) > 0) continue;
            return compare(pos, lo) >= 0;
        }
        return false;
    }
};

inline void collect_exact(const std::vector<LineSupport>& supports,
                          const std::vector<Point>& bounding_polygon, BuildData& data) {
    const std::size_t num_supports = supports.size();
    std::vector<ExactSupport> ex(num_supports);
    for (std::size_t i = 0; i < num_supports; ++i) {
        ex[i].by_x = !supports[i].line.is_vertical();
        for (const Segment& seg : supports[i].covered_span) {
            ex[i].intervals.emplace_back(position_of(seg.a, ex[i].by_x),
                                         position_of(seg.b, ex[i].by_x));
        }
    }

    std::unordered_map<Point, int, PointHash> index;
    index.reserve(1 << 10);
    std::vector<const Point*> pts;
    std::vector<std::vector<int>> support_nodes(num_supports);

    auto intern = [&](Point&& p) -> int {
        auto [it, inserted] = index.try_emplace(std::move(p), -1);
        if (inserted) {
            it->second = static_cast<int>(pts.size());
            pts.push_back(&it->first);
        }
        return it->second;
    };

    for (std::size_t i = 0; i < num_supports; ++i) {
        for (const Segment& seg : supports[i].covered_span) {
            support_nodes[i].push_back(intern(Point(seg.a)));
            support_nodes[i].push_back(intern(Point(seg.b)));
        }
    }

    {
        Integer det, t1, t2, xn, yn;
        Rational px, py;
        for (std::size_t i = 0; i < num_supports; ++i) {
            const Line& li = supports[i].line;
            for (std::size_t j = i + 1; j < num_supports; ++j) {
                const Line& lj = supports[j].line;
                mpz_mul(t1.get_mpz_t(), li.a.get_mpz_t(), lj.b.get_mpz_t());
                mpz_mul(t2.get_mpz_t(), lj.a.get_mpz_t(), li.b.get_mpz_t());
                mpz_sub(det.get_mpz_t(), t1.get_mpz_t(), t2.get_mpz_t());
                if (mpz_sgn(det.get_mpz_t()) == 0) continue;  // parallel

                mpz_mul(t1.get_mpz_t(), li.c.get_mpz_t(), lj.b.get_mpz_t());
                mpz_mul(t2.get_mpz_t(), lj.c.get_mpz_t(), li.b.get_mpz_t());
                mpz_sub(xn.get_mpz_t(), t1.get_mpz_t(), t2.get_mpz_t());
                mpz_mul(t1.get_mpz_t(), li.a.get_mpz_t(), lj.c.get_mpz_t());
                mpz_mul(t2.get_mpz_t(), lj.a.get_mpz_t(), li.c.get_mpz_t());
                mpz_sub(yn.get_mpz_t(), t1.get_mpz_t(), t2.get_mpz_t());

                mpq_set_num(px.get_mpq_t(), xn.get_mpz_t());
                mpq_set_den(px.get_mpq_t(), det.get_mpz_t());
                mpq_canonicalize(px.get_mpq_t());
                mpq_set_num(py.get_mpq_t(), yn.get_mpz_t());
                mpq_set_den(py.get_mpq_t(), det.get_mpz_t());
                mpq_canonicalize(py.get_mpq_t());

                if (!ex[i].contains_position(ex[i].by_x ? px : py)) continue;
                if (!ex[j].contains_position(ex[j].by_x ? px : py)) continue;

                const int id = intern(Point(px, py));
                support_nodes[i].push_back(id);
                support_nodes[j].push_back(id);
            }
        }
    }

    const std::size_t num_nodes = pts.size();
    std::vector<int> order(num_nodes);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) { return *pts[a] < *pts[b]; });
    std::vector<int> remap(num_nodes);
    data.points.resize(num_nodes);
    data.on_boundary.assign(num_nodes, 0);
    for (std::size_t k = 0; k < num_nodes; ++k) {
        remap[order[k]] = static_cast<int>(k);
        data.points[k] = *pts[order[k]];
    }

    {
        std::vector<Segment> poly_sides;
        const std::size_t c = bounding_polygon.size();
        for (std::size_t k = 0; k < c; ++k)
            poly_sides.emplace_back(bounding_polygon[k], bounding_polygon[(k + 1) % c]);
        for (std::size_t k = 0; k < num_nodes; ++k) {
            for (const Segment& s : poly_sides) {
                if (point_on_segment(data.points[k], s)) {
                    data.on_boundary[k] = 1;
                    break;
                }
            }
        }
    }

    data.support_nodes.resize(num_supports);
    for (std::size_t i = 0; i < num_supports; ++i) {
        std::vector<int>& ids = support_nodes[i];
        for (int& id : ids) id = remap[id];
        const bool by_x = ex[i].by_x;
        std::sort(ids.begin(), ids.end(), [&](int a, int b) {
            return position_less(data.points[a], data.points[b], by_x);
        });
        ids.erase(std::unique(ids.begin(), ids.end()), ids.end());

        std::size_t at = 0;
        for (const auto& [lo, hi] : ex[i].intervals) {
            const std::size_t first = at;
            while (at < ids.size() &&
                   compare(position_of(data.points[ids[at]], by_x), hi) <= 0) {
                ++at;
            }
            for (std::size_t k = first; k + 1 < at; ++k) {
                data.edges.push_back({ids[k], ids[k + 1], static_cast<int>(i)});
            }
        }
        if (at != ids.size())
            throw std::logic_error("build: node outside covered span on its line");
        data.support_nodes[i] = std::move(ids);
    }
}

}  // namespace detail

/// Builds the exact planar subdivision of a chord set.  Output is canonical:
/// nodes are numbered in increasing (x, y) order, supports in increasing
/// line-coefficient order, and faces in discovery order over half-edges, so
/// equal chord sets produce identical arrangements.
inline Arrangement build(const ChordSet& chords) {
    if (chords.chords.empty()) throw std::invalid_argument("build: empty chord set");
    if (chords.bounding_polygon.size() < 3)
        throw std::invalid_argument("build: bounding polygon required");

    Arrangement arr;
    arr.bounding_polygon = chords.bounding_polygon;
    arr.line_supports = merge_collinear(chords);
    const std::size_t num_supports = arr.line_supports.size();

    detail::BuildData data;
    if (!detail::collect_fast(arr.line_supports, arr.bounding_polygon, data)) {
        data = detail::BuildData{};
        detail::collect_exact(arr.line_supports, arr.bounding_polygon, data);
    }

    const std::size_t num_nodes = data.points.size();
    arr.nodes.resize(num_nodes);
    for (std::size_t k = 0; k < num_nodes; ++k) {
        arr.nodes[k].point = std::move(data.points[k]);
        arr.nodes[k].on_boundary = data.on_boundary[k] != 0;
    }
    for (std::size_t i = 0; i < num_supports; ++i) {
        arr.line_supports[i].nodes_on_line = std::move(data.support_nodes[i]);
        for (int id : arr.line_supports[i].nodes_on_line) arr.nodes[id].line_multiplicity += 1;
    }

    // --- half-edges: 2e runs forward along its support, 2e+1 back ----------
    arr.half_edges.reserve(2 * data.edges.size());
    for (const auto& [u, v, s] : data.edges) {
        HalfEdge fwd;
        fwd.origin = u;
        fwd.support = s;
        HalfEdge rev;
        rev.origin = v;
        rev.support = s;
        arr.half_edges.push_back(fwd);
        arr.half_edges.push_back(rev);
    }
    const std::size_t num_half = arr.half_edges.size();
    for (std::size_t h = 0; h < num_half; ++h) arr.nodes[arr.half_edges[h].origin].degree += 1;

    // --- rotation system ----------------------------------------------------
    std::vector<int> ring_offset(num_nodes + 1, 0);
    for (std::size_t h = 0; h < num_half; ++h) ring_offset[arr.half_edges[h].origin + 1]++;
    for (std::size_t v = 0; v < num_nodes; ++v) ring_offset[v + 1] += ring_offset[v];
    std::vector<int> ring(num_half);
    {
        std::vector<int> cursor(ring_offset.begin(), ring_offset.end() - 1);
        for (std::size_t h = 0; h < num_half; ++h) {
            ring[cursor[arr.half_edges[h].origin]++] = static_cast<int>(h);
        }
    }
    std::vector<int> pos_in_ring(num_half);
    if (!data.fast_dirs.empty()) {
        auto quadrant = [](long long x, long long y) {
            if (x > 0 && y >= 0) return 0;
            if (x <= 0 && y > 0) return 1;
            if (x < 0 && y <= 0) return 2;
            return 3;
        };
        auto dir_of = [&](int h) -> std::pair<long long, long long> {
            const auto& [fx, fy] = data.fast_dirs[static_cast<std::size_t>(arr.half_edges[h].support)];
            return (h & 1) == 0 ? std::pair{fx, fy} : std::pair{-fx, -fy};
        };
        for (std::size_t v = 0; v < num_nodes; ++v) {
            const int lo = ring_offset[v], hi = ring_offset[v + 1];
            std::sort(ring.begin() + lo, ring.begin() + hi, [&](int h1, int h2) {
                const auto [x1, y1] = dir_of(h1);
                const auto [x2, y2] = dir_of(h2);
                const int q1 = quadrant(x1, y1), q2 = quadrant(x2, y2);
                if (q1 != q2) return q1 < q2;
                return static_cast<__int128>(x1) * y2 > static_cast<__int128>(y1) * x2;
            });
            for (int k = lo; k < hi; ++k) pos_in_ring[ring[k]] = k;
        }
    } else {
        std::vector<Integer> fwd_x(num_supports), fwd_y(num_supports);
        std::vector<Integer> rev_x(num_supports), rev_y(num_supports);
        for (std::size_t i = 0; i < num_supports; ++i) {
            const Line& line = arr.line_supports[i].line;
            if (sign(line.b) > 0) {
                fwd_x[i] = line.b;
                fwd_y[i] = -line.a;
            } else {
                fwd_x[i] = -line.b;
                fwd_y[i] = line.a;
            }
            rev_x[i] = -fwd_x[i];
            rev_y[i] = -fwd_y[i];
        }
        auto dir_of = [&](int h) -> std::pair<const Integer*, const Integer*> {
            const std::size_t s = static_cast<std::size_t>(arr.half_edges[h].support);
            if ((h & 1) == 0) return {&fwd_x[s], &fwd_y[s]};
            return {&rev_x[s], &rev_y[s]};
        };
        for (std::size_t v = 0; v < num_nodes; ++v) {
            const int lo = ring_offset[v], hi = ring_offset[v + 1];
            std::sort(ring.begin() + lo, ring.begin() + hi, [&](int h1, int h2) {
                const auto [x1, y1] = dir_of(h1);
                const auto [x2, y2] = dir_of(h2);
                return compare_directions(*x1, *y1, *x2, *y2) == AngularOrder::Less;
            });
            for (int k = lo; k < hi; ++k) pos_in_ring[ring[k]] = k;
        }
    }

    for (std::size_t h = 0; h < num_half; ++h) {
        const int t = arr.twin(static_cast<int>(h));
        const int head = arr.half_edges[t].origin;
        const int lo = ring_offset[head], hi = ring_offset[head + 1];
        const int p = pos_in_ring[t];
        arr.half_edges[h].next_around_face = ring[p == lo ? hi - 1 : p - 1];
    }

    // --- faces ---------------------------------------------------------------
    std::vector<char> visited(num_half, 0);
    Rational term;
    for (std::size_t h0 = 0; h0 < num_half; ++h0) {
        if (visited[h0]) continue;
        FaceRecord face;
        Rational twice_area(0);
        int h = static_cast<int>(h0);
        do {
            visited[h] = 1;
            face.vertex_cycle.push_back(arr.half_edges[h].origin);
            const Point& p = arr.nodes[arr.half_edges[h].origin].point;
            const Point& q = arr.nodes[arr.half_edges[arr.twin(h)].origin].point;
            mpq_mul(term.get_mpq_t(), p.x.get_mpq_t(), q.y.get_mpq_t());
            mpq_add(twice_area.get_mpq_t(), twice_area.get_mpq_t(), term.get_mpq_t());
            mpq_mul(term.get_mpq_t(), q.x.get_mpq_t(), p.y.get_mpq_t());
            mpq_sub(twice_area.get_mpq_t(), twice_area.get_mpq_t(), term.get_mpq_t());
            h = arr.half_edges[h].next_around_face;
        } while (h != static_cast<int>(h0));
        face.side_count = static_cast<int>(face.vertex_cycle.size());
        face.bounded = sign(twice_area) > 0;
        if (face.bounded) {
            face.area = twice_area / 2;
            arr.bounded_faces_ += 1;
        } else {
            face.area = -twice_area / 2;
            if (arr.unbounded_face_ >= 0)
                throw std::logic_error("build: multiple unbounded faces (disconnected input?)");
            arr.unbounded_face_ = static_cast<int>(arr.faces.size());
        }
        arr.faces.push_back(std::move(face));
    }
    if (arr.unbounded_face_ < 0) throw std::logic_error("build: no unbounded face found");

    ArrangementStats::builds().fetch_add(1, std::memory_order_relaxed);
    if (euler_residual(arr) != 0) {
        ArrangementStats::euler_violations().fetch_add(1, std::memory_order_relaxed);
        throw std::logic_error("build: Euler residual nonzero for " + chords.spec.name());
    }
    return arr;
}

}  // namespace chordgrid
