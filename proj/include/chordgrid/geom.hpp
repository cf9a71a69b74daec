#pragma once

// Exact planar primitives: rational points, canonically oriented segments,
// integer line coefficients, and the predicates the arrangement engine is
// built on (orientation sign, trigonometric-free angular comparison, exact
// segment intersection, shoelace area).

#include <optional>
#include <stdexcept>
#include <variant>
#include <vector>

#include "chordgrid/rational.hpp"

namespace chordgrid {

struct Point {
    Rational x;
    Rational y;

    Point() = default;
    Point(Rational px, Rational py) : x(std::move(px)), y(std::move(py)) {}
    Point(long px, long py) : x(px), y(py) {}

    bool operator==(const Point& o) const { return compare(x, o.x) == 0 && compare(y, o.y) == 0; }
    bool operator!=(const Point& o) const { return !(*this == o); }
    bool operator<(const Point& o) const {
        const int cx = compare(x, o.x);
        if (cx != 0) return cx < 0;
        return compare(y, o.y) < 0;
    }
};

struct PointHash {
    std::size_t operator()(const Point& p) const {
        std::size_t h = hash_rational(p.x);
        h ^= hash_rational(p.y) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
        return h;
    }
};

inline std::string to_string(const Point& p) {
    return "(" + to_string(p.x) + ", " + to_string(p.y) + ")";
}

// Closed segment with endpoints stored in increasing point order, so equal
// chords compare equal regardless of construction order.
struct Segment {
    Point a;
    Point b;

    Segment(Point p, Point q) {
        if (p == q) throw std::invalid_argument("Segment: degenerate endpoints " + to_string(p));
        if (q < p) std::swap(p, q);
        a = std::move(p);
        b = std::move(q);
    }

    bool operator==(const Segment& o) const { return a == o.a && b == o.b; }
    bool operator<(const Segment& o) const { return a < o.a || (a == o.a && b < o.b); }
};

/// Sign of the cross product (q-p) x (r-p): +1 for a counterclockwise turn,
/// -1 for clockwise, 0 iff the three points are collinear.
inline int orientation(const Point& p, const Point& q, const Point& r) {
    const Rational lhs = (q.x - p.x) * (r.y - p.y);
    const Rational rhs = (q.y - p.y) * (r.x - p.x);
    return compare(lhs, rhs);
}

enum class AngularOrder { Less, Equal, Greater };

namespace detail {

// Half-open quadrant index of a nonzero direction, counterclockwise from the
// positive x-axis: the +x axis itself is in quadrant 0, +y in 1, -x in 2,
// -y in 3.
inline int quadrant(int sx, int sy) {
    if (sx > 0 && sy >= 0) return 0;
    if (sx <= 0 && sy > 0) return 1;
    if (sx < 0 && sy <= 0) return 2;
    return 3;
}

}  // namespace detail

/// Compares the counterclockwise angles of two nonzero integer directions
/// measured from the positive x-axis.  Decided by quadrant, then by exact
/// cross product; Equal means the directions lie on the same ray.
inline AngularOrder compare_directions(const Integer& ax, const Integer& ay, const Integer& bx,
                                       const Integer& by) {
    const int qa = detail::quadrant(sign(ax), sign(ay));
    const int qb = detail::quadrant(sign(bx), sign(by));
    if (qa != qb) return qa < qb ? AngularOrder::Less : AngularOrder::Greater;
    const int cross = cmp(Integer(ax * by), Integer(ay * bx));
    if (cross > 0) return AngularOrder::Less;
    if (cross < 0) return AngularOrder::Greater;
    return AngularOrder::Equal;
}

/// Angular comparison of the directions (a-center) and (b-center).
/// Requires a != center and b != center.
inline AngularOrder angular_order(const Point& center, const Point& a, const Point& b) {
    if (a == center || b == center)
        throw std::invalid_argument("angular_order: direction point equals center");
    const Rational dax = a.x - center.x, day = a.y - center.y;
    const Rational dbx = b.x - center.x, dby = b.y - center.y;
    const int qa = detail::quadrant(sign(dax), sign(day));
    const int qb = detail::quadrant(sign(dbx), sign(dby));
    if (qa != qb) return qa < qb ? AngularOrder::Less : AngularOrder::Greater;
    const int cross = compare(dax * dby, day * dbx);
    if (cross > 0) return AngularOrder::Less;
    if (cross < 0) return AngularOrder::Greater;
    return AngularOrder::Equal;
}

// Line a*x + b*y = c in canonical form: integer coefficients with
// gcd(|a|,|b|,|c|) = 1 and (a > 0 or (a = 0 and b > 0)).  Canonical
// coefficients are the grouping key for collinearity.
struct Line {
    Integer a;
    Integer b;
    Integer c;

    bool operator==(const Line& o) const { return a == o.a && b == o.b && c == o.c; }
    bool operator<(const Line& o) const {
        if (int s = cmp(a, o.a); s != 0) return s < 0;
        if (int s = cmp(b, o.b); s != 0) return s < 0;
        return cmp(c, o.c) < 0;
    }

    bool is_horizontal() const { return sign(a) == 0; }
    bool is_vertical() const { return sign(b) == 0; }

    bool contains(const Point& p) const { return compare(a * p.x + b * p.y, Rational(c)) == 0; }
};

struct LineHash {
    std::size_t operator()(const Line& l) const {
        std::size_t h = hash_integer(l.a);
        h ^= hash_integer(l.b) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
        h ^= hash_integer(l.c) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
        return h;
    }
};

inline Line line_through(const Point& p, const Point& q) {
    if (p == q) throw std::invalid_argument("line_through: coincident points");
    // Clear denominators of a = qy-py, b = px-qx, c = a*px + b*py.
    const Rational ra = q.y - p.y;
    const Rational rb = p.x - q.x;
    Integer a = ra.get_num() * rb.get_den();
    Integer b = rb.get_num() * ra.get_den();
    Integer c = a * p.x.get_num() * p.y.get_den() + b * p.y.get_num() * p.x.get_den();
    a *= p.x.get_den() * p.y.get_den();
    b *= p.x.get_den() * p.y.get_den();
    // The common denominator multiplications above keep a, b, c integral;
    // reduce to canonical form.
    Integer g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    a /= g;
    b /= g;
    c /= g;
    if (sign(a) < 0 || (sign(a) == 0 && sign(b) < 0)) {
        a = -a;
        b = -b;
        c = -c;
    }
    return Line{std::move(a), std::move(b), std::move(c)};
}

inline bool parallel(const Line& l1, const Line& l2) { return l1.a * l2.b == l2.a * l1.b; }

inline std::optional<Point> line_intersection(const Line& l1, const Line& l2) {
    const Integer det = l1.a * l2.b - l2.a * l1.b;
    if (sign(det) == 0) return std::nullopt;
    return Point(make_rational(l1.c * l2.b - l2.c * l1.b, det),
                 make_rational(l1.a * l2.c - l2.a * l1.c, det));
}

// Assumes p collinear with s; closed containment by bounding-box comparison.
inline bool collinear_point_in_segment(const Point& p, const Segment& s) {
    // Endpoints are stored with a <= b lexicographically, but the y-range of
    // a general segment is not ordered, so compare both coordinates.
    if (compare(p.x, s.a.x) < 0 || compare(p.x, s.b.x) > 0) return false;
    const int cy = compare(s.a.y, s.b.y);
    const Rational& ylo = cy <= 0 ? s.a.y : s.b.y;
    const Rational& yhi = cy <= 0 ? s.b.y : s.a.y;
    return compare(p.y, ylo) >= 0 && compare(p.y, yhi) <= 0;
}

inline bool point_on_segment(const Point& p, const Segment& s) {
    if (orientation(s.a, s.b, p) != 0) return false;
    return collinear_point_in_segment(p, s);
}

struct EmptyIntersection {};
using SegmentIntersection = std::variant<EmptyIntersection, Point, Segment>;

/// Exact classification of the intersection of two closed segments: empty, a
/// single point (including shared endpoints), or a nondegenerate collinear
/// overlap segment.
inline SegmentIntersection segment_intersection(const Segment& s1, const Segment& s2) {
    const Line l1 = line_through(s1.a, s1.b);
    const Line l2 = line_through(s2.a, s2.b);
    if (l1 == l2) {
        // Collinear: overlap of the two point-ordered intervals.
        const Point& lo = s1.a < s2.a ? s2.a : s1.a;
        const Point& hi = s1.b < s2.b ? s1.b : s2.b;
        if (hi < lo) return EmptyIntersection{};
        if (lo == hi) return lo;
        return Segment(lo, hi);
    }
    if (parallel(l1, l2)) return EmptyIntersection{};
    // Distinct non-parallel lines meet once, so Overlap cannot arise here.
    const Point p = *line_intersection(l1, l2);
    if (collinear_point_in_segment(p, s1) && collinear_point_in_segment(p, s2)) return p;
    return EmptyIntersection{};
}

/// Exact shoelace area and vertex-average centroid of a simple
/// counterclockwise polygon.  Throws if fewer than 3 points or if the signed
/// area is not positive.
inline std::pair<Rational, Point> polygon_area_centroid(const std::vector<Point>& cycle) {
    if (cycle.size() < 3) throw std::invalid_argument("polygon_area_centroid: < 3 points");
    Rational twice_area(0);
    Rational sx(0), sy(0);
    for (std::size_t i = 0; i < cycle.size(); ++i) {
        const Point& p = cycle[i];
        const Point& q = cycle[(i + 1) % cycle.size()];
        twice_area += p.x * q.y - q.x * p.y;
        sx += p.x;
        sy += p.y;
    }
    if (sign(twice_area) <= 0)
        throw std::invalid_argument("polygon_area_centroid: not a positive-area ccw cycle");
    const Rational k(static_cast<unsigned long>(cycle.size()));
    return {twice_area / 2, Point(sx / k, sy / k)};
}

}  // namespace chordgrid
