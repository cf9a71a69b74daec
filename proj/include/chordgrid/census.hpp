#pragma once

// Statistics extracted from a built arrangement: global counts, node
// histograms, cell-side histograms, per-square tables and corner-square
// classification for the rectangle families.

#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "chordgrid/arrangement.hpp"

namespace chordgrid {

struct BasicCounts {
    long long nodes = 0;
    long long edges = 0;
    long long cells = 0;  // bounded faces only
    bool operator==(const BasicCounts&) const = default;
};

struct PerSquareRow {
    long long triangles = 0;
    long long quadrilaterals = 0;
    long long cells = 0;
    bool operator==(const PerSquareRow&) const = default;
};

struct CornerCensus {
    long long triangles = 0;
    long long quadrilaterals = 0;
    long long pentagons = 0;
    long long total = 0;
    bool operator==(const CornerCensus&) const = default;
};

struct CensusReport {
    BasicCounts counts;
    long long interior_nodes = 0;
    // For a boundary node, "degree" here counts the cells meeting at the
    // node (its edge count minus one), matching the convention of the node
    // tables this library reproduces.
    std::map<int, long long> boundary_degree_histogram;
    std::map<int, long long> multiplicity_histogram;  // interior nodes by distinct lines through
    std::map<int, long long> cell_side_histogram;
    std::optional<std::vector<PerSquareRow>> per_square;
    std::optional<CornerCensus> corner;
};

inline long long histogram_value(const std::map<int, long long>& hist, int key) {
    auto it = hist.find(key);
    return it == hist.end() ? 0 : it->second;
}

inline BasicCounts basic_counts(const Arrangement& arr) {
    return {static_cast<long long>(arr.node_count()), static_cast<long long>(arr.edge_count()),
            static_cast<long long>(arr.bounded_face_count())};
}

inline std::map<int, long long> multiplicity_histogram(const Arrangement& arr) {
    std::map<int, long long> hist;
    for (const NodeRecord& node : arr.nodes) {
        if (!node.on_boundary) hist[node.line_multiplicity] += 1;
    }
    return hist;
}

/// Number of interior nodes where exactly two lines cross.
inline long long simple_interior_count(const Arrangement& arr) {
    long long count = 0;
    for (const NodeRecord& node : arr.nodes) {
        if (!node.on_boundary && node.line_multiplicity == 2) count += 1;
    }
    return count;
}

inline std::map<int, long long> cell_side_histogram(const Arrangement& arr) {
    std::map<int, long long> hist;
    for (const FaceRecord& f : arr.faces) {
        if (f.bounded) hist[f.side_count] += 1;
    }
    return hist;
}

inline std::map<int, long long> boundary_degree_profile(const Arrangement& arr) {
    std::map<int, long long> hist;
    for (const NodeRecord& node : arr.nodes) {
        if (node.on_boundary) hist[node.degree - 1] += 1;
    }
    return hist;
}

namespace detail {

// Vertex-average x of a face, plus the face's exact x-range.
struct FaceXStats {
    Rational mean_x;
    Rational min_x;
    Rational max_x;
};

inline FaceXStats face_x_stats(const Arrangement& arr, const FaceRecord& f) {
    FaceXStats st;
    Rational sum(0);
    st.min_x = arr.nodes[f.vertex_cycle.front()].point.x;
    st.max_x = st.min_x;
    for (int v : f.vertex_cycle) {
        const Rational& x = arr.nodes[v].point.x;
        sum += x;
        if (compare(x, st.min_x) < 0) st.min_x = x;
        if (compare(x, st.max_x) > 0) st.max_x = x;
    }
    st.mean_x = sum / Rational(static_cast<unsigned long>(f.vertex_cycle.size()));
    return st;
}

}  // namespace detail

/// Distribution of cells over the unit-width vertical strips of a bc(1,n)
/// arrangement (row k covers k-1 <= x <= k).  Every vertical grid line is an
/// edge union, so each cell lies in exactly one strip; a straddling cell
/// signals an arrangement bug and throws.
inline std::vector<PerSquareRow> per_square_table(const Arrangement& arr) {
    if (arr.bounding_polygon.size() != 4)
        throw std::invalid_argument("per_square_table: rectangle families only");
    const Rational width = arr.bounding_polygon[1].x - arr.bounding_polygon[0].x;
    if (!is_integer(width) || sign(width) <= 0)
        throw std::invalid_argument("per_square_table: non-integral rectangle width");
    const long n = width.get_num().get_si();
    std::vector<PerSquareRow> rows(static_cast<std::size_t>(n));
    for (const FaceRecord& f : arr.faces) {
        if (!f.bounded) continue;
        const detail::FaceXStats st = detail::face_x_stats(arr, f);
        if (is_integer(st.mean_x))
            throw std::logic_error("per_square_table: cell centroid on a grid line");
        const long k = floor_of(st.mean_x).get_si();  // strip index k+1
        if (k < 0 || k >= n || compare(st.min_x, Rational(k)) < 0 ||
            compare(st.max_x, Rational(k + 1)) > 0)
            throw std::logic_error("per_square_table: cell straddles a strip boundary");
        PerSquareRow& row = rows[static_cast<std::size_t>(k)];
        if (f.side_count == 3) row.triangles += 1;
        if (f.side_count == 4) row.quadrilaterals += 1;
        row.cells += 1;
    }
    return rows;
}

/// Classification of the cells inside an axis-aligned box whose boundary
/// lines are all edge-supported.  Cells partially outside the box throw.
inline CornerCensus census_in_box(const Arrangement& arr, const Rational& x0, const Rational& x1,
                                  const Rational& y0, const Rational& y1) {
    CornerCensus out;
    for (const FaceRecord& f : arr.faces) {
        if (!f.bounded) continue;
        Rational sx(0), sy(0);
        Rational minx, maxx, miny, maxy;
        bool first = true;
        for (int v : f.vertex_cycle) {
            const Point& p = arr.nodes[v].point;
            sx += p.x;
            sy += p.y;
            if (first) {
                minx = maxx = p.x;
                miny = maxy = p.y;
                first = false;
            } else {
                if (compare(p.x, minx) < 0) minx = p.x;
                if (compare(p.x, maxx) > 0) maxx = p.x;
                if (compare(p.y, miny) < 0) miny = p.y;
                if (compare(p.y, maxy) > 0) maxy = p.y;
            }
        }
        const Rational k(static_cast<unsigned long>(f.vertex_cycle.size()));
        const Rational cx = sx / k, cy = sy / k;
        if (compare(cx, x0) <= 0 || compare(cx, x1) >= 0 || compare(cy, y0) <= 0 ||
            compare(cy, y1) >= 0)
            continue;
        if (compare(minx, x0) < 0 || compare(maxx, x1) > 0 || compare(miny, y0) < 0 ||
            compare(maxy, y1) > 0)
            throw std::logic_error("census_in_box: cell crosses the box boundary");
        out.total += 1;
        if (f.side_count == 3) out.triangles += 1;
        if (f.side_count == 4) out.quadrilaterals += 1;
        if (f.side_count == 5) out.pentagons += 1;
    }
    return out;
}

/// Cells in the top-left unit square of a bc(m,n)-style rectangle.
inline CornerCensus corner_square_census(const Arrangement& arr) {
    const Rational height = arr.bounding_polygon[2].y - arr.bounding_polygon[1].y;
    return census_in_box(arr, Rational(0), Rational(1), height - 1, height);
}

struct MultiplicityIdentities {
    Integer node_sum;        // sum v_c + 2n+2
    Integer edge_sum;        // sum c*v_c + n^2+4n+1
    Integer pair_sum;        // sum C(c,2)*v_c
    Integer expected_pairs;  // C(n+1,2)^2
    bool node_ok = false;
    bool edge_ok = false;
    bool pair_ok = false;
    bool all_ok() const { return node_ok && edge_ok && pair_ok; }
};

/// The three bc(1,n) bookkeeping identities tying the interior-node
/// multiplicity histogram to the node and edge counts.
inline MultiplicityIdentities multiplicity_identities(const std::map<int, long long>& v,
                                                      long long nodes, long long edges, int n) {
    MultiplicityIdentities out;
    Integer sum_v(0), sum_cv(0), sum_pairs(0);
    for (const auto& [c, count] : v) {
        const Integer k = to_integer(count);
        sum_v += k;
        sum_cv += Integer(c) * k;
        sum_pairs += binomial(static_cast<unsigned long>(c), 2) * k;
    }
    out.node_sum = sum_v + 2 * n + 2;
    out.edge_sum = sum_cv + Integer(n) * n + 4 * n + 1;
    out.pair_sum = sum_pairs;
    const Integer half = binomial(static_cast<unsigned long>(n) + 1, 2);
    out.expected_pairs = half * half;
    out.node_ok = out.node_sum == to_integer(nodes);
    out.edge_ok = out.edge_sum == to_integer(edges);
    out.pair_ok = out.pair_sum == out.expected_pairs;
    return out;
}

inline CensusReport census(const Arrangement& arr) {
    CensusReport rep;
    rep.counts = basic_counts(arr);
    rep.multiplicity_histogram = multiplicity_histogram(arr);
    rep.boundary_degree_histogram = boundary_degree_profile(arr);
    rep.cell_side_histogram = cell_side_histogram(arr);
    for (const auto& [c, count] : rep.multiplicity_histogram) rep.interior_nodes += count;
    return rep;
}

}  // namespace chordgrid
