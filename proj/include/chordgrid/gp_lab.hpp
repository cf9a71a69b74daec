#pragma once

// Experiments on general-position graphs: the counting-line cell count
// driven purely by boundary labels, and the four-point (convex /
// triangle-with-interior / degenerate) classifier over lattice grids.

#include <atomic>
#include <cstdint>
#include <stdexcept>
#include <thread>
#include <vector>

#include "chordgrid/arrangement.hpp"
#include "chordgrid/chordset.hpp"
#include "chordgrid/prng.hpp"

namespace chordgrid {

// Side bits for rectangle boundary nodes; corners carry two bits.
enum : unsigned { kSideTop = 1u, kSideRight = 2u, kSideBottom = 4u, kSideLeft = 8u };

struct BoundaryLabeling {
    struct Entry {
        Point point;
        int label = -1;
        unsigned side_mask = 0;
    };
    std::vector<Entry> entries;
};

/// Labels the 2(m+n) boundary nodes of a rectangle chord set: top-left
/// corner 0, then 1, 3, ..., 2n-1 along the top continuing 2n+1, ...,
/// 2(m+n)-1 down the right side, and 2, 4, ..., 2m down the left side
/// continuing 2m+2, ..., 2m+2n-2, 2(m+n)-1 along the bottom.  Labels
/// increase along every side.
inline BoundaryLabeling make_boundary_labeling(const ChordSet& cs) {
    if (cs.spec.kind != Family::BoundaryChords && cs.spec.kind != Family::BoundaryChordsGP)
        throw std::invalid_argument("make_boundary_labeling: rectangle families only");
    const int m = cs.spec.m, n = cs.spec.n;
    const Rational width(n), height(m), zero(0);

    BoundaryLabeling lab;
    lab.entries.reserve(cs.boundary_nodes.size());
    for (const Point& p : cs.boundary_nodes) {
        BoundaryLabeling::Entry e;
        e.point = p;
        if (compare(p.y, height) == 0) e.side_mask |= kSideTop;
        if (compare(p.y, zero) == 0) e.side_mask |= kSideBottom;
        if (compare(p.x, zero) == 0) e.side_mask |= kSideLeft;
        if (compare(p.x, width) == 0) e.side_mask |= kSideRight;
        if (e.side_mask == 0)
            throw std::invalid_argument("make_boundary_labeling: node not on the rectangle");
        lab.entries.push_back(std::move(e));
    }

    // Position of each node along its side, by sorting per side.
    auto assign = [&](unsigned side, bool by_x, bool ascending, auto label_of) {
        std::vector<std::size_t> on_side;
        for (std::size_t i = 0; i < lab.entries.size(); ++i) {
            if (lab.entries[i].side_mask & side) on_side.push_back(i);
        }
        std::sort(on_side.begin(), on_side.end(), [&](std::size_t a, std::size_t b) {
            const Point& pa = lab.entries[a].point;
            const Point& pb = lab.entries[b].point;
            const int c = by_x ? compare(pa.x, pb.x) : compare(pa.y, pb.y);
            return ascending ? c < 0 : c > 0;
        });
        for (std::size_t k = 0; k < on_side.size(); ++k) {
            lab.entries[on_side[k]].label = label_of(static_cast<int>(k));
        }
    };
    const int total = 2 * (m + n);
    // Left first, then bottom, then top/right so that the shared corners end
    // up with their top/right-chain labels where the chains agree (0 and
    // 2(m+n)-1 are assigned consistently by both chains).
    assign(kSideLeft, false, false, [&](int k) { return 2 * k; });          // 0, 2, ..., 2m
    assign(kSideBottom, true, true, [&](int k) { return 2 * m + 2 * k; });  // 2m, ..., 2m+2n-2, ...
    assign(kSideTop, true, true, [&](int k) { return k == 0 ? 0 : 2 * k - 1; });  // 0, 1, 3, ...
    assign(kSideRight, false, false, [&](int k) { return k == 0 ? 2 * n - 1 : 2 * n - 1 + 2 * k; });
    // Bottom-right corner belongs to both chains as the final label.
    for (BoundaryLabeling::Entry& e : lab.entries) {
        if ((e.side_mask & kSideBottom) && (e.side_mask & kSideRight)) e.label = total - 1;
    }

    std::vector<char> seen(static_cast<std::size_t>(total), 0);
    for (const BoundaryLabeling::Entry& e : lab.entries) {
        if (e.label < 0 || e.label >= total || seen[static_cast<std::size_t>(e.label)])
            throw std::logic_error("make_boundary_labeling: labels not a bijection");
        seen[static_cast<std::size_t>(e.label)] = 1;
    }
    return lab;
}

/// Counting-line cell count for a general-position arrangement.  Each
/// boundary node k contributes one cell per gap between consecutive
/// descending chord directions, where a chord descends iff it leads to a
/// larger label; nodes on a common side through k form a single direction.
/// Each interior node contributes exactly one cell.  Equals the bounded face
/// count; throws if some interior node lies on three or more lines.
inline long long freeman_cell_count(const Arrangement& arr, const BoundaryLabeling& labels) {
    long long boundary_nodes = 0;
    for (const NodeRecord& node : arr.nodes) {
        if (node.on_boundary) {
            boundary_nodes += 1;
        } else if (node.line_multiplicity >= 3) {
            throw std::invalid_argument("freeman_cell_count: interior node on >= 3 lines");
        }
    }
    if (boundary_nodes != static_cast<long long>(labels.entries.size()))
        throw std::invalid_argument("freeman_cell_count: labeling does not match arrangement");

    long long subtotal = 0;
    for (const BoundaryLabeling::Entry& e : labels.entries) {
        long long classes = 0;
        for (unsigned side : {kSideTop, kSideRight, kSideBottom, kSideLeft}) {
            if (!(e.side_mask & side)) continue;
            for (const BoundaryLabeling::Entry& other : labels.entries) {
                if (other.label > e.label && (other.side_mask & side)) {
                    classes += 1;
                    break;
                }
            }
        }
        for (const BoundaryLabeling::Entry& other : labels.entries) {
            if (other.label > e.label && (other.side_mask & e.side_mask) == 0) classes += 1;
        }
        if (classes > 0) subtotal += classes - 1;
    }

    const long long interior = static_cast<long long>(arr.node_count()) - boundary_nodes;
    return subtotal + interior;
}

// ---------------------------------------------------------------------------
// Four-point classification over a lattice grid.

struct QuadrupleTally {
    long long convex = 0;
    long long triangle_with_interior = 0;
    long long degenerate = 0;  // some three of the four points collinear
    long long total = 0;

    bool operator==(const QuadrupleTally&) const = default;

    // Fraction of non-degenerate quadruples in convex position; the discrete
    // analogue of the uniform-square convex-position probability.
    double convex_fraction() const {
        const long long nondeg = convex + triangle_with_interior;
        return nondeg == 0 ? 0.0 : static_cast<double>(convex) / static_cast<double>(nondeg);
    }
    double convex_fraction_of_total() const {
        return total == 0 ? 0.0 : static_cast<double>(convex) / static_cast<double>(total);
    }
};

namespace detail {

struct GridPoint {
    std::int64_t x;
    std::int64_t y;
};

inline int orient_i64(const GridPoint& a, const GridPoint& b, const GridPoint& c) {
    const std::int64_t v = (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
    return v > 0 ? 1 : v < 0 ? -1 : 0;
}

inline bool strictly_inside(const GridPoint& a, const GridPoint& b, const GridPoint& c,
                            const GridPoint& p) {
    const int o1 = orient_i64(a, b, p);
    const int o2 = orient_i64(b, c, p);
    const int o3 = orient_i64(c, a, p);
    return o1 != 0 && o1 == o2 && o2 == o3;
}

enum class QuadKind { Convex, TriangleWithInterior, Degenerate };

inline QuadKind classify_four(const GridPoint& p0, const GridPoint& p1, const GridPoint& p2,
                              const GridPoint& p3) {
    if (orient_i64(p0, p1, p2) == 0 || orient_i64(p0, p1, p3) == 0 ||
        orient_i64(p0, p2, p3) == 0 || orient_i64(p1, p2, p3) == 0)
        return QuadKind::Degenerate;
    if (strictly_inside(p1, p2, p3, p0) || strictly_inside(p0, p2, p3, p1) ||
        strictly_inside(p0, p1, p3, p2) || strictly_inside(p0, p1, p2, p3))
        return QuadKind::TriangleWithInterior;
    return QuadKind::Convex;
}

inline std::vector<GridPoint> lattice(int points_m, int points_n) {
    if (points_m < 1 || points_n < 1)
        throw std::invalid_argument("lattice: grid dimensions must be >= 1");
    std::vector<GridPoint> pts;
    pts.reserve(static_cast<std::size_t>(points_m) * points_n);
    for (int x = 0; x < points_m; ++x) {
        for (int y = 0; y < points_n; ++y) pts.push_back({x, y});
    }
    return pts;
}

}  // namespace detail

/// Exhaustively classifies all 4-subsets of a points_m x points_n lattice.
/// The index space is partitioned across threads and the tallies merged, so
/// the result is independent of the thread count.
inline QuadrupleTally classify_quadruples_exhaustive(int points_m, int points_n, int threads = 0,
                                                     std::size_t point_limit = 100) {
    const std::vector<detail::GridPoint> pts = detail::lattice(points_m, points_n);
    if (pts.size() > point_limit)
        throw std::invalid_argument("classify_quadruples_exhaustive: grid exceeds point limit");
    const std::size_t p = pts.size();
    if (threads <= 0) {
        const unsigned hc = std::thread::hardware_concurrency();
        threads = hc == 0 ? 1 : static_cast<int>(hc);
    }

    std::atomic<std::size_t> next_a{0};
    std::vector<QuadrupleTally> partial(static_cast<std::size_t>(threads));
    auto worker = [&](int w) {
        QuadrupleTally& t = partial[static_cast<std::size_t>(w)];
        for (;;) {
            const std::size_t a = next_a.fetch_add(1);
            if (a >= p) break;
            for (std::size_t b = a + 1; b < p; ++b) {
                for (std::size_t c = b + 1; c < p; ++c) {
                    for (std::size_t d = c + 1; d < p; ++d) {
                        switch (detail::classify_four(pts[a], pts[b], pts[c], pts[d])) {
                            case detail::QuadKind::Convex: t.convex++; break;
                            case detail::QuadKind::TriangleWithInterior:
                                t.triangle_with_interior++;
                                break;
                            case detail::QuadKind::Degenerate: t.degenerate++; break;
                        }
                        t.total++;
                    }
                }
            }
        }
    };
    if (threads == 1) {
        worker(0);
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < threads; ++w) pool.emplace_back(worker, w);
        for (std::thread& th : pool) th.join();
    }

    QuadrupleTally out;
    for (const QuadrupleTally& t : partial) {
        out.convex += t.convex;
        out.triangle_with_interior += t.triangle_with_interior;
        out.degenerate += t.degenerate;
        out.total += t.total;
    }
    return out;
}

/// Samples 4-subsets uniformly without replacement; deterministic under the
/// seed.
inline QuadrupleTally classify_quadruples_montecarlo(int points_m, int points_n,
                                                     long long samples, std::uint64_t seed) {
    if (samples < 1) throw std::invalid_argument("classify_quadruples_montecarlo: samples >= 1");
    const std::vector<detail::GridPoint> pts = detail::lattice(points_m, points_n);
    if (pts.size() < 4)
        throw std::invalid_argument("classify_quadruples_montecarlo: need at least 4 points");
    SplitMix64 rng(seed);
    QuadrupleTally t;
    std::size_t idx[4];
    for (long long s = 0; s < samples; ++s) {
        for (int k = 0; k < 4; ++k) {
            for (;;) {
                idx[k] = static_cast<std::size_t>(rng.next_below(pts.size()));
                bool dup = false;
                for (int j = 0; j < k; ++j) dup = dup || idx[j] == idx[k];
                if (!dup) break;
            }
        }
        switch (detail::classify_four(pts[idx[0]], pts[idx[1]], pts[idx[2]], pts[idx[3]])) {
            case detail::QuadKind::Convex: t.convex++; break;
            case detail::QuadKind::TriangleWithInterior: t.triangle_with_interior++; break;
            case detail::QuadKind::Degenerate: t.degenerate++; break;
        }
        t.total++;
    }
    return t;
}

}  // namespace chordgrid
