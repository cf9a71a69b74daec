#pragma once

// Closed-form evaluators for the counts the arrangement engine measures:
// node/edge/cell counts of bc(1,n), its triangle/quadrilateral split, the
// corner-square contents, and the general-position node and cell counts of
// the perturbed rectangle graphs.  All evaluation is in exact integer
// arithmetic; the few internal divisions are checked to be exact.

#include <numeric>
#include <stdexcept>
#include <vector>

#include "chordgrid/rational.hpp"

namespace chordgrid {
namespace formulas {

/// V(m,n,q) = sum over 1<=a<=m, 1<=b<=n with gcd(a,b)=q of (m+1-a)(n+1-b).
inline Integer V(int m, int n, int q) {
    if (m < 1 || n < 1 || q < 1) throw std::invalid_argument("V: arguments must be >= 1");
    Integer total(0);
    for (int a = 1; a <= m; ++a) {
        for (int b = 1; b <= n; ++b) {
            if (std::gcd(a, b) == q) total += Integer(m + 1 - a) * (n + 1 - b);
        }
    }
    return total;
}

struct Counts {
    Integer nodes;
    Integer edges;
    Integer cells;
};

/// Node, edge, and cell counts of bc(1,n):
/// N = 2(n+1) + V(n,n,1) - V(n,n,2), C = n^2 + 2n + V(n,n,1), E = N + C - 1.
inline Counts bc1_counts(int n) {
    if (n < 1) throw std::invalid_argument("bc1_counts: n must be >= 1");
    const Integer v1 = V(n, n, 1);
    const Integer v2 = V(n, n, 2);
    Counts c;
    c.nodes = 2 * (n + 1) + v1 - v2;
    c.cells = Integer(n) * n + 2 * n + v1;
    c.edges = c.nodes + c.cells - 1;
    return c;
}

/// Interior nodes of bc(1,n): V(n,n,1) - V(n,n,2).
inline Integer bc1_interior(int n) {
    if (n < 1) throw std::invalid_argument("bc1_interior: n must be >= 1");
    return V(n, n, 1) - V(n, n, 2);
}

struct TriangleQuad {
    Integer triangles;
    Integer quadrilaterals;
};

/// Split of the bc(1,n) cells into T = 2V(n,n,2) + 2n(n+1) triangles and
/// Q = V(n,n,1) - 2V(n,n,2) - n^2 quadrilaterals (every cell is one or the
/// other).
inline TriangleQuad bc1_triangle_quad(int n) {
    if (n < 1) throw std::invalid_argument("bc1_triangle_quad: n must be >= 1");
    const Integer v1 = V(n, n, 1);
    const Integer v2 = V(n, n, 2);
    return {2 * v2 + 2 * Integer(n) * (n + 1), v1 - 2 * v2 - Integer(n) * n};
}

struct CornerCells {
    Integer triangles;
    Integer quadrilaterals;
    Integer pentagons;
};

/// Contents of a corner unit square: for bc(1,n), n >= 2, (2n+3, 2n-3); for
/// bc(2,n), (12,2) at n=2, (15,6) plus one pentagon at n=3, and
/// (2n+9, 5n-8) for n >= 4.
///
/// The n=2 value is fixed by the global census: bc(2,2) has 8 quadrilaterals
/// among its 56 cells, and its four disjoint corner squares hold equal shares
/// of 14 cells each, so each corner holds 12 triangles and 2 quadrilaterals.
inline CornerCells corner_formulas(int m, int n) {
    if (m == 1 && n >= 2) return {Integer(2 * n + 3), Integer(2 * n - 3), Integer(0)};
    if (m == 2 && n == 2) return {Integer(12), Integer(2), Integer(0)};
    if (m == 2 && n == 3) return {Integer(15), Integer(6), Integer(1)};
    if (m == 2 && n >= 4) return {Integer(2 * n + 9), Integer(5 * n - 8), Integer(0)};
    throw std::invalid_argument("corner_formulas: no closed form for m=" + std::to_string(m) +
                                ", n=" + std::to_string(n));
}

/// Interior nodes of the general-position graph bcgp(m,n):
/// ((m+n)(m+n-1)^2(m+n-4) + 2mn(2m+n-1)(m+2n-1)) / 4.
inline Integer gp_interior(int m, int n) {
    if (m < 1 || n < 1) throw std::invalid_argument("gp_interior: m, n must be >= 1");
    const Integer s(m + n);
    const Integer term1 = s * (s - 1) * (s - 1) * (s - 4);
    const Integer term2 = 2 * Integer(m) * n * (2 * m + n - 1) * (m + 2 * n - 1);
    return exact_div(term1 + term2, 4);
}

/// Total nodes of bcgp(m,n): interior count plus the 2(m+n) boundary nodes.
inline Integer gp_nodes(int m, int n) { return gp_interior(m, n) + 2 * (m + n); }

/// gp_nodes on the diagonal, in the reduced form n(17n^3 - 30n^2 + 19n + 4)/2.
inline Integer gp_nodes_diag(int n) {
    if (n < 1) throw std::invalid_argument("gp_nodes_diag: n must be >= 1");
    const Integer z(n);
    return exact_div(z * (17 * z * z * z - 30 * z * z + 19 * z + 4), 2);
}

/// Cells of bcgp(m,n):
/// ((m-1)^2(m-2)^2 + (n-1)^2(n-2)^2)/4 + 2mn(m+n-3/2)^2 + 9mn/2 - 1,
/// expanded to the integral form 2mn(m+n)^2 - 6mn(m+n) + 9mn.
inline Integer gp_cells(int m, int n) {
    if (m < 1 || n < 1) throw std::invalid_argument("gp_cells: m, n must be >= 1");
    const Integer a = Integer(m - 1) * (m - 1) * (m - 2) * (m - 2);
    const Integer b = Integer(n - 1) * (n - 1) * (n - 2) * (n - 2);
    const Integer mn = Integer(m) * n;
    const Integer s(m + n);
    return exact_div(a + b, 4) + 2 * mn * s * s - 6 * mn * s + 9 * mn - 1;
}

/// Asymptotic count of ac(n,n) nodes with multiplicity: (25/36) C((n+1)^2, 4).
inline Rational ac_multiplicity_estimate(int n) {
    if (n < 1) throw std::invalid_argument("ac_multiplicity_estimate: n must be >= 1");
    const unsigned long points = static_cast<unsigned long>(n + 1) * (n + 1);
    return make_rational(25 * binomial(points, 4), Integer(36));
}

/// Upper bound on the lc(n,n) node count: 3 C((n+1)^2, 4).
inline Integer lc_node_bound(int n) {
    if (n < 1) throw std::invalid_argument("lc_node_bound: n must be >= 1");
    const unsigned long points = static_cast<unsigned long>(n + 1) * (n + 1);
    return 3 * binomial(points, 4);
}

/// Power-series coefficients of the conjectured generating function for the
/// third-square triangle counts t_{n,3} of bc(1,n):
///
///   x^3 (9 + 15x + 5x^2 - 2x^3 - 13x^4 - 11x^5 - 9x^6 + 2x^7 + 8x^8
///        - 4x^10 + 4x^12) / ((1-x)(1-x^2)(1-x^3))
///
/// computed by exact long division.  Entry k of the result is the
/// coefficient of x^(k+1), i.e. the predicted t_{n,3} for n = k+1 (zero for
/// n < 3).
inline std::vector<Integer> gf_column3_coefficients(int count) {
    if (count < 1) throw std::invalid_argument("gf_column3_coefficients: count must be >= 1");
    // Numerator shifted by x^3; denominator expands to
    // 1 - x - x^2 + x^4 + x^5 - x^6, giving the recurrence
    // c[k] = num[k] + c[k-1] + c[k-2] - c[k-4] - c[k-5] + c[k-6].
    static const long numerator[] = {9, 15, 5, -2, -13, -11, -9, 2, 8, 0, -4, 0, 4};
    std::vector<Integer> c(static_cast<std::size_t>(count) + 1, Integer(0));
    for (int k = 1; k <= count; ++k) {
        Integer value(0);
        if (k >= 3 && k - 3 < static_cast<int>(std::size(numerator))) value = numerator[k - 3];
        if (k >= 1) value += c[k - 1];
        if (k >= 2) value += c[k - 2];
        if (k >= 4) value -= c[k - 4];
        if (k >= 5) value -= c[k - 5];
        if (k >= 6) value += c[k - 6];
        c[k] = value;
    }
    return std::vector<Integer>(c.begin() + 1, c.end());
}

}  // namespace formulas
}  // namespace chordgrid
