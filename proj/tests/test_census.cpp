#include <catch2/catch_amalgamated.hpp>

#include <map>

#include "chordgrid/census.hpp"
#include "chordgrid/families.hpp"
#include "chordgrid/stats_cache.hpp"

using namespace chordgrid;

namespace {

using Hist = std::map<int, long long>;

const InstanceStats& bc1(int n) { return instance_stats(FamilySpec::bc(1, n)); }

}  // namespace

TEST_CASE("basic counts match the reference tables") {
    CHECK(bc1(5).counts == BasicCounts{159, 372, 214});
    const InstanceStats& bc77 = instance_stats(FamilySpec::bc(7, 7));
    CHECK(bc77.counts.nodes == 12293);
    CHECK(bc77.counts.cells == 13968);
    const InstanceStats& lc23 = instance_stats(FamilySpec::lc(2, 3));
    CHECK(lc23.counts.nodes == 129);
    CHECK(lc23.counts.cells == 192);
}

TEST_CASE("interior-node multiplicity histograms") {
    CHECK(bc1(1).multiplicity_histogram == Hist{{2, 1}});
    CHECK(bc1(3).multiplicity_histogram == Hist{{2, 24}, {3, 2}, {4, 1}});
    CHECK(bc1(10).multiplicity_histogram ==
          Hist{{2, 1334}, {3, 198}, {4, 62}, {5, 20}, {6, 14}, {7, 2}, {8, 2}, {9, 2}, {10, 2},
               {11, 1}});
}

TEST_CASE("simple interior counts") {
    const Arrangement a1 = build(generate(FamilySpec::bc(1, 1)));
    CHECK(simple_interior_count(a1) == 1);
    const Arrangement a5 = build(generate(FamilySpec::bc(1, 5)));
    CHECK(simple_interior_count(a5) == 124);
    const Arrangement a10 = build(generate(FamilySpec::bc(1, 10)));
    CHECK(simple_interior_count(a10) == 1334);
}

TEST_CASE("cell-side histograms of the two-row graphs") {
    CHECK(instance_stats(FamilySpec::bc(2, 1)).cell_side_histogram == Hist{{3, 14}, {4, 2}});
    CHECK(instance_stats(FamilySpec::bc(2, 4)).cell_side_histogram ==
          Hist{{3, 192}, {4, 92}, {5, 12}});
    CHECK(instance_stats(FamilySpec::bc(2, 9)).cell_side_histogram ==
          Hist{{3, 1634}, {4, 1314}, {5, 112}, {7, 4}, {8, 2}});
}

TEST_CASE("one-row cells are always triangles or quadrilaterals") {
    for (int n = 1; n <= 12; ++n) {
        for (const auto& [sides, count] : bc1(n).cell_side_histogram) {
            CAPTURE(n, sides, count);
            CHECK((sides == 3 || sides == 4));
        }
    }
}

TEST_CASE("boundary nodes meet the expected number of cells") {
    CHECK(bc1(2).boundary_degree_histogram == Hist{{3, 4}, {4, 2}});
    CHECK(bc1(5).boundary_degree_histogram == Hist{{6, 4}, {7, 8}});
    CHECK(bc1(10).boundary_degree_histogram == Hist{{11, 4}, {12, 18}});
}

TEST_CASE("per-square tables") {
    const auto& rows3 = *bc1(3).per_square;
    REQUIRE(rows3.size() == 3);
    CHECK(rows3[0] == PerSquareRow{9, 3, 12});
    CHECK(rows3[1] == PerSquareRow{14, 8, 22});
    CHECK(rows3[2] == PerSquareRow{9, 3, 12});

    const auto& rows1 = *bc1(1).per_square;
    REQUIRE(rows1.size() == 1);
    CHECK(rows1[0] == PerSquareRow{4, 0, 4});

    const auto& rows10 = *bc1(10).per_square;
    CHECK(rows10[4] == PerSquareRow{216, 180, 396});

    // Row sums against the global census; palindromic symmetry in k.
    for (int n = 1; n <= 12; ++n) {
        const InstanceStats& st = bc1(n);
        long long cells = 0;
        const auto& rows = *st.per_square;
        for (std::size_t k = 0; k < rows.size(); ++k) {
            cells += rows[k].cells;
            CHECK(rows[k].triangles + rows[k].quadrilaterals == rows[k].cells);
            CHECK(rows[k].triangles == rows[rows.size() - 1 - k].triangles);
            CHECK(rows[k].quadrilaterals == rows[rows.size() - 1 - k].quadrilaterals);
        }
        CHECK(cells == st.counts.cells);
    }
}

TEST_CASE("corner-square contents") {
    CHECK(*instance_stats(FamilySpec::bc(1, 6)).corner == CornerCensus{15, 9, 0, 24});
    CHECK(*instance_stats(FamilySpec::bc(2, 3)).corner == CornerCensus{15, 6, 1, 22});
    CHECK(*instance_stats(FamilySpec::bc(2, 7)).corner == CornerCensus{23, 27, 0, 50});
}

TEST_CASE("all four corner squares agree") {
    const Arrangement arr = build(generate(FamilySpec::bc(2, 5)));
    const Rational w(5), h(2), one(1), zero(0);
    const CornerCensus tl = census_in_box(arr, zero, one, h - 1, h);
    const CornerCensus tr = census_in_box(arr, w - 1, w, h - 1, h);
    const CornerCensus bl = census_in_box(arr, zero, one, zero, one);
    const CornerCensus br = census_in_box(arr, w - 1, w, zero, one);
    CHECK(tl == tr);
    CHECK(tl == bl);
    CHECK(tl == br);
    CHECK(tl == *instance_stats(FamilySpec::bc(2, 5)).corner);
}

TEST_CASE("multiplicity identities tie the histogram to the global counts") {
    {
        const InstanceStats& st = bc1(3);
        const MultiplicityIdentities id =
            multiplicity_identities(st.multiplicity_histogram, st.counts.nodes, st.counts.edges, 3);
        CHECK(id.node_sum == 35);
        CHECK(id.edge_sum == 80);
        CHECK(id.pair_sum == 36);
        CHECK(id.all_ok());
    }
    {
        const InstanceStats& st = bc1(1);
        const MultiplicityIdentities id =
            multiplicity_identities(st.multiplicity_histogram, st.counts.nodes, st.counts.edges, 1);
        CHECK(id.node_sum == 5);
        CHECK(id.edge_sum == 8);
        CHECK(id.pair_sum == 1);
        CHECK(id.all_ok());
    }
    {
        // The crossing-pair identity sums to C(11,2)^2 = 3025 at n = 10.
        const InstanceStats& st = bc1(10);
        const MultiplicityIdentities id = multiplicity_identities(
            st.multiplicity_histogram, st.counts.nodes, st.counts.edges, 10);
        CHECK(id.pair_sum == 3025);
        CHECK(id.all_ok());
    }
}

TEST_CASE("census consistency invariants") {
    const Arrangement arr = build(generate(FamilySpec::bc(2, 3)));
    const CensusReport rep = census(arr);
    long long boundary = 0;
    for (const auto& [d, count] : rep.boundary_degree_histogram) boundary += count;
    CHECK(rep.interior_nodes + boundary == rep.counts.nodes);
    long long cells = 0;
    for (const auto& [k, count] : rep.cell_side_histogram) cells += count;
    CHECK(cells == rep.counts.cells);
}

TEST_CASE("per-square tally rejects non-rectangular input") {
    const Arrangement it = build(generate(FamilySpec::it(2)));
    CHECK_THROWS_AS(per_square_table(it), std::invalid_argument);
}
