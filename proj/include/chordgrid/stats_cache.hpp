#pragma once

// Process-wide memo of per-instance statistics.  Arrangements for the larger
// instances are expensive to build and huge to keep, so each one is built
// once, summarized, and discarded; every consumer (tables, sequence
// bindings, the acceptance suite) shares the summaries.

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>

#include "chordgrid/census.hpp"
#include "chordgrid/families.hpp"

namespace chordgrid {

struct InstanceStats {
    BasicCounts counts;
    long long interior_nodes = 0;
    std::map<int, long long> multiplicity_histogram;
    std::map<int, long long> cell_side_histogram;
    std::map<int, long long> boundary_degree_histogram;
    std::optional<std::vector<PerSquareRow>> per_square;  // bc(1,n) strips
    std::optional<CornerCensus> corner;                   // top-left unit square, bc m<=2, n>=2
};

inline InstanceStats summarize(const Arrangement& arr, const FamilySpec& spec) {
    InstanceStats st;
    const CensusReport rep = census(arr);
    st.counts = rep.counts;
    st.interior_nodes = rep.interior_nodes;
    st.multiplicity_histogram = rep.multiplicity_histogram;
    st.cell_side_histogram = rep.cell_side_histogram;
    st.boundary_degree_histogram = rep.boundary_degree_histogram;
    if (spec.kind == Family::BoundaryChords && spec.m == 1) st.per_square = per_square_table(arr);
    if (spec.kind == Family::BoundaryChords && spec.m <= 2 && spec.n >= 2)
        st.corner = corner_square_census(arr);
    return st;
}

/// Builds (or recalls) the statistics of one family instance.
inline const InstanceStats& instance_stats(const FamilySpec& spec) {
    static std::mutex mu;
    static std::map<std::string, std::unique_ptr<InstanceStats>> memo;
    std::string key = spec.name();
    if (spec.kind == Family::BoundaryChordsGP) {
        key += "#" + std::to_string(spec.perturbation.seed) + "/" +
               std::to_string(spec.perturbation.scale_denominator);
    }
    std::lock_guard<std::mutex> lock(mu);
    auto it = memo.find(key);
    if (it == memo.end()) {
        const ChordSet cs = generate(spec);
        const Arrangement arr = build(cs);
        it = memo.emplace(key, std::make_unique<InstanceStats>(summarize(arr, spec))).first;
    }
    return *it->second;
}

}  // namespace chordgrid
