#pragma once

// Family descriptions and the chord multiset a family instance produces.
// Generation itself lives in families.hpp; these types are shared with the
// arrangement builder.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "chordgrid/geom.hpp"

namespace chordgrid {

enum class Family {
    BoundaryChords,   // BC(m,n): every pair of boundary nodes of an m x n grid
    AllChords,        // AC(m,n): every pair of grid points
    LongChords,       // LC(m,n): AC chords extended to the grid boundary
    IsoscelesTriangle,  // IT(n): harmonic leg nodes on a right triangle
    BoundaryChordsGP,   // BC(m,n) with boundary nodes perturbed into general position
};

inline std::string family_name(Family f) {
    switch (f) {
        case Family::BoundaryChords: return "bc";
        case Family::AllChords: return "ac";
        case Family::LongChords: return "lc";
        case Family::IsoscelesTriangle: return "it";
        case Family::BoundaryChordsGP: return "bcgp";
    }
    return "?";
}

struct PerturbationSpec {
    std::uint64_t seed = 1;
    // Perturbations are rationals with this denominator; must be large enough
    // that no displaced node can cross a neighbor.
    long scale_denominator = 1000000;
};

struct FamilySpec {
    Family kind = Family::BoundaryChords;
    int m = 1;  // vertical subdivisions; ignored by IT
    int n = 1;  // horizontal subdivisions
    PerturbationSpec perturbation;  // used by BoundaryChordsGP only

    static FamilySpec bc(int m, int n) { return {Family::BoundaryChords, m, n, {}}; }
    static FamilySpec ac(int m, int n) { return {Family::AllChords, m, n, {}}; }
    static FamilySpec lc(int m, int n) { return {Family::LongChords, m, n, {}}; }
    static FamilySpec it(int n) { return {Family::IsoscelesTriangle, 1, n, {}}; }
    static FamilySpec bc_gp(int m, int n, std::uint64_t seed) {
        FamilySpec s{Family::BoundaryChordsGP, m, n, {}};
        s.perturbation.seed = seed;
        return s;
    }

    void validate() const {
        if (n < 1 || (kind != Family::IsoscelesTriangle && m < 1))
            throw std::invalid_argument("FamilySpec: m and n must be >= 1");
        if (kind == Family::BoundaryChordsGP && perturbation.scale_denominator < 1000000)
            throw std::invalid_argument("FamilySpec: perturbation scale denominator too small");
    }

    std::string name() const {
        if (kind == Family::IsoscelesTriangle) return "it(" + std::to_string(n) + ")";
        return family_name(kind) + "(" + std::to_string(m) + "," + std::to_string(n) + ")";
    }
};

// The drawn segments of one family instance, before arrangement construction.
struct ChordSet {
    FamilySpec spec;
    std::vector<Point> boundary_nodes;     // counterclockwise from the bottom-left vertex
    std::vector<Segment> chords;
    std::vector<Point> bounding_polygon;   // counterclockwise corner cycle
};

}  // namespace chordgrid
