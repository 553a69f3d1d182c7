#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "floer/gf2.hpp"

namespace floer::grid {
struct GridDiagram;
}

namespace floer::diagram {

// An attaching curve; family is 'a' (alpha), 'b' (beta) or 'd' (an auxiliary curve
// such as the twisting curve). points lists intersection points in curve order;
// arc j runs from points[j] to points[j+1]. A curve without points is one loop arc.
struct Curve {
    std::string name;
    char family = 'a';
    std::vector<int> points;
};

struct Point {
    std::string name;
    int curve[2] = {-1, -1}; // curve indices
    int pos[2] = {-1, -1};   // position along each curve
};

// Oriented arc occurrence; the region sits on the left of the arc traversed in this direction.
struct Dart {
    int curve = 0;
    int arc = 0;
    int sign = 1;
    bool operator==(const Dart&) const = default;
    auto operator<=>(const Dart&) const = default;
};

struct Region {
    std::vector<std::vector<Dart>> components; // each a cyclic boundary word
    int euler = 1;                             // Euler characteristic of the region
};

// A (multi-)pointed Heegaard diagram presented as a cell complex.
struct CombinatorialDiagram {
    int genus = 0;
    std::vector<Curve> curves;
    std::vector<Point> points;
    std::vector<Region> regions;
    std::vector<int> z, w; // region indices of the basepoints

    int curve_index(const std::string& name) const; // -1 if absent
    int arc_count(int curve) const;
    // endpoints of an arc as point indices (-1, -1 for a loop arc)
    std::pair<int, int> arc_ends(int curve, int arc) const;
    std::vector<int> curves_of(char family) const;
};

// Parses and validates; InputError for malformed data, DomainError("InvalidDiagram") for
// inconsistent cell data (corner counts, Euler characteristic, curve counts).
CombinatorialDiagram diagram_from_json(const nlohmann::json& j);
nlohmann::json to_json(const CombinatorialDiagram& d);
void validate(const CombinatorialDiagram& d);

// Local structure derived from the boundary words.
struct Corner {
    int region;
    int point;
    // side of the point on each of its two curves: 0 = arc before the point, 1 = arc after
    int side[2];
};

struct Topology {
    std::vector<std::pair<int, int>> arc_offset;  // per curve: first global arc id, count
    std::vector<int> left, right;                 // region on each side of every global arc
    std::vector<Corner> corners;                  // four per point
    std::vector<std::array<int, 4>> quadrant;     // per point: region at side pair (s0 + 2 s1)
    int global_arc(int curve, int arc) const { return arc_offset[static_cast<std::size_t>(curve)].first + arc; }
};

Topology topology(const CombinatorialDiagram& d);

using Domain = std::vector<long long>; // multiplicity per region

long long point_multiplicity(const CombinatorialDiagram& d, const Domain& dom, int region); // UnknownRegion

// Integer basis of periodic domains with n_z = 0 (and n_w = 0 if also_w).
std::vector<Domain> periodic_domains(const CombinatorialDiagram& d, bool also_w = false);

enum class AdmissibilityMode { WeakAllSpinc, ExtremelyWeakConservative };

struct AdmissibilityReport {
    bool admissible = true;
    std::size_t lattice_rank = 0;
    std::optional<Domain> witness; // nonzero periodic domain with all coefficients >= 0
};

AdmissibilityReport check_admissibility(const CombinatorialDiagram& d, AdmissibilityMode mode);

enum class Flavor { Hat, KnotHat };

// Generators: one point on each alpha curve, using each beta curve exactly once.
std::vector<std::vector<int>> generators(const CombinatorialDiagram& d);
std::string generator_name(const CombinatorialDiagram& d, const std::vector<int>& x);

struct NiceComplex {
    std::vector<std::vector<int>> generators; // point indices, one per alpha curve (alpha order)
    gf2::ChainComplex complex;                // ungraded
};

// Counts empty embedded bigons and rectangles; DomainError("NotNice") if a region that
// carries no forbidden basepoint is not a disc with at most four corners.
NiceComplex nice_differential(const CombinatorialDiagram& d, Flavor flavor);

// Delete a curve: faces on its two sides merge and its intersection points disappear.
CombinatorialDiagram remove_curve(const CombinatorialDiagram& d, const std::string& name);

// True if the diagrams agree up to rotation of curve point lists (points matched by name).
// Basepoint z is compared, w is not.
bool same_diagram(const CombinatorialDiagram& a, const CombinatorialDiagram& b);

struct TwistResult {
    CombinatorialDiagram twisted;     // alpha, beta' (z and w both in the merged region)
    CombinatorialDiagram alpha_beta;  // refined diagram minus delta, with z and w
    CombinatorialDiagram alpha_delta; // refined diagram minus beta_1, delta renamed beta_1
    std::string beta1;
    std::string crossing;             // name of the point beta_1 ∩ delta
    bool delta_reversed = false;      // delta traversed against its orientation in beta_1'
};

// refined: base diagram with one extra family-'d' curve delta, as a single cell complex.
// The twist is the one under which beta_1 turns right onto delta (orientation read off the
// boundary words); it joins the two opposite corners at the crossing where a boundary word
// arrives along beta_1 and leaves along delta. z must sit in exactly one of them, and the
// opposite one is where w goes.
// Throws DomainError("BadDeltaPosition") unless delta meets the beta curves exactly once
// and z is placed as above; ("BaseMismatch") if refined minus delta is not the base diagram.
TwistResult dehn_twist_beta1(const CombinatorialDiagram& base, const CombinatorialDiagram& refined);

struct BlockReport {
    std::size_t ab_generators = 0, ad_generators = 0;
    bool lower_block_zero = false; // no differential from alpha-beta to alpha-delta generators
    bool ab_block_matches = false;
    bool ad_block_matches = false;
    bool f_is_chain_map = false;
    std::size_t twisted_rank = 0, cone_rank = 0;
    gf2::ChainMap f; // alpha-delta complex -> alpha-beta complex
    bool ok() const {
        return lower_block_zero && ab_block_matches && ad_block_matches && f_is_chain_map && twisted_rank == cone_rank;
    }
};

BlockReport block_triangularity_check(const TwistResult& t);

nlohmann::json to_json(const BlockReport& r);

// The grid as a multi-pointed genus-one diagram: X markings are z, O markings are w.
CombinatorialDiagram from_grid(const grid::GridDiagram& g);

} // namespace floer::diagram
