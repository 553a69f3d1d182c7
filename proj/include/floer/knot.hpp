#pragma once

#include <array>
#include <string>
#include <vector>

#include <json.hpp>

#include "floer/bigraded.hpp"

namespace floer::knot {

// Planar diagram code. Each crossing lists its four edge labels counterclockwise,
// starting from the incoming under-strand.
struct LinkDiagram {
    std::vector<std::array<int, 4>> pd;
    int free_loops = 0; // crossingless components beyond what the PD code shows
    // Optional (in, out) label pairs fixing the direction of over-strands; only
    // needed for link components that never pass under anything.
    std::vector<std::array<int, 2>> successors;

    bool operator==(const LinkDiagram&) const = default;
};

// Accepts {"pd": [[a,b,c,d], ...]} or {"pd": "X[1,4,2,5], X[...]"}; throws InputError.
LinkDiagram diagram_from_json(const nlohmann::json& j);
nlohmann::json to_json(const LinkDiagram& d);

// Oriented view of a diagram: sign and strand data per crossing.
struct OrientedDiagram {
    struct Crossing {
        std::array<int, 4> edge;  // edge index at each slot
        int over_in = 1;          // slot where the over-strand enters (1 or 3)
        int sign = 0;             // +1 or -1
    };
    std::vector<Crossing> crossings;
    int edge_count = 0;
    // For every edge: (crossing, slot) of its tail and head.
    std::vector<std::array<int, 2>> tail, head;
    int free_loops = 0;

    int components() const;
    int writhe() const;
};

// Throws DomainError("NotAKnotOrLink") if labels or orientations are inconsistent.
OrientedDiagram orient(const LinkDiagram& d);

// Swap over and under at every crossing.
LinkDiagram mirror(const LinkDiagram& d);

// Crossing change at index c (the other strand becomes the under-strand).
LinkDiagram switch_crossing(const LinkDiagram& d, std::size_t c);
// Oriented smoothing at index c; closed-up kinks become free loops.
LinkDiagram smooth_crossing(const LinkDiagram& d, std::size_t c);

// Conway polynomial in z (index = power of z), via the skein relation.
std::vector<long long> conway_polynomial(const LinkDiagram& d, std::size_t max_crossings = 16);

// Alexander polynomial of a knot in symmetric normalization with Delta(1) = 1.
LaurentPolynomial alexander_conway(const LinkDiagram& d, std::size_t max_crossings = 16);

// Knot signature via the Gordon-Litherland formula; right-handed trefoil is -2.
int signature(const LinkDiagram& d);

// Rank |a_i| at (A, M) = (i, i + sigma/2).
BigradedRanks alternating_hfk(const LaurentPolynomial& delta, int sigma);

namespace detail {
// Signature computed from one colour class (0 or 1) of the checkerboard colouring.
int signature_with_coloring(const LinkDiagram& d, int white);
} // namespace detail

} // namespace floer::knot
