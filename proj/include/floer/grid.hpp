#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "floer/bigraded.hpp"
#include "floer/gf2.hpp"
#include "floer/knot.hpp"

namespace floer::grid {

// Toroidal grid: column c carries an X in row X[c] and an O in row O[c].
struct GridDiagram {
    int n = 0;
    std::vector<int> X, O;

    bool operator==(const GridDiagram&) const = default;
};

// Throws InputError on non-permutations or X[c] == O[c].
GridDiagram grid_from_json(const nlohmann::json& j);
nlohmann::json to_json(const GridDiagram& g);
void validate(const GridDiagram& g);

// Number of link components the grid encodes.
int components(const GridDiagram& g);

// Grid state: x[c] is the row of the dot on column c.
using GridState = std::vector<int>;

int maslov(const GridDiagram& g, const GridState& x);
int alexander(const GridDiagram& g, const GridState& x); // NotAKnot on links

struct TildeComplex {
    gf2::ChainComplex complex; // Maslov grading as homological grading
    std::vector<int> alexander;
};

struct GridOptions {
    int max_n = 8;
};

// Full tilde complex on all n! states (small n only; intended for checks).
TildeComplex tilde_complex(const GridDiagram& g, const GridOptions& opt = {});

// Bigraded ranks of the tilde homology, computed Alexander block by block.
BigradedRanks tilde_homology(const GridDiagram& g, const GridOptions& opt = {});

// Exact division of a tilde Poincare polynomial by (1 + t^-1 q^-1)^k.
BigradedRanks divide_by_v(const BigradedRanks& tilde, int k);

BigradedRanks hfk_hat(const GridDiagram& g, const GridOptions& opt = {});

// Moves and constructions.
GridDiagram translate(const GridDiagram& g, int dc, int dr);
GridDiagram stabilize(const GridDiagram& g, int column);
// Swap columns c and c+1; throws DomainError("IllegalMove") if their segments interleave.
GridDiagram commute_columns(const GridDiagram& g, int c);
// Reflection in the diagonal; the knot type is unchanged since over/under flips as well.
GridDiagram transpose(const GridDiagram& g);
// Reversing the column order gives the mirror knot.
GridDiagram reflect(const GridDiagram& g);
GridDiagram connected_sum(const GridDiagram& g1, const GridDiagram& g2);

// Planar diagram of the grid knot (vertical strands pass over horizontal ones).
knot::LinkDiagram to_pd(const GridDiagram& g);

// Lehmer rank of a permutation in lexicographic order.
std::uint64_t perm_rank(const std::vector<int>& p);
std::vector<int> perm_unrank(std::uint64_t r, int n);

} // namespace floer::grid
