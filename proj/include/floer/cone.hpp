#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "floer/gf2.hpp"

namespace floer::cone {

// map-into-first: f: D -> C, differential [[dC, f], [0, dD]].
// map-into-second: f: C -> D, differential [[dC, 0], [f, dD]].
enum class Orientation { MapIntoFirst, MapIntoSecond };

std::string to_string(Orientation o);

struct MappingCone {
    gf2::ChainComplex underlying; // basis: C generators first, then D generators
    Orientation orientation = Orientation::MapIntoFirst;
    std::size_t first_dim = 0;
    // Grading shift applied to the source block (1 for graded complexes, 0 otherwise).
    int source_shift = 0;
};

// Throws DomainError("NotAChainMap") when f fails verify_chain_map.
MappingCone mapping_cone(const gf2::ChainMap& f, Orientation orientation);

struct NodeVerdict {
    std::string node; // "H(C)", "H(cone)" or "H(D)"
    int grading = 0;
    bool exact = true;
    std::string witness;
};

struct LESReport {
    Orientation orientation = Orientation::MapIntoFirst;
    // grading -> (rank H_k(C), rank H_k(cone), rank H_k(D))
    std::map<int, std::array<std::size_t, 3>> ranks;
    std::vector<NodeVerdict> nodes;
    bool connecting_ok = true;
    std::string connecting_witness;

    bool all_exact() const;
};

LESReport les_verify(const gf2::ChainMap& f, Orientation orientation);

nlohmann::json to_json(const LESReport& r);

// Random graded complex with at most max_dim generators in gradings 0..3.
gf2::ChainComplex random_complex(std::mt19937_64& rng, std::size_t max_dim);
// Uniformly random chain map source -> target.
gf2::ChainMap random_chain_map(std::mt19937_64& rng, const gf2::ChainComplex& source, const gf2::ChainComplex& target);

} // namespace floer::cone
