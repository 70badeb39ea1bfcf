#pragma once

// Fixtures, random manifold generators and brute-force oracles shared by the
// unit tests, the acceptance runner and the benchmarks.

#include "gmprof/decider.hpp"
#include "gmprof/model.hpp"
#include "gmprof/presentation.hpp"

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace gmtest {

using namespace gmprof;

// Built directly in code, independent of the JSON reader.
GraphManifold w1();
GraphManifold n2();
GraphManifold tri();
GraphManifold min_fixture();
GraphManifold w1_delta3();  // W1 with the gluing (3 2; 5 3)
GraphManifold unit2();      // bipartite, zero slopes, modulus 2

std::string fixture_path(const std::string& file);
std::string read_file(const std::string& path);

using Rng = std::mt19937_64;

/// Valid manifold with at most `max_vertices` vertices, cone orders <= 7 and
/// matrix entries of absolute value <= 9. May contain loops, multi-edges,
/// minor pieces and non-orientable bases.
GraphManifold random_manifold(Rng& rng, int max_vertices = 5);

/// Bipartite, all slopes zero, no minor pieces, |gamma| <= 5.
GraphManifold random_zero_slope(Rng& rng, int max_vertices = 4);

/// Random fiber_flip / twist_move / mirror sequence of length <= max_moves.
GraphManifold random_moves(Rng& rng, const GraphManifold& m, int max_moves = 5);

/// Relabels vertices and edges and permutes the edge list; reverses some
/// non-loop edges.
GraphManifold random_relabel(Rng& rng, const GraphManifold& m);

/// Exhaustive filter over 0..modulus-1.
std::vector<std::int64_t> kappa_oracle(const std::vector<KappaConstraint>& constraints,
                                       std::int64_t modulus);

/// All elements of the group generated by `spec`.
std::vector<Permutation> group_elements(const FiniteGroupSpec& spec);

Permutation evaluate(const Relator& r, const std::vector<Permutation>& images, std::size_t degree);

/// Counts homomorphisms by trying every tuple of group elements.
std::uint64_t hom_oracle(const Presentation& p, const FiniteGroupSpec& target);

/// Counts index-n subgroups as standardized coset tables: transitive actions
/// on {0..n-1} whose breadth-first labelling from 0 is the identity.
std::uint64_t coset_table_oracle(const Presentation& p, std::size_t n);

}  // namespace gmtest
