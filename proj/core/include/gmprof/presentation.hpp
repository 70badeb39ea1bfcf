#pragma once

// Finite presentations of the fundamental group of a graph manifold, and
// finite-quotient fingerprints computed from them: homomorphism counts into
// small permutation groups and low-index subgroup counts.
//
// Two groups with isomorphic profinite completions have the same number of
// homomorphisms into every finite group, so any disagreement in these counts
// refutes profinite equivalence. Agreement proves nothing.

#include "gmprof/integer.hpp"
#include "gmprof/model.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace gmprof {

struct Syllable {
  std::size_t generator = 0;
  Integer exponent = 1;
  friend bool operator==(const Syllable&, const Syllable&) = default;
};

using Word = std::vector<Syllable>;

/// (base)^exponent. A plain generator power has a one-syllable base with
/// exponent 1.
struct Power {
  Word base;
  Integer exponent = 1;
  friend bool operator==(const Power&, const Power&) = default;
};

using Relator = std::vector<Power>;

struct Presentation {
  std::vector<std::string> generators;
  std::vector<Relator> relators;

  friend bool operator==(const Presentation&, const Presentation&) = default;
};

/// Graph-of-groups presentation. Generator names:
///   a<i>@<v>, u<j>@<v>, v<j>@<v>, h@<v>   major vertex v
///   b@<edge>, b@<edge>~                    boundary generator of the from/to end
///   xhat@<v>, yhat@<v>                     minor vertex v
///   t@<edge>                               stable letter of a non-tree edge
/// At each vertex the incident ends, sorted by (neighbour, edge id), become
/// e_0, e_1, ...; e_0 is the word (a_1..a_r e_1..e_s [u_1,v_1]..)^-1.
Presentation build_presentation(const GraphManifold& m);

/// Line format: "generators: g1 g2 ...", then one relator per line. A
/// relator is a space separated list of terms NAME^INT or (NAME^INT ...)^INT;
/// the empty relator is written "1".
std::string to_text(const Presentation& p);
Presentation parse_presentation(const std::string& text);

/// A permutation of {0, ..., degree-1}, as its list of images.
using Permutation = std::vector<std::uint32_t>;

struct FiniteGroupSpec {
  std::string name;
  std::size_t degree = 1;
  std::vector<Permutation> generators;
};

/// Order of the group generated by the spec's permutations.
std::size_t group_order(const FiniteGroupSpec& spec);

FiniteGroupSpec symmetric_group(std::size_t n);

/// C2, C3, C4, C5, S3, D8, A4, F20 in that order.
std::vector<FiniteGroupSpec> builtin_catalogue();

/// Catalogue name or "S<n>"; throws Error(Precondition) for anything else.
FiniteGroupSpec group_by_name(const std::string& name);

struct CountBudget {
  std::uint64_t max_nodes = 500'000'000;
};

/// Exact number of homomorphisms from the presented group into the group
/// generated by `target`. Throws Error(Budget) when the search tree exceeds
/// the node budget.
std::uint64_t count_homs(const Presentation& p, const FiniteGroupSpec& target,
                         const CountBudget& budget = {});

/// Number of subgroups of index n, from homomorphism counts into S_1..S_n.
Integer count_index_subgroups(const Presentation& p, std::size_t n,
                              const CountBudget& budget = {});

struct CensusVector {
  std::vector<std::pair<std::string, std::uint64_t>> entries;
  friend bool operator==(const CensusVector&, const CensusVector&) = default;
};

CensusVector hom_census(const GraphManifold& m, const std::vector<FiniteGroupSpec>& catalogue,
                        const CountBudget& budget = {});

}  // namespace gmprof
