#pragma once

// Homeomorphism and profinite-isomorphism deciders for graph manifolds.
//
// Both deciders search over graph isomorphisms that respect vertex
// signatures. For each candidate, fibre-orientation flips on the second
// manifold are resolved by sign propagation along the edges (the gamma
// entries fix the product of the two flips on every edge), which reaches
// exactly the flip subsets that can pass the gamma test.

#include "gmprof/invariants.hpp"
#include "gmprof/model.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace gmprof {

struct SearchLimits {
  // Largest modulus whose unit group the kappa search will enumerate.
  std::int64_t max_modulus = 100'000'000;
};

struct EdgeImage {
  std::size_t edge = 0;   // index into the second manifold's edges
  bool reversed = false;  // image traversed to -> from

  friend bool operator==(const EdgeImage&, const EdgeImage&) = default;
};

struct IsoCandidate {
  std::map<std::string, std::string> vertex_map;
  std::vector<EdgeImage> edge_map;  // indexed by the first manifold's edges

  friend bool operator==(const IsoCandidate&, const IsoCandidate&) = default;
};

/// Visits every incidence-preserving bijection whose matched vertices have
/// equal signatures, in lexicographic order of vertex images. Loops may be
/// mapped with either orientation. The visitor returns false to stop.
void for_each_iso_candidate(const GraphManifold& m1, const GraphManifold& m2,
                            const std::function<bool(const IsoCandidate&)>& visit);

std::vector<IsoCandidate> iso_candidates(const GraphManifold& m1, const GraphManifold& m2);

struct HomeoWitness {
  IsoCandidate iso;
  bool mirrored = false;           // the first manifold is compared after mirror()
  std::set<std::string> flips;     // vertices of the second manifold
  std::vector<int> edge_signs;     // extra per-edge sign, -1 only next to a non-orientable base
  std::map<std::string, std::vector<std::size_t>> cone_matchings;  // cone i -> cone of image
  std::vector<Integer> twist_from;  // r at the from-end of each first-manifold edge
  std::vector<Integer> twist_to;    // r at the to-end
};

/// A homeomorphism covering some graph isomorphism, if one exists.
std::optional<HomeoWitness> check_homeomorphic(const GraphManifold& m1, const GraphManifold& m2);

struct ProfiniteWitness {
  IsoCandidate iso;
  std::set<std::string> flips;
  std::vector<int> edge_signs;  // gamma(phi e) = sign * gamma(e) after flips
  Integer kappa;                // acts on the red class of m1; kappa^-1 on blue
  Integer modulus;
  bool red_to_red = true;       // phi maps the red class of m1 onto the red class of m2
};

enum class VerdictKind { Homeomorphic, Equivalent, Distinct };

const char* to_string(VerdictKind kind);

struct ProfiniteVerdict {
  VerdictKind kind = VerdictKind::Distinct;
  std::optional<HomeoWitness> homeo;
  std::optional<ProfiniteWitness> profinite;
};

/// Homeomorphic when a homeomorphism exists; otherwise Equivalent when the
/// groups have isomorphic profinite completions; otherwise Distinct.
ProfiniteVerdict check_profinite_iso(const GraphManifold& m1, const GraphManifold& m2,
                                     const SearchLimits& limits = {});

/// lcm of every cone order and every |gamma| of both manifolds.
Integer kappa_modulus(const GraphManifold& m1, const GraphManifold& m2);

struct KappaConstraint {
  std::int64_t residue = 0;
  std::int64_t modulus = 1;  // must divide the global modulus
  int scale = 1;             // +1: kappa = residue, -1: kappa^-1 = residue
};

/// Units kappa mod `modulus` satisfying every constraint, ascending.
std::vector<std::int64_t> kappa_solutions(const std::vector<KappaConstraint>& constraints,
                                          std::int64_t modulus);

}  // namespace gmprof
