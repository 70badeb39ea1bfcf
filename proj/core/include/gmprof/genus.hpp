#pragma once

// Partner manifolds obtained by scaling Seifert data by a unit kappa, and
// the resulting enumeration of the profinite genus.

#include "gmprof/decider.hpp"
#include "gmprof/invariants.hpp"
#include "gmprof/model.hpp"

#include <string>
#include <utility>
#include <vector>

namespace gmprof {

/// Builds the manifold whose red pieces are scaled by kappa and blue pieces
/// by kappa^-1. Requires m bipartite with respect to `bip`, every total slope
/// zero, no minor pieces and kappa a unit modulo the cone/gamma lcm of m.
GraphManifold construct_scaled(const GraphManifold& m, const Integer& kappa,
                               const Bipartition& bip);

enum class RigidityReason {
  NonBipartite,
  NonzeroSlope,
  MinorPiece,
  TrivialUnitGroup,
  GenusCollapse,
  NotRigid,
};

const char* to_string(RigidityReason reason);

struct GenusResult {
  std::vector<GraphManifold> representatives;  // representatives[0] is the input
  std::vector<Integer> kappas;                 // parallel to representatives
  Integer modulus = 1;
  bool rigid = true;
  RigidityReason reason = RigidityReason::NonBipartite;
};

/// Every manifold, up to homeomorphism, whose group has the same profinite
/// completion as that of m.
GenusResult profinite_genus(const GraphManifold& m, const SearchLimits& limits = {});

std::pair<bool, RigidityReason> is_profinitely_rigid(const GraphManifold& m,
                                                     const SearchLimits& limits = {});

}  // namespace gmprof
