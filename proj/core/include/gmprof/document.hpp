#pragma once

// On-disk manifold documents and canonical JSON reports.
//
// Reports are serialized with sorted keys, two-space indentation and a
// trailing newline. Integers that fit in 64 bits are JSON numbers; larger
// ones are decimal strings. Rationals are "num/den" strings.

#include "gmprof/decider.hpp"
#include "gmprof/genus.hpp"
#include "gmprof/invariants.hpp"
#include "gmprof/model.hpp"
#include "gmprof/presentation.hpp"

#include <optional>
#include <string>
#include <vector>

namespace gmprof {

/// Strict decoding without the structural checks of validate(). Throws
/// Error with code Parse or Schema.
GraphManifold decode_manifold(const std::string& text);

/// Strict decoding followed by validate(). Throws Error with code Parse for
/// malformed JSON, Schema for a wrong shape (unknown or missing fields,
/// duplicate ids, bad id characters), and Invalid when validate() fails.
GraphManifold parse_manifold(const std::string& text);

/// Canonical document: vertices sorted by id, edges in stored order.
std::string print_manifold(const GraphManifold& m);

std::string report_validation(const ValidationReport& report);

struct InfoOptions {
  std::optional<Integer> prime;
};

std::string report_info(const GraphManifold& m, const InfoOptions& options = {});

std::string report_homeo(const GraphManifold& m1, const GraphManifold& m2,
                         const std::optional<HomeoWitness>& witness);

std::string report_profinite(const GraphManifold& m1, const GraphManifold& m2,
                             const ProfiniteVerdict& verdict);

std::string report_genus(const GenusResult& genus);

struct CensusReport {
  std::string name;
  CensusVector homs;
  std::vector<std::pair<std::size_t, Integer>> subgroups;  // (index, count)
};

/// One census, or two side by side with a per-entry agreement flag.
std::string report_census(const std::vector<CensusReport>& census);

/// "k mod M"
std::string format_kappa(const Integer& kappa, const Integer& modulus);

}  // namespace gmprof
