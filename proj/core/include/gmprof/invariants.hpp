#pragma once

// Numerical invariants of pieces and of the decorated graph, and the moves
// that change a presentation without changing the manifold.

#include "gmprof/model.hpp"

#include <optional>
#include <set>
#include <string>
#include <variant>

namespace gmprof {

/// Throws Error(Precondition) for a minor piece.
Rational orbifold_euler_char(const SeifertPiece& piece, std::size_t degree);

/// Sum of delta/gamma over the ends based at v minus the sum of q/p over
/// the cones of v. At a minor vertex, delta/gamma of its single end.
Rational total_slope(const GraphManifold& m, const std::string& v);

/// Two-colouring of the graph. `red` holds the least vertex id.
struct Bipartition {
  std::set<std::string> red;
  std::set<std::string> blue;

  friend bool operator==(const Bipartition&, const Bipartition&) = default;
};

/// nullopt if the graph has an odd cycle (a loop counts as one).
std::optional<Bipartition> bipartition(const GraphManifold& m);

/// Reverse both the fibre and the base orientation of the piece at v. Every
/// gluing with exactly one end at v is negated; total slopes are unchanged.
GraphManifold fiber_flip(const GraphManifold& m, const std::string& v);

struct ConeTarget {
  std::size_t index = 0;
  friend bool operator==(const ConeTarget&, const ConeTarget&) = default;
};
struct EndTarget {
  std::string edge;
  Side side = Side::From;
  friend bool operator==(const EndTarget&, const EndTarget&) = default;
};
using TwistTarget = std::variant<ConeTarget, EndTarget>;

/// Dehn twist along an annulus joining two targets at the major vertex v.
/// Target a is shifted by k (cone: q += k p, end: delta += k gamma) and
/// target b is shifted so that total_slope(v) is unchanged.
GraphManifold twist_move(const GraphManifold& m, const std::string& v,
                         const TwistTarget& a, const TwistTarget& b, const Integer& k);

/// Residual p-finiteness test for the group of one piece: every cone order is
/// a power of p, and the base is orientable unless p == 2. The minor piece
/// counts as residually 2 only.
bool is_residually_p(const SeifertPiece& piece, const Integer& p);

}  // namespace gmprof
