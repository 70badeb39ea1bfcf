#pragma once

// Value types for closed orientable graph manifolds given as decorated JSJ
// graphs: vertices are Seifert pieces, edges carry gluing matrices.

#include "gmprof/integer.hpp"

#include <compare>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace gmprof {

/// Exceptional fibre with invariants (p, q); relator a^p h^q.
struct ConePoint {
  Integer p;
  Integer q;

  friend bool operator==(const ConePoint&, const ConePoint&) = default;
};

/// Genus counts handles when orientable, crosscaps otherwise. The number of
/// boundary components is not stored: it is the degree of the vertex.
struct BaseOrbifold {
  int genus = 0;
  bool orientable = true;
  std::vector<ConePoint> cones;

  friend bool operator==(const BaseOrbifold&, const BaseOrbifold&) = default;
};

struct MajorPiece {
  BaseOrbifold base;
  friend bool operator==(const MajorPiece&, const MajorPiece&) = default;
};

/// The orientable I-bundle over the Klein bottle. Its boundary torus has the
/// canonical basis (x^2, y) of <x, y | x y x^-1 = y^-1>.
struct MinorPiece {
  friend bool operator==(const MinorPiece&, const MinorPiece&) = default;
};

using SeifertPiece = std::variant<MajorPiece, MinorPiece>;

inline bool is_minor(const SeifertPiece& piece) {
  return std::holds_alternative<MinorPiece>(piece);
}
inline bool is_major(const SeifertPiece& piece) { return !is_minor(piece); }

/// (alpha beta; gamma delta) acting on column vectors, sending the basis
/// (fibre, section) on one side of a torus to the other side:
///   h_from = h_to^alpha * s_to^gamma,   s_from = h_to^beta * s_to^delta.
struct GluingMatrix {
  Integer alpha;
  Integer beta;
  Integer gamma;
  Integer delta;

  Integer determinant() const { return alpha * delta - beta * gamma; }
  GluingMatrix negated() const { return {-alpha, -beta, -gamma, -delta}; }

  friend bool operator==(const GluingMatrix&, const GluingMatrix&) = default;
};

/// Inverse of a determinant -1 matrix: the same gluing read from the other
/// side. Throws Error(Precondition) when det != -1.
GluingMatrix reverse_end(const GluingMatrix& a);

/// Right action of a Dehn twist on the from-side section: A * (1 k; 0 1).
GluingMatrix twist_from_side(const GluingMatrix& a, const Integer& k);
/// Left action on the to-side section: (1 k; 0 1) * A.
GluingMatrix twist_to_side(const GluingMatrix& a, const Integer& k);

struct Edge {
  std::string id;
  std::string from;
  std::string to;
  GluingMatrix matrix;  // in the from -> to direction

  bool is_loop() const { return from == to; }
  friend bool operator==(const Edge&, const Edge&) = default;
};

struct GraphManifold {
  std::string name;
  std::map<std::string, SeifertPiece> vertices;
  std::vector<Edge> edges;

  friend bool operator==(const GraphManifold&, const GraphManifold&) = default;

  const SeifertPiece& piece(const std::string& v) const;
  const MajorPiece& major(const std::string& v) const;
  MajorPiece& major(const std::string& v);
  std::optional<std::size_t> edge_index(const std::string& id) const;
};

enum class Side { From, To };

/// One end of an edge, read from the vertex it is based at.
struct EdgeEnd {
  std::size_t edge = 0;
  Side side = Side::From;

  auto operator<=>(const EdgeEnd&) const = default;
};

const std::string& base_vertex(const GraphManifold& m, EdgeEnd end);
const std::string& far_vertex(const GraphManifold& m, EdgeEnd end);
EdgeEnd opposite(EdgeEnd end);

/// Matrix of the gluing in the direction leaving the end's base vertex.
GluingMatrix end_matrix(const GraphManifold& m, EdgeEnd end);

/// Ends based at v, sorted by (neighbour id, edge id, side). A loop
/// contributes two ends.
std::vector<EdgeEnd> incident_ends(const GraphManifold& m, const std::string& v);

std::size_t degree(const GraphManifold& m, const std::string& v);

/// Orbifold Euler characteristic of a base with the given number of boundary
/// components.
Rational euler_characteristic(const BaseOrbifold& base, std::size_t boundary);

struct Violation {
  std::string code;      // DET, GAMMA_ZERO, MINOR_ADJ, MINOR_ALPHA, ...
  std::string location;  // "vertex:<id>", "edge:<id>" or "graph"
  std::string message;

  auto operator<=>(const Violation&) const = default;
};

struct ValidationReport {
  bool ok = true;
  std::vector<Violation> violations;  // sorted
};

/// Checks every structural rule; never throws.
ValidationReport validate(const GraphManifold& m);

/// Orientation reversal: q -> -q on every cone, (a b; c d) -> (a -b; -c d).
GraphManifold mirror(const GraphManifold& m);

/// Homeomorphism-invariant summary of a vertex, used to prune graph
/// isomorphism search. Minor vertices leave genus/orientable unset.
struct Signature {
  bool minor = false;
  std::optional<int> genus;
  std::optional<bool> orientable;
  std::vector<Integer> cone_orders;  // sorted
  std::size_t degree = 0;
  std::vector<Integer> gamma_magnitudes;  // sorted, one per incident end

  friend bool operator==(const Signature&, const Signature&) = default;
};

Signature vertex_signature(const GraphManifold& m, const std::string& v);

}  // namespace gmprof
